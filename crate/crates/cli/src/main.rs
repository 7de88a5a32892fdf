//! `polypack` command-line front end.
//!
//! Exit codes: 0 on success, 1 on usage or input errors, 2 when a
//! verification (suite, equivalence check, integrality probe) fails.

mod commands;
mod input;
mod render;
mod verify;

use clap::{Args, Parser, Subcommand};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser, Debug)]
#[command(
    name = "polypack",
    version,
    about = "Polytopal ball packings, Apollonian groups and their sections"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Require every exact value to lie in ℚ(√m).
    #[arg(long, global = true, value_name = "m", conflicts_with = "float")]
    pub field: Option<u32>,
    /// Use floating-point arithmetic instead of exact ℚ(√m).
    #[arg(long, global = true)]
    pub float: bool,
    /// Equality tolerance in float mode.
    #[arg(long, global = true, default_value_t = 1e-9, requires = "float")]
    pub eps: f64,
    /// Write the main output here instead of stdout.
    #[arg(long, global = true, value_name = "FILE")]
    pub out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Build a packing: a regular polytope's ball-arrangement projection,
    /// a standard packing (b0, b1, integral-r4) or a disk packing from curvatures.
    Generate(commands::GenerateArgs),
    /// Enumerate the Apollonian cluster of a packing.
    Orbit(commands::OrbitArgs),
    /// Cut an orthoplicial packing with a section plane.
    Section(commands::SectionArgs),
    /// Lift a disk packing to an orthoplicial sphere packing.
    Lift(commands::LiftArgs),
    /// Run built-in verification suites.
    Verify(verify::VerifyArgs),
    /// Draw a packing (or its cluster) as SVG.
    Render(render::RenderArgs),
    /// Curvature census of a cluster as CSV.
    Census(commands::CensusArgs),
    /// Curvatures of the integral 24-cell cluster up to a bound.
    #[command(name = "probe-r4")]
    ProbeR4(commands::ProbeArgs),
}

/// What a successful run found.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Ok,
    VerificationFailed,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if cli.global.float {
        if !(cli.global.eps > 0.0 && cli.global.eps.is_finite()) {
            eprintln!("error: --eps must be a positive number");
            return ExitCode::from(1);
        }
        polypack::scalar::set_tolerance(cli.global.eps);
    }
    match commands::run(&cli) {
        Ok(Outcome::Ok) => ExitCode::SUCCESS,
        Ok(Outcome::VerificationFailed) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
