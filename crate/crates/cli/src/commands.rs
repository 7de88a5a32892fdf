use crate::input::{check_field, load_packing, parse_list, write_json, write_output};
use crate::{render, verify, Cli, Command, Outcome};
use anyhow::{anyhow, bail, Context, Result};
use clap::Args;
use polypack::apollonian::probe::{integral_r4, probe_r4, standard_r4};
use polypack::apollonian::{
    curvature_census, generators, orbit, standard_b0, standard_b1, Bound, OrbitReport,
};
use polypack::io::{
    equivalence_report_to_json, orbit_report_to_json, packing_to_json, section_to_json,
};
use polypack::polytopes::{cbp_projection, Regular, RegularPolytope};
use polypack::sections::{
    lift, realize_planar, section_clusters, section_cubical, section_octahedral,
    section_tetrahedral, verify_arithmetic_equivalence, SectionKind,
};
use polypack::{Approx, Packing, Quad, Scalar};
use serde_json::json;
use std::path::PathBuf;

#[derive(Args, Debug)]
pub struct GenerateArgs {
    /// Polytope name (simplex, orthoplex, cube, 24-cell, 600-cell, 120-cell,
    /// icosahedron, dodecahedron, polygon) or a standard packing: b0, b1,
    /// integral-r4, standard-r4.
    #[arg(long, conflicts_with = "kind")]
    pub polytope: Option<String>,
    /// Dimension of the polytope (number of sides for polygons).
    #[arg(long)]
    pub dim: Option<usize>,
    /// Centre an i-face at infinity (always float).
    #[arg(long, value_name = "i", requires = "polytope")]
    pub cbp: Option<usize>,
    /// Disk packing kind: tetra, octa or cubic.
    #[arg(long, requires = "curvatures")]
    pub kind: Option<String>,
    /// Curvatures of the disks that fix the disk packing (4, 3 or 3 values).
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub curvatures: Vec<String>,
}

#[derive(Args, Debug)]
pub struct OrbitArgs {
    /// Packing JSON, section JSON (its ambient packing) or orbit report (its seed); `-` reads stdin.
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long)]
    pub depth: u32,
    /// Drop balls with |κ| above this.
    #[arg(long, allow_hyphen_values = true)]
    pub max_curvature: Option<i64>,
    /// Use the planar packing of a section file instead of the ambient one.
    #[arg(long)]
    pub planar: bool,
    /// Include ball coordinates.
    #[arg(long)]
    pub balls: bool,
    /// Include the curvature census.
    #[arg(long)]
    pub census: bool,
}

#[derive(Args, Debug)]
pub struct SectionArgs {
    /// tetra, octa or cubic.
    #[arg(long)]
    pub kind: String,
    /// Orthoplicial packing to cut (default: the standard one).
    #[arg(long)]
    pub input: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct LiftArgs {
    /// tetra, octa or cubic.
    #[arg(long)]
    pub kind: String,
    /// Curvatures fixing the disk packing.
    #[arg(
        long,
        value_delimiter = ',',
        allow_hyphen_values = true,
        conflicts_with = "input"
    )]
    pub curvatures: Vec<String>,
    /// Disk packing JSON.
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Certify arithmetic equivalence on words up to this length.
    #[arg(long)]
    pub verify_depth: Option<u32>,
    /// Curvature bound for the clusters compared during verification.
    #[arg(long, default_value_t = 500)]
    pub max_curvature: i64,
}

#[derive(Args, Debug)]
pub struct CensusArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long)]
    pub depth: u32,
    #[arg(long, allow_hyphen_values = true)]
    pub max_curvature: Option<i64>,
    #[arg(long)]
    pub planar: bool,
}

#[derive(Args, Debug)]
pub struct ProbeArgs {
    /// Generator steps; the cluster is periodic, so the depth is what keeps it finite.
    #[arg(long, default_value_t = 6)]
    pub depth: u32,
    #[arg(long, default_value_t = 200)]
    pub max_curvature: i64,
}

pub fn run(cli: &Cli) -> Result<Outcome> {
    if cli.global.float {
        run_with::<Approx>(cli)
    } else {
        run_with::<Quad>(cli)
    }
}

fn run_with<S: Scalar>(cli: &Cli) -> Result<Outcome> {
    let out = cli.global.out.as_deref();
    let field = cli.global.field;
    match &cli.command {
        Command::Generate(a) => generate::<S>(a, cli),
        Command::Orbit(a) => {
            let seed: Packing<S> = load_packing(&a.input, a.planar)?;
            check_field(&seed, field)?;
            let r = grow(&seed, a.depth, a.max_curvature)?;
            let census = a.census.then(|| census_of(&r, a.max_curvature));
            write_json(out, &orbit_report_to_json(&r, census.as_ref(), a.balls))?;
            Ok(Outcome::Ok)
        }
        Command::Section(a) => {
            let kind = section_kind(&a.kind)?;
            let p: Packing<S> = match &a.input {
                Some(path) => load_packing(path, false)?,
                None if kind == SectionKind::Cubical => standard_b1().map(|x| S::from_quad(x)),
                None => standard_b0(),
            };
            check_field(&p, field)?;
            let s = match kind {
                SectionKind::Tetrahedral => section_tetrahedral(&p),
                SectionKind::Octahedral => section_octahedral(&p),
                SectionKind::Cubical => section_cubical(&p),
            }?;
            write_json(out, &section_to_json(&s))?;
            Ok(Outcome::Ok)
        }
        Command::Lift(a) => {
            let kind = section_kind(&a.kind)?;
            let planar: Packing<S> = match &a.input {
                Some(path) => load_packing(path, true)?,
                None if a.curvatures.is_empty() => bail!("lift needs --curvatures or --input"),
                None => realize_planar(kind, &parse_list::<S>(&a.curvatures)?)?,
            };
            check_field(&planar, field)?;
            let s = lift(kind, &planar)?;
            let mut v = section_to_json(&s);
            let mut outcome = Outcome::Ok;
            if let Some(d) = a.verify_depth {
                let (pc, ac) =
                    section_clusters(&s, d, Some(a.max_curvature), Some(a.max_curvature))?;
                let eq = verify_arithmetic_equivalence(&s, &pc, &ac, d)?;
                if !eq.passed() {
                    outcome = Outcome::VerificationFailed;
                }
                v["equivalence"] = equivalence_report_to_json(&eq);
                v["equivalence"]["passed"] = json!(eq.passed());
            }
            write_json(out, &v)?;
            Ok(outcome)
        }
        Command::Verify(a) => verify::run(a, out),
        Command::Render(a) => render::run::<S>(a, out, field),
        Command::Census(a) => {
            let seed: Packing<S> = load_packing(&a.input, a.planar)?;
            check_field(&seed, field)?;
            let r = grow(&seed, a.depth, a.max_curvature)?;
            let c = census_of(&r, a.max_curvature);
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["curvature", "count"])?;
            for (k, n) in &c.counts {
                w.write_record([k.to_string(), n.to_string()])?;
            }
            let bytes = w.into_inner().map_err(|e| anyhow!("{e}"))?;
            write_output(out, &String::from_utf8(bytes)?)?;
            Ok(Outcome::Ok)
        }
        Command::ProbeR4(a) => {
            if a.max_curvature < 0 {
                bail!("--max-curvature must be non-negative");
            }
            let r = probe_r4(a.depth, a.max_curvature)?;
            let v = json!({
                "depth": a.depth,
                "max_curvature": a.max_curvature,
                "balls": r.report.len(),
                "all_integral": r.all_integral,
                "coverage": (r.coverage() * 1e6).round() / 1e6,
                "missing_integers": r.census.missing_integers.iter().map(|&n| n as i64).collect::<Vec<_>>(),
                "counts": r.census.counts.iter().map(|(k, n)| json!([k.as_integer().map(|x| x as i64), n])).collect::<Vec<_>>(),
            });
            write_json(out, &v)?;
            Ok(if r.all_integral {
                Outcome::Ok
            } else {
                Outcome::VerificationFailed
            })
        }
    }
}

fn generate<S: Scalar>(a: &GenerateArgs, cli: &Cli) -> Result<Outcome> {
    let out = cli.global.out.as_deref();
    if let Some(kind) = &a.kind {
        let kind = section_kind(kind)?;
        let p = realize_planar(kind, &parse_list::<S>(&a.curvatures)?)?;
        check_field(&p, cli.global.field)?;
        write_json(out, &packing_to_json(&p))?;
        return Ok(Outcome::Ok);
    }
    let name = a
        .polytope
        .as_deref()
        .ok_or_else(|| anyhow!("generate needs --polytope or --kind"))?;
    let special: Option<Packing<Quad>> = match name.to_ascii_lowercase().as_str() {
        "b0" => Some(standard_b0()),
        "b1" => Some(standard_b1()),
        "integral-r4" | "r4-integral" => Some(integral_r4()?),
        "standard-r4" => Some(standard_r4()),
        _ => None,
    };
    let json = if let Some(p) = special {
        if a.cbp.is_some() {
            bail!("--cbp applies to polytopes, not to {name}");
        }
        exact_or_float(&p, cli)?
    } else {
        let kind = Regular::parse(name, a.dim)?;
        if let Some(i) = a.cbp {
            let proj = cbp_projection(kind, i)?;
            packing_to_json(&proj.packing)
        } else {
            let poly = RegularPolytope::edge_scribed(kind)?;
            match poly.exact_ball_projection() {
                Some(p) => exact_or_float(&p, cli)?,
                None if cli.global.field.is_some() => {
                    bail!("{kind} has no exact projection here; drop --field or use --float")
                }
                None => packing_to_json(&poly.ball_projection()?),
            }
        }
    };
    write_json(out, &json)?;
    Ok(Outcome::Ok)
}

fn exact_or_float(p: &Packing<Quad>, cli: &Cli) -> Result<serde_json::Value> {
    if cli.global.float {
        Ok(packing_to_json(&p.map(|x| Approx(x.to_f64()))))
    } else {
        check_field(p, cli.global.field)?;
        Ok(packing_to_json(p))
    }
}

fn section_kind(s: &str) -> Result<SectionKind> {
    SectionKind::parse(s)
        .ok_or_else(|| anyhow!("unknown kind {s:?} (expected tetra, octa or cubic)"))
}

pub fn grow<S: Scalar>(
    seed: &Packing<S>,
    depth: u32,
    max_curvature: Option<i64>,
) -> Result<OrbitReport<S>> {
    let g = generators(seed).context("finding the Apollonian generators")?;
    let mut b = Bound::depth(depth);
    if let Some(k) = max_curvature {
        b = b.with_curvature(k);
    }
    Ok(orbit(seed, &g, &b)?)
}

/// Census of every orbit curvature. With a bound, the integers of
/// `0..=max` that never occur are listed too.
fn census_of<S: Scalar>(r: &OrbitReport<S>, max: Option<i64>) -> polypack::apollonian::Census<S> {
    let range = max.map(|k| {
        let lo = r.curvatures().fold(
            S::zero(),
            |m, x| if x.cmp_s(&m).is_lt() { x.clone() } else { m },
        );
        (lo, S::from_i64(k))
    });
    let mut c = curvature_census(r, range);
    c.missing_integers.retain(|&n| n >= 0);
    c
}
