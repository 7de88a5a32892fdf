//! Reading packings and scalars from the command line and from files.

use anyhow::{anyhow, bail, Context, Result};
use polypack::io::packing_from_json;
use polypack::{Packing, Quad, Scalar};
use serde_json::Value;
use std::io::{Read, Write};
use std::path::Path;

/// One scalar: exact syntax (`3`, `-1/2`, `1/2√2`, `sqrt(5)`) or, in float
/// mode, any decimal.
pub fn parse_scalar<S: Scalar>(s: &str) -> Result<S> {
    match s.trim().parse::<Quad>() {
        Ok(q) => Ok(S::from_quad(&q)),
        Err(_) if !S::is_exact() => {
            let f: f64 = s
                .trim()
                .parse()
                .map_err(|_| anyhow!("cannot read {s:?} as a number"))?;
            S::from_f64(f).ok_or_else(|| anyhow!("{s} is not finite"))
        }
        Err(e) => Err(anyhow!(
            "cannot read {s:?} as an exact number ({e}); use --float for decimals"
        )),
    }
}

pub fn parse_list<S: Scalar>(items: &[String]) -> Result<Vec<S>> {
    items
        .iter()
        .flat_map(|s| s.split(','))
        .filter(|s| !s.trim().is_empty())
        .map(parse_scalar)
        .collect()
}

pub fn read_json(path: &Path) -> Result<Value> {
    let mut text = String::new();
    if path.as_os_str() == "-" {
        std::io::stdin()
            .read_to_string(&mut text)
            .context("reading stdin")?;
    } else {
        text =
            std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    }
    serde_json::from_str(&text).with_context(|| format!("parsing {} as JSON", path.display()))
}

/// A packing from packing JSON, or the `ambient` (or `planar`) packing of a
/// section, or the `seed` of an orbit report.
pub fn load_packing<S: Scalar>(path: &Path, planar: bool) -> Result<Packing<S>> {
    let v = read_json(path)?;
    let key = if planar { "planar" } else { "ambient" };
    let inner = if v.get("balls").is_some() {
        &v
    } else if let Some(p) = v.get(key) {
        p
    } else if let Some(p) = v.get("seed") {
        p
    } else {
        bail!(
            "{} holds no packing (expected `balls`, `{key}` or `seed`)",
            path.display()
        );
    };
    packing_from_json(inner).with_context(|| format!("reading the packing in {}", path.display()))
}

/// Refuses exact values outside ℚ(√m) when a field was requested.
pub fn check_field<S: Scalar>(p: &Packing<S>, field: Option<u32>) -> Result<()> {
    let Some(m) = field else { return Ok(()) };
    for (i, b) in p.balls.iter().enumerate() {
        for x in b.coords() {
            if let Some(q) = x.to_quad() {
                let r = q.radicand();
                if r != 0 && r != m {
                    bail!("ball {i} has coordinate {x}, which is not in ℚ(√{m})");
                }
            }
        }
    }
    Ok(())
}

pub fn write_output(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => std::fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            let mut h = std::io::stdout().lock();
            let r = h.write_all(text.as_bytes()).and_then(|_| {
                if text.ends_with('\n') {
                    Ok(())
                } else {
                    h.write_all(b"\n")
                }
            });
            match r {
                // a closed pipe (`| head`) is not an error
                Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
                r => Ok(r?),
            }
        }
    }
}

pub fn write_json(out: Option<&Path>, v: &Value) -> Result<()> {
    write_output(out, &serde_json::to_string_pretty(v)?)
}
