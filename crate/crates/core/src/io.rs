//! JSON forms of packings, orbit reports and equivalence reports.
//!
//! Exact scalars are written as JSON integers when integral and as strings
//! in the display form (`"1/2√2"`) otherwise; float scalars as numbers,
//! snapped to integers within 1e−9 (relative).
//! Readers accept either form.

use crate::apollonian::{Census, OrbitReport};
use crate::error::{Error, Result};
use crate::inversive::{Ball, Packing};
use crate::scalar::{Quad, Scalar};
use crate::sections::{EquivalenceReport, Section};
use serde_json::{json, Map, Value};

pub fn scalar_to_json<S: Scalar>(x: &S) -> Value {
    if !S::is_exact() {
        // float noise around integers would otherwise leak into the output
        let f = x.to_f64();
        let r = f.round();
        if (f - r).abs() <= 1e-9 * r.abs().max(1.0) && r.abs() < 9.0e15 {
            return json!(r as i64);
        }
        return json!(f);
    }
    match x.as_integer() {
        Some(n) if i64::try_from(n).is_ok() => json!(n as i64),
        _ => Value::String(x.to_string()),
    }
}

pub fn scalar_from_json<S: Scalar>(v: &Value) -> Result<S> {
    match v {
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                return Ok(S::from_i64(i));
            }
            let f = n
                .as_f64()
                .ok_or_else(|| Error::Parse(format!("bad number {n}")))?;
            S::from_f64(f).ok_or_else(|| {
                Error::Parse(format!(
                    "{f} is not exact; write it as a string like \"1/3\" or \"1/2√2\""
                ))
            })
        }
        Value::String(s) => match s.parse::<Quad>() {
            Ok(q) => Ok(S::from_quad(&q)),
            Err(e) if !S::is_exact() => {
                let f: f64 = s.trim().parse().map_err(|_| e)?;
                S::from_f64(f).ok_or_else(|| Error::Parse(s.clone()))
            }
            Err(e) => Err(e),
        },
        other => Err(Error::Parse(format!("expected a number, found {other}"))),
    }
}

pub fn vec_to_json<S: Scalar>(v: &[S]) -> Value {
    Value::Array(v.iter().map(scalar_to_json).collect())
}

pub fn vec_from_json<S: Scalar>(v: &Value) -> Result<Vec<S>> {
    v.as_array()
        .ok_or_else(|| Error::Parse("expected an array of numbers".into()))?
        .iter()
        .map(scalar_from_json)
        .collect()
}

pub fn ball_to_json<S: Scalar>(b: &Ball<S>) -> Value {
    json!({ "coords": vec_to_json(b.coords()), "curvature": scalar_to_json(&b.curvature()) })
}

pub fn packing_to_json<S: Scalar>(p: &Packing<S>) -> Value {
    let mut m = Map::new();
    m.insert("dim".into(), json!(p.dim()));
    m.insert("tag".into(), json!(p.tag));
    m.insert("exact".into(), json!(S::is_exact()));
    m.insert(
        "balls".into(),
        Value::Array(p.balls.iter().map(ball_to_json).collect()),
    );
    m.insert("edges".into(), json!(p.tangency_graph()));
    if let Some(f) = &p.facets {
        m.insert("facets".into(), json!(f));
    }
    Value::Object(m)
}

/// Reads a packing. `balls` may hold objects with `coords` or bare
/// coordinate arrays; every ball must have unit self-product.
pub fn packing_from_json<S: Scalar>(v: &Value) -> Result<Packing<S>> {
    let balls = v
        .get("balls")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Parse("packing JSON needs a `balls` array".into()))?;
    let balls = balls
        .iter()
        .map(|b| Ball::new(vec_from_json(b.get("coords").unwrap_or(b))?))
        .collect::<Result<Vec<_>>>()?;
    if let Some(d) = balls.first().map(|b| b.coords().len()) {
        if let Some(bad) = balls.iter().find(|b| b.coords().len() != d) {
            return Err(Error::DimensionMismatch {
                expected: d,
                found: bad.coords().len(),
            });
        }
    }
    let tag = v.get("tag").and_then(Value::as_str).map(String::from);
    let p = Packing::new(balls, tag)?;
    match v.get("facets") {
        Some(f) if !f.is_null() => {
            let facets: Vec<Vec<usize>> =
                serde_json::from_value(f.clone()).map_err(|e| Error::Parse(e.to_string()))?;
            if facets.iter().flatten().any(|&i| i >= p.len()) {
                return Err(Error::Parse("facet index out of range".into()));
            }
            Ok(p.with_facets(facets))
        }
        _ => Ok(p),
    }
}

pub fn census_to_json<S: Scalar>(c: &Census<S>) -> Value {
    json!({
        "counts": c.counts.iter().map(|(k, n)| json!([scalar_to_json(k), n])).collect::<Vec<_>>(),
        "missing_integers": c.missing_integers.iter().map(|&n| n as i64).collect::<Vec<_>>(),
        "non_integral": c.non_integral,
    })
}

/// Orbit report; ball coordinates are left out when `with_balls` is false.
pub fn orbit_report_to_json<S: Scalar>(
    r: &OrbitReport<S>,
    census: Option<&Census<S>>,
    with_balls: bool,
) -> Value {
    let mut m = Map::new();
    m.insert("seed".into(), packing_to_json(&r.seed));
    m.insert(
        "bound".into(),
        json!({
            "depth": r.bound.depth,
            "max_curvature": r.bound.max_curvature.map(|k| scalar_to_json(&Quad::rational(k))),
        }),
    );
    m.insert("generators".into(), json!(r.generator_labels));
    m.insert("size".into(), json!(r.len()));
    m.insert("depth_counts".into(), json!(r.depth_counts()));
    m.insert("integral".into(), json!(r.all_integral()));
    if with_balls {
        let balls = (0..r.len())
            .map(|i| {
                let e = &r.entries()[i];
                json!({
                    "coords": vec_to_json(r.ball(i).coords()),
                    "depth": e.depth,
                    "curvature": scalar_to_json(&e.curvature),
                })
            })
            .collect();
        m.insert("balls".into(), Value::Array(balls));
    }
    if let Some(c) = census {
        m.insert("census".into(), census_to_json(c));
    }
    Value::Object(m)
}

pub fn equivalence_report_to_json<S: Scalar>(r: &EquivalenceReport<S>) -> Value {
    json!({
        "depth": r.depth,
        "checked_words": r.checked_words,
        "checked_balls": r.checked_balls,
        "mismatches": r.mismatches.iter().map(|m| json!({
            "word": m.word,
            "seed": m.seed,
            "ambient_curvature": scalar_to_json(&m.ambient_curvature),
            "planar_curvature": scalar_to_json(&m.planar_curvature),
        })).collect::<Vec<_>>(),
        "containment": r.containment,
        "missing": vec_to_json(&r.missing),
    })
}

pub fn section_to_json<S: Scalar>(s: &Section<S>) -> Value {
    json!({
        "kind": s.kind.to_string(),
        "ambient": packing_to_json(&s.ambient),
        "seeds": s.seeds,
        "plane": vec_to_json(&s.plane),
        "planar": packing_to_json(&s.planar),
        "epsilon": s.epsilon,
        "generators": s.generators.iter().map(|g| json!({
            "word": g.label(),
            "planar_facet": g.planar_facet,
        })).collect::<Vec<_>>(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::apollonian::standard_b0;
    use crate::scalar::Approx;

    #[test]
    fn packing_round_trip() {
        let p = crate::sections::realize_octahedral(&[Quad::int(-2), Quad::int(4), Quad::int(5)])
            .unwrap();
        let back: Packing<Quad> = packing_from_json(&packing_to_json(&p)).unwrap();
        assert_eq!(back.balls, p.balls);
        assert_eq!(back.gram(), p.gram());
        let b0 = standard_b0::<Quad>();
        let back: Packing<Quad> = packing_from_json(&packing_to_json(&b0)).unwrap();
        assert_eq!(back.facets, b0.facets);
    }

    #[test]
    fn floats_and_bare_arrays() {
        let v = json!({ "balls": [[0, 0, 1, 1, 1], [0.0, 0.0, "-1", 1, 1]] });
        let p: Packing<Approx> = packing_from_json(&v).unwrap();
        assert_eq!(p.tangency_graph(), &[(0, 1)]);
        let q: Packing<Quad> = packing_from_json(&v).unwrap();
        assert_eq!(q.len(), 2);
        assert!(scalar_from_json::<Quad>(&json!(0.1)).is_err());
        assert!(packing_from_json::<Quad>(&json!({ "balls": [[1, 1, 1, 1, 1]] })).is_err());
    }
}
