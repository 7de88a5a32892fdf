//! Curvature census of the integral 24-cell sphere packing.

use super::census::Census;
use super::orbit::{orbit, Bound, OrbitReport};
use super::{dual_vector, ApollonianGroup, Generator};
use crate::error::Result;
use crate::inversive::{align_curvature, reflection_in, Ball, Packing};
use crate::scalar::{Quad, Scalar};

fn units() -> Vec<[Quad; 4]> {
    let h = Quad::frac(1, 2);
    let mut out = Vec::new();
    for s in [1, -1] {
        for i in 0..4 {
            let mut u = [Quad::int(0); 4];
            u[i] = Quad::int(s);
            out.push(u);
        }
    }
    for mask in 0..16 {
        out.push([0, 1, 2, 3].map(|i| if mask >> i & 1 == 1 { -h } else { h }));
    }
    out
}

/// The edge-scribed 24-cell projected (ball `(2u, √3)` for each unit
/// vertex `u`), with the facets (octahedra) attached.
pub fn standard_r4() -> Packing<Quad> {
    let r3 = Quad::sqrt_int(3);
    let us = units();
    let balls: Vec<Ball<Quad>> = us
        .iter()
        .map(|u| {
            let mut c: Vec<Quad> = u.iter().map(|x| *x * Quad::int(2)).collect();
            c.push(r3);
            Ball::new(c).expect("unit")
        })
        .collect();
    // facet normals: permutations of (±1, ±1, 0, 0)
    let mut facets = Vec::new();
    for i in 0..4 {
        for j in i + 1..4 {
            for (si, sj) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
                let mut n = [0i64; 4];
                n[i] = si;
                n[j] = sj;
                let h: Vec<Quad> = us
                    .iter()
                    .map(|u| (0..4).fold(Quad::int(0), |a, k| a + u[k] * Quad::int(n[k])))
                    .collect();
                let m = *h.iter().max().unwrap();
                facets.push((0..24).filter(|&k| h[k] == m).collect::<Vec<usize>>());
            }
        }
    }
    Packing::new(balls, Some("24-cell".into()))
        .expect("24-cell")
        .with_facets(facets)
}

/// The 24-cell packing moved so its curvatures are `3 − u·(3,1,1,1)`,
/// i.e. `{0:2, 1:3, 2:6, 3:2, 4:6, 5:3, 6:2}`.
pub fn integral_r4() -> Result<Packing<Quad>> {
    let p = standard_r4();
    let f = [
        Quad::frac(-3, 2),
        Quad::frac(-1, 2),
        Quad::frac(-1, 2),
        Quad::frac(-1, 2),
        Quad::sqrt_int(3),
    ];
    let m = align_curvature(&f)?;
    let mut out = p.apply(&m)?;
    out.tag = Some("24-cell".into());
    Ok(out)
}

/// Reflections in the 24 dual balls (one per octahedral facet).
pub fn r4_group(p: &Packing<Quad>) -> Result<ApollonianGroup<Quad>> {
    let facets = p.facets.clone().unwrap_or_default();
    let generators = facets
        .iter()
        .enumerate()
        .map(|(i, f)| {
            let refs: Vec<&[Quad]> = f.iter().map(|&k| p.balls[k].coords()).collect();
            let w = dual_vector(&refs, None)?;
            Ok(Generator {
                label: format!("F{}", i + 1),
                facet: f.clone(),
                map: reflection_in(&w)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ApollonianGroup { generators })
}

#[derive(Clone, Debug)]
pub struct ProbeReport {
    pub report: OrbitReport<Quad>,
    pub census: Census<Quad>,
    pub max_curvature: i64,
    pub all_integral: bool,
}

impl ProbeReport {
    /// Fraction of `0..=max` attained.
    pub fn coverage(&self) -> f64 {
        let total = self.max_curvature as f64 + 1.0;
        (total - self.census.missing_integers.len() as f64) / total
    }
}

/// Orbit of the integral 24-cell packing up to a depth and curvature bound,
/// with the integers of `[0, max]` that never occur.
pub fn probe_r4(depth: u32, max_curvature: i64) -> Result<ProbeReport> {
    let p = integral_r4()?;
    let g = r4_group(&p)?;
    let report = orbit(&p, &g, &Bound::depth(depth).with_curvature(max_curvature))?;
    let census = Census::from_values(
        report.curvatures(),
        Some((&Quad::int(0), &Quad::int(max_curvature))),
    );
    let all_integral = report.curvatures().all(|k| k.as_integer().is_some());
    Ok(ProbeReport {
        report,
        census,
        max_curvature,
        all_integral,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seed_curvatures() {
        let p = integral_r4().unwrap();
        assert!(p.is_packing());
        assert_eq!(p.edges.len(), 96);
        assert_eq!(p.facets.as_ref().unwrap().len(), 24);
        let c = Census::from_values(p.curvatures().iter(), None);
        let got: Vec<(i128, usize)> = c
            .counts
            .iter()
            .map(|(k, n)| (k.as_integer().unwrap(), *n))
            .collect();
        assert_eq!(
            got,
            vec![(0, 2), (1, 3), (2, 6), (3, 2), (4, 6), (5, 3), (6, 2)]
        );
    }

    #[test]
    fn shallow_orbit_is_integral() {
        let r = probe_r4(2, 40).unwrap();
        assert!(r.all_integral);
        assert!(r.report.used_lattice());
    }
}
