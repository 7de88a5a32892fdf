//! Centered ball-packing projections: an `i`-face centred on the axis to ∞.

use super::{ball_projection, Regular, RegularPolytope};
use crate::error::{Error, Result};
use crate::inversive::Packing;
use crate::scalar::{Approx, Scalar};

#[derive(Clone, Debug, PartialEq)]
pub struct CbpLayer {
    pub count: usize,
    pub curvature: f64,
    /// `c` in `κ = κ_P + c·h`.
    pub coefficient: f64,
}

/// Curvature layers of a CBP projection, written as `κ_P + c·h`.
#[derive(Clone, Debug, PartialEq)]
pub struct CbpTable {
    pub kind: Regular,
    pub face_dim: usize,
    pub kappa_p: f64,
    /// Smallest positive vertex height divided by `ℓ_P`.
    pub h: f64,
    pub layers: Vec<CbpLayer>,
}

impl CbpTable {
    pub fn counts(&self) -> Vec<usize> {
        self.layers.iter().map(|l| l.count).collect()
    }

    pub fn coefficients(&self) -> Vec<f64> {
        self.layers.iter().map(|l| l.coefficient).collect()
    }
}

#[derive(Clone, Debug)]
pub struct CbpProjection {
    /// The rotated polytope; vertex indices agree with the packing.
    pub polytope: RegularPolytope,
    pub packing: Packing<Approx>,
    pub table: CbpTable,
}

/// Rotates (by a Householder reflection) so that the centre of the first
/// `i`-face points to the north pole, then projects.
pub fn cbp_projection(kind: Regular, i: usize) -> Result<CbpProjection> {
    let mut p = RegularPolytope::edge_scribed(kind)?;
    let n = p.dim();
    if i + 1 > n {
        return Err(Error::InvalidInput(format!(
            "{kind} has no {i}-faces centred at infinity (0 ≤ i ≤ {})",
            n - 1
        )));
    }
    let face = p.faces[i][0].clone();
    let mut c = vec![0.0; n];
    for &v in &face {
        for k in 0..n {
            c[k] += p.vertices[v][k];
        }
    }
    let norm = c.iter().map(|x| x * x).sum::<f64>().sqrt();
    let u: Vec<f64> = c.iter().map(|x| x / norm).collect();
    let mut w = u.clone();
    w[n - 1] -= 1.0;
    let w2: f64 = w.iter().map(|x| x * x).sum();
    if w2 > 1e-24 {
        for v in p.vertices.iter_mut() {
            let t: f64 = 2.0 * v.iter().zip(&w).map(|(a, b)| a * b).sum::<f64>() / w2;
            for k in 0..n {
                v[k] -= t * w[k];
            }
        }
    }
    let packing = ball_projection(&p.vertices)?.with_facets(p.facets().to_vec());
    let ell = p.ell;
    let kappa_p = 1.0 / ell;
    let heights: Vec<f64> = p.vertices.iter().map(|v| v[n - 1]).collect();
    let h = heights
        .iter()
        .filter(|&&x| x > 1e-9)
        .cloned()
        .fold(f64::MAX, f64::min)
        / ell;
    let mut ks: Vec<f64> = packing
        .balls
        .iter()
        .map(|b| b.curvature().to_f64())
        .collect();
    ks.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let mut layers: Vec<CbpLayer> = Vec::new();
    for k in ks {
        match layers.last_mut() {
            Some(l) if (l.curvature - k).abs() < 1e-9 => l.count += 1,
            _ => layers.push(CbpLayer {
                count: 1,
                curvature: k,
                coefficient: (k - kappa_p) / h,
            }),
        }
    }
    let table = CbpTable {
        kind: p.kind,
        face_dim: i,
        kappa_p,
        h,
        layers,
    };
    Ok(CbpProjection {
        polytope: p,
        packing,
        table,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orthoplex_edge_column() {
        let t = cbp_projection(Regular::Orthoplex(4), 1).unwrap().table;
        assert_eq!(t.counts(), vec![2, 4, 2]);
        assert!((t.kappa_p - 1.0).abs() < 1e-12 && (t.h - 1.0).abs() < 1e-12);
        let ks: Vec<f64> = t.layers.iter().map(|l| l.curvature).collect();
        for (a, b) in ks.iter().zip([0.0, 1.0, 2.0]) {
            assert!((a - b).abs() < 1e-9);
        }
    }

    #[test]
    fn cube_facet_column() {
        let t = cbp_projection(Regular::Cube(4), 3).unwrap().table;
        assert_eq!(t.counts(), vec![8, 8]);
        assert!((t.layers[0].curvature - (3f64.sqrt() - 1.0)).abs() < 1e-9);
    }

    #[test]
    fn bad_face_dimension() {
        assert!(cbp_projection(Regular::Cube(3), 3).is_err());
    }
}
