//! Möbius spectra: eigenvalues of the Gram matrix of a polytopal packing.

use crate::inversive::Packing;
use crate::linalg::Mat;
use crate::scalar::{Quad, Rat, Scalar};
use nalgebra::{DMatrix, SymmetricEigen};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

#[derive(Clone, Debug, PartialEq)]
pub struct MobiusSpectrum {
    /// Eigenvalues (clustered to 1e−7) with multiplicities, increasing.
    pub approx: Vec<(f64, usize)>,
    /// The same multiset certified exactly, when every eigenvalue is rational.
    pub exact: Option<Vec<(Rat, usize)>>,
    /// Rank of the Gram matrix; a polytopal packing of `d`-balls has rank `d + 2`.
    pub rank: usize,
    pub full_rank: bool,
}

fn big(r: &Rat) -> BigRational {
    BigRational::new(BigInt::from(*r.numer()), BigInt::from(*r.denom()))
}

/// Rank over ℚ with unbounded integers.
fn rank_big(mut m: Vec<Vec<BigRational>>) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let piv = m[r][c].clone();
        for i in r + 1..rows {
            if !m[i][c].is_zero() {
                let f = &m[i][c] / &piv;
                for j in c..cols {
                    let t = &f * &m[r][j];
                    m[i][j] -= t;
                }
            }
        }
        r += 1;
        if r == rows {
            break;
        }
    }
    r
}

fn rationalize(x: f64) -> Option<Rat> {
    (1..=24i128).find_map(|den| {
        let num = (x * den as f64).round();
        ((x - num / den as f64).abs() < 1e-7).then(|| Rat::new(num as i128, den))
    })
}

pub fn spectrum_of_gram(g: &Mat<Quad>) -> MobiusSpectrum {
    let n = g.rows();
    let f = DMatrix::from_fn(n, n, |i, j| g[(i, j)].to_f64());
    let rank = f.rank(1e-7);
    let mut ev: Vec<f64> = SymmetricEigen::new(f).eigenvalues.iter().copied().collect();
    ev.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let mut approx: Vec<(f64, usize)> = Vec::new();
    for x in ev {
        match approx.last_mut() {
            Some((y, m)) if (x - *y).abs() < 1e-7 => {
                *y = (*y * *m as f64 + x) / (*m as f64 + 1.0);
                *m += 1;
            }
            _ => approx.push((x, 1)),
        }
    }
    let rational = (0..n).all(|i| (0..n).all(|j| g[(i, j)].is_rational()));
    let exact = if rational {
        approx
            .iter()
            .map(|&(x, m)| {
                let r = rationalize(x)?;
                let shifted: Vec<Vec<BigRational>> = (0..n)
                    .map(|i| {
                        (0..n)
                            .map(|j| {
                                big(&g[(i, j)].a())
                                    - if i == j { big(&r) } else { BigRational::zero() }
                            })
                            .collect()
                    })
                    .collect();
                (n - rank_big(shifted) == m).then_some((r, m))
            })
            .collect::<Option<Vec<_>>>()
    } else {
        None
    };
    MobiusSpectrum {
        approx,
        exact,
        rank,
        full_rank: false,
    }
}

/// Spectrum of `gram(p)`; exact certification needs a rational Gram matrix.
pub fn mobius_spectrum<S: Scalar>(p: &Packing<S>) -> MobiusSpectrum {
    let g = p.gram();
    let q = g.map(|x| x.to_quad().unwrap_or_else(|| float_as_quad(x.to_f64())));
    let mut s = spectrum_of_gram(&q);
    if !S::is_exact() {
        s.exact = None;
    }
    s.full_rank = s.rank == p.dim() + 2;
    s
}

/// Float Gram entries are only used for the float eigenvalues; the exact
/// branch is disabled for them by the caller.
fn float_as_quad(x: f64) -> Quad {
    let den: i128 = 1 << 40;
    Quad::rational(Rat::new((x * den as f64).round() as i128, den))
}

impl MobiusSpectrum {
    /// Whether the spectrum matches `expected` (value, multiplicity) pairs
    /// to `eps`, ignoring order.
    pub fn matches(&self, expected: &[(f64, usize)], eps: f64) -> bool {
        let mut e = expected.to_vec();
        e.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
        e.len() == self.approx.len()
            && e.iter()
                .zip(&self.approx)
                .all(|(a, b)| (a.0 - b.0).abs() <= eps && a.1 == b.1)
    }

    pub fn matches_exact(&self, expected: &[(Rat, usize)]) -> bool {
        let Some(ex) = &self.exact else { return false };
        let mut e = expected.to_vec();
        e.sort();
        let mut mine = ex.clone();
        mine.sort();
        e == mine
    }

    pub fn largest_magnitude(&self) -> f64 {
        self.approx.iter().map(|x| x.0.abs()).fold(0.0, f64::max)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polytopes::{Regular, RegularPolytope};

    #[test]
    fn triangle_spectrum() {
        let p = RegularPolytope::edge_scribed(Regular::Simplex(3)).unwrap();
        let s = spectrum_of_gram(&p.exact_gram().unwrap());
        assert!(s.matches_exact(&[(Rat::from_integer(-2), 1), (Rat::from_integer(2), 3)]));
    }

    #[test]
    fn orthoplex_spectrum() {
        let p = RegularPolytope::edge_scribed(Regular::Orthoplex(4)).unwrap();
        let s = spectrum_of_gram(&p.exact_gram().unwrap());
        assert!(s.matches_exact(&[
            (Rat::from_integer(-8), 1),
            (Rat::from_integer(4), 4),
            (Rat::from_integer(0), 3)
        ]));
        assert_eq!(s.rank, 5);
    }
}
