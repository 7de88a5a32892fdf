//! Integrality tests for Apollonian clusters from a few seed curvatures.

use crate::descartes::{cubical_form, simplicial_form};
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use num_integer::Roots;

fn check_len<S>(k: &[S], n: usize, what: &str) -> Result<()> {
    if k.len() != n {
        return Err(Error::InvalidInput(format!(
            "{what} test takes {n} curvatures, got {}",
            k.len()
        )));
    }
    Ok(())
}

fn all_integers<S: Scalar>(k: &[S]) -> bool {
    k.iter().all(|x| x.as_integer().is_some())
}

/// `Some(√r)` when `r` is a perfect square, `None` otherwise, and an error
/// when `r < 0` (no configuration has these curvatures).
pub fn integer_sqrt<S: Scalar>(r: &S) -> Result<Option<i128>> {
    if r.signum() < 0 {
        return Err(Error::Unrealizable(format!("negative radicand {r}")));
    }
    Ok(r.as_integer().and_then(|n| {
        let s = n.sqrt();
        (s * s == n).then_some(s)
    }))
}

/// Radicand `𝔗₃(κ₁,…,κ₄)` for four pairwise tangent balls of an orthoplicial packing.
pub fn orthoplicial_radicand<S: Scalar>(k: &[S]) -> Result<S> {
    check_len(k, 4, "orthoplicial")?;
    Ok(simplicial_form(k))
}

/// Radicand `2𝔗₂(κ₁,κ₂,κ₃)` for three pairwise tangent disks of an octahedral packing.
pub fn octahedral_radicand<S: Scalar>(k: &[S]) -> Result<S> {
    check_len(k, 3, "octahedral")?;
    Ok(S::from_i64(2) * simplicial_form(k))
}

/// Radicand `2ℭ₂(κ₁,κ₂,κ₃)` for three consecutive tangent disks of a cubical packing.
pub fn cubical_radicand<S: Scalar>(k: &[S]) -> Result<S> {
    check_len(k, 3, "cubical")?;
    Ok(S::from_i64(2) * cubical_form(k))
}

pub fn is_integral_orthoplicial<S: Scalar>(k: &[S]) -> Result<bool> {
    let r = orthoplicial_radicand(k)?;
    Ok(integer_sqrt(&r)?.is_some() && all_integers(k))
}

pub fn is_integral_octahedral<S: Scalar>(k: &[S]) -> Result<bool> {
    let r = octahedral_radicand(k)?;
    Ok(integer_sqrt(&r)?.is_some() && all_integers(k))
}

pub fn is_integral_cubical<S: Scalar>(k: &[S]) -> Result<bool> {
    let r = cubical_radicand(k)?;
    Ok(integer_sqrt(&r)?.is_some() && all_integers(k))
}

/// Four mutually tangent disks are integral exactly when their curvatures
/// are; a tuple off the Descartes quadric is not a configuration at all.
pub fn is_integral_tetrahedral<S: Scalar>(k: &[S]) -> Result<bool> {
    check_len(k, 4, "tetrahedral")?;
    let t = simplicial_form(&k[..]);
    if !t.is_zero() {
        return Err(Error::Unrealizable(format!(
            "not a Descartes quadruple (form = {t})"
        )));
    }
    Ok(all_integers(k))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Quad;

    fn q(v: &[i64]) -> Vec<Quad> {
        v.iter().map(|&x| Quad::int(x)).collect()
    }

    #[test]
    fn seeds_of_the_lifting_examples() {
        assert!(is_integral_orthoplicial(&q(&[-2, 4, 5, 5])).unwrap());
        assert_eq!(
            integer_sqrt(&orthoplicial_radicand(&q(&[-2, 4, 5, 5])).unwrap()).unwrap(),
            Some(1)
        );
        assert!(is_integral_octahedral(&q(&[-2, 4, 5])).unwrap());
        assert_eq!(octahedral_radicand(&q(&[-2, 4, 5])).unwrap(), Quad::int(4));
        assert!(is_integral_cubical(&q(&[5, -3, 12])).unwrap());
        assert_eq!(cubical_radicand(&q(&[5, -3, 12])).unwrap(), Quad::int(0));
        assert!(is_integral_tetrahedral(&q(&[-1, 2, 2, 3])).unwrap());
    }

    #[test]
    fn unrealizable_is_an_error() {
        assert!(matches!(
            is_integral_octahedral(&q(&[1, 1, -1])),
            Err(Error::Unrealizable(_))
        ));
        assert!(matches!(
            is_integral_tetrahedral(&q(&[1, 1, 1, 1])),
            Err(Error::Unrealizable(_))
        ));
        assert!(!is_integral_octahedral(&q(&[1, 1, 1])).unwrap());
    }
}
