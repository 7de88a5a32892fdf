//! Dual balls, facet centres and the reflections that generate Apollonian groups.

use crate::error::{Error, Result};
use crate::inversive::{inner, Ball};
use crate::linalg::Mat;
use crate::scalar::Scalar;

/// Rows `Q·b` so that `rows · x = (⟨b, x⟩)_b`.
fn product_rows<S: Scalar>(balls: &[&[S]]) -> Mat<S> {
    let rows = balls
        .iter()
        .map(|b| {
            let n = b.len();
            let mut r = b.to_vec();
            r[n - 1] = -r[n - 1].clone();
            r
        })
        .collect();
    Mat::from_rows(rows)
}

/// A non-zero vector orthogonal to every ball of the facet, unnormalized.
///
/// Sign is fixed so that `⟨w, reference⟩ < 0` when a reference (time-like
/// barycenter of the packing) is given.
pub fn dual_vector<S: Scalar>(facet: &[&[S]], reference: Option<&[S]>) -> Result<Vec<S>> {
    let Some(first) = facet.first() else {
        return Err(Error::Degenerate("empty facet".into()));
    };
    let n = first.len();
    if let Some(bad) = facet.iter().find(|b| b.len() != n) {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: bad.len(),
        });
    }
    let ns = product_rows(facet).nullspace();
    if ns.len() != 1 {
        return Err(Error::Degenerate(format!(
            "facet spans a space of codimension {}",
            ns.len()
        )));
    }
    let mut w = ns.into_iter().next().unwrap();
    if let Some(r) = reference {
        match inner(&w, r).signum() {
            0 => {
                return Err(Error::Degenerate(
                    "dual ball orthogonal to the reference".into(),
                ))
            }
            1 => w = w.into_iter().map(|x| -x).collect(),
            _ => {}
        }
    }
    Ok(w)
}

/// The unit ball orthogonal to all balls of a facet.
pub fn dual_ball<S: Scalar>(facet: &[Ball<S>], reference: Option<&[S]>) -> Result<Ball<S>> {
    let refs: Vec<&[S]> = facet.iter().map(|b| b.coords()).collect();
    let w = dual_vector(&refs, reference)?;
    let norm = inner(&w, &w);
    if norm.signum() <= 0 {
        return Err(Error::Degenerate("facet has no space-like dual".into()));
    }
    let s = norm
        .sqrt()
        .ok_or_else(|| Error::Field(format!("√({norm})")))?;
    Ok(Ball::new_unchecked(
        w.into_iter().map(|x| x / s.clone()).collect(),
    ))
}

/// Lorentzian barycenter (mean of the ball vectors).
pub fn barycenter<S: Scalar>(balls: &[Ball<S>]) -> Vec<S> {
    let n = balls[0].coords().len();
    let k = S::from_i64(balls.len() as i64);
    (0..n)
        .map(|j| {
            balls
                .iter()
                .fold(S::zero(), |a, b| a + b.coords()[j].clone())
                / k.clone()
        })
        .collect()
}

/// Time-like `x` with `⟨x, b_i⟩ = −1` on a facet of a cross-polytopal packing
/// and `⟨x, x⟩ = −1`.
///
/// There are two such vectors, the centres of the packing and of its image
/// under the facet's dual inversion. The future-pointing ones are ordered by
/// curvature, then coordinates, and the first is returned.
pub fn facet_center_vector<S: Scalar>(facet: &[Ball<S>]) -> Result<Vec<S>> {
    let roots = facet_center_candidates(facet)?;
    roots
        .into_iter()
        .next()
        .ok_or_else(|| Error::Unrealizable("facet has no time-like centre".into()))
}

pub fn facet_center_candidates<S: Scalar>(facet: &[Ball<S>]) -> Result<Vec<Vec<S>>> {
    let refs: Vec<&[S]> = facet.iter().map(|b| b.coords()).collect();
    let n = refs[0].len();
    let rows = product_rows(&refs);
    let rhs = vec![-S::one(); refs.len()];
    let x0 = rows
        .solve(&rhs)
        .ok_or_else(|| Error::Unrealizable("inconsistent tangency system".into()))?;
    let ns = rows.nullspace();
    if ns.len() != 1 {
        return Err(Error::Degenerate(format!(
            "facet of rank {} in dimension {n}",
            rows.rank()
        )));
    }
    let v = &ns[0];
    // ⟨x0 + t v, x0 + t v⟩ = −1
    let a = inner(v, v);
    let b = inner(&x0, v);
    let c = inner(&x0, &x0) + S::one();
    let along = |t: &S| -> Vec<S> {
        x0.iter()
            .zip(v)
            .map(|(p, q)| p.clone() + t.clone() * q.clone())
            .collect()
    };
    let mut roots = Vec::new();
    if a.is_zero() {
        if b.is_zero() {
            return Err(Error::Degenerate("tangency system is degenerate".into()));
        }
        roots.push(along(&(-c / (S::from_i64(2) * b))));
    } else {
        let disc = b.clone() * b.clone() - a.clone() * c;
        if disc.signum() < 0 {
            return Err(Error::Unrealizable("facet is not cross-polytopal".into()));
        }
        let s = disc
            .sqrt()
            .ok_or_else(|| Error::Field(format!("√({disc})")))?;
        roots.push(along(&((-b.clone() - s.clone()) / a.clone())));
        if !s.is_zero() {
            roots.push(along(&((-b + s) / a)));
        }
    }
    roots.retain(|x| x[n - 1].signum() > 0);
    roots.sort_by(|x, y| {
        crate::inversive::curvature_of(x)
            .cmp_s(&crate::inversive::curvature_of(y))
            .then_with(|| cmp_coords(x, y))
    });
    Ok(roots)
}

pub(crate) fn cmp_coords<S: Scalar>(x: &[S], y: &[S]) -> std::cmp::Ordering {
    for (a, b) in x.iter().zip(y) {
        let o = a.cmp_s(b);
        if o != std::cmp::Ordering::Equal {
            return o;
        }
    }
    std::cmp::Ordering::Equal
}

/// `b_{-i} = 2x_P − b_i`.
pub fn antipode<S: Scalar>(center: &[S], b: &Ball<S>) -> Ball<S> {
    let two = S::from_i64(2);
    Ball::new_unchecked(
        center
            .iter()
            .zip(b.coords())
            .map(|(c, x)| two.clone() * c.clone() - x.clone())
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::apollonian::matrices::standard_b0;
    use crate::inversive::reflection;
    use crate::scalar::Quad;

    #[test]
    fn dual_of_first_facet() {
        let p = standard_b0::<Quad>();
        let xp = barycenter(&p.balls);
        assert_eq!(xp, [0, 0, 0, 0, 1].map(Quad::int).to_vec());
        let d = dual_ball(&p.balls[0..4], Some(&xp)).unwrap();
        assert_eq!(d.coords(), [0, 1, 0, 1, 1].map(Quad::int).as_slice());
        let s = reflection(&d).unwrap();
        assert_eq!(
            s.matrix(),
            &crate::apollonian::matrices::printed_matrix::<Quad>(0)
        );
    }

    #[test]
    fn center_and_antipodes() {
        let p = standard_b0::<Quad>();
        let c = facet_center_vector(&p.balls[0..4]).unwrap();
        assert_eq!(c, [0, 0, 0, 0, 1].map(Quad::int).to_vec());
        let alt = facet_center_candidates(&p.balls[0..4]).unwrap();
        assert_eq!(alt[1], [0, 2, 0, 2, 3].map(Quad::int).to_vec());
        for i in 0..4 {
            assert_eq!(antipode(&c, &p.balls[i]), p.balls[i + 4]);
        }
    }
}
