//! Dual packings, orthoplicial trinities and polytopal curvatures of faces.

use crate::apollonian::dual::barycenter;
use crate::apollonian::{dual_ball, find_facets};
use crate::error::{Error, Result};
use crate::inversive::{gram, inner, Ball, Packing};
use crate::linalg::Mat;
use crate::scalar::Scalar;

fn facets_of<S: Scalar>(p: &Packing<S>) -> Result<Vec<Vec<usize>>> {
    match &p.facets {
        Some(f) => Ok(f.clone()),
        None => find_facets(p),
    }
}

/// One dual ball per facet, in facet order.
pub fn dual_packing<S: Scalar>(p: &Packing<S>) -> Result<Vec<Ball<S>>> {
    let center = barycenter(&p.balls);
    let reference = (inner(&center, &center).signum() < 0).then_some(center.as_slice());
    facets_of(p)?
        .iter()
        .map(|f| {
            let balls: Vec<Ball<S>> = f.iter().map(|&i| p.balls[i].clone()).collect();
            dual_ball(&balls, reference)
        })
        .collect()
}

/// Mean of the inversive vectors of the face's balls.
pub fn lorentz_barycenter<S: Scalar>(p: &Packing<S>, face: &[usize]) -> Result<Vec<S>> {
    if face.is_empty() {
        return Err(Error::InvalidInput("empty face".into()));
    }
    if let Some(&bad) = face.iter().find(|&&i| i >= p.len()) {
        return Err(Error::InvalidInput(format!(
            "ball index {bad} out of range"
        )));
    }
    if face.len() < p.len() {
        if let Some(facets) = &p.facets {
            if !facets.iter().any(|f| face.iter().all(|i| f.contains(i))) {
                return Err(Error::InvalidInput(
                    "not a face of the tangency polytope".into(),
                ));
            }
        }
    }
    let balls: Vec<Ball<S>> = face.iter().map(|&i| p.balls[i].clone()).collect();
    Ok(barycenter(&balls))
}

/// `κ_f = −⟨x_N, x_f⟩` with `x_N = e_{d+1} + e_{d+2}`: the mean curvature of the face.
pub fn face_curvature<S: Scalar>(p: &Packing<S>, face: &[usize]) -> Result<S> {
    let x = lorentz_barycenter(p, face)?;
    let n = x.len();
    let mut north = vec![S::zero(); n];
    north[n - 2] = S::one();
    north[n - 1] = S::one();
    Ok(-inner(&north, &x))
}

/// Gram pattern of an orthoplicial packing listed as `b1..b4, b−1..b−4`:
/// 1 on the diagonal, −3 between antipodes, −1 otherwise.
pub fn is_orthoplicial_gram<S: Scalar>(g: &Mat<S>) -> bool {
    if g.rows() != 8 || g.cols() != 8 {
        return false;
    }
    (0..8).all(|i| {
        (0..8).all(|j| {
            let want = if i == j {
                1
            } else if i % 4 == j % 4 {
                -3
            } else {
                -1
            };
            g[(i, j)] == S::from_i64(want)
        })
    })
}

/// Splits the 16 dual balls of an orthoplicial packing into the two
/// orthoplicial packings completing the trinity.
///
/// Facets of the orthoplex are the vertices of a 4-cube (adjacent when they
/// share three balls); the two colour classes of that cube give the split.
/// Each class is listed with antipodal facets (sharing no ball) in
/// positions `i` and `i + 4`.
pub fn trinity<S: Scalar>(p: &Packing<S>) -> Result<(Packing<S>, Packing<S>)> {
    if p.len() != 8 || p.dim() != 3 || !is_orthoplicial_gram(&p.gram()) {
        return Err(Error::InvalidGeometry(
            "trinity needs an orthoplicial sphere packing in b1..b4, b−1..b−4 order".into(),
        ));
    }
    let facets = facets_of(p)?;
    let duals = dual_packing(p)?;
    if facets.len() != 16 {
        return Err(Error::InvalidGeometry(format!(
            "expected 16 facets, found {}",
            facets.len()
        )));
    }
    let shared = |a: usize, b: usize| facets[a].iter().filter(|x| facets[b].contains(x)).count();
    let mut colour = vec![usize::MAX; 16];
    colour[0] = 0;
    let mut stack = vec![0];
    while let Some(a) = stack.pop() {
        for b in 0..16 {
            if shared(a, b) == 3 {
                if colour[b] == usize::MAX {
                    colour[b] = 1 - colour[a];
                    stack.push(b);
                } else if colour[b] == colour[a] {
                    return Err(Error::InvalidGeometry(
                        "facet graph is not bipartite".into(),
                    ));
                }
            }
        }
    }
    let build = |c: usize| -> Result<Packing<S>> {
        let class: Vec<usize> = (0..16).filter(|&i| colour[i] == c).collect();
        let mut used = vec![false; 16];
        let mut pos = Vec::new();
        let mut neg = Vec::new();
        for &a in &class {
            if used[a] {
                continue;
            }
            let Some(&b) = class.iter().find(|&&b| !used[b] && shared(a, b) == 0) else {
                return Err(Error::InvalidGeometry(
                    "facet without an opposite facet".into(),
                ));
            };
            used[a] = true;
            used[b] = true;
            pos.push(duals[a].clone());
            neg.push(duals[b].clone());
        }
        pos.extend(neg);
        let out = Packing::new(pos, Some("orthoplex".into()))?;
        if !is_orthoplicial_gram(&gram(&out.balls)) {
            return Err(Error::InvalidGeometry(
                "split class is not orthoplicial".into(),
            ));
        }
        let facets = crate::apollonian::matrices::facet_labels()
            .iter()
            .map(|l| l.indices())
            .collect();
        Ok(out.with_facets(facets))
    };
    Ok((build(0)?, build(1)?))
}
