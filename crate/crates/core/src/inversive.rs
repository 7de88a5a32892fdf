//! Inversive coordinates of d-balls in Lorentz space `L^{d+1,1}`.
//!
//! A ball is a vector `x ∈ ℝ^{d+2}` with `⟨x,x⟩ = 1` for the form
//! `Q = diag(1,…,1,−1)`. Its curvature is `x_{d+2} − x_{d+1}`, its
//! co-curvature `x_{d+2} + x_{d+1}`. Tangent balls have product −1,
//! orthogonal balls 0.

use crate::error::{Error, Result};
use crate::linalg::Mat;
use crate::scalar::Scalar;
use std::collections::VecDeque;

/// `xᵀQy` without a length check.
pub fn inner<S: Scalar>(x: &[S], y: &[S]) -> S {
    debug_assert_eq!(x.len(), y.len());
    let n = x.len();
    let mut acc = -(x[n - 1].clone() * y[n - 1].clone());
    for i in 0..n - 1 {
        if !x[i].is_zero() && !y[i].is_zero() {
            acc = acc + x[i].clone() * y[i].clone();
        }
    }
    acc
}

pub fn try_inner<S: Scalar>(x: &[S], y: &[S]) -> Result<S> {
    if x.len() != y.len() {
        return Err(Error::DimensionMismatch {
            expected: x.len(),
            found: y.len(),
        });
    }
    if x.len() < 2 {
        return Err(Error::InvalidInput(
            "inversive vectors have at least two entries".into(),
        ));
    }
    Ok(inner(x, y))
}

/// `kᵀx` with `k = (0,…,0,−1,1)`.
pub fn curvature_of<S: Scalar>(x: &[S]) -> S {
    let n = x.len();
    x[n - 1].clone() - x[n - 2].clone()
}

/// The Lorentz form `Q` on `ℝ^n`.
pub fn q_matrix<S: Scalar>(n: usize) -> Mat<S> {
    let mut d = vec![S::one(); n];
    d[n - 1] = -S::one();
    Mat::diag(&d)
}

/// Euclidean description of a ball.
#[derive(Clone, Debug, PartialEq)]
pub enum Geometry<S> {
    /// Interior of the sphere for positive curvature, exterior for negative.
    Sphere { center: Vec<S>, curvature: S },
    /// `{x : normal·x ≥ offset}`.
    HalfSpace { normal: Vec<S>, offset: S },
}

#[derive(Clone, Debug, PartialEq)]
pub struct Ball<S> {
    coords: Vec<S>,
}

impl<S: Scalar> Ball<S> {
    /// Checks `⟨b,b⟩ = 1`.
    pub fn new(coords: Vec<S>) -> Result<Self> {
        if coords.len() < 3 {
            return Err(Error::InvalidInput("a d-ball needs d ≥ 1".into()));
        }
        let s = inner(&coords, &coords);
        if s != S::one() {
            return Err(Error::NotUnit(s.to_string()));
        }
        Ok(Ball { coords })
    }

    pub fn new_unchecked(coords: Vec<S>) -> Self {
        Ball { coords }
    }

    pub fn from_i64(coords: &[i64]) -> Result<Self> {
        Ball::new(coords.iter().map(|&x| S::from_i64(x)).collect())
    }

    /// Ball bounded by the sphere with given center and radius.
    pub fn from_sphere(center: &[S], radius: &S) -> Result<Self> {
        if radius.signum() <= 0 {
            return Err(Error::InvalidGeometry(format!(
                "radius {radius} is not positive"
            )));
        }
        Ball::from_center_curvature(center, &(S::one() / radius.clone()))
    }

    /// Signed version: negative curvature is the exterior of the sphere.
    pub fn from_center_curvature(center: &[S], curvature: &S) -> Result<Self> {
        if curvature.is_zero() {
            return Err(Error::InvalidGeometry(
                "zero curvature needs a half-space".into(),
            ));
        }
        let k = curvature.clone();
        let r = S::one() / k.clone();
        let c2 = crate::linalg::dot(center, center);
        let kbar = k.clone() * (c2 - r.clone() * r);
        let two = S::from_i64(2);
        let mut coords: Vec<S> = center.iter().map(|c| c.clone() * k.clone()).collect();
        coords.push((kbar.clone() - k.clone()) / two.clone());
        coords.push((kbar + k) / two);
        Ok(Ball { coords })
    }

    /// Half-space `{n·x ≥ δ}` for a unit normal `n`.
    pub fn from_halfspace(normal: &[S], offset: &S) -> Result<Self> {
        if crate::linalg::dot(normal, normal) != S::one() {
            return Err(Error::InvalidGeometry(
                "half-space normal is not a unit vector".into(),
            ));
        }
        let mut coords = normal.to_vec();
        coords.push(offset.clone());
        coords.push(offset.clone());
        Ok(Ball { coords })
    }

    pub fn dim(&self) -> usize {
        self.coords.len() - 2
    }
    pub fn coords(&self) -> &[S] {
        &self.coords
    }
    pub fn into_coords(self) -> Vec<S> {
        self.coords
    }

    pub fn curvature(&self) -> S {
        curvature_of(&self.coords)
    }

    pub fn cocurvature(&self) -> S {
        let n = self.coords.len();
        self.coords[n - 1].clone() + self.coords[n - 2].clone()
    }

    pub fn product(&self, other: &Ball<S>) -> Result<S> {
        try_inner(&self.coords, &other.coords)
    }

    pub fn is_halfspace(&self) -> bool {
        self.curvature().is_zero()
    }

    pub fn geometry(&self) -> Geometry<S> {
        let d = self.dim();
        let k = self.curvature();
        if k.is_zero() {
            Geometry::HalfSpace {
                normal: self.coords[..d].to_vec(),
                offset: self.coords[d].clone(),
            }
        } else {
            Geometry::Sphere {
                center: self.coords[..d]
                    .iter()
                    .map(|x| x.clone() / k.clone())
                    .collect(),
                curvature: k,
            }
        }
    }

    pub fn key(&self) -> Vec<S::Key> {
        self.coords.iter().map(|x| x.key()).collect()
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Ball<T> {
        Ball {
            coords: self.coords.iter().map(f).collect(),
        }
    }
}

/// A matrix preserving the inversive product and the time orientation.
#[derive(Clone, Debug, PartialEq)]
pub struct LorentzMap<S> {
    m: Mat<S>,
}

/// `MᵀQM = Q` and `M` maps the future cone to itself.
///
/// For `M` in `O(d+1,1)` the orientation test reduces to a positive
/// bottom-right entry.
pub fn is_lorentz<S: Scalar>(m: &Mat<S>) -> bool {
    if !m.is_square() || m.rows() < 3 {
        return false;
    }
    let n = m.rows();
    let q = q_matrix::<S>(n);
    m.transpose().mul(&q).mul(m) == q && m[(n - 1, n - 1)].signum() > 0
}

impl<S: Scalar> LorentzMap<S> {
    pub fn new(m: Mat<S>) -> Result<Self> {
        if !is_lorentz(&m) {
            return Err(Error::InvalidInput("matrix is not in O↑(d+1,1)".into()));
        }
        Ok(LorentzMap { m })
    }

    pub fn new_unchecked(m: Mat<S>) -> Self {
        LorentzMap { m }
    }

    pub fn identity(n: usize) -> Self {
        LorentzMap {
            m: Mat::identity(n),
        }
    }

    pub fn matrix(&self) -> &Mat<S> {
        &self.m
    }

    pub fn size(&self) -> usize {
        self.m.rows()
    }

    pub fn apply(&self, b: &Ball<S>) -> Result<Ball<S>> {
        if b.coords.len() != self.size() {
            return Err(Error::DimensionMismatch {
                expected: self.size(),
                found: b.coords.len(),
            });
        }
        Ok(Ball {
            coords: self.m.mul_vec(&b.coords),
        })
    }

    pub fn apply_vec(&self, v: &[S]) -> Vec<S> {
        self.m.mul_vec(v)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &LorentzMap<S>) -> LorentzMap<S> {
        LorentzMap {
            m: self.m.mul(&other.m),
        }
    }

    /// `M⁻¹ = Q Mᵀ Q`.
    pub fn inverse(&self) -> LorentzMap<S> {
        let q = q_matrix::<S>(self.size());
        LorentzMap {
            m: q.mul(&self.m.transpose()).mul(&q),
        }
    }

    pub fn is_involution(&self) -> bool {
        self.m.mul(&self.m).is_identity()
    }

    /// Smallest `k ≤ max` with `M^k = I`.
    pub fn order(&self, max: u32) -> Option<u32> {
        let mut p = self.m.clone();
        for k in 1..=max {
            if p.is_identity() {
                return Some(k);
            }
            p = p.mul(&self.m);
        }
        None
    }
}

/// Inversion in the ball `b`: `x ↦ x − 2⟨x,b⟩b`.
pub fn reflection<S: Scalar>(b: &Ball<S>) -> Result<LorentzMap<S>> {
    let s = inner(&b.coords, &b.coords);
    if s != S::one() {
        return Err(Error::NotUnit(s.to_string()));
    }
    reflection_in(&b.coords)
}

/// Reflection in any space-like `w`: `x ↦ x − 2⟨x,w⟩/⟨w,w⟩·w`.
///
/// No square root is taken, so the map stays in the field of `w`.
pub fn reflection_in<S: Scalar>(w: &[S]) -> Result<LorentzMap<S>> {
    let n = w.len();
    let ww = inner(w, w);
    if ww.signum() <= 0 {
        return Err(Error::Degenerate(
            "reflection vector is not space-like".into(),
        ));
    }
    let two = S::from_i64(2);
    let qw: Vec<S> = (0..n)
        .map(|j| {
            if j + 1 == n {
                -w[j].clone()
            } else {
                w[j].clone()
            }
        })
        .collect();
    let m = Mat::from_fn(n, n, |i, j| {
        let e = if i == j { S::one() } else { S::zero() };
        e - two.clone() * w[i].clone() * qw[j].clone() / ww.clone()
    });
    Ok(LorentzMap { m })
}

/// Balls with their tangency graph.
#[derive(Clone, Debug, PartialEq)]
pub struct Packing<S> {
    pub balls: Vec<Ball<S>>,
    pub edges: Vec<(usize, usize)>,
    pub tag: Option<String>,
    /// Vertex sets of the facets of the tangency polytope, when known.
    pub facets: Option<Vec<Vec<usize>>>,
}

impl<S: Scalar> Packing<S> {
    pub fn new(balls: Vec<Ball<S>>, tag: Option<String>) -> Result<Self> {
        if let Some(b) = balls.first() {
            let n = b.coords.len();
            if let Some(bad) = balls.iter().find(|x| x.coords.len() != n) {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: bad.coords.len(),
                });
            }
        }
        let edges = tangency_edges(&balls);
        Ok(Packing {
            balls,
            edges,
            tag,
            facets: None,
        })
    }

    pub fn with_facets(mut self, facets: Vec<Vec<usize>>) -> Self {
        self.facets = Some(facets);
        self
    }

    pub fn len(&self) -> usize {
        self.balls.len()
    }
    pub fn is_empty(&self) -> bool {
        self.balls.is_empty()
    }
    pub fn dim(&self) -> usize {
        self.balls.first().map_or(0, |b| b.dim())
    }

    pub fn gram(&self) -> Mat<S> {
        gram(&self.balls)
    }

    pub fn tangency_graph(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn curvatures(&self) -> Vec<S> {
        self.balls.iter().map(|b| b.curvature()).collect()
    }

    /// Interiors pairwise disjoint: every off-diagonal product ≤ −1.
    pub fn is_packing(&self) -> bool {
        let n = self.balls.len();
        (0..n).all(|i| {
            (i + 1..n).all(|j| {
                let p = inner(&self.balls[i].coords, &self.balls[j].coords);
                (p + S::one()).signum() <= 0
            })
        })
    }

    /// All-pairs distances in the tangency graph (`usize::MAX` if disconnected).
    pub fn graph_distances(&self) -> Vec<Vec<usize>> {
        graph_distances(self.balls.len(), &self.edges)
    }

    pub fn apply(&self, m: &LorentzMap<S>) -> Result<Packing<S>> {
        let balls = self
            .balls
            .iter()
            .map(|b| m.apply(b))
            .collect::<Result<Vec<_>>>()?;
        Ok(Packing {
            balls,
            edges: self.edges.clone(),
            tag: self.tag.clone(),
            facets: self.facets.clone(),
        })
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T + Copy) -> Packing<T> {
        Packing {
            balls: self.balls.iter().map(|b| b.map(f)).collect(),
            edges: self.edges.clone(),
            tag: self.tag.clone(),
            facets: self.facets.clone(),
        }
    }
}

pub fn gram<S: Scalar>(balls: &[Ball<S>]) -> Mat<S> {
    let n = balls.len();
    let mut g = Mat::zeros(n, n);
    for i in 0..n {
        for j in i..n {
            let v = inner(&balls[i].coords, &balls[j].coords);
            g[(j, i)] = v.clone();
            g[(i, j)] = v;
        }
    }
    g
}

pub fn tangency_edges<S: Scalar>(balls: &[Ball<S>]) -> Vec<(usize, usize)> {
    let mut edges = Vec::new();
    let m1 = -S::one();
    for i in 0..balls.len() {
        for j in i + 1..balls.len() {
            if inner(&balls[i].coords, &balls[j].coords) == m1 {
                edges.push((i, j));
            }
        }
    }
    edges
}

pub fn graph_distances(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<usize>> {
    let mut adj = vec![Vec::new(); n];
    for &(a, b) in edges {
        adj[a].push(b);
        adj[b].push(a);
    }
    (0..n)
        .map(|s| {
            let mut dist = vec![usize::MAX; n];
            dist[s] = 0;
            let mut q = VecDeque::from([s]);
            while let Some(u) = q.pop_front() {
                for &v in &adj[u] {
                    if dist[v] == usize::MAX {
                        dist[v] = dist[u] + 1;
                        q.push_back(v);
                    }
                }
            }
            dist
        })
        .collect()
}

/// The dilation `x ↦ s·x` of `ℝ^d` acting on `(d+2)`-vectors: curvatures are
/// divided by `s`, co-curvatures multiplied by it.
pub fn dilation<S: Scalar>(n: usize, s: &S) -> Result<LorentzMap<S>> {
    if s.signum() <= 0 || n < 3 {
        return Err(Error::InvalidInput(
            "dilation needs a positive factor".into(),
        ));
    }
    let two = S::from_i64(2);
    let inv = S::one() / s.clone();
    let c = (s.clone() + inv.clone()) / two.clone();
    let h = (s.clone() - inv) / two;
    let mut m = Mat::identity(n);
    m[(n - 2, n - 2)] = c.clone();
    m[(n - 1, n - 1)] = c;
    m[(n - 2, n - 1)] = h.clone();
    m[(n - 1, n - 2)] = h;
    Ok(LorentzMap { m })
}

/// A Lorentz map `M` with `kᵀM = fᵀ` for a past-compatible null covector `f`,
/// so that `κ(Mx) = f·x` for every ball `x`.
///
/// `M` is the reflection sending `w = Qk` to `u = Qf`; when they are
/// proportional but distinct a reflection in `e_1 + e_{d+1}` is applied first.
pub fn align_curvature<S: Scalar>(f: &[S]) -> Result<LorentzMap<S>> {
    let n = f.len();
    if n < 3 {
        return Err(Error::InvalidInput(
            "curvature functional needs d + 2 ≥ 3 entries".into(),
        ));
    }
    if !inner(f, f).is_zero() {
        return Err(Error::InvalidInput(
            "curvature functional is not null".into(),
        ));
    }
    let qv = |x: &[S]| -> Vec<S> {
        let mut y = x.to_vec();
        y[n - 1] = -y[n - 1].clone();
        y
    };
    let mut k = vec![S::zero(); n];
    k[n - 2] = -S::one();
    k[n - 1] = S::one();
    let u = qv(f);
    if u[n - 1].signum() > 0 {
        return Err(Error::InvalidInput(
            "curvature functional has the wrong time orientation".into(),
        ));
    }
    let w = qv(&k);
    if u == w {
        return Ok(LorentzMap::identity(n));
    }
    let uw = inner(&u, &w);
    if uw.is_zero() {
        // u ∝ w: pre-reflect so that the images are no longer proportional
        let mut e = vec![S::zero(); n];
        e[0] = S::one();
        e[n - 2] = S::one();
        let pre = reflection_in(&e)?;
        // κ(P M' x) = f·x  ⇔  M'ᵀ (Pᵀ k) = f; solve for the reflected covector
        let q = q_matrix::<S>(n);
        let pk = pre.matrix().transpose().mul_vec(&k);
        let u2 = q.mul_vec(f);
        let w2 = q.mul_vec(&pk);
        let v: Vec<S> = u2
            .iter()
            .zip(&w2)
            .map(|(a, b)| a.clone() - b.clone())
            .collect();
        let r = reflection_in(&v)?;
        return Ok(pre.compose(&r));
    }
    if uw.signum() > 0 {
        return Err(Error::InvalidInput(
            "curvature functional has the wrong time orientation".into(),
        ));
    }
    let v: Vec<S> = u
        .iter()
        .zip(&w)
        .map(|(a, b)| a.clone() - b.clone())
        .collect();
    reflection_in(&v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Quad;

    fn b(v: &[i64]) -> Ball<Quad> {
        Ball::from_i64(v).unwrap()
    }

    #[test]
    fn products_and_curvatures() {
        let b1 = b(&[0, 0, 1, 1, 1]);
        assert_eq!(b1.product(&b1).unwrap(), Quad::int(1));
        assert_eq!(b1.product(&b(&[0, 0, -1, 1, 1])).unwrap(), Quad::int(-1));
        assert_eq!(b1.product(&b(&[0, 0, -1, -1, 1])).unwrap(), Quad::int(-3));
        assert_eq!(b1.curvature(), Quad::int(0));
        assert_eq!(b(&[1, 1, 0, 0, 1]).curvature(), Quad::int(1));
        assert_eq!(b(&[0, 0, -1, -1, 1]).curvature(), Quad::int(2));
    }

    #[test]
    fn geometry_constructors() {
        let h = Ball::from_halfspace(&[Quad::int(0), Quad::int(0), Quad::int(1)], &Quad::int(1))
            .unwrap();
        assert_eq!(h, b(&[0, 0, 1, 1, 1]));
        let s =
            Ball::from_sphere(&[Quad::int(1), Quad::int(1), Quad::int(0)], &Quad::int(1)).unwrap();
        assert_eq!(s, b(&[1, 1, 0, 0, 1]));
        let u = Ball::from_sphere(&[Quad::int(0); 3], &Quad::int(1)).unwrap();
        assert_eq!(u, b(&[0, 0, 0, -1, 0]));
        assert!(Ball::from_sphere(&[Quad::int(0); 3], &Quad::int(0)).is_err());
    }

    #[test]
    fn reflection_matches_s() {
        let s = reflection(&b(&[0, 1, 0, 1, 1])).unwrap();
        let expect: Mat<Quad> = Mat::from_i64(&[
            &[1, 0, 0, 0, 0],
            &[0, -1, 0, -2, 2],
            &[0, 0, 1, 0, 0],
            &[0, -2, 0, -1, 2],
            &[0, -2, 0, -2, 3],
        ]);
        assert_eq!(s.matrix(), &expect);
        assert!(is_lorentz(&expect));
        assert!(s.is_involution());
    }
}
