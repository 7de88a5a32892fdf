//! Integer coordinates for orbits of packings with a rational Gram matrix.
//!
//! The balls of such an orbit lie in a lattice of the coefficient space of a
//! basis of seed balls. The Gram matrix alone fixes the coefficients, so the
//! lattice is rational even when the balls themselves have coordinates in
//! `ℚ(√m)`. Once the generators are integral in a lattice basis the whole
//! orbit walk runs on `i64` vectors with checked arithmetic.

use crate::inversive::{curvature_of, q_matrix, Ball, LorentzMap};
use crate::linalg::Mat;
use crate::scalar::{Quad, Rat, Scalar};
use num_integer::Integer;
use num_traits::ToPrimitive;

/// Largest `d + 2` handled by the integer engine.
pub const MAXN: usize = 6;
pub type IPoint = [i64; MAXN];

#[derive(Clone, Debug)]
pub struct LatticeFrame<S> {
    n: usize,
    to_coords: Mat<S>,
    gens: Vec<[[i64; MAXN]; MAXN]>,
    ka: [i128; MAXN],
    kb: [i128; MAXN],
    den: i128,
    radicand: u32,
}

fn to_rat<S: Scalar>(x: &S) -> Option<Rat> {
    let q = x.to_quad()?;
    q.is_rational().then(|| q.a())
}

fn rat_mat<S: Scalar>(m: &Mat<S>) -> Option<Mat<Quad>> {
    let mut out = Mat::zeros(m.rows(), m.cols());
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            out[(i, j)] = Quad::rational(to_rat(&m[(i, j)])?);
        }
    }
    Some(out)
}

/// Upper-triangular integer basis of the row lattice, or `None` on overflow
/// or when the rows do not span `ℤⁿ ⊗ ℚ`.
fn hermite_rows(mut rows: Vec<Vec<i128>>, n: usize) -> Option<Vec<Vec<i128>>> {
    let mut r = 0;
    for c in 0..n {
        loop {
            let mut best: Option<usize> = None;
            for i in r..rows.len() {
                if rows[i][c] != 0 && best.map_or(true, |b| rows[i][c].abs() < rows[b][c].abs()) {
                    best = Some(i);
                }
            }
            let Some(p) = best else { return None };
            rows.swap(r, p);
            let mut done = true;
            for i in r + 1..rows.len() {
                if rows[i][c] != 0 {
                    let q = Integer::div_floor(&rows[i][c], &rows[r][c]);
                    for j in 0..n {
                        rows[i][j] = rows[i][j].checked_sub(q.checked_mul(rows[r][j])?)?;
                    }
                    if rows[i][c] != 0 {
                        done = false;
                    }
                }
            }
            if done {
                break;
            }
        }
        if rows[r][c] < 0 {
            for j in 0..n {
                rows[r][j] = -rows[r][j];
            }
        }
        r += 1;
    }
    rows.truncate(n);
    Some(rows)
}

/// Basis (as columns of a rational matrix) of the ℤ-span of `vectors`.
fn lattice_basis(vectors: &[Vec<Rat>], n: usize) -> Option<Mat<Quad>> {
    let mut den: i128 = 1;
    for v in vectors {
        for x in v {
            den = den.lcm(x.denom());
        }
    }
    let rows: Vec<Vec<i128>> = vectors
        .iter()
        .map(|v| {
            v.iter()
                .map(|x| x.numer().checked_mul(den / x.denom()))
                .collect::<Option<Vec<_>>>()
        })
        .collect::<Option<_>>()?;
    let h = hermite_rows(rows, n)?;
    Some(Mat::from_fn(n, n, |i, j| {
        Quad::rational(Rat::new(h[j][i], den))
    }))
}

fn columns(m: &Mat<Quad>) -> Vec<Vec<Rat>> {
    (0..m.cols())
        .map(|j| m.col(j).iter().map(|x| x.a()).collect())
        .collect()
}

impl<S: Scalar> LatticeFrame<S> {
    /// Builds the frame, or `None` when the Gram matrix is irrational, the
    /// orbit span is not a lattice reachable in a few closure steps, or the
    /// generators are not integral.
    pub fn new(seeds: &[Ball<S>], gens: &[LorentzMap<S>]) -> Option<(Self, Vec<IPoint>)> {
        if !S::is_exact() || seeds.is_empty() {
            return None;
        }
        let n = seeds[0].coords().len();
        if n > MAXN {
            return None;
        }
        // a basis of seed balls
        let mut chosen: Vec<usize> = Vec::new();
        for (i, b) in seeds.iter().enumerate() {
            let mut rows: Vec<Vec<S>> =
                chosen.iter().map(|&j| seeds[j].coords().to_vec()).collect();
            rows.push(b.coords().to_vec());
            if Mat::from_rows(rows).rank() == chosen.len() + 1 {
                chosen.push(i);
                if chosen.len() == n {
                    break;
                }
            }
        }
        if chosen.len() < n {
            return None;
        }
        let b = Mat::from_fn(n, n, |i, j| seeds[chosen[j]].coords()[i].clone());
        let q = q_matrix::<S>(n);
        let btq = b.transpose().mul(&q);
        let gram = rat_mat(&btq.mul(&b))?;
        let gram_inv = gram.inverse()?;
        let coeffs = |x: &[S]| -> Option<Vec<Rat>> {
            let p = btq.mul_vec(x);
            let p: Vec<Quad> = p
                .iter()
                .map(|v| to_rat(v).map(Quad::rational))
                .collect::<Option<_>>()?;
            Some(gram_inv.mul_vec(&p).iter().map(|v| v.a()).collect())
        };
        let seed_coeffs: Vec<Vec<Rat>> = seeds
            .iter()
            .map(|s| coeffs(s.coords()))
            .collect::<Option<_>>()?;
        let gen_coeffs: Vec<Mat<Quad>> = gens
            .iter()
            .map(|g| Some(gram_inv.mul(&rat_mat(&btq.mul(g.matrix()).mul(&b))?)))
            .collect::<Option<_>>()?;

        let mut h = lattice_basis(&seed_coeffs, n)?;
        let mut det = h.determinant().abs_s();
        let mut stable = false;
        for _ in 0..16 {
            let mut vs = columns(&h);
            for a in &gen_coeffs {
                vs.extend(columns(&a.mul(&h)));
            }
            let h2 = lattice_basis(&vs, n)?;
            let det2 = h2.determinant().abs_s();
            h = h2;
            if det2 == det {
                stable = true;
                break;
            }
            det = det2;
        }
        if !stable {
            return None;
        }
        let h_inv = h.inverse()?;
        let to_int = |m: &Mat<Quad>| -> Option<[[i64; MAXN]; MAXN]> {
            let mut out = [[0i64; MAXN]; MAXN];
            for i in 0..n {
                for j in 0..n {
                    let v = m[(i, j)].a();
                    if !v.is_integer() {
                        return None;
                    }
                    out[i][j] = v.numer().to_i64()?;
                }
            }
            Some(out)
        };
        let int_gens: Vec<_> = gen_coeffs
            .iter()
            .map(|a| to_int(&h_inv.mul(a).mul(&h)))
            .collect::<Option<_>>()?;
        let mut points = Vec::with_capacity(seeds.len());
        for c in &seed_coeffs {
            let z = h_inv.mul_vec(&c.iter().map(|x| Quad::rational(*x)).collect::<Vec<_>>());
            let mut p = [0i64; MAXN];
            for (j, v) in z.iter().enumerate() {
                if !v.a().is_integer() {
                    return None;
                }
                p[j] = v.a().numer().to_i64()?;
            }
            points.push(p);
        }
        // curvature covector kᵀ·B·H over ℚ(√m)
        let kb_row: Vec<Quad> = (0..n)
            .map(|j| seeds[chosen[j]].curvature().to_quad())
            .collect::<Option<_>>()?;
        let phi: Vec<Quad> = (0..n)
            .map(|j| (0..n).fold(Quad::int(0), |acc, i| acc + kb_row[i] * h[(i, j)]))
            .collect();
        let radicand = phi.iter().map(|x| x.radicand()).max().unwrap_or(0);
        if phi
            .iter()
            .any(|x| x.radicand() != 0 && x.radicand() != radicand)
        {
            return None;
        }
        let mut den: i128 = 1;
        for x in &phi {
            den = den.lcm(x.a().denom()).lcm(x.b().denom());
        }
        let mut ka = [0i128; MAXN];
        let mut kb = [0i128; MAXN];
        for (j, x) in phi.iter().enumerate() {
            ka[j] = (x.a() * Rat::from_integer(den)).to_integer();
            kb[j] = (x.b() * Rat::from_integer(den)).to_integer();
        }
        let to_coords = b.mul(&h.map(|x| S::from_quad(x)));
        Some((
            LatticeFrame {
                n,
                to_coords,
                gens: int_gens,
                ka,
                kb,
                den,
                radicand,
            },
            points,
        ))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn generator_count(&self) -> usize {
        self.gens.len()
    }

    pub fn act(&self, g: usize, z: &IPoint) -> Option<IPoint> {
        let m = &self.gens[g];
        let mut out = [0i64; MAXN];
        for i in 0..self.n {
            let mut acc: i64 = 0;
            for j in 0..self.n {
                if m[i][j] != 0 {
                    acc = acc.checked_add(m[i][j].checked_mul(z[j])?)?;
                }
            }
            out[i] = acc;
        }
        Some(out)
    }

    /// Curvature as `(a, b)` meaning `(a + b√m)/den`.
    pub fn curvature_parts(&self, z: &IPoint) -> (i128, i128) {
        let mut a = 0i128;
        let mut b = 0i128;
        for j in 0..self.n {
            a += self.ka[j] * z[j] as i128;
            b += self.kb[j] * z[j] as i128;
        }
        (a, b)
    }

    pub fn curvature(&self, z: &IPoint) -> S {
        let (a, b) = self.curvature_parts(z);
        S::from_quad(&Quad::new(
            Rat::new(a, self.den),
            Rat::new(b, self.den),
            self.radicand,
        ))
    }

    /// `|κ| ≤ bound`, decided exactly.
    pub fn within(&self, z: &IPoint, bound: &Rat) -> bool {
        let (a, b) = self.curvature_parts(z);
        let (p, q) = (*bound.numer(), *bound.denom());
        let m = self.radicand as i128;
        // −K ≤ (a + b√m)/den ≤ K  ⇔  p·den ∓ q·a ∓ q·b√m ≥ 0
        let lim = p * self.den;
        sign_quad(lim - q * a, -q * b, m) >= 0 && sign_quad(lim + q * a, q * b, m) >= 0
    }

    pub fn is_integral(&self, z: &IPoint) -> bool {
        let (a, b) = self.curvature_parts(z);
        b == 0 && a % self.den == 0
    }

    pub fn ball(&self, z: &IPoint) -> Ball<S> {
        let v: Vec<S> = z[..self.n].iter().map(|&x| S::from_i64(x)).collect();
        Ball::new_unchecked(self.to_coords.mul_vec(&v))
    }

    /// Cross-check of the frame on the seeds (used by tests).
    pub fn reproduces(&self, seeds: &[Ball<S>], points: &[IPoint]) -> bool {
        seeds
            .iter()
            .zip(points)
            .all(|(s, z)| self.ball(z) == *s && curvature_of(s.coords()) == self.curvature(z))
    }
}

/// Sign of `u + v√m` for integers (`m = 0` means rational).
pub fn sign_quad(u: i128, v: i128, m: i128) -> i32 {
    let su = u.signum() as i32;
    let sv = if m == 0 { 0 } else { v.signum() as i32 };
    if sv == 0 {
        return su;
    }
    if su == 0 || su == sv {
        return sv;
    }
    let uu = u.checked_mul(u).expect("curvature bound overflow");
    let vv = v
        .checked_mul(v)
        .and_then(|x| x.checked_mul(m))
        .expect("curvature bound overflow");
    match uu.cmp(&vv) {
        std::cmp::Ordering::Greater => su,
        std::cmp::Ordering::Less => sv,
        std::cmp::Ordering::Equal => 0,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::apollonian::matrices::{printed_matrix, standard_b0, standard_b1};

    fn printed_gens<S: Scalar>() -> Vec<LorentzMap<S>> {
        (0..16)
            .map(|i| LorentzMap::new_unchecked(printed_matrix::<S>(i)))
            .collect()
    }

    #[test]
    fn b0_frame_is_integral() {
        let p = standard_b0::<Quad>();
        let (f, pts) = LatticeFrame::new(&p.balls, &printed_gens()).unwrap();
        assert!(f.reproduces(&p.balls, &pts));
        let z = f.act(0, &pts[2]).unwrap();
        assert_eq!(
            f.ball(&z).coords(),
            printed_gens::<Quad>()[0]
                .apply(&p.balls[2])
                .unwrap()
                .coords()
        );
    }

    #[test]
    fn b1_frame_in_sqrt2() {
        let p = standard_b1();
        let gens: Vec<LorentzMap<Quad>> = p
            .facets
            .clone()
            .unwrap()
            .iter()
            .map(|f| {
                let refs: Vec<&[Quad]> = f.iter().map(|&i| p.balls[i].coords()).collect();
                let w = crate::apollonian::dual::dual_vector(&refs, None).unwrap();
                crate::inversive::reflection_in(&w).unwrap()
            })
            .collect();
        let (f, pts) = LatticeFrame::new(&p.balls, &gens).unwrap();
        assert!(f.reproduces(&p.balls, &pts));
    }

    #[test]
    fn quad_signs() {
        assert_eq!(sign_quad(3, -2, 2), 1);
        assert_eq!(sign_quad(2, -2, 2), -1);
        assert_eq!(sign_quad(-1, 0, 2), -1);
        assert_eq!(sign_quad(0, 0, 5), 0);
    }
}
