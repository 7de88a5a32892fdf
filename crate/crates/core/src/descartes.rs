//! Flag quadratic forms of regular polytopes and the Descartes-type
//! identities they imply.

use crate::error::{Error, Result};
use crate::inversive::Packing;
use crate::polytopes::Regular;
use crate::scalar::{Quad, Scalar};
use std::collections::BTreeSet;

/// `Φ_P(x_0,…,x_{d+1}) = Σ_{i≤d} (x_i − x_{i+1})²/(L(i) − L(i+1)) + x_{d+1}²/L(d+1)`.
#[derive(Clone, Debug, PartialEq)]
pub struct FlagQuadraticForm {
    pub polytope: Regular,
    /// `L(0) = −1`, `L(1) = 0`, `L(i) = ℓ_{f_i}^{−2}` for the regular `i`-faces.
    pub schedule: Vec<Quad>,
}

impl FlagQuadraticForm {
    pub fn new(polytope: Regular) -> Result<Self> {
        let n = polytope.dim();
        let mut schedule = vec![Quad::int(-1), Quad::int(0)];
        for i in 2..=n {
            schedule.push(polytope.face(i).inverse_midsphere_ratio_sq()?);
        }
        Ok(FlagQuadraticForm { polytope, schedule })
    }

    /// Number of arguments, `d + 2`.
    pub fn arity(&self) -> usize {
        self.schedule.len()
    }

    /// Coefficient of `(x_i − x_{i+1})²` (for `i ≤ d`) and of `x_{d+1}²` (for `i = d + 1`).
    pub fn coefficient(&self, i: usize) -> Quad {
        let l = &self.schedule;
        if i + 1 < l.len() {
            (l[i] - l[i + 1]).recip()
        } else {
            l[i].recip()
        }
    }

    pub fn evaluate<S: Scalar>(&self, x: &[S]) -> Result<S> {
        let n = self.arity();
        if x.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: x.len(),
            });
        }
        let mut acc = S::zero();
        for i in 0..n - 1 {
            let t = x[i].clone() - x[i + 1].clone();
            acc = acc + S::from_quad(&self.coefficient(i)) * t.clone() * t;
        }
        Ok(acc + S::from_quad(&self.coefficient(n - 1)) * x[n - 1].clone() * x[n - 1].clone())
    }
}

/// The flag form of a regular polytope named as in [`Regular::parse`], for
/// `d`-ball packings (polytope dimension `d + 1`).
pub fn flag_form(name: &str, d: usize) -> Result<FlagQuadraticForm> {
    let p = Regular::parse(name, Some(d + 1))?;
    if p.dim() != d + 1 {
        return Err(Error::InvalidInput(format!(
            "{p} is not a {}-polytope",
            d + 1
        )));
    }
    FlagQuadraticForm::new(p)
}

pub fn evaluate<S: Scalar>(form: &FlagQuadraticForm, x: &[S]) -> Result<S> {
    form.evaluate(x)
}

fn arity_ok<S>(u: &[S]) -> Result<usize> {
    if u.len() < 3 {
        return Err(Error::DimensionMismatch {
            expected: 3,
            found: u.len(),
        });
    }
    Ok(u.len() - 2)
}

fn sum<S: Scalar>(u: &[S]) -> S {
    u.iter().fold(S::zero(), |a, x| a + x.clone())
}

fn sum_sq<S: Scalar>(u: impl Iterator<Item = S>) -> S {
    u.fold(S::zero(), |a, x| a + x.clone() * x)
}

/// `𝔗_{d+1}(u) = ½((Σu)²/d − Σu²)` for `d + 2` arguments.
pub fn simplicial<S: Scalar>(u: &[S]) -> Result<S> {
    let d = arity_ok(u)?;
    let s = sum(u);
    Ok((s.clone() * s / S::from_i64(d as i64) - sum_sq(u.iter().cloned())) / S::from_i64(2))
}

/// `𝔒_{d+1}(u) = u_{d+2}² − ½ Σ_{i≤d+1} (u_i − u_{d+2})²`.
pub fn hyperoctahedral<S: Scalar>(u: &[S]) -> Result<S> {
    arity_ok(u)?;
    let last = u[u.len() - 1].clone();
    let dev = sum_sq(u[..u.len() - 1].iter().map(|x| x.clone() - last.clone()));
    Ok(last.clone() * last - dev / S::from_i64(2))
}

/// `ℭ_{d+1}(u) = ¼((u_1 + u_{d+2})²/d − Σ_{i≤d+1} (u_i − u_{i+1})²)`.
pub fn hypercubical<S: Scalar>(u: &[S]) -> Result<S> {
    let d = arity_ok(u)?;
    let e = u[0].clone() + u[u.len() - 1].clone();
    let steps = sum_sq(u.windows(2).map(|w| w[0].clone() - w[1].clone()));
    Ok((e.clone() * e / S::from_i64(d as i64) - steps) / S::from_i64(4))
}

/// Infallible versions for callers that already checked the arity.
pub fn simplicial_form<S: Scalar>(u: &[S]) -> S {
    simplicial(u).expect("at least three curvatures")
}

pub fn cubical_form<S: Scalar>(u: &[S]) -> S {
    hypercubical(u).expect("at least three curvatures")
}

/// Flag curvatures substituted into the simplex form: `(u_1, (u_1+u_2)/2, …)`.
pub fn simplicial_flag<S: Scalar>(u: &[S]) -> Vec<S> {
    let mut acc = S::zero();
    u.iter()
        .enumerate()
        .map(|(i, x)| {
            acc = acc.clone() + x.clone();
            acc.clone() / S::from_i64(i as i64 + 1)
        })
        .collect()
}

/// `(u_1, …, (u_1+…+u_{d+1})/(d+1), u_{d+2})` for the cross-polytope form.
pub fn hyperoctahedral_flag<S: Scalar>(u: &[S]) -> Vec<S> {
    let mut out = simplicial_flag(&u[..u.len() - 1]);
    out.push(u[u.len() - 1].clone());
    out
}

/// `(u_1, (u_1+u_2)/2, …, (u_1+u_{d+2})/2)` for the cube form.
pub fn hypercubical_flag<S: Scalar>(u: &[S]) -> Vec<S> {
    let two = S::from_i64(2);
    let mut out = vec![u[0].clone()];
    out.extend(
        u[1..]
            .iter()
            .map(|x| (u[0].clone() + x.clone()) / two.clone()),
    );
    out
}

/// `d Σκ_i² = (Σκ_i)²` for `d + 2` mutually tangent balls.
pub fn soddy_gosset_check<S: Scalar>(k: &[S]) -> bool {
    k.len() >= 3 && simplicial(k).map_or(false, |v| v.is_zero())
}

/// `Σ(κ_i − κ_O)² = 2κ_O²` for the `d + 1` balls of a facet of a cross-polytope packing.
pub fn octahedral_check<S: Scalar>(k: &[S], k_o: &S) -> bool {
    let lhs = sum_sq(k.iter().map(|x| x.clone() - k_o.clone()));
    lhs == S::from_i64(2) * k_o.clone() * k_o.clone()
}

/// `d Σ(κ_i − κ_{i+1})² = (κ_1 + κ_{d+2})²` along a geodesic path of a cube packing.
pub fn cubical_check<S: Scalar>(k: &[S]) -> bool {
    k.len() >= 3 && hypercubical(k).map_or(false, |v| v.is_zero())
}

/// Both roots `κ_O` of `Σ(κ_i − x)² = 2x²`, smaller first.
///
/// With `n = d + 1` curvatures the equation is `(n − 2)x² − 2σx + Σκ² = 0`.
pub fn solve_octahedral_center<S: Scalar>(k: &[S]) -> Result<(S, S)> {
    if k.len() < 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            found: k.len(),
        });
    }
    let a = S::from_i64(k.len() as i64 - 2);
    let s = sum(k);
    let q = sum_sq(k.iter().cloned());
    if a.is_zero() {
        if s.is_zero() {
            return Err(Error::Unrealizable("no centre curvature".into()));
        }
        let x = q / (S::from_i64(2) * s);
        return Ok((x.clone(), x));
    }
    let disc = s.clone() * s.clone() - a.clone() * q;
    if disc.signum() < 0 {
        return Err(Error::Unrealizable(format!("negative discriminant {disc}")));
    }
    let r = disc
        .sqrt()
        .ok_or_else(|| Error::Field(format!("√({disc})")))?;
    Ok(((s.clone() - r.clone()) / a.clone(), (s + r) / a))
}

/// Fourth curvature of a square face: `κ_4 = κ_1 + κ_3 − κ_2`.
pub fn cubical_fourth<S: Scalar>(k1: &S, k2: &S, k3: &S) -> S {
    k1.clone() + k3.clone() - k2.clone()
}

/// The two values `(ℓ_f/ℓ_P)²κ_f ± ℓ_P^{−2}√((ℓ_f² − ℓ_P²)Φ_f)` of the
/// curvature of a regular packing and of its inversion in a dual ball.
///
/// `lf2`, `lp2` are the squared midsphere ratios of the facet and of the
/// polytope; `phi_f` is the facet's flag form on the facet flag.
pub fn glueing<S: Scalar>(lf2: &S, lp2: &S, kappa_f: &S, phi_f: &S) -> Result<(S, S)> {
    let rad = (lf2.clone() - lp2.clone()) * phi_f.clone();
    if rad.signum() < 0 {
        return Err(Error::Unrealizable(format!("negative radicand {rad}")));
    }
    let r = rad
        .sqrt()
        .ok_or_else(|| Error::Field(format!("√({rad})")))?
        / lp2.clone();
    let base = lf2.clone() / lp2.clone() * kappa_f.clone();
    Ok((base.clone() - r.clone(), base + r))
}

/// [`glueing`] with the midsphere ratios of a regular polytope and a flag
/// `κ_v, …, κ_f` of one of its facets.
pub fn glueing_for<S: Scalar>(p: Regular, facet_flag: &[S]) -> Result<(S, S)> {
    let n = p.dim();
    let facet = p.face(n - 1);
    let phi_f = FlagQuadraticForm::new(facet)?.evaluate(facet_flag)?;
    let lf2 = S::from_quad(&facet.inverse_midsphere_ratio_sq()?.recip());
    let lp2 = S::from_quad(&p.inverse_midsphere_ratio_sq()?.recip());
    glueing(&lf2, &lp2, &facet_flag[facet_flag.len() - 1], &phi_f)
}

/// Which Diophantine family a solution belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Equation {
    /// `d(m_1² + … + m_{d+2}²) = n²`
    Simplicial,
    /// `m_1² + … + m_{d+1}² = 2n²`
    Octahedral,
    /// `d(m_1² + … + m_{d+1}²) = n²`
    Cubical,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Solution {
    pub equation: Equation,
    pub d: usize,
    pub m: Vec<i128>,
    pub n: i128,
}

impl Solution {
    /// Exact check with overflow detection.
    pub fn verify(&self) -> bool {
        let sq = self.m.iter().try_fold(0i128, |a, x| {
            x.checked_mul(*x).and_then(|y| a.checked_add(y))
        });
        let (Some(sq), Some(n2)) = (sq, self.n.checked_mul(self.n)) else {
            return false;
        };
        let d = self.d as i128;
        match self.equation {
            Equation::Simplicial => self.m.len() == self.d + 2 && d.checked_mul(sq) == Some(n2),
            Equation::Octahedral => self.m.len() == self.d + 1 && n2.checked_mul(2) == Some(sq),
            Equation::Cubical => self.m.len() == self.d + 1 && d.checked_mul(sq) == Some(n2),
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.m.iter().all(|&x| x == 0)
    }
}

fn integers<S: Scalar>(k: &[S]) -> Result<Vec<i128>> {
    k.iter()
        .map(|x| {
            x.as_integer()
                .ok_or_else(|| Error::InvalidInput(format!("curvature {x} is not an integer")))
        })
        .collect()
}

/// Solution from `d + 2` mutually tangent balls.
pub fn simplicial_solution<S: Scalar>(k: &[S]) -> Result<Solution> {
    let m = integers(k)?;
    let d = arity_ok(k)?;
    Ok(Solution {
        equation: Equation::Simplicial,
        d,
        n: m.iter().sum(),
        m,
    })
}

/// Solution from the `d + 1` balls of a cross-polytope facet and `κ_O`.
pub fn octahedral_solution<S: Scalar>(k: &[S], k_o: &S) -> Result<Solution> {
    let m = integers(k)?;
    let n = integers(std::slice::from_ref(k_o))?[0];
    Ok(Solution {
        equation: Equation::Octahedral,
        d: k.len() - 1,
        m: m.iter().map(|x| x - n).collect(),
        n,
    })
}

/// Solution from a geodesic path of `d + 2` balls in a cube packing.
pub fn cubical_solution<S: Scalar>(k: &[S]) -> Result<Solution> {
    let m = integers(k)?;
    let d = arity_ok(k)?;
    Ok(Solution {
        equation: Equation::Cubical,
        d,
        m: m.windows(2).map(|w| w[0] - w[1]).collect(),
        n: m[0] + m[m.len() - 1],
    })
}

fn cliques(n: usize, adj: &[Vec<bool>], k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(
        start: usize,
        n: usize,
        k: usize,
        adj: &[Vec<bool>],
        cur: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for v in start..n {
            if cur.iter().all(|&u| adj[u][v]) {
                cur.push(v);
                rec(v + 1, n, k, adj, cur, out);
                cur.pop();
            }
        }
    }
    rec(0, n, k, adj, &mut cur, &mut out);
    out
}

/// Every solution of the chosen equation readable from the given packings
/// (typically the images of an integral seed under its Apollonian group).
///
/// Simplicial: each set of `d + 2` mutually tangent balls. Octahedral:
/// each facet (`d + 1` mutually tangent balls) of a cross-polytope packing
/// with `κ_O` its mean curvature. Cubical: each path of `d + 2` balls whose
/// ends are at graph distance `d + 1`. Every emitted tuple is re-verified.
pub fn diophantine_solutions<S: Scalar>(
    packings: &[Packing<S>],
    equation: Equation,
) -> Result<Vec<Solution>> {
    let mut out: BTreeSet<Solution> = BTreeSet::new();
    for p in packings {
        let d = p.dim();
        let n = p.len();
        let mut adj = vec![vec![false; n]; n];
        for &(a, b) in p.tangency_graph() {
            adj[a][b] = true;
            adj[b][a] = true;
        }
        let k = p.curvatures();
        let pick = |idx: &[usize]| idx.iter().map(|&i| k[i].clone()).collect::<Vec<S>>();
        match equation {
            Equation::Simplicial => {
                for c in cliques(n, &adj, d + 2) {
                    out.insert(simplicial_solution(&pick(&c))?);
                }
            }
            Equation::Octahedral => {
                let mean = sum(&k) / S::from_i64(n as i64);
                for c in cliques(n, &adj, d + 1) {
                    out.insert(octahedral_solution(&pick(&c), &mean)?);
                }
            }
            Equation::Cubical => {
                let dist = p.graph_distances();
                let mut path = Vec::new();
                fn walk(
                    path: &mut Vec<usize>,
                    len: usize,
                    adj: &[Vec<bool>],
                    dist: &[Vec<usize>],
                    found: &mut Vec<Vec<usize>>,
                ) {
                    if path.len() == len {
                        if dist[path[0]][path[len - 1]] == len - 1 {
                            found.push(path.clone());
                        }
                        return;
                    }
                    let last = *path.last().unwrap();
                    for v in 0..adj.len() {
                        // geodesic: each step moves one further from the start
                        if adj[last][v] && dist[path[0]][v] == path.len() {
                            path.push(v);
                            walk(path, len, adj, dist, found);
                            path.pop();
                        }
                    }
                }
                let mut found = Vec::new();
                for s in 0..n {
                    path.push(s);
                    walk(&mut path, d + 2, &adj, &dist, &mut found);
                    path.pop();
                }
                for f in found {
                    out.insert(cubical_solution(&pick(&f))?);
                }
            }
        }
    }
    let out: Vec<Solution> = out.into_iter().collect();
    if let Some(bad) = out.iter().find(|s| !s.verify()) {
        return Err(Error::InvalidGeometry(format!(
            "packing violates its Descartes relation: {bad:?}"
        )));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(v: &[i64]) -> Vec<Quad> {
        v.iter().map(|&x| Quad::int(x)).collect()
    }

    #[test]
    fn closed_forms() {
        assert_eq!(simplicial(&q(&[-1, 2, 2, 3])).unwrap(), Quad::int(0));
        assert_eq!(simplicial(&q(&[-2, 4, 5, 5])).unwrap(), Quad::int(1));
        assert_eq!(
            hypercubical(&q(&[5, -3, 12])).unwrap() * Quad::int(2),
            Quad::int(0)
        );
        assert!(simplicial(&q(&[1, 2])).is_err());
    }

    #[test]
    fn simplex_form_closed_form() {
        // −Σ C(i+2,2)(x_i − x_{i+1})² + ((d+2)/d) x_{d+1}²
        for n in 2..=5usize {
            let f = FlagQuadraticForm::new(Regular::Simplex(n)).unwrap();
            let d = n - 1;
            for i in 0..=d {
                let c = ((i + 2) * (i + 1) / 2) as i64;
                assert_eq!(f.coefficient(i), Quad::int(-c));
            }
            assert_eq!(f.coefficient(d + 1), Quad::frac(d as i64 + 2, d as i64));
        }
    }

    #[test]
    fn octahedral_roots() {
        let (a, b) = solve_octahedral_center(&q(&[-2, 4, 5])).unwrap();
        assert_eq!((a, b), (Quad::int(5), Quad::int(9)));
        let (a, b) = solve_octahedral_center(&q(&[1, 1, 1])).unwrap();
        assert_eq!(a, Quad::int(3) - Quad::sqrt_int(6));
        assert_eq!(b, Quad::int(3) + Quad::sqrt_int(6));
        assert!(octahedral_check(&q(&[1, 1, 1]), &a) && octahedral_check(&q(&[1, 1, 1]), &b));
        let (a, b) = solve_octahedral_center(&q(&[0, 0, 1, 1])).unwrap();
        assert_eq!((a, b), (Quad::int(1), Quad::int(1)));
        assert!(solve_octahedral_center(&q(&[1, 1, -1])).is_err());
    }

    #[test]
    fn sample_tuples() {
        assert!(soddy_gosset_check(&q(&[-1, 2, 2, 3])));
        assert!(octahedral_check(&q(&[-2, 4, 5]), &Quad::int(5)));
        // (5, −3, 12, 20) is a square face; its geodesic paths are the triples
        for t in [[5, -3, 12], [-3, 12, 20], [12, 20, 5], [20, 5, -3]] {
            assert!(cubical_check(&q(&t)), "{t:?}");
        }
        assert!(!cubical_check(&q(&[5, -3, 12, 20])));
        assert_eq!(
            cubical_fourth(&Quad::int(5), &Quad::int(-3), &Quad::int(12)),
            Quad::int(20)
        );
        let s = octahedral_solution(&q(&[-2, 4, 5]), &Quad::int(5)).unwrap();
        assert_eq!((s.m.clone(), s.n), (vec![-7, -1, 0], 5));
        assert!(s.verify());
        let s = simplicial_solution(&q(&[-1, 2, 2, 3])).unwrap();
        assert_eq!(s.n, 6);
        assert!(s.verify());
        assert!(cubical_solution(&q(&[5, -3, 12])).unwrap().verify());
    }
}
