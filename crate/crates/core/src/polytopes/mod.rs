//! Regular polytopes realized edge-scribed (every edge tangent to the unit
//! sphere), their ball-arrangement projections and face lattices.

pub mod cbp;
pub mod duality;
pub mod spectrum;

pub use cbp::{cbp_projection, CbpLayer, CbpTable};
pub use duality::{dual_packing, face_curvature, lorentz_barycenter, trinity};
pub use spectrum::{mobius_spectrum, spectrum_of_gram, MobiusSpectrum};

use crate::error::{Error, Result};
use crate::inversive::{Ball, Packing};
use crate::linalg::Mat;
use crate::scalar::{Approx, Quad, Rat, Scalar};
use nalgebra::DMatrix;
use std::collections::BTreeSet;
use std::fmt;

/// The regular polytopes with known Möbius-unique packings plus polygons.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Regular {
    /// Regular `p`-gon.
    Polygon(u32),
    /// Simplex of the given dimension.
    Simplex(usize),
    /// Cross polytope of the given dimension.
    Orthoplex(usize),
    /// Hypercube of the given dimension.
    Cube(usize),
    Icosahedron,
    Dodecahedron,
    Cell24,
    Cell600,
    Cell120,
}

impl Regular {
    /// Collapses aliases (triangle = 2-simplex, square = 2-cube, ...).
    pub fn normalized(self) -> Regular {
        match self {
            Regular::Polygon(3) => Regular::Simplex(2),
            Regular::Polygon(4) => Regular::Cube(2),
            Regular::Orthoplex(2) => Regular::Cube(2),
            other => other,
        }
    }

    /// Dimension of the polytope (`d + 1` for a packing of `d`-balls).
    pub fn dim(&self) -> usize {
        match *self {
            Regular::Polygon(_) => 2,
            Regular::Simplex(n) | Regular::Orthoplex(n) | Regular::Cube(n) => n,
            Regular::Icosahedron | Regular::Dodecahedron => 3,
            Regular::Cell24 | Regular::Cell600 | Regular::Cell120 => 4,
        }
    }

    pub fn vertex_count(&self) -> usize {
        match *self {
            Regular::Polygon(p) => p as usize,
            Regular::Simplex(n) => n + 1,
            Regular::Orthoplex(n) => 2 * n,
            Regular::Cube(n) => 1 << n,
            Regular::Icosahedron => 12,
            Regular::Dodecahedron => 20,
            Regular::Cell24 => 24,
            Regular::Cell600 => 120,
            Regular::Cell120 => 600,
        }
    }

    /// The regular polytope forming the `i`-faces (`2 ≤ i ≤ dim`).
    pub fn face(&self, i: usize) -> Regular {
        assert!(i >= 2 && i <= self.dim(), "face dimension out of range");
        if i == self.dim() {
            return self.normalized();
        }
        match *self {
            Regular::Simplex(_) | Regular::Cell600 | Regular::Icosahedron => Regular::Simplex(i),
            Regular::Orthoplex(_) => Regular::Simplex(i),
            Regular::Cube(_) => Regular::Cube(i),
            Regular::Dodecahedron => Regular::Polygon(5),
            Regular::Cell24 => {
                if i == 2 {
                    Regular::Simplex(2)
                } else {
                    Regular::Orthoplex(3)
                }
            }
            Regular::Cell120 => {
                if i == 2 {
                    Regular::Polygon(5)
                } else {
                    Regular::Dodecahedron
                }
            }
            Regular::Polygon(_) => unreachable!(),
        }
        .normalized()
    }

    /// `ℓ⁻²` for the midsphere ratio `ℓ` (half edge over midradius), exactly.
    pub fn inverse_midsphere_ratio_sq(&self) -> Result<Quad> {
        let phi = Quad::phi();
        Ok(match self.normalized() {
            Regular::Simplex(n) => Quad::frac(n as i64 - 1, n as i64 + 1),
            Regular::Orthoplex(_) => Quad::int(1),
            Regular::Cube(n) => Quad::int(n as i64 - 1),
            Regular::Icosahedron => phi.pow(2),
            Regular::Dodecahedron => phi.pow(4),
            Regular::Cell24 => Quad::int(3),
            Regular::Cell600 => Quad::sqrt_int(5) * phi.pow(3),
            Regular::Cell120 => Quad::int(3) * phi.pow(6),
            // cot²(π/p)
            Regular::Polygon(5) => Quad::new(Rat::from_integer(1), Rat::new(2, 5), 5),
            Regular::Polygon(6) => Quad::int(3),
            Regular::Polygon(8) => Quad::new(Rat::from_integer(3), Rat::from_integer(2), 2),
            Regular::Polygon(12) => Quad::new(Rat::from_integer(7), Rat::from_integer(4), 3),
            Regular::Polygon(p) => {
                return Err(Error::Field(format!("cot²(π/{p}) is not quadratic")));
            }
        })
    }

    /// Midsphere ratio `ℓ_P` as a float.
    pub fn midsphere_ratio(&self) -> f64 {
        match self.normalized() {
            Regular::Polygon(p) => (std::f64::consts::PI / p as f64).tan(),
            other => {
                1.0 / other
                    .inverse_midsphere_ratio_sq()
                    .expect("quadratic")
                    .to_f64()
                    .sqrt()
            }
        }
    }

    pub fn is_centrally_symmetric(&self) -> bool {
        match self.normalized() {
            Regular::Simplex(_) => false,
            Regular::Polygon(p) => p % 2 == 0,
            _ => true,
        }
    }

    /// Accepts `simplex`, `orthoplex`, `cube` (with `dim`), `icosahedron`,
    /// `dodecahedron`, `24-cell`, `600-cell`, `120-cell`, `polygon` (with
    /// `dim` = number of sides) and the short forms `T4`, `O3`, `C5`, `I3`,
    /// `D3`, `R4`, `I4`, `D4`.
    pub fn parse(name: &str, dim: Option<usize>) -> Result<Regular> {
        let lower = name.trim().to_ascii_lowercase();
        let need = |what: &str| {
            dim.ok_or_else(|| Error::InvalidInput(format!("{what} needs a dimension")))
        };
        let r = match lower.as_str() {
            "simplex" | "t" => Regular::Simplex(need("simplex")?),
            "orthoplex" | "cross" | "cross-polytope" | "o" => {
                Regular::Orthoplex(need("orthoplex")?)
            }
            "cube" | "hypercube" | "c" => Regular::Cube(need("cube")?),
            "polygon" | "p" => Regular::Polygon(need("polygon")? as u32),
            "icosahedron" => Regular::Icosahedron,
            "dodecahedron" => Regular::Dodecahedron,
            "24-cell" | "r4" | "r" => Regular::Cell24,
            "600-cell" | "i4" => Regular::Cell600,
            "120-cell" | "d4" => Regular::Cell120,
            "i3" => Regular::Icosahedron,
            "d3" => Regular::Dodecahedron,
            "i" | "d" => match (lower.as_str(), dim) {
                ("i", Some(3)) => Regular::Icosahedron,
                ("i", Some(4)) => Regular::Cell600,
                ("d", Some(3)) => Regular::Dodecahedron,
                ("d", Some(4)) => Regular::Cell120,
                _ => return Err(Error::UnknownPolytope(name.into())),
            },
            s if s.len() >= 2 && s[1..].chars().all(|c| c.is_ascii_digit()) => {
                let n: usize = s[1..]
                    .parse()
                    .map_err(|_| Error::UnknownPolytope(name.into()))?;
                match &s[..1] {
                    "t" => Regular::Simplex(n),
                    "o" => Regular::Orthoplex(n),
                    "c" => Regular::Cube(n),
                    "p" => Regular::Polygon(n as u32),
                    _ => return Err(Error::UnknownPolytope(name.into())),
                }
            }
            _ => return Err(Error::UnknownPolytope(name.into())),
        };
        let ok = match r {
            Regular::Polygon(p) => p >= 3,
            Regular::Simplex(n) => n >= 2,
            Regular::Orthoplex(n) | Regular::Cube(n) => n >= 2,
            _ => true,
        };
        if !ok {
            return Err(Error::UnknownPolytope(format!(
                "{name} in dimension {}",
                r.dim()
            )));
        }
        Ok(r.normalized())
    }
}

impl fmt::Display for Regular {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Regular::Polygon(p) => write!(f, "{p}-gon"),
            Regular::Simplex(n) => write!(f, "T{n}"),
            Regular::Orthoplex(n) => write!(f, "O{n}"),
            Regular::Cube(n) => write!(f, "C{n}"),
            Regular::Icosahedron => write!(f, "I3"),
            Regular::Dodecahedron => write!(f, "D3"),
            Regular::Cell24 => write!(f, "R4"),
            Regular::Cell600 => write!(f, "I4"),
            Regular::Cell120 => write!(f, "D4"),
        }
    }
}

/// An edge-scribed regular polytope with its face lattice.
#[derive(Clone, Debug)]
pub struct RegularPolytope {
    pub kind: Regular,
    /// Edge-scribed vertex coordinates.
    pub vertices: Vec<Vec<f64>>,
    /// Exact coordinates of a similar copy (possibly in one extra
    /// dimension for simplices), with `scale2` the square of the factor
    /// that makes it edge-scribed.
    raw: Option<(Vec<Vec<Quad>>, Quad)>,
    /// `faces[k]` lists the `k`-faces as sorted vertex index sets.
    pub faces: Vec<Vec<Vec<usize>>>,
    /// Half edge length.
    pub ell: f64,
}

fn q(n: i64) -> Quad {
    Quad::int(n)
}

fn signs_of(v: &[Quad]) -> Vec<Vec<Quad>> {
    let mut out: Vec<Vec<Quad>> = vec![Vec::new()];
    for x in v {
        let mut next = Vec::new();
        for p in &out {
            let mut a = p.clone();
            a.push(*x);
            next.push(a);
            if !x.is_zero() {
                let mut b = p.clone();
                b.push(-*x);
                next.push(b);
            }
        }
        out = next;
    }
    out
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..=p.len() {
            let mut v = p.clone();
            v.insert(i, n - 1);
            out.push(v);
        }
    }
    out
}

fn is_even(p: &[usize]) -> bool {
    let mut inv = 0;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                inv += 1;
            }
        }
    }
    inv % 2 == 0
}

fn orbit_of(base: &[Quad], even_only: bool) -> Vec<Vec<Quad>> {
    let mut set: BTreeSet<Vec<Quad>> = BTreeSet::new();
    for p in permutations(base.len()) {
        if even_only && !is_even(&p) {
            continue;
        }
        let v: Vec<Quad> = p.iter().map(|&i| base[i]).collect();
        for s in signs_of(&v) {
            set.insert(s);
        }
    }
    set.into_iter().collect()
}

fn cyclic_signed(base: &[Quad]) -> Vec<Vec<Quad>> {
    let n = base.len();
    let mut set: BTreeSet<Vec<Quad>> = BTreeSet::new();
    for r in 0..n {
        let v: Vec<Quad> = (0..n).map(|i| base[(i + r) % n]).collect();
        for s in signs_of(&v) {
            set.insert(s);
        }
    }
    set.into_iter().collect()
}

fn dot_q(a: &[Quad], b: &[Quad]) -> Quad {
    a.iter().zip(b).fold(q(0), |acc, (x, y)| acc + *x * *y)
}

fn dist2_q(a: &[Quad], b: &[Quad]) -> Quad {
    a.iter()
        .zip(b)
        .fold(q(0), |acc, (x, y)| acc + (*x - *y) * (*x - *y))
}

/// Exact vertex sets of unscaled realizations.
fn raw_vertices(kind: Regular) -> Vec<Vec<Quad>> {
    let phi = Quad::phi();
    let half = Quad::frac(1, 2);
    match kind {
        Regular::Simplex(n) => (0..=n)
            .map(|i| {
                (0..=n)
                    .map(|j| if i == j { q(1) } else { q(0) } - Quad::frac(1, n as i64 + 1))
                    .collect()
            })
            .collect(),
        Regular::Orthoplex(n) => {
            let mut out = Vec::new();
            for s in [1, -1] {
                for i in 0..n {
                    out.push((0..n).map(|j| if i == j { q(s) } else { q(0) }).collect());
                }
            }
            out
        }
        Regular::Cube(n) => signs_of(&vec![q(1); n]),
        Regular::Icosahedron => cyclic_signed(&[q(0), q(1), phi]),
        Regular::Dodecahedron => {
            let mut v = signs_of(&[q(1), q(1), q(1)]);
            v.extend(cyclic_signed(&[q(0), phi.recip(), phi]));
            v
        }
        Regular::Cell24 => orbit_of(&[q(1), q(1), q(0), q(0)], false),
        Regular::Cell600 => {
            let mut v = orbit_of(&[q(1), q(0), q(0), q(0)], false);
            v.extend(signs_of(&[half, half, half, half]));
            v.extend(orbit_of(
                &[phi * half, half, phi.recip() * half, q(0)],
                true,
            ));
            v
        }
        Regular::Cell120 => {
            // centres of the tetrahedral cells of the 600-cell
            let v600 = raw_vertices(Regular::Cell600);
            let cells = cliques(&v600, 4);
            cells
                .iter()
                .map(|c| {
                    (0..4)
                        .map(|k| c.iter().fold(q(0), |acc, &i| acc + v600[i][k]) * Quad::frac(1, 4))
                        .collect()
                })
                .collect()
        }
        Regular::Polygon(_) => unreachable!("polygons have no exact coordinates here"),
    }
}

fn min_edge_pairs(v: &[Vec<Quad>]) -> Vec<(usize, usize)> {
    let mut best: Option<Quad> = None;
    let mut out = Vec::new();
    for i in 0..v.len() {
        for j in i + 1..v.len() {
            let d = dist2_q(&v[i], &v[j]);
            match best {
                Some(b) if d > b => {}
                Some(b) if d == b => out.push((i, j)),
                _ => {
                    best = Some(d);
                    out = vec![(i, j)];
                }
            }
        }
    }
    out
}

/// `k`-cliques of the minimal-distance graph.
fn cliques(v: &[Vec<Quad>], k: usize) -> Vec<Vec<usize>> {
    let n = v.len();
    let mut adj = vec![BTreeSet::new(); n];
    for (i, j) in min_edge_pairs(v) {
        adj[i].insert(j);
        adj[j].insert(i);
    }
    let mut out = Vec::new();
    fn rec(
        cl: &mut Vec<usize>,
        cand: BTreeSet<usize>,
        k: usize,
        adj: &[BTreeSet<usize>],
        out: &mut Vec<Vec<usize>>,
    ) {
        if cl.len() == k {
            out.push(cl.clone());
            return;
        }
        for &c in &cand {
            if c > *cl.last().unwrap() {
                cl.push(c);
                let next: BTreeSet<usize> = cand.intersection(&adj[c]).copied().collect();
                rec(cl, next, k, adj, out);
                cl.pop();
            }
        }
    }
    for i in 0..n {
        rec(&mut vec![i], adj[i].clone(), k, &adj, &mut out);
    }
    out
}

fn polygon_vertices(p: u32) -> Vec<Vec<f64>> {
    let r = 1.0 / (std::f64::consts::PI / p as f64).cos();
    (0..p)
        .map(|k| {
            let t = 2.0 * std::f64::consts::PI * k as f64 / p as f64;
            vec![r * t.cos(), r * t.sin()]
        })
        .collect()
}

/// Orthonormal basis of the hyperplane `Σx = 0` in `ℝ^{n+1}` (floats).
fn simplex_frame(n: usize) -> Vec<Vec<f64>> {
    let mut basis: Vec<Vec<f64>> = Vec::new();
    for k in 0..n {
        let mut v = vec![0.0; n + 1];
        v[k] = 1.0;
        v[k + 1] = -1.0;
        for b in &basis {
            let p: f64 = v.iter().zip(b).map(|(x, y)| x * y).sum();
            for (x, y) in v.iter_mut().zip(b) {
                *x -= p * y;
            }
        }
        let norm: f64 = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        basis.push(v.into_iter().map(|x| x / norm).collect());
    }
    basis
}

/// Affine dimension of a point set (float, tolerance 1e-7).
fn affine_rank(vs: &[&Vec<f64>]) -> usize {
    if vs.len() < 2 {
        return 0;
    }
    let n = vs[0].len();
    let m = DMatrix::from_fn(vs.len() - 1, n, |i, j| vs[i + 1][j] - vs[0][j]);
    m.rank(1e-7)
}

/// Directions normal to the facets (vertices of a polar polytope).
fn facet_directions(kind: Regular, vertices: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let f = |v: Vec<Vec<Quad>>| {
        v.iter()
            .map(|x| x.iter().map(|c| c.to_f64()).collect())
            .collect::<Vec<Vec<f64>>>()
    };
    match kind {
        Regular::Simplex(_) => vertices
            .iter()
            .map(|v| v.iter().map(|x| -x).collect())
            .collect(),
        Regular::Polygon(p) => (0..p)
            .map(|k| {
                let t = (2.0 * k as f64 + 1.0) * std::f64::consts::PI / p as f64;
                vec![t.cos(), t.sin()]
            })
            .collect(),
        Regular::Orthoplex(n) => f(raw_vertices(Regular::Cube(n))),
        Regular::Cube(n) => f(raw_vertices(Regular::Orthoplex(n))),
        Regular::Icosahedron => f(raw_vertices(Regular::Dodecahedron)),
        Regular::Dodecahedron => f(raw_vertices(Regular::Icosahedron)),
        Regular::Cell24 => {
            let mut v = f(orbit_of(&[q(1), q(0), q(0), q(0)], false));
            let h = Quad::frac(1, 2);
            v.extend(f(signs_of(&[h, h, h, h])));
            v
        }
        Regular::Cell600 => f(raw_vertices(Regular::Cell120)),
        Regular::Cell120 => f(raw_vertices(Regular::Cell600)),
    }
}

impl RegularPolytope {
    /// Edge-scribed realization with its face lattice.
    pub fn edge_scribed(kind: Regular) -> Result<RegularPolytope> {
        let kind = kind.normalized();
        if let Regular::Polygon(p) = kind {
            if p < 3 {
                return Err(Error::UnknownPolytope(kind.to_string()));
            }
        }
        let (vertices, raw) = match kind {
            Regular::Polygon(p) => (polygon_vertices(p), None),
            _ => {
                let raw = raw_vertices(kind);
                let (i, j) = min_edge_pairs(&raw)[0];
                let mid: Vec<Quad> = raw[i]
                    .iter()
                    .zip(&raw[j])
                    .map(|(a, b)| (*a + *b) * Quad::frac(1, 2))
                    .collect();
                let scale2 = dot_q(&mid, &mid).recip();
                let s = scale2.to_f64().sqrt();
                let mut fl: Vec<Vec<f64>> = raw
                    .iter()
                    .map(|v| v.iter().map(|x| x.to_f64() * s).collect())
                    .collect();
                if let Regular::Simplex(n) = kind {
                    let frame = simplex_frame(n);
                    fl = fl
                        .iter()
                        .map(|v| {
                            frame
                                .iter()
                                .map(|b| b.iter().zip(v).map(|(x, y)| x * y).sum())
                                .collect()
                        })
                        .collect();
                }
                (fl, Some((raw, scale2)))
            }
        };
        let ell = {
            let n2: f64 = vertices[0].iter().map(|x| x * x).sum();
            (n2 - 1.0).sqrt()
        };
        let faces = face_lattice(kind, &vertices);
        Ok(RegularPolytope {
            kind,
            vertices,
            raw,
            faces,
            ell,
        })
    }

    pub fn dim(&self) -> usize {
        self.kind.dim()
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn edges(&self) -> &[Vec<usize>] {
        &self.faces[1]
    }

    pub fn facets(&self) -> &[Vec<usize>] {
        &self.faces[self.dim() - 1]
    }

    pub fn ridges(&self) -> &[Vec<usize>] {
        &self.faces[self.dim().saturating_sub(2)]
    }

    /// Index of `-v` for each vertex `v` (centrally symmetric cases only).
    pub fn antipodes(&self) -> Option<Vec<usize>> {
        if !self.kind.is_centrally_symmetric() {
            return None;
        }
        self.vertices
            .iter()
            .map(|v| {
                self.vertices
                    .iter()
                    .position(|w| w.iter().zip(v).all(|(a, b)| (a + b).abs() < 1e-9))
            })
            .collect()
    }

    /// Maximal chains `f_0 ⊂ f_1 ⊂ … ⊂ f_{dim−1}` as indices into `faces`.
    pub fn flags(&self) -> Vec<Vec<usize>> {
        let top = self.dim() - 1;
        let mut up: Vec<Vec<Vec<usize>>> = Vec::new();
        for k in 0..top {
            let lower = &self.faces[k];
            let upper = &self.faces[k + 1];
            up.push(
                lower
                    .iter()
                    .map(|f| {
                        (0..upper.len())
                            .filter(|&g| f.iter().all(|x| upper[g].binary_search(x).is_ok()))
                            .collect()
                    })
                    .collect(),
            );
        }
        let mut out = Vec::new();
        let mut chain = Vec::with_capacity(top + 1);
        fn rec(
            k: usize,
            top: usize,
            up: &[Vec<Vec<usize>>],
            chain: &mut Vec<usize>,
            out: &mut Vec<Vec<usize>>,
        ) {
            if k == top {
                out.push(chain.clone());
                return;
            }
            let cur = *chain.last().unwrap();
            for &g in &up[k][cur] {
                chain.push(g);
                rec(k + 1, top, up, chain, out);
                chain.pop();
            }
        }
        for v in 0..self.faces[0].len() {
            chain.push(v);
            rec(0, top, &up, &mut chain, &mut out);
            chain.pop();
        }
        out
    }

    /// Ball-arrangement projection in float mode.
    pub fn ball_projection(&self) -> Result<Packing<Approx>> {
        ball_projection(&self.vertices).map(|p| p.with_facets(self.facets().to_vec()))
    }

    /// Ball-arrangement projection with exact coordinates, when the
    /// realization lives in a single quadratic field (orthoplexes, cubes,
    /// the 24-cell).
    pub fn exact_ball_projection(&self) -> Option<Packing<Quad>> {
        let (raw, scale2) = self.raw.as_ref()?;
        if raw[0].len() != self.dim() {
            return None;
        }
        let s = scale2.sqrt()?;
        let norm2 = dot_q(&raw[0], &raw[0]) * *scale2;
        let ell = (norm2 - q(1)).sqrt()?;
        let mut radicals: BTreeSet<u32> = BTreeSet::new();
        radicals.insert(s.radicand());
        radicals.insert(ell.radicand());
        for v in raw {
            for x in v {
                radicals.insert(x.radicand());
            }
        }
        radicals.remove(&0);
        if radicals.len() > 1 {
            return None;
        }
        let inv = ell.recip();
        let balls = raw
            .iter()
            .map(|v| {
                let mut c: Vec<Quad> = v.iter().map(|x| *x * s * inv).collect();
                c.push(inv);
                Ball::new(c)
            })
            .collect::<Result<Vec<_>>>()
            .ok()?;
        Some(
            Packing::new(balls, Some(self.kind.to_string()))
                .ok()?
                .with_facets(self.facets().to_vec()),
        )
    }

    /// Exact Gram matrix of the ball-arrangement projection:
    /// `⟨b_v, b_w⟩ = (v·w − 1)/(|v|² − 1)` for the edge-scribed vertices.
    pub fn exact_gram(&self) -> Option<Mat<Quad>> {
        let (raw, scale2) = self.raw.as_ref()?;
        let n = raw.len();
        let r2 = dot_q(&raw[0], &raw[0]) * *scale2;
        let den = (r2 - q(1)).recip();
        Some(Mat::from_fn(n, n, |i, j| {
            (dot_q(&raw[i], &raw[j]) * *scale2 - q(1)) * den
        }))
    }
}

/// Each vertex `v` (outside the unit sphere) becomes the ball `(v, 1)/√(|v|²−1)`.
pub fn ball_projection(vertices: &[Vec<f64>]) -> Result<Packing<Approx>> {
    let balls = vertices
        .iter()
        .map(|v| {
            let n2: f64 = v.iter().map(|x| x * x).sum();
            if n2 <= 1.0 + 1e-12 {
                return Err(Error::InvalidGeometry(
                    "vertex on or inside the unit sphere".into(),
                ));
            }
            let l = (n2 - 1.0).sqrt();
            let mut c: Vec<Approx> = v.iter().map(|x| Approx(x / l)).collect();
            c.push(Approx(1.0 / l));
            Ok(Ball::new_unchecked(c))
        })
        .collect::<Result<Vec<_>>>()?;
    Packing::new(balls, None)
}

fn face_lattice(kind: Regular, vertices: &[Vec<f64>]) -> Vec<Vec<Vec<usize>>> {
    let dim = kind.dim();
    let n = vertices.len();
    let mut faces: Vec<Vec<Vec<usize>>> = vec![Vec::new(); dim];
    faces[0] = (0..n).map(|i| vec![i]).collect();
    // facets: vertices maximizing each polar direction
    let mut facets: BTreeSet<Vec<usize>> = BTreeSet::new();
    for w in facet_directions(kind, vertices) {
        let h: Vec<f64> = vertices
            .iter()
            .map(|v| v.iter().zip(&w).map(|(a, b)| a * b).sum())
            .collect();
        let m = h.iter().cloned().fold(f64::MIN, f64::max);
        facets.insert((0..n).filter(|&i| (h[i] - m).abs() < 1e-7).collect());
    }
    faces[dim - 1] = facets.into_iter().collect();
    // edges: nearest pairs
    let d2 = |i: usize, j: usize| {
        vertices[i]
            .iter()
            .zip(&vertices[j])
            .map(|(a, b)| (a - b) * (a - b))
            .sum::<f64>()
    };
    let mut min = f64::MAX;
    for i in 0..n {
        for j in i + 1..n {
            min = min.min(d2(i, j));
        }
    }
    if dim > 2 {
        faces[1] = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .filter(|&(i, j)| (d2(i, j) - min).abs() < 1e-7)
            .map(|(i, j)| vec![i, j])
            .collect();
    }
    // intermediate faces from pairwise intersections of the faces above
    for k in (2..dim.saturating_sub(1)).rev() {
        let upper = faces[k + 1].clone();
        let mut found: BTreeSet<Vec<usize>> = BTreeSet::new();
        for a in 0..upper.len() {
            for b in a + 1..upper.len() {
                let inter: Vec<usize> = upper[a]
                    .iter()
                    .filter(|x| upper[b].binary_search(x).is_ok())
                    .copied()
                    .collect();
                if inter.len() > k && !found.contains(&inter) {
                    let pts: Vec<&Vec<f64>> = inter.iter().map(|&i| &vertices[i]).collect();
                    if affine_rank(&pts) == k {
                        found.insert(inter);
                    }
                }
            }
        }
        faces[k] = found.into_iter().collect();
    }
    faces
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f_vector(k: Regular) -> Vec<usize> {
        RegularPolytope::edge_scribed(k)
            .unwrap()
            .faces
            .iter()
            .map(|f| f.len())
            .collect()
    }

    #[test]
    fn f_vectors() {
        assert_eq!(f_vector(Regular::Simplex(4)), vec![5, 10, 10, 5]);
        assert_eq!(f_vector(Regular::Orthoplex(4)), vec![8, 24, 32, 16]);
        assert_eq!(f_vector(Regular::Cube(4)), vec![16, 32, 24, 8]);
        assert_eq!(f_vector(Regular::Cell24), vec![24, 96, 96, 24]);
        assert_eq!(f_vector(Regular::Icosahedron), vec![12, 30, 20]);
        assert_eq!(f_vector(Regular::Dodecahedron), vec![20, 30, 12]);
        assert_eq!(f_vector(Regular::Polygon(5)), vec![5, 5]);
    }

    #[test]
    fn edges_are_tangent_to_the_unit_sphere() {
        for k in [
            Regular::Simplex(3),
            Regular::Orthoplex(4),
            Regular::Cube(3),
            Regular::Cell24,
            Regular::Dodecahedron,
        ] {
            let p = RegularPolytope::edge_scribed(k).unwrap();
            for e in p.edges() {
                let m: f64 = (0..p.dim())
                    .map(|c| ((p.vertices[e[0]][c] + p.vertices[e[1]][c]) / 2.0).powi(2))
                    .sum();
                assert!((m - 1.0).abs() < 1e-9, "{k}");
            }
            assert!((p.ell - k.midsphere_ratio()).abs() < 1e-9, "{k}");
        }
    }

    #[test]
    fn orthoplex_vertex_ball_is_exact() {
        let p = RegularPolytope::edge_scribed(Regular::Orthoplex(4)).unwrap();
        let b = p.exact_ball_projection().unwrap();
        let r2 = Quad::sqrt_int(2);
        assert!(b
            .balls
            .iter()
            .any(|x| x.coords() == [q(0), q(0), q(0), r2, q(1)]));
        assert_eq!(
            b.balls
                .iter()
                .find(|x| x.coords()[3] == r2)
                .unwrap()
                .curvature(),
            q(1) - r2
        );
    }

    #[test]
    fn parse_names() {
        assert_eq!(Regular::parse("24-cell", None).unwrap(), Regular::Cell24);
        assert_eq!(Regular::parse("cube", Some(4)).unwrap(), Regular::Cube(4));
        assert_eq!(Regular::parse("T3", None).unwrap(), Regular::Simplex(3));
        assert!(Regular::parse("tesseract", None).is_err());
    }
}
