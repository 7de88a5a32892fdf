//! Apollonian sections of orthoplicial clusters and the lifts that embed
//! tetrahedral, octahedral and cubical disk packings into orthoplicial
//! sphere packings with the same curvatures.
//!
//! A [`Section`] keeps the ambient packing (balls in the order
//! `b₁ b₂ b₃ b₄ b₋₁ b₋₂ b₋₃ b₋₄`), the subgroup `Γ` with its planar image
//! `φ(Γ)`, the seed subset `X` and a Lorentz frame `F` that moves the
//! section plane `H` to `{x₁ = 0}`. The bijection `ψ` is read off in that
//! frame: a cross section for the tetrahedral and octahedral kinds and the
//! projection `√2·(z₂,…,z₅)` for the cubical kind.

use crate::apollonian::dual::{barycenter, dual_vector, facet_center_vector};
use crate::apollonian::matrices::{ortho_index, standard_b0, standard_b1, FacetLabel};
use crate::apollonian::{
    find_facets, generators, orbit, ApollonianGroup, Bound, Generator, OrbitReport,
};
use crate::descartes::solve_octahedral_center;
use crate::error::{Error, Result};
use crate::inversive::{curvature_of, dilation, inner, reflection_in, Ball, LorentzMap, Packing};
use crate::linalg::Mat;
use crate::scalar::{Quad, Scalar};
use std::collections::BTreeSet;
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SectionKind {
    Tetrahedral,
    Octahedral,
    Cubical,
}

impl SectionKind {
    pub fn parse(s: &str) -> Option<SectionKind> {
        match s.to_ascii_lowercase().as_str() {
            "tetra" | "tetrahedral" | "t" => Some(SectionKind::Tetrahedral),
            "octa" | "octahedral" | "o" => Some(SectionKind::Octahedral),
            "cubic" | "cubical" | "cube" | "c" => Some(SectionKind::Cubical),
            _ => None,
        }
    }

    /// Number of seed curvatures a lift takes.
    pub fn arity(self) -> usize {
        match self {
            SectionKind::Tetrahedral => 4,
            SectionKind::Octahedral | SectionKind::Cubical => 3,
        }
    }

    /// Ambient word length of one generator of `Γ`.
    pub fn word_length(self) -> u32 {
        match self {
            SectionKind::Octahedral => 2,
            _ => 1,
        }
    }
}

impl fmt::Display for SectionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SectionKind::Tetrahedral => "tetra",
            SectionKind::Octahedral => "octa",
            SectionKind::Cubical => "cubic",
        })
    }
}

/// One generator of `Γ` together with its image under `φ`.
#[derive(Clone, Debug, PartialEq)]
pub struct SectionGenerator<S> {
    /// Facets of the ambient packing whose dual reflections are multiplied.
    pub word: Vec<FacetLabel>,
    pub map: LorentzMap<S>,
    pub planar: LorentzMap<S>,
    /// Facet of the planar packing whose dual reflection is `planar`.
    pub planar_facet: Vec<usize>,
}

impl<S> SectionGenerator<S> {
    pub fn label(&self) -> String {
        let parts: Vec<String> = self.word.iter().map(|l| format!("s{l}")).collect();
        parts.join("·")
    }
}

#[derive(Clone, Debug)]
pub struct Section<S> {
    pub kind: SectionKind,
    pub ambient: Packing<S>,
    /// Indices of `X` in the ambient packing.
    pub seeds: Vec<usize>,
    pub generators: Vec<SectionGenerator<S>>,
    /// Unit plane vector of `H`.
    pub plane: Vec<S>,
    /// `F` with `F·H = e₁`.
    pub frame: LorentzMap<S>,
    /// `ψ(X)`, in the order of `seeds`.
    pub planar: Packing<S>,
    /// `ε` of each seed (cubical kind only).
    pub epsilon: Vec<i8>,
}

impl<S: Scalar> Section<S> {
    /// `ψ` on a raw vector of the section.
    pub fn psi_vec(&self, y: &[S]) -> Result<Vec<S>> {
        let z = self.frame.apply_vec(y);
        match self.kind {
            SectionKind::Cubical => {
                let r2 = sqrt2::<S>()?;
                let x: Vec<S> = z[1..].iter().map(|v| v.clone() * r2.clone()).collect();
                if inner(&x, &x) != S::one() {
                    return Err(Error::InvalidGeometry(
                        "ball is not in the cubical section".into(),
                    ));
                }
                Ok(x)
            }
            _ => {
                if !z[0].is_zero() {
                    return Err(Error::InvalidGeometry(
                        "ball is not orthogonal to the section plane".into(),
                    ));
                }
                Ok(z[1..].to_vec())
            }
        }
    }

    pub fn psi(&self, b: &Ball<S>) -> Result<Ball<S>> {
        Ok(Ball::new_unchecked(self.psi_vec(b.coords())?))
    }

    /// `Γ` as a group acting on the ambient space.
    pub fn group(&self) -> ApollonianGroup<S> {
        ApollonianGroup {
            generators: self
                .generators
                .iter()
                .map(|g| Generator {
                    label: g.label(),
                    facet: Vec::new(),
                    map: g.map.clone(),
                })
                .collect(),
        }
    }

    /// `φ(Γ)` acting on the plane.
    pub fn planar_group(&self) -> ApollonianGroup<S> {
        ApollonianGroup {
            generators: self
                .generators
                .iter()
                .map(|g| Generator {
                    label: g.label(),
                    facet: g.planar_facet.clone(),
                    map: g.planar.clone(),
                })
                .collect(),
        }
    }

    /// The seed balls `X` as a packing.
    pub fn seed_packing(&self) -> Result<Packing<S>> {
        Packing::new(
            self.seeds
                .iter()
                .map(|&i| self.ambient.balls[i].clone())
                .collect(),
            None,
        )
    }

    /// Curvatures of the first ambient facet containing every ball in
    /// `balls`, in facet order.
    pub fn face_through(&self, balls: &[usize]) -> Option<Vec<S>> {
        let facets = match &self.ambient.facets {
            Some(f) => f.clone(),
            None => find_facets(&self.ambient).ok()?,
        };
        let f = facets
            .into_iter()
            .find(|f| balls.iter().all(|i| f.contains(i)))?;
        Some(
            f.iter()
                .map(|&i| self.ambient.balls[i].curvature())
                .collect(),
        )
    }

    /// The ambient face through the first seed balls carrying the given
    /// curvatures (the lift input), in facet order.
    pub fn face_through_curvatures(&self, k: &[S]) -> Option<Vec<S>> {
        let mut used: Vec<usize> = Vec::new();
        for x in k {
            let i = self
                .seeds
                .iter()
                .copied()
                .find(|&i| !used.contains(&i) && self.ambient.balls[i].curvature() == *x)?;
            used.push(i);
        }
        self.face_through(&used)
    }

    /// Curvatures of the ambient facet (four pairwise tangent balls) holding
    /// the most seed balls; the first such facet on ties.
    pub fn ambient_quadruple(&self) -> Vec<S> {
        let facets = match &self.ambient.facets {
            Some(f) => f.clone(),
            None => find_facets(&self.ambient).unwrap_or_default(),
        };
        let hits = |f: &Vec<usize>| f.iter().filter(|i| self.seeds.contains(i)).count();
        let mut best: Option<&Vec<usize>> = None;
        for f in &facets {
            if best.map_or(true, |b| hits(f) > hits(b)) {
                best = Some(f);
            }
        }
        match best {
            Some(f) => f
                .iter()
                .map(|&i| self.ambient.balls[i].curvature())
                .collect(),
            None => (0..4.min(self.ambient.len()))
                .map(|i| self.ambient.balls[i].curvature())
                .collect(),
        }
    }
}

fn sqrt2<S: Scalar>() -> Result<S> {
    S::from_i64(2)
        .sqrt()
        .ok_or_else(|| Error::Field("√2".into()))
}

fn e1<S: Scalar>(n: usize) -> Vec<S> {
    let mut v = vec![S::zero(); n];
    v[0] = S::one();
    v
}

/// A curvature-preserving Lorentz map sending the unit plane vector `h` to `e₁`.
pub fn plane_frame<S: Scalar>(h: &[S]) -> Result<LorentzMap<S>> {
    let n = h.len();
    if inner(h, h) != S::one() || !curvature_of(h).is_zero() {
        return Err(Error::InvalidGeometry(
            "section sphere is not a plane; conjugate the packing first".into(),
        ));
    }
    let e = e1::<S>(n);
    if h == e.as_slice() {
        return Ok(LorentzMap::identity(n));
    }
    let mut flip = vec![S::one(); n];
    flip[0] = -S::one();
    if h.iter().zip(&e).all(|(a, b)| *a == -b.clone()) {
        return Ok(LorentzMap::new_unchecked(Mat::diag(&flip)));
    }
    // reflect in h − e₁ (an isometry of ℝ^d since κ(h − e₁) = 0); when
    // that vector is null, swap the first two axes first
    let mut pre = LorentzMap::identity(n);
    let mut g = h.to_vec();
    if g[0] == S::one() {
        let mut s = vec![S::zero(); n];
        s[0] = S::one();
        s[1] = -S::one();
        pre = reflection_in(&s)?;
        g = pre.apply_vec(h);
    }
    let v: Vec<S> = g
        .iter()
        .zip(&e)
        .map(|(a, b)| a.clone() - b.clone())
        .collect();
    Ok(reflection_in(&v)?.compose(&pre))
}

/// The `(d−1)`-ball `b ∩ H` in the intrinsic coordinates of the plane `H`.
pub fn cross_section<S: Scalar>(b: &Ball<S>, h: &[S]) -> Result<Ball<S>> {
    if b.coords().len() != h.len() {
        return Err(Error::DimensionMismatch {
            expected: h.len(),
            found: b.coords().len(),
        });
    }
    if !inner(b.coords(), h).is_zero() {
        return Err(Error::InvalidGeometry(
            "ball is not orthogonal to the plane".into(),
        ));
    }
    let z = plane_frame(h)?.apply_vec(b.coords());
    Ok(Ball::new_unchecked(z[1..].to_vec()))
}

/// Unit vector orthogonal to all the given balls (one-dimensional complement).
fn common_orthogonal<S: Scalar>(balls: &[&[S]]) -> Result<Vec<S>> {
    let w = dual_vector(balls, None)?;
    unit(w)
}

fn unit<S: Scalar>(mut w: Vec<S>) -> Result<Vec<S>> {
    let nn = inner(&w, &w);
    if nn.signum() <= 0 {
        return Err(Error::Degenerate("no space-like orthogonal vector".into()));
    }
    let s = nn.sqrt().ok_or_else(|| Error::Field(format!("√({nn})")))?;
    // canonical sign: first non-zero entry positive
    if let Some(x) = w.iter().find(|x| !x.is_zero()) {
        if x.signum() < 0 {
            w = w.into_iter().map(|x| -x).collect();
        }
    }
    Ok(w.into_iter().map(|x| x / s.clone()).collect())
}

fn check_orthoplicial<S: Scalar>(p: &Packing<S>) -> Result<()> {
    if p.len() != 8 || p.dim() != 3 {
        return Err(Error::InvalidGeometry(
            "an orthoplicial packing has 8 spheres".into(),
        ));
    }
    let g = p.gram();
    for i in 0..8 {
        for j in 0..8 {
            let want = if i == j {
                1
            } else if (i + 4) % 8 == j {
                -3
            } else {
                -1
            };
            if g[(i, j)] != S::from_i64(want) {
                return Err(Error::InvalidGeometry(format!(
                    "balls {i}, {j}: product {} where the orthoplex needs {want}",
                    g[(i, j)]
                )));
            }
        }
    }
    Ok(())
}

fn all_facets() -> Vec<Vec<usize>> {
    crate::apollonian::matrices::facet_labels()
        .iter()
        .map(|l| l.indices())
        .collect()
}

fn facet_reflection<S: Scalar>(p: &Packing<S>, l: &FacetLabel) -> Result<LorentzMap<S>> {
    let refs: Vec<&[S]> =
        l.0.iter()
            .map(|&x| p.balls[ortho_index(x)].coords())
            .collect();
    let center = barycenter(&p.balls);
    let reference = (inner(&center, &center).signum() < 0).then_some(center.as_slice());
    reflection_in(&dual_vector(&refs, reference)?)
}

fn build<S: Scalar>(
    kind: SectionKind,
    ambient: Packing<S>,
    seeds: Vec<usize>,
    words: Vec<Vec<FacetLabel>>,
    plane: Vec<S>,
    frame: LorentzMap<S>,
) -> Result<Section<S>> {
    check_orthoplicial(&ambient)?;
    let n = plane.len();
    let finv = frame.inverse();
    let mut sec = Section {
        kind,
        ambient,
        seeds,
        generators: Vec::new(),
        plane,
        frame,
        planar: Packing::new(Vec::new(), None)?,
        epsilon: Vec::new(),
    };
    let planar_balls = sec
        .seeds
        .iter()
        .map(|&i| sec.psi(&sec.ambient.balls[i]))
        .collect::<Result<Vec<_>>>()?;
    if kind == SectionKind::Cubical {
        sec.epsilon = sec
            .seeds
            .iter()
            .map(|&i| sec.frame.apply_vec(sec.ambient.balls[i].coords())[0].signum() as i8)
            .collect();
    }
    sec.planar = Packing::new(planar_balls, Some(kind.to_string()))?;
    let planar_gens = generators(&sec.planar)?;
    for word in words {
        let mut m = LorentzMap::identity(n);
        for l in &word {
            m = m.compose(&facet_reflection(&sec.ambient, l)?);
        }
        // t_ijk swaps the two sides of H, so only the plane itself is fixed
        let image = m.apply_vec(&sec.plane);
        let minus: Vec<S> = sec.plane.iter().map(|x| -x.clone()).collect();
        if image != sec.plane && image != minus {
            return Err(Error::InvalidGeometry(format!(
                "generator {word:?} does not preserve the section plane"
            )));
        }
        let c = sec.frame.compose(&m).compose(&finv);
        if (1..n).any(|i| !c.matrix()[(0, i)].is_zero() || !c.matrix()[(i, 0)].is_zero()) {
            return Err(Error::InvalidGeometry(format!(
                "generator {word:?} mixes the plane normal into the plane"
            )));
        }
        let block = Mat::from_fn(n - 1, n - 1, |i, j| c.matrix()[(i + 1, j + 1)].clone());
        let planar = LorentzMap::new_unchecked(block);
        let hit = planar_gens
            .generators
            .iter()
            .find(|g| g.map == planar)
            .ok_or_else(|| {
                Error::InvalidGeometry(format!("{word:?} has no planar Apollonian counterpart"))
            })?;
        sec.generators.push(SectionGenerator {
            word,
            map: m,
            planar,
            planar_facet: hit.facet.clone(),
        });
    }
    Ok(sec)
}

fn bars(signs: [bool; 4]) -> FacetLabel {
    FacetLabel::from_bars(signs)
}

/// Tetrahedral section: `X = {b₁…b₄}`, `H` the boundary of the dual ball of
/// `b₁…b₄`, `Γ` generated by the four facets with one barred letter.
pub fn section_tetrahedral<S: Scalar>(p: &Packing<S>) -> Result<Section<S>> {
    check_orthoplicial(p)?;
    let refs: Vec<&[S]> = (0..4).map(|i| p.balls[i].coords()).collect();
    let plane = common_orthogonal(&refs)?;
    let frame = plane_frame(&plane)?;
    let words = (0..4)
        .map(|i| {
            let mut b = [false; 4];
            b[i] = true;
            vec![bars(b)]
        })
        .collect();
    build(
        SectionKind::Tetrahedral,
        p.clone(),
        vec![0, 1, 2, 3],
        words,
        plane,
        frame,
    )
}

/// The sign patterns of `ijk` in `t_ijk = s_{ijk4}·s_{ijk4̄}` as printed (the
/// all-barred pattern is absent).
pub const PRINTED_OCTA_PATTERNS: [[bool; 3]; 7] = [
    [false, false, false],
    [true, false, false],
    [false, true, false],
    [false, false, true],
    [true, true, false],
    [false, true, true],
    [true, false, true],
];

/// All eight patterns, printed ones first.
pub fn octa_patterns(with_eighth: bool) -> Vec<[bool; 3]> {
    let mut v = PRINTED_OCTA_PATTERNS.to_vec();
    if with_eighth {
        v.push([true, true, true]);
    }
    v
}

/// Octahedral section: `X = B ∖ {b₄, b₋₄}`, `H` the plane orthogonal to `X`,
/// `Γ` generated by `t_ijk = s_{ijk4}·s_{ijk4̄}` over the given sign patterns.
pub fn section_octahedral_with<S: Scalar>(
    p: &Packing<S>,
    patterns: &[[bool; 3]],
) -> Result<Section<S>> {
    check_orthoplicial(p)?;
    let seeds = vec![0, 1, 2, 4, 5, 6];
    let refs: Vec<&[S]> = seeds.iter().map(|&i| p.balls[i].coords()).collect();
    let plane = common_orthogonal(&refs)?;
    let frame = plane_frame(&plane)?;
    let words = patterns
        .iter()
        .map(|s| {
            vec![
                bars([s[0], s[1], s[2], false]),
                bars([s[0], s[1], s[2], true]),
            ]
        })
        .collect();
    build(
        SectionKind::Octahedral,
        p.clone(),
        seeds,
        words,
        plane,
        frame,
    )
}

/// [`section_octahedral_with`] over all eight sign patterns; seven give a
/// proper subgroup of the planar Apollonian group (see
/// [`octahedral_pattern_diagnostic`]).
pub fn section_octahedral<S: Scalar>(p: &Packing<S>) -> Result<Section<S>> {
    section_octahedral_with(p, &octa_patterns(true))
}

/// The six facets with exactly two barred letters.
fn cubical_words() -> Vec<Vec<FacetLabel>> {
    let mut out = Vec::new();
    for i in 0..4 {
        for j in i + 1..4 {
            let mut b = [false; 4];
            b[i] = true;
            b[j] = true;
            out.push(vec![bars(b)]);
        }
    }
    out
}

/// Cubical section of a packing in normalized position: `frame` moves it to
/// a frame where the section spheres read `(ε, x)/√2`.
pub fn section_cubical_in_frame<S: Scalar>(
    p: &Packing<S>,
    frame: LorentzMap<S>,
) -> Result<Section<S>> {
    check_orthoplicial(p)?;
    let plane = frame.inverse().apply_vec(&e1::<S>(5));
    build(
        SectionKind::Cubical,
        p.clone(),
        (0..8).collect(),
        cubical_words(),
        plane,
        frame,
    )
}

/// Cubical section of `B₁` (or any orthoplicial packing already in its
/// normalized position, where `H = {x = 0}`).
pub fn section_cubical<S: Scalar>(p: &Packing<S>) -> Result<Section<S>> {
    section_cubical_in_frame(p, LorentzMap::identity(5))
}

/// Planar packings used as realization templates.
fn standard_planar(kind: SectionKind) -> Result<Packing<Quad>> {
    Ok(match kind {
        SectionKind::Tetrahedral => section_tetrahedral(&standard_b0::<Quad>())?.planar,
        SectionKind::Octahedral => section_octahedral(&standard_b0::<Quad>())?.planar,
        SectionKind::Cubical => section_cubical(&standard_b1())?.planar,
    })
}

/// The disk packing of a kind in its standard position (the section of `B₀`
/// or `B₁`). Octahedral disks are ordered `1 2 3 −1 −2 −3`; cube disks follow
/// the spheres of `B₁`.
pub fn standard_planar_packing<S: Scalar>(kind: SectionKind) -> Result<Packing<S>> {
    Ok(standard_planar(kind)?.map(|q| S::from_quad(q)))
}

/// Moves `template` so that ball `idx[i]` gets curvature `k[i]`.
fn realize<S: Scalar>(template: &Packing<S>, idx: &[usize], k: &[S]) -> Result<Packing<S>> {
    let rows: Vec<Vec<S>> = idx
        .iter()
        .map(|&i| template.balls[i].coords().to_vec())
        .collect();
    let f = Mat::from_rows(rows).solve(k).ok_or_else(|| {
        Error::Degenerate("template balls do not determine the curvature functional".into())
    })?;
    if !inner(&f, &f).is_zero() {
        return Err(Error::Unrealizable(
            "curvatures violate the Descartes relation of the packing".into(),
        ));
    }
    let m =
        crate::inversive::align_curvature(&f).map_err(|e| Error::Unrealizable(e.to_string()))?;
    let p = template.apply(&m)?;
    let got: Vec<S> = idx.iter().map(|&i| p.balls[i].curvature()).collect();
    debug_assert_eq!(got, k.to_vec());
    Ok(Packing { facets: None, ..p })
}

/// Tetrahedral disk packing with the given four curvatures.
pub fn realize_tetrahedral<S: Scalar>(k: &[S]) -> Result<Packing<S>> {
    if k.len() != 4 {
        return Err(Error::InvalidInput(format!(
            "tetrahedral seeds have 4 curvatures, got {}",
            k.len()
        )));
    }
    realize(
        &standard_planar_packing(SectionKind::Tetrahedral)?,
        &[0, 1, 2, 3],
        k,
    )
}

/// Octahedral disk packing whose disks `1, 2, 3` (pairwise tangent) have the
/// given curvatures; `κ_O` is the smaller root. Output order `1 2 3 −1 −2 −3`.
pub fn realize_octahedral<S: Scalar>(k: &[S]) -> Result<Packing<S>> {
    if k.len() != 3 {
        return Err(Error::InvalidInput(format!(
            "octahedral seeds have 3 curvatures, got {}",
            k.len()
        )));
    }
    let (ko, _) = solve_octahedral_center(k)?;
    let anti = S::from_i64(2) * ko - k[0].clone();
    let target = [k[0].clone(), k[1].clone(), k[2].clone(), anti];
    realize(
        &standard_planar_packing(SectionKind::Octahedral)?,
        &[0, 1, 2, 3],
        &target,
    )
}

/// Fourth curvature of the geodesic path `u₁ u₂ u₃ u₄` of a cube packing:
/// `u₁ + 2u₃ ∓ 2√(2ℭ₂(u₁,u₂,u₃))`, smaller root first.
pub fn cubical_path_continuation<S: Scalar>(u1: &S, u2: &S, u3: &S) -> Result<(S, S)> {
    let two = S::from_i64(2);
    let a = u1.clone() + u3.clone();
    let b = u1.clone() - u2.clone();
    let c = u2.clone() - u3.clone();
    let r = (a.clone() * a - b.clone() * b - c.clone() * c) / two.clone();
    if r.signum() < 0 {
        return Err(Error::Unrealizable(format!(
            "negative cubical radicand {r}"
        )));
    }
    let s = r.sqrt().ok_or_else(|| Error::Field(format!("√({r})")))?;
    let base = u1.clone() + two.clone() * u3.clone();
    Ok((base.clone() - two.clone() * s.clone(), base + two * s))
}

/// Cube disk packing from a disk and two of its neighbours, `(κ_v, κ_a, κ_b)`.
/// The opposite corner of their square gets `κ_a + κ_b − κ_v`; the remaining
/// freedom is fixed by the smaller root of [`cubical_path_continuation`].
/// Output follows the spheres of `B₁`: `v` is disk 0, `a` disk 5, `b` disk 6.
pub fn realize_cubical<S: Scalar>(k: &[S]) -> Result<Packing<S>> {
    if k.len() != 3 {
        return Err(Error::InvalidInput(format!(
            "cubical seeds have 3 curvatures, got {}",
            k.len()
        )));
    }
    let (w, _) = cubical_path_continuation(&k[1], &k[0], &k[2])?;
    let target = [k[0].clone(), k[1].clone(), k[2].clone(), w];
    realize(
        &standard_planar_packing(SectionKind::Cubical)?,
        &[0, 5, 6, 1],
        &target,
    )
}

pub fn realize_planar<S: Scalar>(kind: SectionKind, k: &[S]) -> Result<Packing<S>> {
    match kind {
        SectionKind::Tetrahedral => realize_tetrahedral(k),
        SectionKind::Octahedral => realize_octahedral(k),
        SectionKind::Cubical => realize_cubical(k),
    }
}

fn embed<S: Scalar>(b: &Ball<S>) -> Ball<S> {
    let mut v = Vec::with_capacity(b.coords().len() + 1);
    v.push(S::zero());
    v.extend_from_slice(b.coords());
    Ball::new_unchecked(v)
}

fn check_gram<S: Scalar>(
    p: &Packing<S>,
    want: impl Fn(usize, usize) -> i64,
    what: &str,
) -> Result<()> {
    let g = p.gram();
    for i in 0..p.len() {
        for j in 0..p.len() {
            if g[(i, j)] != S::from_i64(want(i, j)) {
                return Err(Error::InvalidGeometry(format!(
                    "not a {what} disk packing (disks {i}, {j})"
                )));
            }
        }
    }
    Ok(())
}

/// Orthoplicial packing containing the four mutually tangent disks as the
/// equatorial sections of `b₁…b₄`, completed by `b₋ᵢ = 2x_P − bᵢ`.
pub fn lift_tetrahedral<S: Scalar>(p: &Packing<S>) -> Result<Section<S>> {
    if p.len() != 4 || p.dim() != 2 {
        return Err(Error::InvalidInput(
            "a tetrahedral disk packing has 4 disks".into(),
        ));
    }
    check_gram(p, |i, j| if i == j { 1 } else { -1 }, "tetrahedral")?;
    let top: Vec<Ball<S>> = p.balls.iter().map(embed).collect();
    let x = facet_center_vector(&top)?;
    let mut balls = top.clone();
    balls.extend(top.iter().map(|b| crate::apollonian::antipode(&x, b)));
    let ambient = Packing::new(balls, Some("orthoplex".into()))?.with_facets(all_facets());
    section_tetrahedral(&ambient)
}

/// Orthoplicial packing containing an octahedral disk packing (order
/// `1 2 3 −1 −2 −3`) as the equatorial sections of six spheres; `b₄, b₋₄`
/// are the two spheres tangent to all six, ordered by coordinates.
pub fn lift_octahedral<S: Scalar>(p: &Packing<S>) -> Result<Section<S>> {
    if p.len() != 6 || p.dim() != 2 {
        return Err(Error::InvalidInput(
            "an octahedral disk packing has 6 disks".into(),
        ));
    }
    check_gram(
        p,
        |i, j| {
            if i == j {
                1
            } else if (i + 3) % 6 == j {
                -3
            } else {
                -1
            }
        },
        "octahedral",
    )?;
    let six: Vec<Ball<S>> = p.balls.iter().map(embed).collect();
    let rows: Vec<Vec<S>> = six
        .iter()
        .map(|b| {
            let mut r = b.coords().to_vec();
            r[4] = -r[4].clone();
            r
        })
        .collect();
    let rows = Mat::from_rows(rows);
    let x0 = rows.solve(&vec![-S::one(); 6]).ok_or_else(|| {
        Error::Unrealizable("no sphere is tangent to all six lifted disks".into())
    })?;
    let ns = rows.nullspace();
    if ns.len() != 1 {
        return Err(Error::Degenerate(
            "lifted disks do not span a hyperplane".into(),
        ));
    }
    let v = &ns[0];
    let a = inner(v, v);
    let b = inner(&x0, v);
    let c = inner(&x0, &x0) - S::one();
    let disc = b.clone() * b.clone() - a.clone() * c;
    if disc.signum() <= 0 || a.is_zero() {
        return Err(Error::Unrealizable(
            "octahedral completion has no two real spheres".into(),
        ));
    }
    let s = disc
        .sqrt()
        .ok_or_else(|| Error::Field(format!("√({disc})")))?;
    let at = |t: S| -> Ball<S> {
        Ball::new_unchecked(
            x0.iter()
                .zip(v)
                .map(|(p, q)| p.clone() + t.clone() * q.clone())
                .collect(),
        )
    };
    let mut pair = [at((-b.clone() - s.clone()) / a.clone()), at((-b + s) / a)];
    pair.sort_by(|x, y| {
        x.curvature()
            .cmp_s(&y.curvature())
            .then_with(|| crate::apollonian::dual::cmp_coords(x.coords(), y.coords()))
    });
    let [b4, bm4] = pair;
    let mut balls = six[..3].to_vec();
    balls.push(b4);
    balls.extend_from_slice(&six[3..]);
    balls.push(bm4);
    let ambient = Packing::new(balls, Some("orthoplex".into()))?.with_facets(all_facets());
    section_octahedral(&ambient)
}

/// Two-colouring of a connected tangency graph from vertex 0 (`+1` there).
fn bipartition(n: usize, edges: &[(usize, usize)]) -> Result<Vec<i8>> {
    let mut col = vec![0i8; n];
    col[0] = 1;
    let mut stack = vec![0];
    while let Some(u) = stack.pop() {
        for &(a, b) in edges {
            let v = if a == u {
                b
            } else if b == u {
                a
            } else {
                continue;
            };
            if col[v] == 0 {
                col[v] = -col[u];
                stack.push(v);
            } else if col[v] == col[u] {
                return Err(Error::InvalidGeometry(
                    "tangency graph is not bipartite".into(),
                ));
            }
        }
    }
    if col.contains(&0) {
        return Err(Error::InvalidGeometry(
            "tangency graph is disconnected".into(),
        ));
    }
    Ok(col)
}

/// Orthoplicial packing whose cubical section is the given cube disk packing.
///
/// Disks are lifted to `(ε, x)/√2` with `ε = +1` on the class of the first
/// disk, then the space is dilated by `1/√2` so curvatures are preserved.
/// Returned ambient order: the `+` disks as given, then their cube antipodes.
pub fn lift_cubical<S: Scalar>(p: &Packing<S>) -> Result<Section<S>> {
    if p.len() != 8 || p.dim() != 2 {
        return Err(Error::InvalidInput(
            "a cubical disk packing has 8 disks".into(),
        ));
    }
    let eps = bipartition(8, p.tangency_graph())?;
    let dist = p.graph_distances();
    let plus: Vec<usize> = (0..8).filter(|&i| eps[i] > 0).collect();
    if plus.len() != 4 || p.tangency_graph().len() != 12 {
        return Err(Error::InvalidGeometry(
            "tangency graph is not a cube".into(),
        ));
    }
    let mut order = plus.clone();
    for &i in &plus {
        let a = (0..8)
            .find(|&j| dist[i][j] == 3)
            .ok_or_else(|| Error::InvalidGeometry("tangency graph is not a cube".into()))?;
        order.push(a);
    }
    let r2 = sqrt2::<S>()?;
    let lam = dilation(5, &(S::one() / r2.clone()))?;
    let balls: Vec<Ball<S>> = order
        .iter()
        .map(|&i| {
            let mut v = vec![S::from_i64(eps[i] as i64) / r2.clone()];
            v.extend(p.balls[i].coords().iter().map(|x| x.clone() / r2.clone()));
            Ball::new_unchecked(lam.apply_vec(&v))
        })
        .collect();
    let ambient = Packing::new(balls, Some("orthoplex".into()))?.with_facets(all_facets());
    section_cubical_in_frame(&ambient, lam.inverse())
}

pub fn lift<S: Scalar>(kind: SectionKind, p: &Packing<S>) -> Result<Section<S>> {
    match kind {
        SectionKind::Tetrahedral => lift_tetrahedral(p),
        SectionKind::Octahedral => lift_octahedral(p),
        SectionKind::Cubical => lift_cubical(p),
    }
}

/// Realizes a disk packing from seed curvatures and lifts it.
pub fn lift_curvatures<S: Scalar>(kind: SectionKind, k: &[S]) -> Result<Section<S>> {
    lift(kind, &realize_planar(kind, k)?)
}

#[derive(Clone, Debug, PartialEq)]
pub struct Mismatch<S> {
    /// Generator indices, applied right to left.
    pub word: Vec<usize>,
    pub seed: usize,
    pub ambient_curvature: S,
    pub planar_curvature: S,
}

#[derive(Clone, Debug, PartialEq)]
pub struct EquivalenceReport<S> {
    pub depth: u32,
    /// Reduced words of length at most `depth` (including the empty word).
    pub checked_words: usize,
    pub checked_balls: usize,
    pub mismatches: Vec<Mismatch<S>>,
    /// Every planar cluster curvature occurs in the ambient cluster.
    pub containment: bool,
    /// Planar curvatures missing from the ambient cluster.
    pub missing: Vec<S>,
}

impl<S> EquivalenceReport<S> {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty() && self.containment
    }
}

/// Finite-depth certificate of arithmetic equivalence.
///
/// For every reduced word `w` in `Γ` of length at most `depth` and every
/// seed `b ∈ X`, checks `ψ(w·b) = φ(w)·ψ(b)` exactly and compares the
/// curvatures. Independently, the curvatures of the planar cluster must
/// all occur among those of the ambient cluster.
pub fn verify_arithmetic_equivalence<S: Scalar>(
    section: &Section<S>,
    planar_cluster: &OrbitReport<S>,
    ambient_cluster: &OrbitReport<S>,
    depth: u32,
) -> Result<EquivalenceReport<S>> {
    let ng = section.generators.len();
    let top: Vec<Vec<S>> = section
        .seeds
        .iter()
        .map(|&i| section.ambient.balls[i].coords().to_vec())
        .collect();
    let low: Vec<Vec<S>> = section
        .planar
        .balls
        .iter()
        .map(|b| b.coords().to_vec())
        .collect();
    let mut report = EquivalenceReport {
        depth,
        checked_words: 0,
        checked_balls: 0,
        mismatches: Vec::new(),
        containment: true,
        missing: Vec::new(),
    };
    // depth-first over reduced words
    let mut stack: Vec<(Vec<Vec<S>>, Vec<Vec<S>>, Vec<usize>)> = vec![(top, low, Vec::new())];
    while let Some((a, p, word)) = stack.pop() {
        report.checked_words += 1;
        for (j, (ya, yp)) in a.iter().zip(&p).enumerate() {
            report.checked_balls += 1;
            let ka = curvature_of(ya);
            let kp = curvature_of(yp);
            let same = section.psi_vec(ya).map_or(false, |x| x == *yp);
            if !same || ka != kp {
                report.mismatches.push(Mismatch {
                    word: word.clone(),
                    seed: j,
                    ambient_curvature: ka,
                    planar_curvature: kp,
                });
            }
        }
        if word.len() as u32 == depth {
            continue;
        }
        for g in 0..ng {
            if word.first() == Some(&g) {
                continue;
            }
            let gen = &section.generators[g];
            let a2 = a.iter().map(|y| gen.map.apply_vec(y)).collect();
            let p2 = p.iter().map(|y| gen.planar.apply_vec(y)).collect();
            let mut w2 = Vec::with_capacity(word.len() + 1);
            w2.push(g);
            w2.extend_from_slice(&word);
            stack.push((a2, p2, w2));
        }
    }
    let ambient: BTreeSet<S::Key> = ambient_cluster.curvatures().map(|k| k.key()).collect();
    let mut missing: Vec<S> = Vec::new();
    let mut seen = BTreeSet::new();
    for k in planar_cluster.curvatures() {
        if !ambient.contains(&k.key()) && seen.insert(k.key()) {
            missing.push(k.clone());
        }
    }
    missing.sort_by(|a, b| a.cmp_s(b));
    report.containment = missing.is_empty();
    report.missing = missing;
    Ok(report)
}

/// The planar cluster of `ψ(X)` under its own Apollonian group (all dual
/// disks, not `φ(Γ)`) and the ambient cluster under all 16 reflections, at
/// matched depth: `k` planar steps against `k·ℓ` ambient ones where `ℓ` is
/// the word length of a generator of `Γ`.
pub fn section_clusters<S: Scalar>(
    section: &Section<S>,
    depth: u32,
    max_curvature: Option<i64>,
    ambient_max_curvature: Option<i64>,
) -> Result<(OrbitReport<S>, OrbitReport<S>)> {
    let mut pb = Bound::depth(depth);
    if let Some(k) = max_curvature {
        pb = pb.with_curvature(k);
    }
    let mut ab = Bound::depth(depth * section.kind.word_length());
    if let Some(k) = ambient_max_curvature.or(max_curvature) {
        ab = ab.with_curvature(k);
    }
    let planar = orbit(&section.planar, &generators(&section.planar)?, &pb)?;
    let ambient = orbit(&section.ambient, &generators(&section.ambient)?, &ab)?;
    Ok((planar, ambient))
}

/// Orbit sizes of `X` under the seven printed `t_ijk` and under all eight.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PatternDiagnostic {
    pub depth: u32,
    pub seven: usize,
    pub eight: usize,
    /// The eighth generator lies in the group of the other seven (no new balls).
    pub redundant: bool,
}

pub fn octahedral_pattern_diagnostic<S: Scalar>(
    p: &Packing<S>,
    depth: u32,
) -> Result<PatternDiagnostic> {
    let s7 = section_octahedral_with(p, &octa_patterns(false))?;
    let s8 = section_octahedral_with(p, &octa_patterns(true))?;
    let seeds = s8.seed_packing()?;
    let b = Bound::depth(depth);
    let seven = orbit(&seeds, &s7.group(), &b)?.len();
    let eight = orbit(&seeds, &s8.group(), &b)?.len();
    Ok(PatternDiagnostic {
        depth,
        seven,
        eight,
        redundant: seven == eight,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(v: &[i64]) -> Vec<Quad> {
        v.iter().map(|&x| Quad::int(x)).collect()
    }

    #[test]
    fn b3_section_has_curvature_one() {
        let h = q(&[0, 1, 0, 1, 1]);
        let b3 = Ball::<Quad>::from_i64(&[1, 1, 0, 0, 1]).unwrap();
        let c = cross_section(&b3, &h).unwrap();
        assert_eq!(c.curvature(), Quad::int(1));
        assert!(cross_section(&Ball::<Quad>::from_i64(&[1, 0, 1, 0, 1]).unwrap(), &h).is_err());
    }

    #[test]
    fn standard_sections() {
        let b0 = standard_b0::<Quad>();
        let t = section_tetrahedral(&b0).unwrap();
        assert_eq!(t.plane, q(&[0, 1, 0, 1, 1]));
        for g in &t.generators {
            assert_eq!(g.map.apply_vec(&t.plane), t.plane);
        }
        let o = section_octahedral(&b0).unwrap();
        assert_eq!(o.planar.len(), 6);
        // H_O = {x = y}; every t_ijk swaps its sides
        let r = Quad::frac(1, 2) * Quad::int(2).sqrt().unwrap();
        assert_eq!(
            o.plane,
            vec![r, -r, Quad::zero(), Quad::zero(), Quad::zero()]
        );
        for g in &o.generators {
            let minus: Vec<Quad> = o.plane.iter().map(|x| -*x).collect();
            assert_eq!(g.map.apply_vec(&o.plane), minus);
        }
        let c = section_cubical(&standard_b1()).unwrap();
        assert_eq!(c.generators.len(), 6);
        assert_eq!(c.epsilon, vec![1, 1, 1, 1, -1, -1, -1, -1]);
    }

    #[test]
    fn integral_lifts() {
        let t = lift_curvatures(SectionKind::Tetrahedral, &q(&[-1, 2, 2, 3])).unwrap();
        assert_eq!(t.ambient.curvatures(), q(&[-1, 2, 2, 3, 7, 4, 4, 3]));
        let o = lift_curvatures(SectionKind::Octahedral, &q(&[-2, 4, 5])).unwrap();
        assert_eq!(o.ambient_quadruple(), q(&[-2, 4, 5, 5]));
        let c = lift_curvatures(SectionKind::Cubical, &q(&[-3, 5, 12])).unwrap();
        let k = c.ambient.curvatures();
        let mut face = vec![k[0], k[5], k[6], k[3]];
        face.sort();
        assert_eq!(face, q(&[-3, 5, 12, 20]));
    }

    #[test]
    fn seven_patterns_miss_a_face() {
        let d = octahedral_pattern_diagnostic(&standard_b0::<Quad>(), 2).unwrap();
        assert!(d.eight > d.seven);
    }

    #[test]
    fn lift_then_section_is_the_identity() {
        for kind in [
            SectionKind::Tetrahedral,
            SectionKind::Octahedral,
            SectionKind::Cubical,
        ] {
            let p = standard_planar_packing::<Quad>(kind).unwrap();
            let sec = lift(kind, &p).unwrap();
            assert_eq!(sec.planar.balls, p.balls, "{kind}");
        }
    }

    #[test]
    fn equivalence_at_depth_three() {
        for (kind, k) in [
            (SectionKind::Tetrahedral, q(&[-1, 2, 2, 3])),
            (SectionKind::Octahedral, q(&[-2, 4, 5])),
            (SectionKind::Cubical, q(&[-3, 5, 12])),
        ] {
            let sec = lift_curvatures(kind, &k).unwrap();
            let (p, a) = section_clusters(&sec, 2, Some(200), None).unwrap();
            let r = verify_arithmetic_equivalence(&sec, &p, &a, 3).unwrap();
            assert!(r.passed(), "{kind}: {:?}", r.missing);
            assert!(r.checked_words > 1);
        }
    }
}
