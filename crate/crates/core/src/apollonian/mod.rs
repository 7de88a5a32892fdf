//! Apollonian groups: reflections in the dual balls of a polytopal packing,
//! orbit enumeration and integrality tests.

pub mod census;
pub mod dual;
pub mod frame;
pub mod integrality;
pub mod matrices;
pub mod orbit;
pub mod probe;

pub use census::{curvature_census, Census};
pub use dual::{
    antipode, barycenter, dual_ball, dual_vector, facet_center_candidates, facet_center_vector,
};
pub use integrality::{
    is_integral_cubical, is_integral_octahedral, is_integral_orthoplicial, is_integral_tetrahedral,
};
pub use matrices::{standard_b0, standard_b1, FacetLabel};
pub use orbit::{
    brute_force_orbit, orbit, orbit_with, Bound, Engine, OrbitEntry, OrbitOptions, OrbitReport,
};

use crate::error::{Error, Result};
use crate::inversive::{inner, reflection_in, Ball, LorentzMap, Packing};
use crate::linalg::Mat;
use crate::scalar::{Quad, Scalar};

#[derive(Clone, Debug, PartialEq)]
pub struct Generator<S> {
    pub label: String,
    /// Indices (into the seed packing) of the facet whose dual ball this reflects in.
    pub facet: Vec<usize>,
    pub map: LorentzMap<S>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ApollonianGroup<S> {
    pub generators: Vec<Generator<S>>,
}

impl<S: Scalar> ApollonianGroup<S> {
    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn maps(&self) -> Vec<LorentzMap<S>> {
        self.generators.iter().map(|g| g.map.clone()).collect()
    }

    pub fn labels(&self) -> Vec<String> {
        self.generators.iter().map(|g| g.label.clone()).collect()
    }

    pub fn get(&self, label: &str) -> Option<&Generator<S>> {
        self.generators.iter().find(|g| g.label == label)
    }

    /// Pairs of generators whose product is an involution.
    pub fn commuting_pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.len() {
            for j in i + 1..self.len() {
                let p = self.generators[i].map.compose(&self.generators[j].map);
                if p.is_involution() {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Restriction to the generators at the given positions.
    pub fn subgroup(&self, idx: &[usize]) -> ApollonianGroup<S> {
        ApollonianGroup {
            generators: idx.iter().map(|&i| self.generators[i].clone()).collect(),
        }
    }

    pub fn map_scalar<T: Scalar>(&self, f: impl Fn(&S) -> T + Copy) -> ApollonianGroup<T> {
        ApollonianGroup {
            generators: self
                .generators
                .iter()
                .map(|g| Generator {
                    label: g.label.clone(),
                    facet: g.facet.clone(),
                    map: LorentzMap::new_unchecked(g.map.matrix().map(f)),
                })
                .collect(),
        }
    }
}

/// The 16 printed generators of the orthoplicial group acting on `B₀`, in
/// printed order. Each is labelled by the facet of `B₀` it fixes.
pub fn orthoplicial_generators<S: Scalar>() -> ApollonianGroup<S> {
    let generators = matrices::facet_labels()
        .into_iter()
        .map(FacetLabel::from_printed)
        .enumerate()
        .map(|(i, label)| Generator {
            label: label.to_string(),
            facet: label.indices(),
            map: LorentzMap::new_unchecked(matrices::printed_matrix(i)),
        })
        .collect();
    ApollonianGroup { generators }
}

/// The Coxeter generators `V, E, R, F, S`.
pub fn symmetrized_generators() -> ApollonianGroup<Quad> {
    let generators = matrices::symmetrized()
        .into_iter()
        .map(|(c, m)| Generator {
            label: c.to_string(),
            facet: Vec::new(),
            map: LorentzMap::new_unchecked(m),
        })
        .collect();
    ApollonianGroup { generators }
}

/// Facets of the tangency polytope: maximal ball sets with a common
/// orthogonal ball that leaves every other ball strictly on one side.
pub fn find_facets<S: Scalar>(p: &Packing<S>) -> Result<Vec<Vec<usize>>> {
    let n = p.dim() + 2;
    let k = n - 1;
    let m = p.len();
    if m < n {
        return Err(Error::InvalidGeometry(
            "too few balls for a polytopal packing".into(),
        ));
    }
    if m > 32 {
        return Err(Error::InvalidInput(
            "facet search is limited to 32 balls; pass facets explicitly".into(),
        ));
    }
    let mut found: Vec<Vec<usize>> = Vec::new();
    let mut subset: Vec<usize> = (0..k).collect();
    loop {
        if !found.iter().any(|f| subset.iter().all(|i| f.contains(i))) {
            let refs: Vec<&[S]> = subset.iter().map(|&i| p.balls[i].coords()).collect();
            if let Ok(w) = dual_vector(&refs, None) {
                if inner(&w, &w).signum() > 0 {
                    let sides: Vec<i32> = p
                        .balls
                        .iter()
                        .map(|b| inner(&w, b.coords()).signum())
                        .collect();
                    let pos = sides.iter().any(|&s| s > 0);
                    let neg = sides.iter().any(|&s| s < 0);
                    if !(pos && neg) {
                        found.push((0..m).filter(|&i| sides[i] == 0).collect());
                    }
                }
            }
        }
        // next k-subset in lexicographic order
        let mut i = k;
        while i > 0 && subset[i - 1] == m - k + i - 1 {
            i -= 1;
        }
        if i == 0 {
            break;
        }
        subset[i - 1] += 1;
        for j in i..k {
            subset[j] = subset[j - 1] + 1;
        }
    }
    found.sort();
    Ok(found)
}

/// One reflection per facet of the tangency polytope.
///
/// Facets come from `p.facets` when present, otherwise from [`find_facets`].
/// The dual vector is oriented against the barycenter of the packing, which
/// fixes the sign of labels; the reflection itself does not depend on it.
pub fn generators<S: Scalar>(p: &Packing<S>) -> Result<ApollonianGroup<S>> {
    if !p.is_packing() {
        return Err(Error::InvalidGeometry("balls overlap".into()));
    }
    let facets = match &p.facets {
        Some(f) => f.clone(),
        None => find_facets(p)?,
    };
    if facets.is_empty() {
        return Err(Error::InvalidGeometry("no facets found".into()));
    }
    let center = barycenter(&p.balls);
    let orthoplicial = p.len() == 8 && p.dim() == 3;
    let mut gens = Vec::with_capacity(facets.len());
    for f in facets {
        let refs: Vec<&[S]> = f.iter().map(|&i| p.balls[i].coords()).collect();
        let reference = (inner(&center, &center).signum() < 0).then_some(center.as_slice());
        let w = dual_vector(&refs, reference)?;
        let map = reflection_in(&w)?;
        let label = if orthoplicial {
            ortho_label(&f).unwrap_or_else(|| index_label(&f))
        } else {
            index_label(&f)
        };
        gens.push(Generator {
            label,
            facet: f,
            map,
        });
    }
    Ok(ApollonianGroup { generators: gens })
}

fn index_label(f: &[usize]) -> String {
    let parts: Vec<String> = f.iter().map(|i| (i + 1).to_string()).collect();
    parts.join(",")
}

fn ortho_label(f: &[usize]) -> Option<String> {
    if f.len() != 4 {
        return None;
    }
    let mut bars = [false; 4];
    let mut seen = [false; 4];
    for &i in f {
        let l = matrices::ORTHO_ORDER[i];
        let a = l.unsigned_abs() as usize - 1;
        if seen[a] {
            return None;
        }
        seen[a] = true;
        bars[a] = l < 0;
    }
    Some(FacetLabel::from_bars(bars).to_string())
}

/// Product of generator maps for a word, applied right to left.
pub fn word_map<S: Scalar>(group: &ApollonianGroup<S>, word: &[usize]) -> LorentzMap<S> {
    let n = group.generators.first().map_or(0, |g| g.map.size());
    let mut m = Mat::identity(n);
    for &i in word {
        m = m.mul(group.generators[i].map.matrix());
    }
    LorentzMap::new_unchecked(m)
}

/// Images of the whole seed packing under reduced words of length at most
/// `depth`, one per distinct ball set. Ball order (and so facets) follows
/// the seed.
pub fn packing_orbit<S: Scalar>(
    seed: &Packing<S>,
    group: &ApollonianGroup<S>,
    depth: u32,
) -> Result<Vec<Packing<S>>> {
    let set_key = |p: &Packing<S>| {
        let mut k: Vec<_> = p.balls.iter().map(|b| b.key()).collect();
        k.sort();
        k
    };
    let mut seen = std::collections::BTreeSet::new();
    seen.insert(set_key(seed));
    let mut out = vec![seed.clone()];
    let mut frontier: Vec<(Packing<S>, Option<usize>)> = vec![(seed.clone(), None)];
    for _ in 0..depth {
        let mut next = Vec::new();
        for (p, last) in &frontier {
            for (g, gen) in group.generators.iter().enumerate() {
                if *last == Some(g) {
                    continue;
                }
                let mut q = p.apply(&gen.map)?;
                q.facets = seed.facets.clone();
                if seen.insert(set_key(&q)) {
                    out.push(q.clone());
                    next.push((q, Some(g)));
                }
            }
        }
        frontier = next;
    }
    Ok(out)
}

/// Reflections of one ball set in the dual balls of chosen facets.
pub fn reflections_for<S: Scalar>(
    balls: &[Ball<S>],
    facets: &[Vec<usize>],
) -> Result<Vec<LorentzMap<S>>> {
    let center = barycenter(balls);
    facets
        .iter()
        .map(|f| {
            let refs: Vec<&[S]> = f.iter().map(|&i| balls[i].coords()).collect();
            let reference = (inner(&center, &center).signum() < 0).then_some(center.as_slice());
            reflection_in(&dual_vector(&refs, reference)?)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn b0_generators_are_the_printed_ones() {
        let p = standard_b0::<Quad>();
        let g = generators(&p).unwrap();
        let printed = orthoplicial_generators::<Quad>();
        assert_eq!(g.len(), 16);
        for pg in &printed.generators {
            let mine = g.get(&pg.label).expect("label");
            let mut a = mine.facet.clone();
            let mut b = pg.facet.clone();
            a.sort();
            b.sort();
            assert_eq!(a, b, "{}", pg.label);
            assert_eq!(mine.map, pg.map, "{}", pg.label);
        }
    }

    #[test]
    fn facet_search_matches_known_facets() {
        let mut p = standard_b0::<Quad>();
        let known = p.facets.take().unwrap();
        let mut known_sorted: Vec<Vec<usize>> = known
            .into_iter()
            .map(|mut f| {
                f.sort();
                f
            })
            .collect();
        known_sorted.sort();
        assert_eq!(find_facets(&p).unwrap(), known_sorted);
    }
}
