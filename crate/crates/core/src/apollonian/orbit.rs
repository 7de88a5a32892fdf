//! Breadth-first orbit enumeration with exact deduplication.

use super::frame::{IPoint, LatticeFrame};
use super::ApollonianGroup;
use crate::error::{Error, Result};
use crate::inversive::{Ball, LorentzMap, Packing};
use crate::linalg::Mat;
use crate::scalar::{Quad, Rat, Scalar};
use dashmap::DashSet;
use rayon::prelude::*;
use std::collections::BTreeMap;
use std::hash::Hash;
use std::sync::atomic::{AtomicBool, Ordering};

/// Enumeration limits. A depth bound is always required; the curvature
/// bound, when present, drops every ball with `|κ|` above it.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct Bound {
    pub depth: Option<u32>,
    pub max_curvature: Option<Rat>,
}

impl Bound {
    pub fn depth(depth: u32) -> Self {
        Bound {
            depth: Some(depth),
            max_curvature: None,
        }
    }

    pub fn with_curvature(mut self, k: i64) -> Self {
        self.max_curvature = Some(Rat::from_integer(k as i128));
        self
    }

    pub fn with_curvature_rat(mut self, k: Rat) -> Self {
        self.max_curvature = Some(k);
        self
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Engine {
    /// Integer lattice coordinates when available, exact balls otherwise.
    #[default]
    Auto,
    /// Always hash exact ball coordinates.
    Generic,
    /// Fail unless the integer engine applies.
    Lattice,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OrbitOptions {
    pub engine: Engine,
    pub parallel: bool,
}

impl Default for OrbitOptions {
    fn default() -> Self {
        OrbitOptions {
            engine: Engine::Auto,
            parallel: true,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct OrbitEntry<S> {
    pub depth: u32,
    pub curvature: S,
}

#[derive(Clone, Debug)]
enum Store<S> {
    Balls(Vec<Ball<S>>),
    Lattice {
        frame: LatticeFrame<S>,
        points: Vec<IPoint>,
    },
}

#[derive(Clone, Debug)]
pub struct OrbitReport<S> {
    pub seed: Packing<S>,
    pub generator_labels: Vec<String>,
    pub bound: Bound,
    entries: Vec<OrbitEntry<S>>,
    store: Store<S>,
}

impl<S: Scalar> OrbitReport<S> {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[OrbitEntry<S>] {
        &self.entries
    }

    pub fn ball(&self, i: usize) -> Ball<S> {
        match &self.store {
            Store::Balls(b) => b[i].clone(),
            Store::Lattice { frame, points } => frame.ball(&points[i]),
        }
    }

    pub fn balls(&self) -> Vec<Ball<S>> {
        (0..self.len()).map(|i| self.ball(i)).collect()
    }

    pub fn used_lattice(&self) -> bool {
        matches!(self.store, Store::Lattice { .. })
    }

    pub fn curvatures(&self) -> impl Iterator<Item = &S> {
        self.entries.iter().map(|e| &e.curvature)
    }

    /// Number of new balls at each depth.
    pub fn depth_counts(&self) -> Vec<usize> {
        let max = self.entries.iter().map(|e| e.depth).max().unwrap_or(0) as usize;
        let mut out = vec![0; max + 1];
        for e in &self.entries {
            out[e.depth as usize] += 1;
        }
        out
    }

    pub fn all_integral(&self) -> bool {
        self.entries
            .iter()
            .all(|e| e.curvature.as_integer().is_some())
    }

    /// The report truncated to balls of depth at most `d`.
    pub fn up_to_depth(&self, d: u32) -> OrbitReport<S> {
        let keep: Vec<usize> = (0..self.len())
            .filter(|&i| self.entries[i].depth <= d)
            .collect();
        let entries = keep.iter().map(|&i| self.entries[i].clone()).collect();
        let store = match &self.store {
            Store::Balls(b) => Store::Balls(keep.iter().map(|&i| b[i].clone()).collect()),
            Store::Lattice { frame, points } => Store::Lattice {
                frame: frame.clone(),
                points: keep.iter().map(|&i| points[i]).collect(),
            },
        };
        let mut bound = self.bound.clone();
        bound.depth = Some(d.min(bound.depth.unwrap_or(d)));
        OrbitReport {
            seed: self.seed.clone(),
            generator_labels: self.generator_labels.clone(),
            bound,
            entries,
            store,
        }
    }
}

/// Orbit of the seed packing under the group.
pub fn orbit<S: Scalar>(
    seed: &Packing<S>,
    group: &ApollonianGroup<S>,
    bound: &Bound,
) -> Result<OrbitReport<S>> {
    orbit_with(seed, group, bound, OrbitOptions::default())
}

pub fn orbit_with<S: Scalar>(
    seed: &Packing<S>,
    group: &ApollonianGroup<S>,
    bound: &Bound,
    opts: OrbitOptions,
) -> Result<OrbitReport<S>> {
    let depth = bound.depth.ok_or(Error::MissingBound)?;
    let maps = group.maps();
    if let Some(bad) = maps.iter().find(|m| m.size() != seed.dim() + 2) {
        return Err(Error::DimensionMismatch {
            expected: seed.dim() + 2,
            found: bad.size(),
        });
    }
    let limit = bound
        .max_curvature
        .map(|k| S::from_quad(&Quad::rational(k)));
    let labels = group.labels();

    if opts.engine != Engine::Generic {
        if let Some((frame, seeds)) = LatticeFrame::new(&seed.balls, &maps) {
            let k = bound.max_curvature;
            let found = bfs(
                seeds,
                maps.len(),
                depth,
                opts.parallel,
                |g, z| frame.act(g, z),
                |z| k.map_or(true, |k| frame.within(z, &k)),
                |z| *z,
            )?;
            let mut rows: Vec<(u32, S, IPoint)> = found
                .into_iter()
                .map(|(z, d)| (d, frame.curvature(&z), z))
                .collect();
            rows.sort_by(|a, b| {
                a.0.cmp(&b.0)
                    .then_with(|| a.1.cmp_s(&b.1))
                    .then_with(|| a.2.cmp(&b.2))
            });
            let entries = rows
                .iter()
                .map(|(d, k, _)| OrbitEntry {
                    depth: *d,
                    curvature: k.clone(),
                })
                .collect();
            let points = rows.into_iter().map(|r| r.2).collect();
            return Ok(OrbitReport {
                seed: seed.clone(),
                generator_labels: labels,
                bound: bound.clone(),
                entries,
                store: Store::Lattice { frame, points },
            });
        }
        if opts.engine == Engine::Lattice {
            return Err(Error::InvalidInput(
                "no integer lattice frame for this packing".into(),
            ));
        }
    }

    let found = bfs(
        seed.balls.clone(),
        maps.len(),
        depth,
        opts.parallel,
        |g, b| Some(Ball::new_unchecked(maps[g].apply_vec(b.coords()))),
        |b| {
            limit.as_ref().map_or(true, |k| {
                b.curvature().abs_s().cmp_s(k) != std::cmp::Ordering::Greater
            })
        },
        |b| b.key(),
    )?;
    let mut rows: Vec<(u32, S, Vec<S::Key>, Ball<S>)> = found
        .into_iter()
        .map(|(b, d)| (d, b.curvature(), b.key(), b))
        .collect();
    rows.sort_by(|a, b| {
        a.0.cmp(&b.0)
            .then_with(|| a.1.cmp_s(&b.1))
            .then_with(|| a.2.cmp(&b.2))
    });
    let entries = rows
        .iter()
        .map(|r| OrbitEntry {
            depth: r.0,
            curvature: r.1.clone(),
        })
        .collect();
    let balls = rows.into_iter().map(|r| r.3).collect();
    Ok(OrbitReport {
        seed: seed.clone(),
        generator_labels: labels,
        bound: bound.clone(),
        entries,
        store: Store::Balls(balls),
    })
}

/// Level-synchronous closure. Returns every point with its first depth.
///
/// A child is never formed with the generator that produced its parent:
/// generators are involutions, so that child is the grandparent.
fn bfs<P, K>(
    seeds: Vec<P>,
    ngen: usize,
    depth: u32,
    parallel: bool,
    act: impl Fn(usize, &P) -> Option<P> + Sync,
    keep: impl Fn(&P) -> bool + Sync,
    key: impl Fn(&P) -> K + Sync,
) -> Result<Vec<(P, u32)>>
where
    P: Clone + Send + Sync,
    K: Hash + Eq + Send + Sync,
{
    let seen: DashSet<K> = DashSet::new();
    let overflow = AtomicBool::new(false);
    let mut out = Vec::new();
    let mut frontier: Vec<(P, Option<usize>)> = Vec::new();
    for s in seeds {
        if seen.insert(key(&s)) {
            out.push((s.clone(), 0));
            frontier.push((s, None));
        }
    }
    let expand = |(p, last): &(P, Option<usize>)| -> Vec<(P, Option<usize>)> {
        let mut v = Vec::new();
        for g in 0..ngen {
            if *last == Some(g) {
                continue;
            }
            match act(g, p) {
                None => overflow.store(true, Ordering::Relaxed),
                Some(c) => {
                    if keep(&c) && seen.insert(key(&c)) {
                        v.push((c, Some(g)));
                    }
                }
            }
        }
        v
    };
    for d in 1..=depth {
        let next: Vec<(P, Option<usize>)> = if parallel {
            frontier.par_iter().flat_map_iter(&expand).collect()
        } else {
            frontier.iter().flat_map(&expand).collect()
        };
        if overflow.load(Ordering::Relaxed) {
            return Err(Error::Overflow("orbit lattice coordinates"));
        }
        if next.is_empty() {
            break;
        }
        out.extend(next.iter().map(|(p, _)| (p.clone(), d)));
        frontier = next;
    }
    Ok(out)
}

/// Independent oracle: applies every word of length at most `depth` (no
/// reduction, no pruning) to every seed ball and keeps the shortest length.
pub fn brute_force_orbit<S: Scalar>(
    seeds: &[Ball<S>],
    maps: &[LorentzMap<S>],
    depth: u32,
) -> BTreeMap<Vec<S::Key>, (u32, Ball<S>)> {
    let n = seeds.first().map_or(0, |b| b.coords().len());
    let mut words: Vec<Mat<S>> = vec![Mat::identity(n)];
    let mut out: BTreeMap<Vec<S::Key>, (u32, Ball<S>)> = BTreeMap::new();
    for d in 0..=depth {
        for w in &words {
            for s in seeds {
                let b = Ball::new_unchecked(w.mul_vec(s.coords()));
                out.entry(b.key()).or_insert((d, b));
            }
        }
        if d < depth {
            words = words
                .iter()
                .flat_map(|w| maps.iter().map(move |m| m.matrix().mul(w)))
                .collect();
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::apollonian::{orthoplicial_generators, standard_b0};

    #[test]
    fn depth_zero_is_the_seed() {
        let p = standard_b0::<Quad>();
        let r = orbit(&p, &orthoplicial_generators(), &Bound::depth(0)).unwrap();
        assert_eq!(r.len(), 8);
    }

    #[test]
    fn missing_depth_is_refused() {
        let p = standard_b0::<Quad>();
        let b = Bound {
            depth: None,
            max_curvature: Some(Rat::from_integer(10)),
        };
        assert_eq!(
            orbit(&p, &orthoplicial_generators(), &b).unwrap_err(),
            Error::MissingBound
        );
    }

    #[test]
    fn engines_agree() {
        let p = standard_b0::<Quad>();
        let g = orthoplicial_generators();
        let b = Bound::depth(3).with_curvature(30);
        let fast = orbit_with(
            &p,
            &g,
            &b,
            OrbitOptions {
                engine: Engine::Lattice,
                parallel: true,
            },
        )
        .unwrap();
        let slow = orbit_with(
            &p,
            &g,
            &b,
            OrbitOptions {
                engine: Engine::Generic,
                parallel: false,
            },
        )
        .unwrap();
        assert_eq!(fast.len(), slow.len());
        assert_eq!(fast.entries(), slow.entries());
        let mut a: Vec<_> = fast.balls().iter().map(|b| b.key()).collect();
        let mut c: Vec<_> = slow.balls().iter().map(|b| b.key()).collect();
        a.sort();
        c.sort();
        assert_eq!(a, c);
    }
}
