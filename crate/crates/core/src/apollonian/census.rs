//! Curvature histograms of orbit reports.

use super::orbit::OrbitReport;
use crate::scalar::Scalar;
use std::cmp::Ordering;

#[derive(Clone, Debug, PartialEq)]
pub struct Census<S> {
    /// Distinct curvatures in increasing order with multiplicities.
    pub counts: Vec<(S, usize)>,
    /// Integers of the range that never occur (empty without a range).
    pub missing_integers: Vec<i128>,
    /// Number of curvatures in range that are not integers.
    pub non_integral: usize,
}

impl<S: Scalar> Census<S> {
    pub fn total(&self) -> usize {
        self.counts.iter().map(|c| c.1).sum()
    }

    pub fn count_of(&self, k: &S) -> usize {
        self.counts.iter().find(|c| c.0 == *k).map_or(0, |c| c.1)
    }

    pub fn from_values<'a>(
        values: impl IntoIterator<Item = &'a S>,
        range: Option<(&S, &S)>,
    ) -> Self {
        let in_range = |k: &S| {
            range.map_or(true, |(lo, hi)| {
                k.cmp_s(lo) != Ordering::Less && k.cmp_s(hi) != Ordering::Greater
            })
        };
        let mut vals: Vec<(S::Key, S)> = values
            .into_iter()
            .filter(|k| in_range(k))
            .map(|k| (k.key(), k.clone()))
            .collect();
        vals.sort_by(|a, b| a.1.cmp_s(&b.1).then_with(|| a.0.cmp(&b.0)));
        let mut counts: Vec<(S, usize)> = Vec::new();
        for (_, k) in vals {
            match counts.last_mut() {
                Some(last) if last.0 == k => last.1 += 1,
                _ => counts.push((k, 1)),
            }
        }
        let non_integral = counts
            .iter()
            .filter(|c| c.0.as_integer().is_none())
            .map(|c| c.1)
            .sum();
        let mut missing_integers = Vec::new();
        if let Some((lo, hi)) = range {
            let lo = lo.to_f64().ceil() as i128;
            let hi = hi.to_f64().floor() as i128;
            let present: std::collections::BTreeSet<i128> =
                counts.iter().filter_map(|c| c.0.as_integer()).collect();
            missing_integers = (lo..=hi).filter(|n| !present.contains(n)).collect();
        }
        Census {
            counts,
            missing_integers,
            non_integral,
        }
    }
}

/// Multiset of orbit curvatures inside `range` (inclusive), plus the
/// integers of the range that do not occur.
pub fn curvature_census<S: Scalar>(report: &OrbitReport<S>, range: Option<(S, S)>) -> Census<S> {
    Census::from_values(report.curvatures(), range.as_ref().map(|(a, b)| (a, b)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Quad;

    #[test]
    fn empty_range_is_empty() {
        let v = [Quad::int(1), Quad::int(2)];
        let c = Census::from_values(v.iter(), Some((&Quad::int(5), &Quad::int(4))));
        assert!(c.counts.is_empty());
        assert!(c.missing_integers.is_empty());
    }

    #[test]
    fn counts_and_gaps() {
        let v = [Quad::int(3), Quad::int(1), Quad::int(3), Quad::frac(1, 2)];
        let c = Census::from_values(v.iter(), Some((&Quad::int(0), &Quad::int(4))));
        assert_eq!(
            c.counts,
            vec![(Quad::frac(1, 2), 1), (Quad::int(1), 1), (Quad::int(3), 2)]
        );
        assert_eq!(c.missing_integers, vec![0, 2, 4]);
        assert_eq!(c.non_integral, 1);
    }
}
