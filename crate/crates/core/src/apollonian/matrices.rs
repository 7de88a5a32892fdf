//! The standard orthoplicial packings and the integer generator matrices.

use crate::inversive::{Ball, Packing};
use crate::linalg::Mat;
use crate::scalar::{Quad, Scalar};
use std::fmt;

/// Order of the balls in every orthoplicial packing built by this crate.
pub const ORTHO_ORDER: [i8; 8] = [1, 2, 3, 4, -1, -2, -3, -4];

/// Index of the ball labelled `label` (±1..±4) in [`ORTHO_ORDER`].
pub fn ortho_index(label: i8) -> usize {
    assert!(
        label != 0 && label.abs() <= 4,
        "orthoplex labels are ±1..±4"
    );
    if label > 0 {
        label as usize - 1
    } else {
        (-label) as usize + 3
    }
}

/// Ball read by each letter position of a printed matrix subscript.
pub const LABEL_BALL: [i8; 4] = [3, 4, 1, 2];

/// A facet of the orthoplex: one of `b_i`, `b_{-i}` for each `i = 1..4`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FacetLabel(pub [i8; 4]);

impl FacetLabel {
    pub fn from_bars(bars: [bool; 4]) -> Self {
        FacetLabel([0, 1, 2, 3].map(|i| if bars[i] { -(i as i8 + 1) } else { i as i8 + 1 }))
    }

    pub fn indices(&self) -> Vec<usize> {
        self.0.iter().map(|&l| ortho_index(l)).collect()
    }

    /// The facet a printed subscript refers to. Letter `j` of a printed
    /// subscript chooses between `b_σ(j)` and `b_{-σ(j)}`; this is the
    /// reading under which each printed matrix fixes its facet.
    pub fn from_printed(printed: FacetLabel) -> Self {
        let mut out = [0i8; 4];
        for (j, &l) in printed.0.iter().enumerate() {
            let b = LABEL_BALL[j];
            out[b as usize - 1] = if l < 0 { -b } else { b };
        }
        FacetLabel(out)
    }

    pub fn bars(&self) -> usize {
        self.0.iter().filter(|&&l| l < 0).count()
    }

    /// Number of positions where the two labels differ.
    pub fn distance(&self, other: &FacetLabel) -> usize {
        self.0
            .iter()
            .zip(other.0.iter())
            .filter(|(a, b)| a != b)
            .count()
    }

    /// Parses `1234`, `-1234`, `12-3-4` or the overlined form `1̄234`.
    pub fn parse(s: &str) -> Option<FacetLabel> {
        let mut out = Vec::new();
        let mut neg = false;
        let mut chars = s.chars().peekable();
        while let Some(c) = chars.next() {
            match c {
                '-' | '~' => neg = true,
                '1'..='4' => {
                    let mut v = c.to_digit(10).unwrap() as i8;
                    if chars
                        .peek()
                        .is_some_and(|&n| n == '\u{0304}' || n == '\u{0305}')
                    {
                        chars.next();
                        neg = true;
                    }
                    if neg {
                        v = -v;
                    }
                    out.push(v);
                    neg = false;
                }
                ' ' | ',' => {}
                _ => return None,
            }
        }
        if out.len() != 4
            || out
                .iter()
                .enumerate()
                .any(|(i, v)| v.unsigned_abs() as usize != i + 1)
        {
            return None;
        }
        Some(FacetLabel([out[0], out[1], out[2], out[3]]))
    }
}

impl fmt::Display for FacetLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &l in &self.0 {
            if l < 0 {
                write!(f, "{}\u{0304}", -l)?;
            } else {
                write!(f, "{l}")?;
            }
        }
        Ok(())
    }
}

/// The standard orthoplicial sphere packing `B₀` (three of its balls are half-spaces).
pub fn standard_b0<S: Scalar>() -> Packing<S> {
    let rows: [[i64; 5]; 8] = [
        [0, 0, 1, 1, 1],
        [0, 0, -1, 1, 1],
        [1, 1, 0, 0, 1],
        [-1, 1, 0, 0, 1],
        [0, 0, -1, -1, 1],
        [0, 0, 1, -1, 1],
        [-1, -1, 0, 0, 1],
        [1, -1, 0, 0, 1],
    ];
    let balls = rows
        .iter()
        .map(|r| Ball::from_i64(r).expect("B0 rows are unit"))
        .collect();
    let p = Packing::new(balls, Some("orthoplex".into())).expect("B0");
    p.with_facets(facet_labels().iter().map(|l| l.indices()).collect())
}

/// The orthoplicial packing `B₁`: rows `(v, 1)` with `v ∈ (±1)⁴/√2` having an
/// even number of minus signs.
pub fn standard_b1() -> Packing<Quad> {
    let r = Quad::sqrt_int(2) / Quad::int(2);
    let signs: [[i64; 4]; 4] = [[1, 1, 1, 1], [1, -1, 1, -1], [1, -1, -1, 1], [1, 1, -1, -1]];
    let mut balls = Vec::new();
    for flip in [1, -1] {
        for s in &signs {
            let mut c: Vec<Quad> = s.iter().map(|&x| r * Quad::int(x * flip)).collect();
            c.push(Quad::int(1));
            balls.push(Ball::new(c).expect("B1 rows are unit"));
        }
    }
    let p = Packing::new(balls, Some("orthoplex".into())).expect("B1");
    p.with_facets(facet_labels().iter().map(|l| l.indices()).collect())
}

/// The 16 facet labels in the order the generator matrices are listed.
pub fn facet_labels() -> Vec<FacetLabel> {
    let mut out = Vec::with_capacity(16);
    for b1 in [false, true] {
        for b2 in [false, true] {
            for b3 in [false, true] {
                for b4 in [false, true] {
                    out.push(FacetLabel::from_bars([b1, b2, b3, b4]));
                }
            }
        }
    }
    out
}

const PRINTED: [[[i64; 5]; 5]; 16] = [
    // 1234
    [
        [1, 0, 0, 0, 0],
        [0, -1, 0, -2, 2],
        [0, 0, 1, 0, 0],
        [0, -2, 0, -1, 2],
        [0, -2, 0, -2, 3],
    ],
    // 123 4̄
    [
        [1, 0, 0, 0, 0],
        [0, -1, -2, 0, 2],
        [0, -2, -1, 0, 2],
        [0, 0, 0, 1, 0],
        [0, -2, -2, 0, 3],
    ],
    // 12 3̄ 4
    [
        [1, 0, 0, 0, 0],
        [0, -1, 2, 0, 2],
        [0, 2, -1, 0, -2],
        [0, 0, 0, 1, 0],
        [0, -2, 2, 0, 3],
    ],
    // 12 3̄ 4̄
    [
        [1, 0, 0, 0, 0],
        [0, -1, 0, 2, 2],
        [0, 0, 1, 0, 0],
        [0, 2, 0, -1, -2],
        [0, -2, 0, 2, 3],
    ],
    // 1 2̄ 34
    [
        [-1, 0, 0, -2, 2],
        [0, 1, 0, 0, 0],
        [0, 0, 1, 0, 0],
        [-2, 0, 0, -1, 2],
        [-2, 0, 0, -2, 3],
    ],
    // 1 2̄ 3 4̄
    [
        [-1, 0, -2, 0, 2],
        [0, 1, 0, 0, 0],
        [-2, 0, -1, 0, 2],
        [0, 0, 0, 1, 0],
        [-2, 0, -2, 0, 3],
    ],
    // 1 2̄ 3̄ 4
    [
        [-1, 0, 2, 0, 2],
        [0, 1, 0, 0, 0],
        [2, 0, -1, 0, -2],
        [0, 0, 0, 1, 0],
        [-2, 0, 2, 0, 3],
    ],
    // 1 2̄ 3̄ 4̄
    [
        [-1, 0, 0, 2, 2],
        [0, 1, 0, 0, 0],
        [0, 0, 1, 0, 0],
        [2, 0, 0, -1, -2],
        [-2, 0, 0, 2, 3],
    ],
    // 1̄ 234
    [
        [-1, 0, 0, 2, -2],
        [0, 1, 0, 0, 0],
        [0, 0, 1, 0, 0],
        [2, 0, 0, -1, 2],
        [2, 0, 0, -2, 3],
    ],
    // 1̄ 23 4̄
    [
        [-1, 0, 2, 0, -2],
        [0, 1, 0, 0, 0],
        [2, 0, -1, 0, 2],
        [0, 0, 0, 1, 0],
        [2, 0, -2, 0, 3],
    ],
    // 1̄ 2 3̄ 4
    [
        [-1, 0, -2, 0, -2],
        [0, 1, 0, 0, 0],
        [-2, 0, -1, 0, -2],
        [0, 0, 0, 1, 0],
        [2, 0, 2, 0, 3],
    ],
    // 1̄ 2 3̄ 4̄
    [
        [-1, 0, 0, -2, -2],
        [0, 1, 0, 0, 0],
        [0, 0, 1, 0, 0],
        [-2, 0, 0, -1, -2],
        [2, 0, 0, 2, 3],
    ],
    // 1̄ 2̄ 34
    [
        [1, 0, 0, 0, 0],
        [0, -1, 0, 2, -2],
        [0, 0, 1, 0, 0],
        [0, 2, 0, -1, 2],
        [0, 2, 0, -2, 3],
    ],
    // 1̄ 2̄ 3 4̄
    [
        [1, 0, 0, 0, 0],
        [0, -1, 2, 0, -2],
        [0, 2, -1, 0, 2],
        [0, 0, 0, 1, 0],
        [0, 2, -2, 0, 3],
    ],
    // 1̄ 2̄ 3̄ 4
    [
        [1, 0, 0, 0, 0],
        [0, -1, -2, 0, -2],
        [0, -2, -1, 0, -2],
        [0, 0, 0, 1, 0],
        [0, 2, 2, 0, 3],
    ],
    // 1̄ 2̄ 3̄ 4̄
    [
        [1, 0, 0, 0, 0],
        [0, -1, 0, -2, -2],
        [0, 0, 1, 0, 0],
        [0, -2, 0, -1, -2],
        [0, 2, 0, 2, 3],
    ],
];

/// The printed integer matrices, paired with their facet labels.
pub fn printed_generators() -> Vec<(FacetLabel, [[i64; 5]; 5])> {
    facet_labels().into_iter().zip(PRINTED).collect()
}

pub fn printed_matrix<S: Scalar>(i: usize) -> Mat<S> {
    let rows: Vec<&[i64]> = PRINTED[i].iter().map(|r| r.as_slice()).collect();
    Mat::from_i64(&rows)
}

/// Each printed matrix (after the first) is a conjugate `X·S_src·X` of an
/// earlier one: `(target, conjugator, source)` as indices into
/// [`facet_labels`] and a letter of `VERFS`.
pub const CONJUGATIONS: [(usize, char, usize); 15] = [
    (1, 'F', 0),
    (2, 'R', 1),
    (3, 'F', 2),
    (4, 'E', 2),
    (5, 'F', 4),
    (6, 'R', 5),
    (7, 'F', 6),
    (8, 'V', 4),
    (9, 'F', 8),
    (10, 'R', 9),
    (11, 'F', 10),
    (12, 'E', 10),
    (13, 'F', 12),
    (14, 'R', 13),
    (15, 'F', 14),
];

/// The generators `V, E, R, F, S` of the symmetrized group, in Coxeter-path order.
pub fn symmetrized() -> Vec<(char, Mat<Quad>)> {
    let v: Mat<Quad> = Mat::diag(&[-1, 1, 1, 1, 1].map(Quad::int));
    let e: Mat<Quad> = Mat::from_i64(&[
        &[1, 1, -1, -1, 0],
        &[1, 1, 1, 1, 0],
        &[-1, 1, 1, -1, 0],
        &[-1, 1, -1, 1, 0],
        &[0, 0, 0, 0, 2],
    ])
    .scale(&Quad::frac(1, 2));
    let r: Mat<Quad> = Mat::diag(&[1, 1, -1, 1, 1].map(Quad::int));
    let f: Mat<Quad> = Mat::from_i64(&[
        &[1, 0, 0, 0, 0],
        &[0, 1, 0, 0, 0],
        &[0, 0, 0, 1, 0],
        &[0, 0, 1, 0, 0],
        &[0, 0, 0, 0, 1],
    ]);
    vec![
        ('V', v),
        ('E', e),
        ('R', r),
        ('F', f),
        ('S', printed_matrix(0)),
    ]
}

/// Expected order of `XY` for the linear Coxeter diagram V-E-R=F=S
/// (3, 3, 4, 4 along the path; 2 otherwise).
pub fn coxeter_order(i: usize, j: usize) -> u32 {
    if i == j {
        return 1;
    }
    let (a, b) = (i.min(j), i.max(j));
    match (a, b) {
        (0, 1) | (1, 2) => 3,
        (2, 3) | (3, 4) => 4,
        _ => 2,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn labels_roundtrip() {
        for l in facet_labels() {
            assert_eq!(FacetLabel::parse(&l.to_string()), Some(l));
        }
        assert_eq!(
            FacetLabel::parse("1-2-34"),
            Some(FacetLabel([1, -2, -3, 4]))
        );
        assert_eq!(FacetLabel::parse("124"), None);
    }

    #[test]
    fn b0_gram_pattern() {
        let p: Packing<Quad> = standard_b0();
        let g = p.gram();
        let dist = p.graph_distances();
        for i in 0..8 {
            for j in 0..8 {
                assert_eq!(g[(i, j)], Quad::int(1 - 2 * dist[i][j] as i64));
            }
        }
        let p1 = standard_b1();
        assert_eq!(p1.gram(), g);
    }
}
