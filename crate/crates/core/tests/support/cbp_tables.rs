//! Reference curvature layers of the centred ball packings, as data.
//!
//! Each row is `(row number, count, c)` for a layer `κ_P + c·h_i`.
//! Columns marked `mirrored` list only the lower half; the rest follows
//! from `c ↦ −c`.

use polypack::polytopes::Regular;

pub fn p(k: i32) -> f64 {
    ((1.0 + 5f64.sqrt()) / 2.0).powi(k)
}

pub struct Column {
    pub rows: Vec<(u32, usize, f64)>,
    pub mirrored: bool,
}

pub struct Printed {
    pub kind: Regular,
    pub kappa_p: f64,
    pub h: [f64; 4],
    pub columns: Vec<Column>,
}

pub fn printed() -> Vec<Printed> {
    vec![
        Printed {
            kind: Regular::Simplex(4),
            kappa_p: (3.0f64 / 5.0).sqrt(),
            h: [
                (1.0f64 / 10.0).sqrt(),
                (2.0f64 / 15.0).sqrt(),
                (2.0f64 / 15.0).sqrt(),
                (1.0f64 / 10.0).sqrt(),
            ],
            columns: vec![
                Column {
                    rows: vec![(1, 1, -4.0), (2, 4, 1.0)],
                    mirrored: false,
                },
                Column {
                    rows: vec![(1, 2, -(3.0 / 2.0)), (2, 3, 1.0)],
                    mirrored: false,
                },
                Column {
                    rows: vec![(1, 3, -1.0), (2, 2, (3.0 / 2.0))],
                    mirrored: false,
                },
                Column {
                    rows: vec![(1, 4, -1.0), (2, 1, 4.0)],
                    mirrored: false,
                },
            ],
        },
        Printed {
            kind: Regular::Orthoplex(4),
            kappa_p: 1.0,
            h: [2f64.sqrt(), 1.0, (2.0f64 / 3.0).sqrt(), 0.5f64.sqrt()],
            columns: vec![
                Column {
                    rows: vec![(1, 1, -1.0), (2, 4, 0.0), (3, 1, 1.0)],
                    mirrored: false,
                },
                Column {
                    rows: vec![(1, 2, -1.0), (2, 4, 0.0), (3, 2, 1.0)],
                    mirrored: false,
                },
                Column {
                    rows: vec![(1, 3, -1.0), (2, 2, 0.0), (3, 3, 1.0)],
                    mirrored: false,
                },
                Column {
                    rows: vec![(1, 4, -1.0), (2, 4, 1.0)],
                    mirrored: false,
                },
            ],
        },
        Printed {
            kind: Regular::Cube(4),
            kappa_p: 3f64.sqrt(),
            h: [1.0, (1.0f64 / 3.0).sqrt(), 2f64.sqrt(), 1.0],
            columns: vec![
                Column {
                    rows: vec![
                        (1, 1, -2.0),
                        (2, 4, -1.0),
                        (3, 6, 0.0),
                        (4, 4, 1.0),
                        (5, 1, 2.0),
                    ],
                    mirrored: false,
                },
                Column {
                    rows: vec![(1, 2, -3.0), (2, 6, -1.0), (3, 6, 1.0), (4, 2, 3.0)],
                    mirrored: false,
                },
                Column {
                    rows: vec![(1, 4, -1.0), (2, 8, 0.0), (3, 4, 1.0)],
                    mirrored: false,
                },
                Column {
                    rows: vec![(1, 8, -1.0), (2, 8, 1.0)],
                    mirrored: false,
                },
            ],
        },
        Printed {
            kind: Regular::Cell24,
            kappa_p: 3f64.sqrt(),
            h: [
                1.0,
                (1.0f64 / 3.0).sqrt(),
                (2.0f64 / 3.0).sqrt(),
                2f64.sqrt(),
            ],
            columns: vec![
                Column {
                    rows: vec![
                        (1, 1, -2.0),
                        (2, 8, -1.0),
                        (3, 6, 0.0),
                        (4, 8, 1.0),
                        (5, 1, 2.0),
                    ],
                    mirrored: false,
                },
                Column {
                    rows: vec![
                        (1, 2, -3.0),
                        (2, 3, -2.0),
                        (3, 6, -1.0),
                        (4, 2, 0.0),
                        (5, 6, 1.0),
                        (6, 3, 2.0),
                        (7, 2, 3.0),
                    ],
                    mirrored: false,
                },
                Column {
                    rows: vec![
                        (1, 3, -2.0),
                        (2, 6, -1.0),
                        (3, 6, 0.0),
                        (4, 6, 1.0),
                        (5, 3, 2.0),
                    ],
                    mirrored: false,
                },
                Column {
                    rows: vec![(1, 6, -1.0), (2, 12, 0.0), (3, 6, 1.0)],
                    mirrored: false,
                },
            ],
        },
        Printed {
            kind: Regular::Cell600,
            kappa_p: 5f64.sqrt() * p(1).powf(1.5),
            h: [
                1.0,
                (p(2) + 1.0).powf(-0.5),
                (p(4) + 1.0).powf(-0.5),
                (p(3) + 1.0).powf(-0.5),
            ],
            columns: vec![
                Column {
                    rows: vec![
                        (1, 1, -2.0 * p(1)),
                        (2, 12, -p(2)),
                        (3, 20, -p(1)),
                        (4, 12, -1.0),
                        (5, 30, 0.0),
                        (6, 12, 1.0),
                        (7, 20, p(1)),
                        (8, 12, p(2)),
                        (9, 1, 2.0 * p(1)),
                    ],
                    mirrored: false,
                },
                Column {
                    rows: vec![
                        (1, 2, -(p(3) + p(1))),
                        (2, 5, -(p(3) + 1.0)),
                        (3, 10, -p(3)),
                        (4, 2, -(p(2) + 1.0)),
                        (5, 5, -(p(3) - 1.0)),
                        (6, 10, -p(2)),
                        (7, 10, -p(1)),
                        (8, 10, -1.0),
                        (9, 12, 0.0),
                        (10, 10, 1.0),
                        (17, 2, (p(3) + p(1))),
                    ],
                    mirrored: true,
                },
                Column {
                    rows: vec![
                        (1, 3, -(p(4) + p(1))),
                        (2, 2, -(p(4) + 1.0)),
                        (3, 6, -p(4)),
                        (4, 6, -(p(3) + p(1))),
                        (5, 6, -((p(3) + 1.0) * p(1))),
                        (6, 6, -p(3)),
                        (7, 3, -(p(3) - 1.0)),
                        (8, 12, -p(2)),
                        (9, 6, -p(1)),
                        (10, 6, -1.0),
                        (11, 8, 0.0),
                        (12, 6, 1.0),
                        (21, 3, (p(4) + p(1))),
                    ],
                    mirrored: true,
                },
                Column {
                    rows: vec![
                        (1, 4, -p(4)),
                        (2, 4, -(p(3) + p(1))),
                        (3, 6, -(p(3) + 1.0)),
                        (4, 12, -p(3)),
                        (5, 12, -p(2)),
                        (6, 12, -p(1)),
                        (7, 4, -1.0),
                        (8, 12, 0.0),
                        (9, 4, 1.0),
                        (15, 4, p(4)),
                    ],
                    mirrored: true,
                },
            ],
        },
        Printed {
            kind: Regular::Cell120,
            kappa_p: p(3) * 3f64.sqrt(),
            h: [
                0.5f64.sqrt(),
                (p(4) + 1.0).powf(-0.5),
                (p(2) + 1.0).powf(-0.5),
                1.0,
            ],
            columns: vec![
                Column {
                    rows: vec![
                        (1, 1, -(p(5) - p(-1))),
                        (2, 4, -(p(5) - 1.0)),
                        (3, 12, -(p(4) + p(2))),
                        (4, 24, -(p(4) + p(1))),
                        (5, 12, -(p(4) + 1.0)),
                        (6, 4, -(p(4) + p(-1))),
                        (7, 24, -p(4)),
                        (8, 24, -(p(3) + p(1))),
                        (9, 32, -(p(3) + 1.0)),
                        (10, 24, -p(3)),
                        (11, 12, -(p(2) + 1.0)),
                        (12, 24, -(p(2) + p(-1))),
                        (13, 28, -p(2)),
                        (15, 24, -p(1)),
                        (16, 24, -1.0),
                        (17, 54, 0.0),
                        (18, 24, 1.0),
                        (33, 1, (p(5) - p(-1))),
                    ],
                    mirrored: true,
                },
                Column {
                    rows: vec![
                        (1, 2, -(p(6) + p(2))),
                        (2, 6, -(p(6) + p(1))),
                        (3, 3, -(p(6) + 1.0)),
                        (4, 12, -p(6)),
                        (5, 6, -(p(6) - 1.0)),
                        (6, 12, -(p(6) - p(1))),
                        (7, 18, -(p(5) + p(3))),
                        (8, 12, -(p(5) + p(2))),
                        (9, 14, -(p(5) + p(1))),
                        (10, 12, -(p(5) + 1.0)),
                        (11, 18, -p(5)),
                        (12, 6, -(p(5) - 1.0)),
                        (13, 24, -(p(4) + p(2))),
                        (14, 15, -(p(4) + p(1))),
                        (15, 2, -(p(4) + 1.0)),
                        (16, 24, -p(4)),
                        (17, 18, -(p(3) + p(1))),
                        (18, 12, -(p(3) + 1.0)),
                        (19, 18, -p(3)),
                        (20, 24, -p(2)),
                        (21, 18, -p(1)),
                        (22, 12, -1.0),
                        (23, 24, 0.0),
                        (24, 12, 1.0),
                        (47, 2, (p(6) + p(2))),
                    ],
                    mirrored: true,
                },
                Column {
                    rows: vec![
                        (1, 5, -(p(5) + p(2))),
                        (2, 10, -(p(5) + p(1))),
                        (3, 10, -(p(5) + 1.0)),
                        (4, 20, -p(5)),
                        (5, 10, -(p(5) - 1.0)),
                        (6, 20, -(p(4) + p(2))),
                        (7, 20, -(p(4) + p(1))),
                        (8, 10, -(p(4) + 1.0)),
                        (9, 30, -p(4)),
                        (10, 20, -(p(3) + p(1))),
                        (11, 20, -(p(3) + 1.0)),
                        (12, 30, -p(3)),
                        (13, 5, -(p(3) - 1.0)),
                        (14, 30, -p(2)),
                        (15, 30, -p(1)),
                        (16, 20, -1.0),
                        (17, 20, 0.0),
                        (18, 20, 1.0),
                        (35, 5, (p(5) + p(2))),
                    ],
                    mirrored: true,
                },
                Column {
                    rows: vec![
                        (1, 20, -p(4)),
                        (2, 20, -(p(3) + p(1))),
                        (3, 30, -(p(3) + 1.0)),
                        (4, 60, -p(3)),
                        (5, 60, -p(2)),
                        (6, 60, -p(1)),
                        (7, 20, -1.0),
                        (8, 60, 0.0),
                        (9, 20, 1.0),
                        (17, 20, p(4)),
                    ],
                    mirrored: true,
                },
            ],
        },
    ]
}
