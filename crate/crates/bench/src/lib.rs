//! Seeds shared by the benchmarks in `benches/`.

use polypack::sections::{realize_planar, SectionKind};
use polypack::{Packing, Quad};

/// The integral disk packings used throughout: `(−1,2,2,3)`, `(−2,4,5)`
/// and `(−3,5,12)`.
pub fn planar_seed(kind: SectionKind) -> Packing<Quad> {
    let k: &[i64] = match kind {
        SectionKind::Tetrahedral => &[-1, 2, 2, 3],
        SectionKind::Octahedral => &[-2, 4, 5],
        SectionKind::Cubical => &[-3, 5, 12],
    };
    let k: Vec<Quad> = k.iter().map(|&x| Quad::int(x)).collect();
    realize_planar(kind, &k).expect("integral seeds are realizable")
}

pub const KINDS: [SectionKind; 3] = [
    SectionKind::Tetrahedral,
    SectionKind::Octahedral,
    SectionKind::Cubical,
];
