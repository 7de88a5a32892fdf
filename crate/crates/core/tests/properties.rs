use polypack::apollonian::{
    generators, orthoplicial_generators, standard_b0, word_map, ApollonianGroup,
};
use polypack::descartes::{
    hypercubical, hypercubical_flag, hyperoctahedral, hyperoctahedral_flag, simplicial,
    simplicial_flag, FlagQuadraticForm,
};
use polypack::inversive::{inner, is_lorentz, reflection_in};
use polypack::io::{packing_from_json, packing_to_json};
use polypack::polytopes::Regular;
use polypack::sections::{lift, realize_planar, SectionKind};
use polypack::{Packing, Quad, Rat, Scalar};
use proptest::prelude::*;
use std::collections::BTreeSet;

fn q(v: &[i64]) -> Vec<Quad> {
    v.iter().map(|&x| Quad::int(x)).collect()
}

/// Reduced word (no letter twice in a row) over `n` generators.
fn word(n: usize, max_len: usize) -> impl Strategy<Value = Vec<usize>> {
    proptest::collection::vec(0..n, 0..=max_len).prop_map(|mut w| {
        w.dedup();
        w
    })
}

fn quad() -> impl Strategy<Value = Quad> {
    (
        -50i64..=50,
        1i64..=12,
        -50i64..=50,
        1i64..=12,
        prop::sample::select(vec![2u32, 3, 5, 6, 7]),
    )
        .prop_map(|(a, b, c, d, m)| {
            Quad::new(
                Rat::new(a as i128, b as i128),
                Rat::new(c as i128, d as i128),
                m,
            )
        })
}

fn seed(kind: SectionKind) -> Packing<Quad> {
    let k = match kind {
        SectionKind::Tetrahedral => q(&[-1, 2, 2, 3]),
        SectionKind::Octahedral => q(&[-2, 4, 5]),
        SectionKind::Cubical => q(&[-3, 5, 12]),
    };
    realize_planar(kind, &k).unwrap()
}

fn kind() -> impl Strategy<Value = SectionKind> {
    prop::sample::select(vec![
        SectionKind::Tetrahedral,
        SectionKind::Octahedral,
        SectionKind::Cubical,
    ])
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn group_elements_preserve_the_form(w in word(16, 6)) {
        let g: ApollonianGroup<Quad> = orthoplicial_generators();
        let m = word_map(&g, &w);
        prop_assert!(is_lorentz(m.matrix()));
        let b0 = standard_b0::<Quad>();
        let image = b0.apply(&m).unwrap();
        prop_assert_eq!(image.gram(), b0.gram());
        prop_assert!(image.curvatures().iter().all(|k| k.as_integer().is_some()));
    }

    #[test]
    fn reflections_are_involutions(v in proptest::collection::vec(-6i64..=6, 5)) {
        let w = q(&v);
        prop_assume!(inner(&w, &w).signum() > 0);
        let r = reflection_in(&w).unwrap();
        prop_assert!(r.is_involution());
        prop_assert!(is_lorentz(r.matrix()));
        let image = r.apply_vec(&w);
        prop_assert_eq!(image, w.iter().map(|x| -*x).collect::<Vec<_>>());
    }

    #[test]
    fn quad_display_parses_back(x in quad()) {
        let back: Quad = x.to_string().parse().unwrap();
        prop_assert_eq!(back, x);
    }

    #[test]
    fn flag_substitutions(v in proptest::collection::vec((-40i64..=40, 1i64..=9), 3..=6)) {
        let u: Vec<Quad> = v.iter().map(|&(a, b)| Quad::frac(a, b)).collect();
        let d = u.len() - 2;
        let t = FlagQuadraticForm::new(Regular::Simplex(d + 1)).unwrap();
        let o = FlagQuadraticForm::new(Regular::Orthoplex(d + 1)).unwrap();
        let c = FlagQuadraticForm::new(Regular::Cube(d + 1)).unwrap();
        prop_assert_eq!(t.evaluate(&simplicial_flag(&u)).unwrap(), simplicial(&u).unwrap());
        prop_assert_eq!(o.evaluate(&hyperoctahedral_flag(&u)).unwrap(), hyperoctahedral(&u).unwrap());
        prop_assert_eq!(c.evaluate(&hypercubical_flag(&u)).unwrap(), hypercubical(&u).unwrap());
    }

    #[test]
    fn packing_json_round_trip(w in word(16, 4)) {
        let g: ApollonianGroup<Quad> = orthoplicial_generators();
        let p = standard_b0::<Quad>().apply(&word_map(&g, &w)).unwrap();
        let back: Packing<Quad> = packing_from_json(&packing_to_json(&p)).unwrap();
        prop_assert_eq!(back.balls, p.balls);
        prop_assert_eq!(back.facets, p.facets);
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 24, failure_persistence: None, ..ProptestConfig::default() })]

    /// Moving an integral disk packing around its cluster and lifting it
    /// gives back the same disks as the section, and an integral ambient
    /// packing.
    #[test]
    fn lift_then_section_is_the_identity(kind in kind(), w in word(16, 2)) {
        let p = seed(kind);
        let g = generators(&p).unwrap();
        let w: Vec<usize> = w.into_iter().map(|i| i % g.len()).collect();
        let moved = p.apply(&word_map(&g, &w)).unwrap();
        let s = lift(kind, &moved).unwrap();
        let planar: BTreeSet<_> = s.planar.balls.iter().map(|b| b.key()).collect();
        let given: BTreeSet<_> = moved.balls.iter().map(|b| b.key()).collect();
        prop_assert_eq!(&planar, &given);
        for &i in &s.seeds {
            let back = s.psi(&s.ambient.balls[i]).unwrap();
            prop_assert!(given.contains(&back.key()));
        }
        prop_assert!(s.ambient.curvatures().iter().all(|k| k.as_integer().is_some()));
    }

    /// `ψ(γ·b) = φ(γ)·ψ(b)` for random words of the section group.
    #[test]
    fn cross_section_is_equivariant(kind in kind(), w in word(8, 5)) {
        let s = lift(kind, &seed(kind)).unwrap();
        let ambient = s.group();
        let planar = s.planar_group();
        let w: Vec<usize> = w.into_iter().map(|i| i % ambient.len()).collect();
        let a = word_map(&ambient, &w);
        let b = word_map(&planar, &w);
        for &i in &s.seeds {
            let x = &s.ambient.balls[i];
            let lhs = s.psi(&a.apply(x).unwrap()).unwrap();
            let rhs = b.apply(&s.psi(x).unwrap()).unwrap();
            prop_assert_eq!(lhs.coords(), rhs.coords());
            prop_assert_eq!(lhs.curvature(), a.apply(x).unwrap().curvature());
        }
    }
}
