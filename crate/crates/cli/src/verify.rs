//! Built-in self checks, one status line per suite.

use crate::input::write_output;
use crate::Outcome;
use anyhow::Result;
use clap::{Args, ValueEnum};
use polypack::apollonian::matrices::{
    coxeter_order, facet_labels, printed_matrix, symmetrized, CONJUGATIONS,
};
use polypack::apollonian::probe::probe_r4;
use polypack::apollonian::{
    brute_force_orbit, dual_ball, generators, orbit, packing_orbit, standard_b0, Bound, FacetLabel,
};
use polypack::descartes::{
    cubical_check, diophantine_solutions, octahedral_check, soddy_gosset_check, Equation,
    FlagQuadraticForm,
};
use polypack::inversive::{is_lorentz, q_matrix, reflection};
use polypack::polytopes::duality::is_orthoplicial_gram;
use polypack::polytopes::{
    cbp_projection, dual_packing, face_curvature, mobius_spectrum, spectrum_of_gram, trinity,
    Regular, RegularPolytope,
};
use polypack::sections::{
    lift_curvatures, realize_cubical, realize_octahedral, realize_tetrahedral, section_clusters,
    verify_arithmetic_equivalence, SectionKind,
};
use polypack::{Ball, Mat, Packing, Quad, Rat};
use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::path::Path;
use std::time::Instant;

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(long, value_enum, default_value_t = Suite::All)]
    pub suite: Suite,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Matrices,
    Coxeter,
    Spectra,
    Descartes,
    Lift,
    Oracle,
    Trinity,
    Diophantine,
    Probe,
    All,
}

const SUITES: [Suite; 9] = [
    Suite::Matrices,
    Suite::Coxeter,
    Suite::Spectra,
    Suite::Descartes,
    Suite::Lift,
    Suite::Oracle,
    Suite::Trinity,
    Suite::Diophantine,
    Suite::Probe,
];

type Check = std::result::Result<String, String>;

pub fn run(a: &VerifyArgs, out: Option<&Path>) -> Result<Outcome> {
    let chosen: Vec<Suite> = if a.suite == Suite::All {
        SUITES.to_vec()
    } else {
        vec![a.suite]
    };
    let mut text = String::new();
    let mut ok = true;
    for suite in chosen {
        let start = Instant::now();
        let result = match suite {
            Suite::Matrices => matrices(),
            Suite::Coxeter => coxeter(),
            Suite::Spectra => spectra(),
            Suite::Descartes => descartes(),
            Suite::Lift => lift(),
            Suite::Oracle => oracle(),
            Suite::Trinity => trinity_split(),
            Suite::Diophantine => diophantine(),
            Suite::Probe => probe(),
            Suite::All => unreachable!(),
        };
        let name = format!("{suite:?}").to_lowercase();
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(detail) => writeln!(text, "{name}: PASS ({detail}; {secs:.2}s)")?,
            Err(detail) => {
                ok = false;
                writeln!(text, "{name}: FAIL ({detail}; {secs:.2}s)")?
            }
        }
    }
    write_output(out, &text)?;
    Ok(if ok {
        Outcome::Ok
    } else {
        Outcome::VerificationFailed
    })
}

fn q(v: &[i64]) -> Vec<Quad> {
    v.iter().map(|&x| Quad::int(x)).collect()
}

fn verdict(problems: Vec<String>, detail: String) -> Check {
    if problems.is_empty() {
        Ok(detail)
    } else {
        Err(format!("{detail}; {}", problems.join(", ")))
    }
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn matrices() -> Check {
    let b0 = standard_b0::<Quad>();
    let labels = facet_labels();
    let mut bad = Vec::new();
    for (i, l) in labels.iter().enumerate() {
        let facet = FacetLabel::from_printed(*l);
        let balls: Vec<Ball<Quad>> = facet
            .indices()
            .iter()
            .map(|&j| b0.balls[j].clone())
            .collect();
        let m = reflection(&dual_ball(&balls, None).map_err(err)?).map_err(err)?;
        let want = printed_matrix::<Quad>(i);
        if *m.matrix() != want || !is_lorentz(&want) || !want.mul(&want).is_identity() {
            bad.push(l.to_string());
        }
    }
    let mut pairs = 0;
    for a in 0..labels.len() {
        for b in a + 1..labels.len() {
            if labels[a].distance(&labels[b]) == 1 {
                pairs += 1;
                let ab = printed_matrix::<Quad>(a).mul(&printed_matrix(b));
                if !ab.mul(&ab).is_identity() {
                    bad.push(format!("({} {})", labels[a], labels[b]));
                }
            }
        }
    }
    let sym = symmetrized();
    for (target, c, source) in CONJUGATIONS {
        let x = &sym
            .iter()
            .find(|(y, _)| *y == c)
            .ok_or("missing symmetrized letter")?
            .1;
        if x.mul(&printed_matrix(source)).mul(x) != printed_matrix::<Quad>(target) {
            bad.push(format!("{c}-conjugate of {}", labels[source]));
        }
    }
    verdict(
        bad,
        format!(
            "16 reflections, {pairs} commuting pairs, {} conjugations",
            CONJUGATIONS.len()
        ),
    )
}

fn matrix_order(m: &Mat<Quad>, max: u32) -> Option<u32> {
    let mut p = m.clone();
    for k in 1..=max {
        if p.is_identity() {
            return Some(k);
        }
        p = p.mul(m);
    }
    None
}

fn coxeter() -> Check {
    let sym = symmetrized();
    let q5 = q_matrix::<Quad>(5);
    let mut bad = Vec::new();
    for (i, (a, ma)) in sym.iter().enumerate() {
        if ma.transpose().mul(&q5).mul(ma) != q5 {
            bad.push(format!("{a} not Lorentz"));
        }
        for (j, (b, mb)) in sym.iter().enumerate() {
            let got = matrix_order(&ma.mul(mb), 12);
            if got != Some(coxeter_order(i, j)) {
                bad.push(format!("order of {a}{b} is {got:?}"));
            }
        }
    }
    let path: Vec<u32> = (0..4).map(|i| coxeter_order(i, i + 1)).collect();
    if path != [3, 3, 4, 4] {
        bad.push(format!("path orders {path:?}"));
    }
    verdict(
        bad,
        format!("{} generators, path orders {path:?}", sym.len()),
    )
}

fn spectra() -> Check {
    let phi = (1.0 + 5f64.sqrt()) / 2.0;
    let mut cases: Vec<(Regular, Vec<(f64, usize)>)> = Vec::new();
    for d in 2..=4usize {
        let df = d as f64;
        let two = 2f64.powi(d as i32 + 1);
        cases.push((Regular::Simplex(d + 1), vec![(-df, 1), (2.0, d + 1)]));
        cases.push((
            Regular::Orthoplex(d + 1),
            vec![(-2.0 * (df + 1.0), 1), (4.0, d + 1), (0.0, d)],
        ));
        cases.push((
            Regular::Cube(d + 1),
            vec![(-two * df, 1), (two, d + 1), (0.0, (1 << (d + 1)) - d - 2)],
        ));
    }
    cases.push((Regular::Cell24, vec![(-72.0, 1), (24.0, 4), (0.0, 19)]));
    cases.push((
        Regular::Icosahedron,
        vec![
            (-12.0 * phi * phi, 1),
            (4.0 * (phi * phi + 1.0), 3),
            (0.0, 8),
        ],
    ));
    cases.push((
        Regular::Dodecahedron,
        vec![(-20.0 * phi.powi(4), 1), (20.0 * phi * phi, 3), (0.0, 16)],
    ));
    let mut bad = Vec::new();
    for (kind, want) in &cases {
        let poly = RegularPolytope::edge_scribed(*kind).map_err(err)?;
        let rational = want.iter().all(|(x, _)| x.fract() == 0.0);
        let ok = match poly.exact_gram().filter(|_| rational) {
            Some(g) => {
                let exact: Vec<(Rat, usize)> = want
                    .iter()
                    .map(|&(x, m)| (Rat::from_integer(x.round() as i128), m))
                    .collect();
                spectrum_of_gram(&g).matches_exact(&exact)
            }
            None => {
                let s = mobius_spectrum(&poly.ball_projection().map_err(err)?);
                s.matches(want, 1e-9 * s.largest_magnitude().max(1.0))
            }
        };
        if !ok {
            bad.push(kind.to_string());
        }
    }
    verdict(bad, format!("{} Gram spectra", cases.len()))
}

fn descartes() -> Check {
    let mut bad = Vec::new();
    let mut flags = 0;
    let mut worst: f64 = 0.0;
    for kind in [
        Regular::Simplex(4),
        Regular::Orthoplex(4),
        Regular::Cube(4),
        Regular::Cell24,
    ] {
        for centre in 0..4 {
            let proj = cbp_projection(kind, centre).map_err(err)?;
            let p = &proj.packing;
            let form = FlagQuadraticForm::new(kind).map_err(err)?;
            let all: Vec<usize> = (0..p.len()).collect();
            let kappa = face_curvature(p, &all).map_err(err)?;
            let curv: Vec<Vec<_>> = proj
                .polytope
                .faces
                .iter()
                .map(|fs| {
                    fs.iter()
                        .map(|f| face_curvature(p, f))
                        .collect::<polypack::Result<Vec<_>>>()
                })
                .collect::<polypack::Result<_>>()
                .map_err(err)?;
            let scale = kappa.0.abs().max(1.0);
            for flag in proj.polytope.flags() {
                let mut x: Vec<_> = flag.iter().enumerate().map(|(k, &i)| curv[k][i]).collect();
                x.push(kappa);
                worst = worst.max(form.evaluate(&x).map_err(err)?.0.abs() / (scale * scale));
                flags += 1;
            }
        }
    }
    if worst > 1e-9 {
        bad.push(format!("flag residual {worst:.1e}"));
    }
    if !soddy_gosset_check(&q(&[-1, 2, 2, 3])) {
        bad.push("(-1,2,2,3)".into());
    }
    if !octahedral_check(&q(&[-2, 4, 5]), &Quad::int(5)) {
        bad.push("(-2,4,5)".into());
    }
    if ![[5, -3, 12], [-3, 12, 20], [12, 20, 5], [20, 5, -3]]
        .iter()
        .all(|t| cubical_check(&q(t)))
    {
        bad.push("(-3,5,12,20)".into());
    }
    verdict(
        bad,
        format!("{flags} flags, worst relative residual {worst:.1e}; sample tuples"),
    )
}

fn lift() -> Check {
    let cases: [(SectionKind, &[i64]); 3] = [
        (SectionKind::Tetrahedral, &[-1, 2, 2, 3]),
        (SectionKind::Octahedral, &[-2, 4, 5]),
        (SectionKind::Cubical, &[-3, 5, 12]),
    ];
    let mut bad = Vec::new();
    let mut words = 0;
    for (kind, k) in cases {
        let s = lift_curvatures(kind, &q(k)).map_err(err)?;
        let (pc, ac) = section_clusters(&s, 2, Some(300), Some(300)).map_err(err)?;
        let eq = verify_arithmetic_equivalence(&s, &pc, &ac, 2).map_err(err)?;
        words += eq.checked_words;
        if !eq.passed() || !ac.all_integral() {
            bad.push(format!("{kind} {k:?}"));
        }
    }
    verdict(
        bad,
        format!("three kinds lifted and certified on {words} words"),
    )
}

fn oracle() -> Check {
    let seeds = [
        standard_b0::<Quad>(),
        realize_tetrahedral(&q(&[-1, 2, 2, 3])).map_err(err)?,
        realize_octahedral(&q(&[-2, 4, 5])).map_err(err)?,
    ];
    let mut bad = Vec::new();
    let mut sizes = Vec::new();
    for (i, seed) in seeds.iter().enumerate() {
        let g = generators(seed).map_err(err)?;
        let bfs = orbit(seed, &g, &Bound::depth(2)).map_err(err)?;
        let brute = brute_force_orbit(&seed.balls, &g.maps(), 2);
        let mine: BTreeSet<_> = bfs.balls().iter().map(|b| b.key()).collect();
        let theirs: BTreeSet<_> = brute.keys().cloned().collect();
        if mine != theirs || bfs.len() != brute.len() {
            bad.push(format!("seed {i}"));
        }
        sizes.push(bfs.len());
    }
    verdict(
        bad,
        format!("depth-2 orbits of sizes {sizes:?} match all words"),
    )
}

fn trinity_split() -> Check {
    let b0 = standard_b0::<Quad>();
    let (a, b) = trinity(&b0).map_err(err)?;
    let mut bad = Vec::new();
    if !is_orthoplicial_gram(&a.gram()) || !is_orthoplicial_gram(&b.gram()) {
        bad.push("halves not orthoplicial".into());
    }
    let set = |p: &Packing<Quad>| p.balls.iter().map(|x| x.key()).collect::<BTreeSet<_>>();
    let union: BTreeSet<_> = set(&a).union(&set(&b)).cloned().collect();
    let duals: BTreeSet<_> = dual_packing(&b0)
        .map_err(err)?
        .iter()
        .map(|x| x.key())
        .collect();
    if union != duals {
        bad.push("halves do not make up the dual packing".into());
    }
    verdict(
        bad,
        "16 dual balls split into two orthoplicial packings".into(),
    )
}

fn diophantine() -> Check {
    let grow = |p: Packing<Quad>| -> std::result::Result<Vec<Packing<Quad>>, String> {
        let g = generators(&p).map_err(err)?;
        packing_orbit(&p, &g, 2).map_err(err)
    };
    let cases = [
        (
            Equation::Simplicial,
            grow(realize_tetrahedral(&q(&[-1, 2, 2, 3])).map_err(err)?)?,
        ),
        (
            Equation::Octahedral,
            grow(realize_octahedral(&q(&[-2, 4, 5])).map_err(err)?)?,
        ),
        (
            Equation::Cubical,
            grow(realize_cubical(&q(&[-3, 5, 12])).map_err(err)?)?,
        ),
    ];
    let mut bad = Vec::new();
    let mut total = 0;
    for (eq, packings) in &cases {
        let sols = diophantine_solutions(packings, *eq).map_err(err)?;
        total += sols.len();
        if sols.is_empty()
            || !sols.iter().all(|s| s.verify())
            || sols.iter().all(|s| s.is_trivial())
        {
            bad.push(format!("{eq:?}"));
        }
    }
    verdict(bad, format!("{total} planar solutions verified"))
}

fn probe() -> Check {
    let r = probe_r4(3, 60).map_err(err)?;
    let detail = format!(
        "{} balls to depth 3, coverage of 0..=60 {:.3}",
        r.report.len(),
        r.coverage()
    );
    verdict(
        if r.all_integral {
            vec![]
        } else {
            vec!["non-integral curvature".into()]
        },
        detail,
    )
}
