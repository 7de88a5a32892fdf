use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use polypack::apollonian::probe::probe_r4;
use polypack::apollonian::{
    brute_force_orbit, generators, orbit, orbit_with, standard_b0, Bound, Engine, OrbitOptions,
};
use polypack::sections::lift;
use polypack::{Approx, Quad};
use polypack_bench::{planar_seed, KINDS};
use std::hint::black_box;

fn b0_orbit(c: &mut Criterion) {
    let b0 = standard_b0::<Quad>();
    let g = generators(&b0).unwrap();
    let mut group = c.benchmark_group("b0 orbit");
    for depth in [3, 5] {
        let bound = Bound::depth(depth).with_curvature(200);
        group.bench_with_input(BenchmarkId::new("lattice", depth), &bound, |b, bound| {
            b.iter(|| orbit(black_box(&b0), &g, bound).unwrap().len())
        });
        let generic = OrbitOptions {
            engine: Engine::Generic,
            parallel: true,
        };
        group.bench_with_input(
            BenchmarkId::new("exact balls", depth),
            &bound,
            |b, bound| {
                b.iter(|| {
                    orbit_with(black_box(&b0), &g, bound, generic)
                        .unwrap()
                        .len()
                })
            },
        );
    }
    let bf = standard_b0::<Approx>();
    let gf = generators(&bf).unwrap();
    group.bench_function("float, depth 3", |b| {
        b.iter(|| orbit(black_box(&bf), &gf, &Bound::depth(3)).unwrap().len())
    });
    group.bench_function("all words, depth 2", |b| {
        b.iter(|| brute_force_orbit(black_box(&b0.balls), &g.maps(), 2).len())
    });
    group.finish();
}

fn lifts(c: &mut Criterion) {
    let mut group = c.benchmark_group("lift");
    for kind in KINDS {
        let p = planar_seed(kind);
        group.bench_function(kind.to_string(), |b| {
            b.iter(|| lift(kind, black_box(&p)).unwrap())
        });
    }
    group.finish();
}

fn r4_probe(c: &mut Criterion) {
    let mut group = c.benchmark_group("24-cell probe");
    group.sample_size(10);
    group.bench_function("depth 4, curvature 100", |b| {
        b.iter(|| probe_r4(4, 100).unwrap().coverage())
    });
    group.finish();
}

criterion_group!(benches, b0_orbit, lifts, r4_probe);
criterion_main!(benches);
