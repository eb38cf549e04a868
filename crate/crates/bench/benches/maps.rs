use std::hint::black_box;

use bipolar_lab::enumerate::Enumerator;
use bipolar_lab::rerooting::{orbit, reroot};
use bipolar_lab::sampling::{rng_for, sample_b, sample_s, sample_t};
use bipolar_lab::slitslidesew::{phi, psi};
use bipolar_lab_bench::{marked_vertices, quasi_triangulation};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

fn enumeration(c: &mut Criterion) {
    let mut g = c.benchmark_group("enumerate_bipolar");
    g.sample_size(10);
    for e in [6, 7, 8] {
        g.bench_with_input(BenchmarkId::from_parameter(e), &e, |b, &e| {
            b.iter(|| Enumerator::new(e).bipolar_maps(e).unwrap().len())
        });
    }
    g.finish();
}

fn growth(c: &mut Criterion) {
    let mut g = c.benchmark_group("phi_psi");
    for k in [10, 40, 160] {
        let marked = marked_vertices(&quasi_triangulation(k, 4, 1));
        g.bench_with_input(BenchmarkId::from_parameter(k), &marked, |b, marked| {
            b.iter(|| {
                for a in marked {
                    let e = phi(a).unwrap();
                    black_box(psi(&e).unwrap());
                }
            })
        });
    }
    g.finish();
}

fn rerooting(c: &mut Criterion) {
    // orbits grow exponentially with the map, so only one step on a large map
    let big = quasi_triangulation(160, 5, 2);
    c.bench_function("reroot_t_160_5", |b| b.iter(|| reroot(&big).unwrap()));
    let small = quasi_triangulation(2, 4, 2);
    c.bench_function("orbit_t_2_4", |b| b.iter(|| orbit(&small).unwrap().len()));
}

fn samplers(c: &mut Criterion) {
    let mut g = c.benchmark_group("samplers");
    for k in [10, 25] {
        g.bench_with_input(BenchmarkId::new("T", k), &k, |b, &k| {
            let mut i = 0;
            b.iter(|| {
                i += 1;
                sample_t(k, 3, &mut rng_for(7, i), 1_000_000).unwrap().rejections
            })
        });
        g.bench_with_input(BenchmarkId::new("B", k), &k, |b, &k| {
            let mut i = 0;
            b.iter(|| {
                i += 1;
                sample_b(k, k + 2, 3, &mut rng_for(7, i), 1_000_000).unwrap().rejections
            })
        });
        g.bench_with_input(BenchmarkId::new("S", k), &k, |b, &k| {
            let mut i = 0;
            b.iter(|| {
                i += 1;
                sample_s(k, 4, &mut rng_for(7, i), 1_000_000).unwrap().rejections
            })
        });
    }
    g.finish();
}

criterion_group!(benches, enumeration, growth, rerooting, samplers);
criterion_main!(benches);
