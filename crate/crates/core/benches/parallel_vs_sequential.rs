//! The same workloads on a one-thread rayon pool and on the global pool.
//! Build with `--no-default-features` to bench the sequential code path.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use gorkit_core::cayley::special_simplices;
use gorkit_core::polytope::{crosspolytope, cube, LatticePolytope};
use gorkit_core::stringy::{est, hstar};
use gorkit_core::Cap;

fn workloads() -> Vec<(&'static str, Box<dyn Fn() + Sync>)> {
    let c4 = cube(4, -1, 1);
    let o4 = crosspolytope(4);
    let c5 = cube(5, 0, 1);
    let h = c4.clone();
    let special: LatticePolytope = c5;
    vec![
        ("est_cube4", Box::new(move || drop(black_box(est(&c4).unwrap())))),
        ("est_cross4", Box::new(move || drop(black_box(est(&o4).unwrap())))),
        ("hstar_cube4", Box::new(move || drop(black_box(hstar(&h).unwrap())))),
        (
            "special_cube5",
            Box::new(move || drop(black_box(special_simplices(&special, Cap::default()).unwrap()))),
        ),
    ]
}

fn bench(c: &mut Criterion) {
    let single = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
    let mut g = c.benchmark_group("parallel_vs_sequential");
    g.sample_size(10);
    for (name, f) in workloads() {
        g.bench_function(BenchmarkId::new("one_thread", name), |b| b.iter(|| single.install(|| f())));
        g.bench_function(BenchmarkId::new("global_pool", name), |b| b.iter(|| f()));
    }
    g.finish();
}

criterion_group!(benches, bench);
criterion_main!(benches);
