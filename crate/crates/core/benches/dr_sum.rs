use std::hint::black_box;
use std::sync::Arc;

use criterion::{criterion_group, criterion_main, Criterion};
use tautring::dr::compute_p_d_r;
use tautring::graph::Ambient;
use tautring::target::{CurveClass, Target};

fn graph_sum(c: &mut Criterion) {
    let amb = Ambient::new(1, 2, CurveClass(vec![2]), Arc::new(Target::projective_space(1, 1).unwrap()));
    let a = [3, -1];
    let r = 101;
    let single = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
    let mut group = c.benchmark_group("dr_sum g=1 n=2 beta=2 d=2");
    group.sample_size(10);
    group.bench_function("one thread", |b| {
        b.iter(|| single.install(|| compute_p_d_r(&amb, 0, 2, black_box(&a), r).unwrap()))
    });
    group.bench_function("default pool", |b| b.iter(|| compute_p_d_r(&amb, 0, 2, black_box(&a), r).unwrap()));
    group.finish();
}

criterion_group!(benches, graph_sum);
criterion_main!(benches);
