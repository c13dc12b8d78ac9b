//! Single-thread pool against the global pool on the hot kernels.
//! Run with `--no-default-features` to time the sequential fallback instead.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rayon::ThreadPoolBuilder;

use hochschild_core::homology::{boundary_sparse, ComplexSelector};
use hochschild_core::products::cup_conv;
use hochschild_core::random::random_cochain;
use hochschild_core::tqft::hom_count_oracle;
use hochschild_core::{FieldSpec, FiniteGroup, GroupAlgebra};

fn kernels(c: &mut Criterion) {
    let alg = GroupAlgebra::new(FiniteGroup::parse("D4").unwrap(), FieldSpec::Prime(3));
    let a = random_cochain(&alg, 2, 1).unwrap();
    let b = random_cochain(&alg, 1, 2).unwrap();
    let pools = [
        ("sequential", ThreadPoolBuilder::new().num_threads(1).build().unwrap()),
        ("parallel", ThreadPoolBuilder::new().build().unwrap()),
    ];

    let mut group = c.benchmark_group("kernels");
    group.sample_size(10);
    for (name, pool) in &pools {
        group.bench_with_input(BenchmarkId::new("cup_conv_2x1", name), pool, |bench, pool| {
            bench.iter(|| pool.install(|| cup_conv(&alg, &a, &b).unwrap()))
        });
        group.bench_with_input(BenchmarkId::new("bstar_rank_3", name), pool, |bench, pool| {
            bench.iter(|| pool.install(|| boundary_sparse(&alg, 3, ComplexSelector::CochainBStar).unwrap().rank()))
        });
        group.bench_with_input(BenchmarkId::new("hom_count_genus_2", name), pool, |bench, pool| {
            bench.iter(|| pool.install(|| hom_count_oracle(&alg, 2).unwrap()))
        });
    }
    group.finish();
}

criterion_group!(benches, kernels);
criterion_main!(benches);
