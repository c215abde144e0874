use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use seqlab::ballopt::brute_force_oracle;
use seqlab::holder::empirical_best_constant;
use seqlab::{maximize_monomial_on_ball, FiniteVector, HolderInstance, MonomialObjective, OptimizerConfig, SpaceSpec, Weight};

fn harmonic(n: usize) -> Vec<f64> {
    (1..=n).map(|k| 1.0 / k as f64).collect()
}

fn monomial(c: &mut Criterion) {
    let cfg = OptimizerConfig::default();
    let mut group = c.benchmark_group("monomial_on_ball");
    group.sample_size(20);
    for n in [8usize, 32, 128] {
        let obj = MonomialObjective::rearranged(&harmonic(n), 2).unwrap();
        let w = Weight::lpq(3.0, 1.5, n).unwrap();
        let space = SpaceSpec::lorentz(w, 1.5).unwrap();
        group.bench_with_input(BenchmarkId::new("lorentz", n), &n, |b, &n| {
            b.iter(|| maximize_monomial_on_ball(&obj, &space, n, &cfg).unwrap())
        });
    }
    group.finish();
}

fn holder(c: &mut Criterion) {
    let cfg = OptimizerConfig::default();
    let mut group = c.benchmark_group("holder_constant");
    group.sample_size(10);
    for n in [8usize, 32] {
        let w = Weight::power_law(0.4, n).unwrap();
        let space = SpaceSpec::lorentz_dual(w, 2.0).unwrap();
        let inst = HolderInstance::new(space, FiniteVector::new(harmonic(n)).unwrap(), 3, n).unwrap();
        group.bench_with_input(BenchmarkId::new("dual_lorentz_n3", n), &inst, |b, inst| {
            b.iter(|| empirical_best_constant(inst, &cfg).unwrap())
        });
    }
    group.finish();
}

fn oracle(c: &mut Criterion) {
    let obj = MonomialObjective::rearranged(&harmonic(3), 2).unwrap();
    let space = SpaceSpec::lp(3.0).unwrap();
    let mut group = c.benchmark_group("grid_oracle");
    group.sample_size(10);
    for steps in [50usize, 200] {
        group.bench_with_input(BenchmarkId::new("lp3_N3", steps), &steps, |b, &steps| {
            b.iter(|| brute_force_oracle(&obj, &space, 3, steps).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, monomial, holder, oracle);
criterion_main!(benches);
