use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use seqlab::normzoo::kothe_dual_norm;
use seqlab::{norm, SpaceSpec, Weight};

fn sample(n: usize) -> Vec<f64> {
    // Deterministic, unsorted, mixed signs.
    (0..n).map(|k| ((k * 7919 % 101) as f64 - 50.0) / 17.0).collect()
}

fn closed_forms(c: &mut Criterion) {
    let mut group = c.benchmark_group("norm");
    for n in [16usize, 256, 4096] {
        let x = sample(n);
        let w = Weight::lpq(4.0, 2.0, n).unwrap();
        let spaces = [
            ("lp3", SpaceSpec::lp(3.0).unwrap()),
            ("lorentz", SpaceSpec::lorentz(w.clone(), 2.0).unwrap()),
            ("lorentz_dual_p1", SpaceSpec::lorentz_dual(w.clone(), 1.0).unwrap()),
            ("lorentz_dual_p2", SpaceSpec::lorentz_dual(w.clone(), 2.0).unwrap()),
            ("predual", SpaceSpec::lorentz_predual(w.clone())),
            ("marcinkiewicz", SpaceSpec::marcinkiewicz(w, 2.0, 2.0).unwrap()),
        ];
        for (name, space) in spaces {
            group.bench_with_input(BenchmarkId::new(name, n), &x, |b, x| b.iter(|| norm(&space, black_box(x)).unwrap()));
        }
    }
    group.finish();
}

fn optimized_dual(c: &mut Criterion) {
    let mut group = c.benchmark_group("kothe_dual");
    for n in [4usize, 16] {
        let z = sample(n);
        let w = Weight::power_law(0.5, n).unwrap();
        let space = SpaceSpec::concavification(SpaceSpec::lorentz(w, 3.0).unwrap(), 2).unwrap();
        group.bench_with_input(BenchmarkId::new("concav_lorentz", n), &z, |b, z| {
            b.iter(|| kothe_dual_norm(black_box(z), &space).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, closed_forms, optimized_dual);
criterion_main!(benches);
