use proptest::prelude::*;
use seqlab::ballopt::brute_force_oracle;
use seqlab::holder::{empirical_best_constant, predicted_constant};
use seqlab::ideals::{diagonal_integral_norm, phi_linear_norm};
use seqlab::normzoo::{concavification_norm, kothe_dual_norm};
use seqlab::{maximize_monomial_on_ball, norm, FiniteVector, HolderInstance, MonomialObjective, OptimizerConfig, SpaceSpec, Weight};

fn weight() -> Weight {
    Weight::new(vec![1.0, 0.7, 0.45, 0.4, 0.2, 0.1]).unwrap()
}

fn closed_form_spaces() -> Vec<SpaceSpec> {
    let w = weight();
    vec![
        SpaceSpec::lp(1.0).unwrap(),
        SpaceSpec::lp(2.5).unwrap(),
        SpaceSpec::lp(f64::INFINITY).unwrap(),
        SpaceSpec::lorentz(w.clone(), 1.0).unwrap(),
        SpaceSpec::lorentz(w.clone(), 3.0).unwrap(),
        SpaceSpec::lorentz_dual(w.clone(), 1.0).unwrap(),
        SpaceSpec::lorentz_dual(w.clone(), 2.0).unwrap(),
        SpaceSpec::lorentz_predual(w.clone()),
        SpaceSpec::marcinkiewicz(w, 2.0, 2.0).unwrap(),
    ]
}

fn vec6() -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-5.0f64..5.0, 6)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn triangle_and_homogeneity(x in vec6(), y in vec6(), t in -3.0f64..3.0) {
        for space in closed_form_spaces() {
            let sum: Vec<f64> = x.iter().zip(&y).map(|(a, b)| a + b).collect();
            let (nx, ny, ns) = (norm(&space, &x).unwrap(), norm(&space, &y).unwrap(), norm(&space, &sum).unwrap());
            prop_assert!(ns <= (nx + ny) * (1.0 + 1e-12) + 1e-12, "{space}: {ns} > {nx} + {ny}");
            let tx: Vec<f64> = x.iter().map(|v| t * v).collect();
            let ntx = norm(&space, &tx).unwrap();
            prop_assert!((ntx - t.abs() * nx).abs() <= 1e-10 * (1.0 + nx), "{space}");
        }
    }

    #[test]
    fn symmetric_under_permutation_and_sign(x in vec6(), shift in 0usize..6, signs in prop::collection::vec(any::<bool>(), 6)) {
        let mut y: Vec<f64> = x.iter().zip(&signs).map(|(v, s)| if *s { -v } else { *v }).collect();
        y.rotate_left(shift);
        for space in closed_form_spaces() {
            let (a, b) = (norm(&space, &x).unwrap(), norm(&space, &y).unwrap());
            prop_assert!((a - b).abs() <= 1e-12 * (1.0 + a), "{space}");
        }
    }

    #[test]
    fn holder_inequality_for_lorentz_pairs(x in vec6(), y in vec6(), p in 1.0f64..4.0) {
        let w = weight();
        let e = SpaceSpec::lorentz(w.clone(), p).unwrap();
        let d = SpaceSpec::lorentz_dual(w, p).unwrap();
        let pairing: f64 = x.iter().zip(&y).map(|(a, b)| a * b).sum();
        let bound = norm(&e, &x).unwrap() * norm(&d, &y).unwrap();
        prop_assert!(pairing.abs() <= bound * (1.0 + 1e-9) + 1e-12);
    }

    #[test]
    fn concavification_scales_with_power(z in prop::collection::vec(0.0f64..4.0, 6), t in 0.1f64..3.0, n in 1u32..4) {
        let e = SpaceSpec::lorentz(weight(), 3.0).unwrap();
        let tz: Vec<f64> = z.iter().map(|v| t * v).collect();
        let (a, b) = (concavification_norm(&z, &e, n).unwrap(), concavification_norm(&tz, &e, n).unwrap());
        prop_assert!((b - t * a).abs() <= 1e-10 * (1.0 + b));
    }
}

#[test]
fn dual_lorentz_p1_is_the_predual_norm_in_finite_dimensions() {
    let w = weight();
    let a = SpaceSpec::lorentz_dual(w.clone(), 1.0).unwrap();
    let b = SpaceSpec::lorentz_predual(w);
    for x in [vec![3.0, -1.0, 0.5, 0.0, 2.0, 1.0], vec![1.0; 6], vec![0.0, 0.0, 7.0, 0.0, 0.0, 0.0]] {
        let (u, v) = (norm(&a, &x).unwrap(), norm(&b, &x).unwrap());
        assert!((u - v).abs() < 1e-12 * u, "{u} vs {v}");
    }
}

#[test]
fn optimized_kothe_dual_matches_closed_form() {
    let w = weight();
    for p in [1.5, 2.0, 4.0] {
        let e = SpaceSpec::lorentz(w.clone(), p).unwrap();
        let closed = SpaceSpec::lorentz_dual(w.clone(), p).unwrap();
        let z = [0.3, 2.0, -1.0, 0.9, 0.0, 0.4];
        let opt = kothe_dual_norm(&z, &e).unwrap();
        let exact = norm(&closed, &z).unwrap();
        assert!((opt.value - exact).abs() <= 1e-6 * exact, "p={p}: {} vs {exact}", opt.value);
    }
}

#[test]
fn bidual_recovers_the_space() {
    let z = [1.0, 0.5, -0.25, 2.0];
    let cases = [
        SpaceSpec::lp(3.0).unwrap(),
        SpaceSpec::lorentz(Weight::new(vec![1.0, 0.6, 0.5, 0.2]).unwrap(), 2.0).unwrap(),
    ];
    for e in cases {
        let bidual = SpaceSpec::kothe_dual_of(SpaceSpec::kothe_dual_of(e.clone()).unwrap()).unwrap();
        let (a, b) = (norm(&bidual, &z).unwrap(), norm(&e, &z).unwrap());
        assert!((a - b).abs() <= 1e-4 * b, "{e}: {a} vs {b}");
    }
}

#[test]
fn optimizer_agrees_with_grid_oracle() {
    let cfg = OptimizerConfig::default();
    let obj = MonomialObjective::rearranged(&[1.0, 0.6, 0.3], 2).unwrap();
    for space in closed_form_spaces() {
        let opt = maximize_monomial_on_ball(&obj, &space, 3, &cfg).unwrap().value;
        let grid = brute_force_oracle(&obj, &space, 3, 120).unwrap();
        assert!(opt >= grid * (1.0 - 1e-9), "{space}: optimizer {opt} below grid {grid}");
        assert!(opt <= grid * 1.05, "{space}: optimizer {opt} far above grid {grid}");
    }
}

#[test]
fn best_constant_is_monotone_in_truncation() {
    let cfg = OptimizerConfig::default();
    let alpha: Vec<f64> = (1..=10).map(|k| 1.0 / f64::from(k)).collect();
    let space = SpaceSpec::lorentz(Weight::power_law(0.5, 10).unwrap(), 1.5).unwrap();
    let mut prev = 0.0;
    for dim in 1..=10 {
        let inst = HolderInstance::new(space.clone(), FiniteVector::new(alpha.clone()).unwrap(), 2, dim).unwrap();
        let c = empirical_best_constant(&inst, &cfg).unwrap().value;
        assert!(c >= prev * (1.0 - 1e-9), "N={dim}: {c} < {prev}");
        prev = c;
    }
}

#[test]
fn predicted_constants_match_empirical_in_each_case() {
    let cfg = OptimizerConfig::default();
    let w = Weight::new((1..=8).map(|k| 1.0 / f64::from(k).sqrt()).collect()).unwrap();
    let alpha = FiniteVector::new((1..=8).map(|k| 0.9f64.powi(k)).collect()).unwrap();
    let spaces = [
        SpaceSpec::lp(1.5).unwrap(),
        SpaceSpec::lp(5.0).unwrap(),
        SpaceSpec::lorentz(w.clone(), 1.0).unwrap(),
        SpaceSpec::lorentz(w.clone(), 3.0).unwrap(),
        SpaceSpec::lorentz_dual(w.clone(), 1.0).unwrap(),
        SpaceSpec::lorentz_dual(w, 1.5).unwrap(),
    ];
    for space in spaces {
        let inst = HolderInstance::new(space.clone(), alpha.clone(), 2, 8).unwrap();
        let Ok(pred) = predicted_constant(&inst) else { continue };
        let emp = empirical_best_constant(&inst, &cfg).unwrap().value;
        assert!((pred.value - emp).abs() <= 1e-4 * pred.value, "{space}: {} vs {emp}", pred.value);
    }
}

#[test]
fn integral_and_linear_norms_pair_to_at_least_n() {
    let cfg = OptimizerConfig::default();
    let spaces = [
        SpaceSpec::lp(3.0).unwrap(),
        SpaceSpec::lorentz(Weight::new(vec![1.0, 0.5, 0.4, 0.2]).unwrap(), 2.0).unwrap(),
    ];
    for e in spaces {
        let dual = e.kothe_dual_simplified().unwrap();
        for dim in 1..=4 {
            let iota = diagonal_integral_norm(&vec![1.0; dim], &e, 2, dim, &cfg).unwrap();
            let lambda = phi_linear_norm(&dual, 2, dim, &cfg).unwrap();
            assert!(iota.value <= iota.upper * (1.0 + 1e-9));
            assert!(iota.value * lambda.value >= dim as f64 * (1.0 - 1e-6), "{e} N={dim}");
        }
    }
}
