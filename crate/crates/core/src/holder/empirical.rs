use super::cases::HolderInstance;
use crate::ballopt::{maximize, maximize_monomial_on_ball, MonomialObjective, OptResult, OptimizerConfig, SpaceBall, WeightedImageObjective};
use crate::error::{invalid, Error, Result};
use crate::normzoo::SpaceSpec;
use crate::seqcore::{FiniteVector, Weight};

/// Best constant `||T_alpha|| = sup { sum alpha*(k) x(k)^n : ||x||_E <= 1 }`.
///
/// For `E = d(w,p)^*` with `p > 1` the constant is computed as
/// `||D'_sigma : l_{n'} -> d(w,p)||^n` with `sigma = alpha^{1/n}` (see
/// [`adjoint_diag_norm`]); `argmax` is then the maximizer in the `l_{n'}`
/// ball. Every other space is handled by a direct ball maximization.
pub fn empirical_best_constant(inst: &HolderInstance, cfg: &OptimizerConfig) -> Result<OptResult> {
    match &inst.space {
        SpaceSpec::LorentzDual { w, p } if *p > 1.0 => {
            let inv = 1.0 / f64::from(inst.n);
            let sigma: Vec<f64> = inst.coefficients().iter().map(|a| a.powf(inv)).collect();
            let mut r = adjoint_diag_norm(&sigma, w, *p, inst.n, cfg)?;
            r.value = r.value.powi(inst.n as i32);
            Ok(r)
        }
        _ => empirical_best_constant_direct(inst, cfg),
    }
}

/// Direct ball maximization of `sum alpha*(k) x(k)^n`, whatever the space
/// (for optimized norms this nests one optimization inside another).
pub fn empirical_best_constant_direct(inst: &HolderInstance, cfg: &OptimizerConfig) -> Result<OptResult> {
    let obj = MonomialObjective::rearranged(&inst.alpha[..inst.dim], inst.n)?;
    maximize_monomial_on_ball(&obj, &inst.space, inst.dim, cfg)
}

/// `sup { ||(sigma(k) x(k))_k||_{d(w,p)} : ||x||_{l_{n'}} <= 1 }`.
pub fn adjoint_diag_norm(sigma: &[f64], w: &Weight, p: f64, n: u32, cfg: &OptimizerConfig) -> Result<OptResult> {
    if n < 2 {
        return Err(invalid("n", format!("degree must be >= 2, got {n}")));
    }
    if sigma.is_empty() {
        return Err(Error::Empty);
    }
    FiniteVector::new(sigma.to_vec())?;
    let obj = WeightedImageObjective::new(sigma, w, p)?;
    let nf = f64::from(n);
    let ball_space = SpaceSpec::lp(nf / (nf - 1.0))?;
    maximize(&obj, &SpaceBall::new(&ball_space, cfg), sigma.len(), cfg)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w2() -> Weight {
        Weight::new(vec![1.0, 0.5]).unwrap()
    }

    fn run(space: SpaceSpec, n: u32) -> OptResult {
        let inst = HolderInstance::new(space, FiniteVector::ones(2), n, 2).unwrap();
        empirical_best_constant(&inst, &OptimizerConfig::default()).unwrap()
    }

    #[test]
    fn worked_examples() {
        let r = run(SpaceSpec::lorentz(w2(), 1.0).unwrap(), 2);
        assert!((r.value - 1.0).abs() < 1e-9);
        let r = run(SpaceSpec::lorentz(w2(), 2.0).unwrap(), 2);
        assert!((r.value - 4.0 / 3.0).abs() < 1e-9, "{}", r.value);
        let s = (2.0f64 / 3.0).sqrt();
        assert!((r.argmax[0] - s).abs() < 1e-5 && (r.argmax[1] - s).abs() < 1e-5);
        let r = run(SpaceSpec::lp(4.0).unwrap(), 2);
        assert!((r.value - 2f64.sqrt()).abs() < 1e-9);
    }

    #[test]
    fn adjoint_examples() {
        let cfg = OptimizerConfig::default();
        let r = adjoint_diag_norm(&[1.0, 0.0], &w2(), 1.5, 2, &cfg).unwrap();
        assert!((r.value - 1.0).abs() < 1e-12);
        let r = adjoint_diag_norm(&[1.0, 1.0], &w2(), 1.5, 2, &cfg).unwrap();
        assert!((r.value - 1.0625f64.powf(1.0 / 6.0)).abs() < 1e-9, "{}", r.value);
        let r = adjoint_diag_norm(&[0.0, 0.0], &w2(), 1.5, 2, &cfg).unwrap();
        assert_eq!(r.value, 0.0);
    }

    #[test]
    fn adjoint_route_matches_nested_route() {
        let w = Weight::new(vec![1.0, 0.6, 0.5]).unwrap();
        let alpha = FiniteVector::new(vec![1.0, 0.8, 0.3]).unwrap();
        let inst = HolderInstance::new(SpaceSpec::lorentz_dual(w, 1.5).unwrap(), alpha, 2, 3).unwrap();
        let cfg = OptimizerConfig::default();
        let a = empirical_best_constant(&inst, &cfg).unwrap().value;
        let b = empirical_best_constant_direct(&inst, &cfg).unwrap().value;
        assert!((a - b).abs() <= 1e-4 * a, "{a} vs {b}");
    }
}
