use super::dual::kothe_dual_sorted;
use super::SpaceSpec;
use crate::ballopt::OptimizerConfig;
use crate::error::{Error, Result};
use crate::seqcore::{rearranged, Exponent};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    ClosedForm,
    Optimized,
}

/// A norm value together with the convergence flag of any optimization
/// behind it (always true for closed forms).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Evaluation {
    pub value: f64,
    pub converged: bool,
}

impl Evaluation {
    fn exact(value: f64) -> Self {
        Evaluation { value, converged: true }
    }
}

/// A space together with the configuration its evaluation needs.
#[derive(Debug, Clone)]
pub struct NormEvaluator {
    space: SpaceSpec,
    cfg: OptimizerConfig,
}

impl NormEvaluator {
    pub fn new(space: SpaceSpec) -> Self {
        NormEvaluator { space, cfg: OptimizerConfig::inner() }
    }

    pub fn with_config(space: SpaceSpec, cfg: OptimizerConfig) -> Result<Self> {
        cfg.validate()?;
        Ok(NormEvaluator { space, cfg })
    }

    pub fn space(&self) -> &SpaceSpec {
        &self.space
    }

    pub fn strategy(&self) -> Strategy {
        if self.space.is_optimized() {
            Strategy::Optimized
        } else {
            Strategy::ClosedForm
        }
    }

    /// Optimizer settings, when the strategy is [`Strategy::Optimized`].
    pub fn config(&self) -> Option<&OptimizerConfig> {
        (self.strategy() == Strategy::Optimized).then_some(&self.cfg)
    }

    pub fn evaluate(&self, x: &[f64]) -> Result<Evaluation> {
        norm_with(&self.space, x, &self.cfg)
    }

    pub fn value(&self, x: &[f64]) -> Result<f64> {
        Ok(self.evaluate(x)?.value)
    }
}

/// Norm (or quasi-norm) of `x` in `space`.
pub fn norm(space: &SpaceSpec, x: &[f64]) -> Result<f64> {
    Ok(norm_with(space, x, &OptimizerConfig::inner())?.value)
}

pub fn norm_with(space: &SpaceSpec, x: &[f64], cfg: &OptimizerConfig) -> Result<Evaluation> {
    check_dim(space, x.len())?;
    if let Some((index, &value)) = x.iter().enumerate().find(|(_, v)| !v.is_finite()) {
        return Err(Error::NonFinite { index: index + 1, value });
    }
    norm_sorted(space, &rearranged(x), cfg)
}

pub(crate) fn check_dim(space: &SpaceSpec, n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::Empty);
    }
    match space.max_dim() {
        Some(max) if n > max => Err(Error::DimensionMismatch { got: n, max }),
        _ => Ok(()),
    }
}

/// `(|z|^{1/n})` measured in `space`, raised to the `n`.
pub fn concavification_norm(z: &[f64], space: &SpaceSpec, n: u32) -> Result<f64> {
    if n == 0 {
        return Err(crate::error::invalid("n", "concavification order must be >= 1"));
    }
    let spec = SpaceSpec::Concavification(Box::new(space.clone()), n);
    spec.validate()?;
    norm(&spec, z)
}

fn partial_sum_sup(xs: &[f64], bounds: impl Iterator<Item = f64>) -> f64 {
    let mut s = 0.0;
    let mut best: f64 = 0.0;
    for (x, b) in xs.iter().zip(bounds) {
        s += x;
        best = best.max(s / b);
    }
    best
}

fn power_sum(xs: &[f64], w: Option<&[f64]>, p: f64) -> f64 {
    let top = xs[0];
    if top == 0.0 {
        return 0.0;
    }
    let wk = |k: usize| w.map_or(1.0, |w| w[k]);
    if p == 1.0 {
        return xs.iter().enumerate().map(|(k, v)| wk(k) * v).sum();
    }
    let s: f64 = xs.iter().enumerate().map(|(k, v)| wk(k) * (v / top).powf(p)).sum();
    top * s.powf(1.0 / p)
}

/// Evaluation on a nonnegative nonincreasing vector.
pub(crate) fn norm_sorted(space: &SpaceSpec, xs: &[f64], cfg: &OptimizerConfig) -> Result<Evaluation> {
    Ok(match space {
        SpaceSpec::Lp(Exponent::Infinity) => Evaluation::exact(xs[0]),
        SpaceSpec::Lp(Exponent::Finite(p)) => Evaluation::exact(power_sum(xs, None, *p)),
        SpaceSpec::Lorentz { w, p } => Evaluation::exact(power_sum(xs, Some(w.as_slice()), *p)),
        SpaceSpec::LorentzDual { w, p } if *p == 1.0 => {
            Evaluation::exact(partial_sum_sup(xs, w.partial_sums().into_iter()))
        }
        SpaceSpec::LorentzPredual { w } => Evaluation::exact(partial_sum_sup(xs, w.partial_sums().into_iter())),
        SpaceSpec::Marcinkiewicz { w, n, p } => {
            let e = n / p;
            Evaluation::exact(partial_sum_sup(xs, w.partial_sums().into_iter().map(|s| s.powf(e))))
        }
        SpaceSpec::LorentzDual { w, p } => {
            let inner = SpaceSpec::Lorentz { w: w.clone(), p: *p };
            kothe_dual_sorted(xs, &inner, cfg)?
        }
        SpaceSpec::KotheDualOf(inner) => kothe_dual_sorted(xs, inner, cfg)?,
        SpaceSpec::Concavification(inner, n) => {
            if *n == 1 {
                return norm_sorted(inner, xs, cfg);
            }
            let inv = 1.0 / f64::from(*n);
            let u: Vec<f64> = xs.iter().map(|v| v.powf(inv)).collect();
            let e = norm_sorted(inner, &u, cfg)?;
            Evaluation { value: e.value.powi(*n as i32), converged: e.converged }
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seqcore::Weight;

    fn w(v: &[f64]) -> Weight {
        Weight::new(v.to_vec()).unwrap()
    }

    #[test]
    fn closed_form_examples() {
        let l1 = SpaceSpec::lorentz(w(&[1.0, 0.5]), 1.0).unwrap();
        assert_eq!(norm(&l1, &[1.0, 1.0]).unwrap(), 1.5);
        let l2 = SpaceSpec::lorentz(w(&[1.0, 0.5, 1.0 / 3.0]), 2.0).unwrap();
        assert!((norm(&l2, &[3.0, 4.0, 0.0]).unwrap() - 20.5f64.sqrt()).abs() < 1e-14);
        let d1 = SpaceSpec::lorentz_dual(w(&[1.0, 0.5]), 1.0).unwrap();
        assert!((norm(&d1, &[1.0, 1.0]).unwrap() - 4.0 / 3.0).abs() < 1e-15);
        let m = SpaceSpec::marcinkiewicz(w(&[1.0, 0.5]), 2.0, 1.0).unwrap();
        assert_eq!(norm(&m, &[1.0, 1.0]).unwrap(), 1.0);
        assert_eq!(norm(&SpaceSpec::lp(f64::INFINITY).unwrap(), &[1.0, -7.0]).unwrap(), 7.0);
        assert!((norm(&SpaceSpec::lp(2.0).unwrap(), &[3.0, 4.0]).unwrap() - 5.0).abs() < 1e-15);
    }

    #[test]
    fn concavification_examples() {
        let l2 = SpaceSpec::lorentz(w(&[1.0, 0.5]), 2.0).unwrap();
        assert!((concavification_norm(&[1.0, 1.0], &l2, 2).unwrap() - 1.5).abs() < 1e-14);
        assert_eq!(concavification_norm(&[1.0, 0.0], &l2, 3).unwrap(), 1.0);
        let a = concavification_norm(&[0.3, 0.9], &l2, 2).unwrap();
        let b = concavification_norm(&[-0.6, 1.8], &l2, 2).unwrap();
        assert!((b - 2.0 * a).abs() < 1e-14);
    }

    #[test]
    fn dimension_and_input_errors() {
        let l1 = SpaceSpec::lorentz(w(&[1.0, 0.5]), 1.0).unwrap();
        assert!(matches!(norm(&l1, &[1.0, 1.0, 1.0]), Err(Error::DimensionMismatch { got: 3, max: 2 })));
        assert!(matches!(norm(&l1, &[]), Err(Error::Empty)));
        assert!(norm(&l1, &[f64::NAN]).is_err());
    }

    #[test]
    fn evaluator_strategy() {
        let d2 = SpaceSpec::lorentz_dual(w(&[1.0, 0.5]), 2.0).unwrap();
        let ev = NormEvaluator::new(d2);
        assert_eq!(ev.strategy(), Strategy::Optimized);
        assert!(ev.config().is_some());
        let e = ev.evaluate(&[1.0, 1.0]).unwrap();
        assert!(e.converged);
        let ev = NormEvaluator::new(SpaceSpec::lp(1.0).unwrap());
        assert_eq!(ev.strategy(), Strategy::ClosedForm);
        assert!(ev.config().is_none());
    }
}
