use super::norms::{check_dim, Evaluation};
use super::SpaceSpec;
use crate::ballopt::{maximize, pava_decreasing, MonomialObjective, OptResult, OptimizerConfig, SpaceBall};
use crate::error::{invalid, Error, Result};
use crate::seqcore::{rearranged, FiniteVector, Weight};

/// Köthe-dual norm `sup { sum |z(j) x(j)| : ||x||_space <= 1 }`, evaluated
/// as a ball maximization of the linear objective `z*` over decreasing `x`.
pub fn kothe_dual_norm(z: &[f64], space: &SpaceSpec) -> Result<OptResult> {
    kothe_dual_norm_with(z, space, &OptimizerConfig::default())
}

pub fn kothe_dual_norm_with(z: &[f64], space: &SpaceSpec, cfg: &OptimizerConfig) -> Result<OptResult> {
    space.validate()?;
    check_dim(space, z.len())?;
    let obj = MonomialObjective::rearranged(z, 1)?;
    maximize(&obj, &SpaceBall::new(space, cfg), z.len(), cfg)
}

pub(crate) fn kothe_dual_sorted(zs: &[f64], space: &SpaceSpec, cfg: &OptimizerConfig) -> Result<Evaluation> {
    let obj = MonomialObjective::new(FiniteVector::new(zs.to_vec())?, 1)?;
    // A linear functional over a convex ball: f/g is quasi-concave on the
    // cone, so one start (structured, else 1_d) reaches the maximum.
    let single;
    let cfg = if space.is_quasi_norm() {
        cfg
    } else {
        single = OptimizerConfig { restarts: 0, corner_starts: false, ..cfg.clone() };
        &single
    };
    let r = maximize(&obj, &SpaceBall::new(space, cfg), zs.len(), cfg)?;
    Ok(Evaluation { value: r.value, converged: r.converged })
}

/// Level function of a nonnegative nonincreasing `z` with respect to `w`:
/// the `w`-weighted decreasing isotonic regression of `z / w`.
pub fn level_function(z: &[f64], w: &[f64]) -> Vec<f64> {
    let ratio: Vec<f64> = z.iter().zip(w).map(|(z, w)| z / w).collect();
    pava_decreasing(&ratio, &w[..z.len()])
}

/// Closed form of the `d(w,p)^*` norm through the level function `h` of
/// `z*`: `(sum w h^{p'})^{1/p'}`, and `max_M Z(M)/W(M)` for `p = 1`.
pub fn lorentz_dual_level_norm(z: &[f64], w: &Weight, p: f64) -> Result<f64> {
    if !(p >= 1.0 && p.is_finite()) {
        return Err(invalid("p", format!("need 1 <= p < inf, got {p}")));
    }
    if z.len() > w.len() {
        return Err(Error::DimensionMismatch { got: z.len(), max: w.len() });
    }
    let zs = rearranged(z);
    let h = level_function(&zs, w.as_slice());
    if p == 1.0 {
        return Ok(h.first().copied().unwrap_or(0.0));
    }
    let q = p / (p - 1.0);
    let s: f64 = h.iter().zip(w.as_slice()).map(|(h, w)| w * h.powf(q)).sum();
    Ok(s.powf(1.0 / q))
}

/// `(sum_k (x*(k) / w(k)^{1/p})^{p'})^{1/p'}`, a quasi-norm that is only
/// equivalent to the `d(w,p)^*` norm, and only for regular weights.
pub fn lorentz_dual_quasinorm(x: &[f64], w: &Weight, p: f64) -> Result<f64> {
    if !(p > 1.0 && p.is_finite()) {
        return Err(invalid("p", format!("need 1 < p < inf, got {p}")));
    }
    if x.len() > w.len() {
        return Err(Error::DimensionMismatch { got: x.len(), max: w.len() });
    }
    let q = p / (p - 1.0);
    let s: f64 = rearranged(x)
        .iter()
        .zip(w.as_slice())
        .map(|(x, w)| (x / w.powf(1.0 / p)).powf(q))
        .sum();
    Ok(s.powf(1.0 / q))
}
