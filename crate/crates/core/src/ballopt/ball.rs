use super::isotonic::pava_decreasing;
use super::OptimizerConfig;
use crate::error::Result;
use crate::normzoo::{norm_sorted, norm_with, SpaceSpec};
use crate::seqcore::Exponent;

/// A unit ball given by a symmetric gauge.
pub trait Ball: Sync {
    /// Gauge of an arbitrary vector (signs and order are irrelevant).
    fn gauge(&self, x: &[f64]) -> Result<f64>;
    /// Gauge of a nonnegative nonincreasing vector.
    fn gauge_sorted(&self, x: &[f64]) -> Result<f64> {
        self.gauge(x)
    }
    /// Writes a (sub)gradient of the gauge at a nonnegative nonincreasing
    /// `x` into `g`; returns false when no analytic form is available.
    fn gauge_gradient(&self, _x: &[f64], _g: &mut [f64]) -> bool {
        false
    }
    /// Problem-specific starting points for `sum c(k) x(k)^m` in dimension `dim`.
    fn structured_starts(&self, _c: &[f64], _m: u32, _dim: usize) -> Vec<Vec<f64>> {
        Vec::new()
    }
    /// Pulls `x` back towards the ball by a cheap structural map; returns
    /// false when the ball has none.
    fn repair(&self, _x: &mut [f64]) -> bool {
        false
    }
    fn max_dim(&self) -> Option<usize> {
        None
    }
}

/// The unit ball of a [`SpaceSpec`].
#[derive(Debug, Clone)]
pub struct SpaceBall {
    space: SpaceSpec,
    cfg: OptimizerConfig,
    polytope: Option<Vec<f64>>,
}

impl SpaceBall {
    /// `cfg` is used for norm evaluations that need an optimization.
    pub fn new(space: &SpaceSpec, cfg: &OptimizerConfig) -> Self {
        SpaceBall { space: space.clone(), cfg: cfg.nested(), polytope: polytope_bounds(space) }
    }

    pub fn space(&self) -> &SpaceSpec {
        &self.space
    }
}

/// Partial-sum bounds `B(M)` when the ball on the decreasing cone is
/// `{x : x(1) + ... + x(M) <= B(M) for all M}`.
fn polytope_bounds(space: &SpaceSpec) -> Option<Vec<f64>> {
    match space {
        SpaceSpec::LorentzDual { w, p } if *p == 1.0 => Some(w.partial_sums()),
        SpaceSpec::LorentzPredual { w } => Some(w.partial_sums()),
        SpaceSpec::Marcinkiewicz { w, n, p } => Some(w.partial_sums().iter().map(|s| s.powf(n / p)).collect()),
        _ => None,
    }
}

fn analytic_gradient(space: &SpaceSpec, x: &[f64], g: &mut [f64]) -> bool {
    let top = x.first().copied().unwrap_or(0.0);
    if !(top > 0.0) {
        return false;
    }
    match space {
        SpaceSpec::Lp(Exponent::Infinity) => {
            g.iter_mut().for_each(|v| *v = 0.0);
            g[0] = 1.0;
            true
        }
        SpaceSpec::Lp(Exponent::Finite(p)) => power_gradient(x, None, *p, g),
        SpaceSpec::Lorentz { w, p } => power_gradient(x, Some(w.as_slice()), *p, g),
        SpaceSpec::Concavification(inner, n) => {
            if x.iter().any(|&v| v <= 0.0) {
                return false;
            }
            let n = f64::from(*n);
            let u: Vec<f64> = x.iter().map(|v| v.powf(1.0 / n)).collect();
            if !analytic_gradient(inner, &u, g) {
                return false;
            }
            let Ok(e) = norm_sorted(inner, &u, &OptimizerConfig::inner()) else {
                return false;
            };
            let scale = e.value.powf(n - 1.0);
            for k in 0..x.len() {
                g[k] *= scale * u[k] / x[k];
            }
            true
        }
        _ => match polytope_bounds(space) {
            Some(b) => {
                let mut best = (f64::NEG_INFINITY, 0);
                let mut s = 0.0;
                for (m, v) in x.iter().enumerate() {
                    s += v;
                    let r = s / b[m];
                    if r > best.0 {
                        best = (r, m);
                    }
                }
                for (k, gk) in g.iter_mut().enumerate() {
                    *gk = if k <= best.1 { 1.0 / b[best.1] } else { 0.0 };
                }
                true
            }
            None => false,
        },
    }
}

fn power_gradient(x: &[f64], w: Option<&[f64]>, p: f64, g: &mut [f64]) -> bool {
    let wk = |k: usize| w.map_or(1.0, |w| w[k]);
    let s: f64 = x.iter().enumerate().map(|(k, v)| wk(k) * v.powf(p)).sum();
    let val = s.powf(1.0 / p);
    if !(val > 0.0) {
        return false;
    }
    for (k, gk) in g.iter_mut().enumerate() {
        *gk = wk(k) * (x[k] / val).powf(p - 1.0);
    }
    true
}

/// Maximizer of `sum c u` over the unit ball of `d(w,r)`, `r > 1`, on the
/// decreasing cone: `u = h^{1/(r-1)}` with `h` the level function of `c/w`.
fn level_start(c: &[f64], w: &[f64], p: f64, m: u32) -> Option<Vec<f64>> {
    let r = p / f64::from(m);
    if r <= 1.0 {
        return None;
    }
    let ratio: Vec<f64> = c.iter().zip(w).map(|(c, w)| c / w).collect();
    let h = pava_decreasing(&ratio, &w[..c.len()]);
    let inv_m = 1.0 / f64::from(m);
    Some(h.iter().map(|v| v.max(0.0).powf(1.0 / (r - 1.0)).powf(inv_m)).collect())
}

fn starts_for(space: &SpaceSpec, c: &[f64], m: u32, d: usize) -> Vec<Vec<f64>> {
    let c = &c[..c.len().min(d)];
    let mut out = Vec::new();
    match space {
        SpaceSpec::Lp(Exponent::Infinity) => out.push(vec![1.0; d]),
        SpaceSpec::Lp(Exponent::Finite(p)) => out.extend(level_start(c, &vec![1.0; c.len()], *p, m)),
        SpaceSpec::Lorentz { w, p } => out.extend(level_start(c, w.as_slice(), *p, m)),
        SpaceSpec::LorentzDual { w, p } if *p > 1.0 && m == 1 => {
            out.push(c.iter().zip(w.as_slice()).map(|(c, w)| w * c.powf(p - 1.0)).collect());
        }
        SpaceSpec::KotheDualOf(inner) if m == 1 => {
            let mut g = vec![0.0; c.len()];
            if analytic_gradient(inner, c, &mut g) {
                out.push(g);
            }
        }
        SpaceSpec::Concavification(inner, n) => {
            for u in starts_for(inner, c, m * n, d) {
                out.push(u.iter().map(|v| v.powi(*n as i32)).collect());
            }
        }
        _ => {
            if let Some(b) = polytope_bounds(space) {
                let mut inc: Vec<f64> = (0..d).map(|k| if k == 0 { b[0] } else { b[k] - b[k - 1] }).collect();
                super::project_cone(&mut inc);
                out.push(inc);
            }
        }
    }
    out.retain(|x| x.iter().all(|v| v.is_finite()) && x.iter().any(|&v| v > 0.0));
    for x in &mut out {
        x.resize(d, 0.0);
    }
    out
}

impl Ball for SpaceBall {
    fn gauge(&self, x: &[f64]) -> Result<f64> {
        Ok(norm_with(&self.space, x, &self.cfg)?.value)
    }

    fn gauge_sorted(&self, x: &[f64]) -> Result<f64> {
        Ok(norm_sorted(&self.space, x, &self.cfg)?.value)
    }

    fn gauge_gradient(&self, x: &[f64], g: &mut [f64]) -> bool {
        analytic_gradient(&self.space, x, g)
    }

    fn structured_starts(&self, c: &[f64], m: u32, dim: usize) -> Vec<Vec<f64>> {
        starts_for(&self.space, c, m, dim)
    }

    /// Sequential partial-sum clipping `x(k) <- min(x(k), B(k) - X(k-1))`
    /// for polytope balls.
    fn repair(&self, x: &mut [f64]) -> bool {
        let Some(b) = &self.polytope else { return false };
        let mut s = 0.0;
        for (k, v) in x.iter_mut().enumerate() {
            *v = v.min(b[k] - s).max(0.0);
            s += *v;
        }
        true
    }

    fn max_dim(&self) -> Option<usize> {
        self.space.max_dim()
    }
}
