use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::ball::{Ball, SpaceBall};
use super::isotonic::project_cone;
use super::objective::{MonomialObjective, Objective};
use super::OptimizerConfig;
use crate::error::{Error, Result};
use crate::normzoo::SpaceSpec;
use crate::seqcore::FiniteVector;

/// Outcome of a ball maximization.
#[derive(Debug, Clone, PartialEq)]
pub struct OptResult {
    /// Best objective value found on the unit sphere (a lower bound on the
    /// supremum when the gauge is evaluated exactly).
    pub value: f64,
    /// Attaining vector, nonnegative and nonincreasing, gauge <= 1 + 1e-10.
    pub argmax: FiniteVector,
    /// Whether the best start ended at a stationary point rather than at
    /// the iteration cap.
    pub converged: bool,
    /// Iterations summed over all starts.
    pub iterations: usize,
    /// Index of the best start (structured starts first, then corners, then
    /// random restarts).
    pub best_restart: usize,
    /// Number of starts run.
    pub starts: usize,
}

struct Run {
    value: f64,
    x: Vec<f64>,
    converged: bool,
    iterations: usize,
}

/// Maximizes `sum c(k) x(k)^m` over the nonnegative nonincreasing part of
/// the unit ball of `space` in dimension `n`.
pub fn maximize_monomial_on_ball(
    obj: &MonomialObjective,
    space: &SpaceSpec,
    n: usize,
    cfg: &OptimizerConfig,
) -> Result<OptResult> {
    if obj.support() > n {
        return Err(Error::DimensionMismatch { got: obj.support(), max: n });
    }
    let ball = SpaceBall::new(space, cfg);
    maximize(obj, &ball, n, cfg)
}

/// Maximizes `f(x) / gauge(x)^deg` over nonnegative nonincreasing `x` of
/// length `n`.
pub fn maximize(obj: &dyn Objective, ball: &dyn Ball, n: usize, cfg: &OptimizerConfig) -> Result<OptResult> {
    cfg.validate()?;
    if n == 0 {
        return Err(Error::Empty);
    }
    if let Some(max) = ball.max_dim() {
        if n > max {
            return Err(Error::DimensionMismatch { got: n, max });
        }
    }
    let d = obj.support().min(n);
    if d == 0 {
        let mut x = vec![0.0; n];
        x[0] = 1.0;
        let g = ball.gauge_sorted(&x)?;
        x[0] = 1.0 / g;
        return Ok(OptResult {
            value: 0.0,
            argmax: FiniteVector::new(x)?,
            converged: true,
            iterations: 0,
            best_restart: 0,
            starts: 0,
        });
    }

    let starts = build_starts(obj, ball, d, cfg);
    let runs: Vec<Run> = starts
        .par_iter()
        .map(|x0| ascend_and_polish(obj, ball, x0.clone(), cfg))
        .collect::<Result<_>>()?;
    let mut best = 0;
    for (i, run) in runs.iter().enumerate() {
        if run.value > runs[best].value {
            best = i;
        }
    }
    let iterations = runs.iter().map(|r| r.iterations).sum();
    let run = &runs[best];

    let mut x = run.x.clone();
    x.resize(n, 0.0);
    let g = ball.gauge_sorted(&x)?;
    if g > 0.0 {
        x.iter_mut().for_each(|v| *v /= g);
    }
    let check = ball.gauge_sorted(&x)?;
    if check > 1.0 + 1e-10 {
        let s = 1.0 / check;
        x.iter_mut().for_each(|v| *v *= s);
    }
    let value = obj.value(&x[..d]);
    Ok(OptResult {
        value,
        argmax: FiniteVector::new(x)?,
        converged: run.converged,
        iterations,
        best_restart: best,
        starts: runs.len(),
    })
}

fn restart_seed(seed: u64, i: usize) -> u64 {
    seed ^ (i as u64 + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15)
}

fn build_starts(obj: &dyn Objective, ball: &dyn Ball, d: usize, cfg: &OptimizerConfig) -> Vec<Vec<f64>> {
    let mut starts = Vec::new();
    if let Some((c, m)) = obj.monomial() {
        starts.extend(ball.structured_starts(c, m, d));
    }
    if cfg.corner_starts {
        for k in 1..=d {
            let mut x = vec![0.0; d];
            x[..k].iter_mut().for_each(|v| *v = 1.0);
            starts.push(x);
        }
    } else if starts.is_empty() {
        starts.push(vec![1.0; d]);
    }
    for i in 0..cfg.restarts {
        let mut rng = ChaCha8Rng::seed_from_u64(restart_seed(cfg.seed, i));
        let len = if i % 2 == 0 { d } else { rng.gen_range(1..=d) };
        let mut x: Vec<f64> = (0..len).map(|_| rng.gen_range(1e-3..1.0)).collect();
        x.sort_by(|a, b| b.total_cmp(a));
        x.resize(d, 0.0);
        starts.push(x);
    }
    starts
}

/// Rescales `x` onto the unit sphere and returns the objective there.
fn normalize(obj: &dyn Objective, ball: &dyn Ball, x: &mut [f64]) -> Result<Option<f64>> {
    let g = ball.gauge_sorted(x)?;
    if !(g > 0.0 && g.is_finite()) {
        return Ok(None);
    }
    x.iter_mut().for_each(|v| *v /= g);
    Ok(Some(obj.value(x)))
}

fn gauge_gradient(ball: &dyn Ball, x: &[f64], fd_step: f64, g: &mut [f64]) -> Result<()> {
    if ball.gauge_gradient(x, g) {
        return Ok(());
    }
    let h = fd_step * x[0].max(1e-300);
    let mut y = x.to_vec();
    for k in 0..x.len() {
        let orig = y[k];
        y[k] = orig + h;
        let up = ball.gauge(&y)?;
        if orig >= h {
            y[k] = orig - h;
            let down = ball.gauge(&y)?;
            g[k] = (up - down) / (2.0 * h);
        } else {
            y[k] = orig;
            let mid = ball.gauge(&y)?;
            g[k] = (up - mid) / h;
        }
        y[k] = orig;
    }
    Ok(())
}

fn ratio_gradient(obj: &dyn Objective, ball: &dyn Ball, x: &[f64], r: f64, cfg: &OptimizerConfig, out: &mut [f64]) -> Result<()> {
    obj.gradient(x, out);
    let mut gn = vec![0.0; x.len()];
    gauge_gradient(ball, x, cfg.fd_step, &mut gn)?;
    let s = obj.degree() * r;
    out.iter_mut().zip(&gn).for_each(|(o, g)| *o -= s * g);
    Ok(())
}

fn l2(v: &[f64]) -> f64 {
    v.iter().map(|a| a * a).sum::<f64>().sqrt()
}

/// Euclidean ascent, then support extension, then the same search along
/// `x * grad`. The scaled direction is invariant under coordinate rescaling,
/// which matters when the maximizer spans several orders of magnitude.
fn ascend_and_polish(obj: &dyn Objective, ball: &dyn Ball, x: Vec<f64>, cfg: &OptimizerConfig) -> Result<Run> {
    let mut run = ascend(obj, ball, x, cfg, false)?;
    if !run.value.is_finite() {
        return Ok(run);
    }
    for _ in 0..MAX_EXTENSIONS {
        let Some(y) = extend_support(obj, ball, &run.x, run.value)? else { break };
        let next = ascend(obj, ball, y, cfg, false)?;
        let iterations = run.iterations + next.iterations;
        if next.value <= run.value {
            run.iterations = iterations;
            break;
        }
        run = Run { iterations, ..next };
    }
    let polished = ascend(obj, ball, run.x.clone(), cfg, true)?;
    let iterations = run.iterations + polished.iterations;
    Ok(if polished.value > run.value {
        Run { iterations, ..polished }
    } else {
        Run { iterations, converged: run.converged && polished.converged, ..run }
    })
}

const MAX_EXTENSIONS: usize = 4;

/// When the gradient vanishes at `x(k) = 0` (objectives with `x^p`, `p > 1`,
/// terms) the ascent cannot leave a face of the cone even if a small
/// positive tail improves the ratio. Probes a raised tail, or only the next
/// coordinate, at a few scales and returns the best strict improvement.
fn extend_support(obj: &dyn Objective, ball: &dyn Ball, x: &[f64], r: f64) -> Result<Option<Vec<f64>>> {
    let s = x.iter().rposition(|&v| v > 0.0).map_or(0, |k| k + 1);
    if s == 0 || s >= x.len() {
        return Ok(None);
    }
    let mut best: Option<(Vec<f64>, f64)> = None;
    for t in [0.5, 1e-1, 1e-2, 1e-3, 1e-4, 1e-6] {
        for end in [x.len(), s + 1] {
            let mut y = x.to_vec();
            y[s..end].iter_mut().for_each(|v| *v = x[s - 1] * t);
            if let Some(ry) = normalize(obj, ball, &mut y)? {
                if ry > best.as_ref().map_or(r, |b| b.1) {
                    best = Some((y, ry));
                }
            }
        }
    }
    Ok(best.map(|b| b.0))
}

fn direction(obj: &dyn Objective, ball: &dyn Ball, x: &[f64], r: f64, cfg: &OptimizerConfig, scaled: bool, out: &mut [f64]) -> Result<()> {
    ratio_gradient(obj, ball, x, r, cfg, out)?;
    if scaled {
        out.iter_mut().zip(x).for_each(|(g, x)| *g *= x);
    }
    Ok(())
}

fn ascend(obj: &dyn Objective, ball: &dyn Ball, mut x: Vec<f64>, cfg: &OptimizerConfig, scaled: bool) -> Result<Run> {
    let d = x.len();
    project_cone(&mut x);
    let Some(mut r) = normalize(obj, ball, &mut x)? else {
        return Ok(Run { value: f64::NEG_INFINITY, x, converged: true, iterations: 0 });
    };
    let mut grad = vec![0.0; d];
    direction(obj, ball, &x, r, cfg, scaled, &mut grad)?;
    let gnorm = l2(&grad);
    if !(gnorm > 0.0 && gnorm.is_finite()) {
        return Ok(Run { value: r, x, converged: true, iterations: 0 });
    }
    let max_step = 10.0 * l2(&x) / gnorm;
    let mut step = cfg.initial_step * l2(&x) / gnorm;
    let mut converged = false;
    let mut stall = 0;
    let mut iterations = 0;
    let mut trial = vec![0.0; d];
    let mut new_grad = vec![0.0; d];

    while iterations < cfg.max_iter {
        iterations += 1;
        let mut t = step;
        let mut accepted: Option<(Vec<f64>, f64)> = None;
        for _ in 0..cfg.max_backtracks {
            for k in 0..d {
                trial[k] = x[k] + t * grad[k];
            }
            project_cone(&mut trial);
            let mut repaired = trial.clone();
            if let Some(rt) = normalize(obj, ball, &mut trial)? {
                if rt > r {
                    accepted = Some((trial.clone(), rt));
                }
            }
            if ball.repair(&mut repaired) {
                project_cone(&mut repaired);
                if let Some(rr) = normalize(obj, ball, &mut repaired)? {
                    if rr > accepted.as_ref().map_or(r, |a| a.1) {
                        accepted = Some((repaired, rr));
                    }
                }
            }
            if accepted.is_some() {
                break;
            }
            t *= cfg.backtrack;
        }
        let Some((xn, rn)) = accepted else {
            converged = true;
            break;
        };
        direction(obj, ball, &xn, rn, cfg, scaled, &mut new_grad)?;
        let mut ss = 0.0;
        let mut sy = 0.0;
        for k in 0..d {
            let s = xn[k] - x[k];
            ss += s * s;
            sy += s * (grad[k] - new_grad[k]);
        }
        let gn = l2(&new_grad);
        let cap = if gn > 0.0 { 10.0 * l2(&xn) / gn } else { max_step };
        step = if sy > 0.0 { ss / sy } else { 2.0 * t };
        step = step.min(cap).max(t * 1e-3);
        let rel = (rn - r) / rn.abs().max(1e-300);
        x = xn;
        r = rn;
        std::mem::swap(&mut grad, &mut new_grad);
        if rel <= cfg.tol {
            stall += 1;
            if stall >= cfg.patience {
                converged = true;
                break;
            }
        } else {
            stall = 0;
        }
    }
    Ok(Run { value: r, x, converged, iterations })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seqcore::Weight;

    fn mono(c: &[f64], m: u32) -> MonomialObjective {
        MonomialObjective::new(FiniteVector::new(c.to_vec()).unwrap(), m).unwrap()
    }

    #[test]
    fn worked_examples() {
        let cfg = OptimizerConfig::default();
        let w = Weight::new(vec![1.0, 0.5]).unwrap();
        let l1 = SpaceSpec::lorentz(w.clone(), 1.0).unwrap();
        let r = maximize_monomial_on_ball(&mono(&[1.0, 1.0], 1), &l1, 2, &cfg).unwrap();
        assert!((r.value - 4.0 / 3.0).abs() < 1e-9, "{}", r.value);
        assert!((r.argmax[0] - 2.0 / 3.0).abs() < 1e-6 && (r.argmax[1] - 2.0 / 3.0).abs() < 1e-6);
        let r = maximize_monomial_on_ball(&mono(&[1.0, 1.0], 2), &l1, 2, &cfg).unwrap();
        assert!((r.value - 1.0).abs() < 1e-9);
        assert!((r.argmax[0] - 1.0).abs() < 1e-9 && r.argmax[1].abs() < 1e-9);
        let l2 = SpaceSpec::lorentz(w, 2.0).unwrap();
        let r = maximize_monomial_on_ball(&mono(&[1.0], 3), &l2, 2, &cfg).unwrap();
        assert!((r.value - 1.0).abs() < 1e-12);
    }

    #[test]
    fn zero_objective_and_dimension_errors() {
        let cfg = OptimizerConfig::default();
        let space = SpaceSpec::lp(2.0).unwrap();
        let r = maximize_monomial_on_ball(&mono(&[0.0, 0.0], 2), &space, 3, &cfg).unwrap();
        assert_eq!(r.value, 0.0);
        assert!(maximize_monomial_on_ball(&mono(&[1.0, 1.0], 1), &space, 1, &cfg).is_err());
        let short = SpaceSpec::lorentz(Weight::constant(2), 2.0).unwrap();
        assert!(maximize_monomial_on_ball(&mono(&[1.0], 1), &short, 3, &cfg).is_err());
    }

    #[test]
    fn deterministic_and_scale_equivariant() {
        let cfg = OptimizerConfig::default().with_seed(7);
        let space = SpaceSpec::lp(3.0).unwrap();
        let obj = mono(&[1.0, 0.8, 0.3, 0.1], 2);
        let a = maximize_monomial_on_ball(&obj, &space, 4, &cfg).unwrap();
        let b = maximize_monomial_on_ball(&obj, &space, 4, &cfg).unwrap();
        assert_eq!(a, b);
        let s = maximize_monomial_on_ball(&obj.scaled(3.5).unwrap(), &space, 4, &cfg).unwrap();
        assert!((s.value - 3.5 * a.value).abs() <= 1e-12 * s.value);
    }
}
