use microlp::{ComparisonOp, OptimizationDirection, Problem};

use crate::ballopt::{OptResult, OptimizerConfig};
use crate::error::{Error, Result};
use crate::holder::{empirical_best_constant, HolderInstance};
use crate::normzoo::{lorentz_dual_level_norm, SpaceSpec};
use crate::seqcore::{rearranged, FiniteVector};

/// Largest dimension accepted by [`diagonal_integral_norm`].
pub const MAX_INTEGRAL_DIM: usize = 6;

const MAX_OUTER: usize = 200;
const OUTER_TOL: f64 = 1e-7;
const CONVERGED_GAP: f64 = 1e-4;

/// `lambda_{l_n(L,E)}(N)`: the best constant of `Phi_N = T_{1_N}` on `E_N`.
pub fn phi_linear_norm(space: &SpaceSpec, n: u32, dim: usize, cfg: &OptimizerConfig) -> Result<OptResult> {
    let inst = HolderInstance::new(space.clone(), FiniteVector::ones(dim), n, dim)?;
    empirical_best_constant(&inst, cfg)
}

/// Result of the trace-duality computation of an integral norm.
#[derive(Debug, Clone, PartialEq)]
pub struct IntegralNorm {
    /// `<alpha, beta> / g(beta)` at the best certified-feasible `beta`.
    pub value: f64,
    /// Cutting-plane (LP) upper bound.
    pub upper: f64,
    /// Feasible maximizer `beta`, nonnegative and nonincreasing.
    pub beta: FiniteVector,
    pub outer_iterations: usize,
    /// Whether `(upper - value) / upper <= 1e-4` and every inner
    /// optimization converged.
    pub converged: bool,
}

struct Cut {
    g: f64,
    v: Vec<f64>,
    converged: bool,
}

/// `g(beta) = ||beta||_{l_n(L,E^x)}` with a supporting vector `v`:
/// `<beta', v> <= g(beta')` for every `beta'` and equality at `beta`.
fn inner_cut(beta: &[f64], dual: &SpaceSpec, n: u32, cfg: &OptimizerConfig) -> Result<Cut> {
    let dim = beta.len();
    let inst = HolderInstance::new(dual.clone(), FiniteVector::new(beta.to_vec())?, n, dim)?;
    let r = empirical_best_constant(&inst, cfg)?;
    let x: Vec<f64> = match dual {
        SpaceSpec::LorentzDual { w, p } if *p > 1.0 => {
            // argmax is y in the l_{n'} ball; the matching point of the
            // d(w,p)^* ball norms u = sigma y in d(w,p).
            let inv = 1.0 / f64::from(n);
            let u: Vec<f64> = beta.iter().zip(r.argmax.iter()).map(|(b, y)| b.powf(inv) * y).collect();
            let raw: Vec<f64> = u.iter().zip(w.as_slice()).map(|(u, w)| w * u.powf(p - 1.0)).collect();
            let s = lorentz_dual_level_norm(&raw, w, *p)?;
            if s > 0.0 {
                raw.iter().map(|v| v / s).collect()
            } else {
                raw
            }
        }
        _ => r.argmax.to_vec(),
    };
    let v = x.iter().map(|x| x.abs().powi(n as i32)).collect();
    Ok(Cut { g: r.value, v, converged: r.converged })
}

/// `||alpha||_{l_n(I,E)}` at truncation `N <= 6`:
/// `sup { <alpha*, beta> : beta >= 0 nonincreasing, ||beta||_{l_n(L,E^x)} <= 1 }`.
///
/// The outer search is Kelley's cutting-plane method in the cone
/// coordinates `beta = sum_j t_j 1_j`, `t >= 0`: each inner optimization
/// returns a supporting cut, the LP over the cuts gives an upper bound and
/// the radially shrunk iterate `beta / g(beta)` a feasible lower bound.
/// `E^x` is taken in simplified form (`d(w,p)^x = d(w,p)^*`, ...).
pub fn diagonal_integral_norm(alpha: &[f64], space: &SpaceSpec, n: u32, dim: usize, cfg: &OptimizerConfig) -> Result<IntegralNorm> {
    if dim > MAX_INTEGRAL_DIM {
        return Err(Error::DimensionTooLarge { got: dim, max: MAX_INTEGRAL_DIM });
    }
    if dim == 0 || alpha.len() < dim {
        return Err(Error::DimensionMismatch { got: dim, max: alpha.len() });
    }
    FiniteVector::new(alpha.to_vec())?;
    let a = rearranged(&alpha[..dim]);
    let dual = space.kothe_dual_simplified()?;
    let cum_a: Vec<f64> = prefix_sums(&a);
    if cum_a[dim - 1] == 0.0 {
        return Ok(IntegralNorm {
            value: 0.0,
            upper: 0.0,
            beta: FiniteVector::zeros(dim),
            outer_iterations: 0,
            converged: true,
        });
    }

    let mut cuts: Vec<Vec<f64>> = Vec::new();
    let mut all_converged = true;
    let mut best = (0.0, vec![0.0; dim]);
    let consider = |beta: &[f64], cut: &Cut, best: &mut (f64, Vec<f64>)| {
        if cut.g > 0.0 {
            let val = a.iter().zip(beta).map(|(a, b)| a * b).sum::<f64>() / cut.g;
            if val > best.0 {
                *best = (val, beta.iter().map(|b| b / cut.g).collect());
            }
        }
    };
    for k in 1..=dim {
        let mut beta = vec![0.0; dim];
        beta[..k].iter_mut().for_each(|b| *b = 1.0);
        let cut = inner_cut(&beta, &dual, n, cfg)?;
        all_converged &= cut.converged;
        consider(&beta, &cut, &mut best);
        cuts.push(prefix_sums(&cut.v));
    }

    let mut upper = f64::INFINITY;
    let mut iterations = 0;
    while iterations < MAX_OUTER {
        iterations += 1;
        let (u, t) = solve_master(&cum_a, &cuts)?;
        upper = upper.min(u);
        if (upper - best.0) <= OUTER_TOL * upper {
            break;
        }
        let beta: Vec<f64> = (0..dim).map(|k| t[k..].iter().sum()).collect();
        let cut = inner_cut(&beta, &dual, n, cfg)?;
        all_converged &= cut.converged;
        consider(&beta, &cut, &mut best);
        cuts.push(prefix_sums(&cut.v));
    }
    let gap = (upper - best.0) / upper;
    Ok(IntegralNorm {
        value: best.0,
        upper,
        beta: FiniteVector::new(best.1)?,
        outer_iterations: iterations,
        converged: all_converged && gap <= CONVERGED_GAP,
    })
}

fn prefix_sums(v: &[f64]) -> Vec<f64> {
    v.iter()
        .scan(0.0, |s, x| {
            *s += x;
            Some(*s)
        })
        .collect()
}

/// `max sum_j t_j A(j)` subject to `sum_j t_j V_c(j) <= 1` for every cut, `t >= 0`.
fn solve_master(cum_a: &[f64], cuts: &[Vec<f64>]) -> Result<(f64, Vec<f64>)> {
    let mut lp = Problem::new(OptimizationDirection::Maximize);
    let vars: Vec<_> = cum_a.iter().map(|&c| lp.add_var(c, (0.0, f64::INFINITY))).collect();
    for cut in cuts {
        let expr: Vec<_> = vars.iter().zip(cut).map(|(v, c)| (*v, *c)).collect();
        lp.add_constraint(expr, ComparisonOp::Le, 1.0);
    }
    let lp_err = |e: String| Error::Unsupported(format!("cutting-plane LP failed: {e}"));
    let sol = lp
        .solve()
        .map_err(|e| lp_err(e.to_string()))?
        .into_solution()
        .map_err(|_| lp_err("interrupted".into()))?;
    let t: Vec<f64> = vars.iter().map(|v| sol.var_value(*v).max(0.0)).collect();
    Ok((sol.objective(), t))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seqcore::Weight;

    #[test]
    fn worked_examples() {
        let cfg = OptimizerConfig::default();
        let w = Weight::new(vec![1.0, 0.5]).unwrap();
        let d2 = SpaceSpec::lorentz_dual(w.clone(), 2.0).unwrap();
        let r = diagonal_integral_norm(&[1.0, 1.0], &d2, 2, 2, &cfg).unwrap();
        assert!((r.value - 1.5).abs() < 1e-6, "{r:?}");
        assert!(r.converged);
        let r = diagonal_integral_norm(&[1.0, 0.0], &d2, 2, 2, &cfg).unwrap();
        assert!((r.value - 1.0).abs() < 1e-9, "{r:?}");
        let r = diagonal_integral_norm(&[0.0, 0.0], &d2, 2, 2, &cfg).unwrap();
        assert_eq!(r.value, 0.0);
        assert!(diagonal_integral_norm(&[1.0; 7], &SpaceSpec::lp(2.0).unwrap(), 2, 7, &cfg).is_err());
    }

    #[test]
    fn phi_examples() {
        let cfg = OptimizerConfig::default();
        let v = phi_linear_norm(&SpaceSpec::lp(4.0).unwrap(), 2, 4, &cfg).unwrap().value;
        assert!((v - 2.0).abs() < 1e-9);
        let v = phi_linear_norm(&SpaceSpec::lp(2.0).unwrap(), 3, 5, &cfg).unwrap().value;
        assert!((v - 1.0).abs() < 1e-9);
        let w = Weight::new(vec![1.0, 0.5]).unwrap();
        let v = phi_linear_norm(&SpaceSpec::lorentz(w, 1.0).unwrap(), 2, 2, &cfg).unwrap().value;
        assert!((v - 1.0).abs() < 1e-9);
    }
}
