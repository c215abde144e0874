use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::norms::{check_dim, norm};
use super::SpaceSpec;
use crate::error::{invalid, Result};

/// `lambda_E(N) = || 1_N ||_E`.
///
/// For Köthe duals of normed symmetric spaces the identity
/// `lambda_{E^x}(N) = N / lambda_E(N)` is used instead of an optimization.
pub fn fundamental_function(space: &SpaceSpec, n: usize) -> Result<f64> {
    check_dim(space, n)?;
    let nf = n as f64;
    match space {
        SpaceSpec::KotheDualOf(inner) if !inner.is_quasi_norm() => Ok(nf / fundamental_function(inner, n)?),
        SpaceSpec::LorentzDual { w, p } if *p > 1.0 => {
            let inner = SpaceSpec::Lorentz { w: w.clone(), p: *p };
            Ok(nf / fundamental_function(&inner, n)?)
        }
        _ => norm(space, &vec![1.0; n]),
    }
}

/// `(sum_j ||x_j||^s)^{1/s} / || (sum_j |x_j|^s)^{1/s} ||` for one family.
pub fn concavity_ratio(space: &SpaceSpec, s: f64, family: &[Vec<f64>]) -> Result<f64> {
    if !(s >= 1.0) {
        return Err(invalid("s", format!("need s >= 1, got {s}")));
    }
    let Some(first) = family.first() else {
        return Err(crate::error::Error::Empty);
    };
    if family.len() == 1 {
        let a = norm(space, first)?;
        let b = norm(space, &first.iter().map(|v| v.abs()).collect::<Vec<_>>())?;
        return Ok(if b > 0.0 { a / b } else { 0.0 });
    }
    let n = family.iter().map(Vec::len).max().unwrap_or(0);
    let mut lhs = 0.0;
    let mut combined = vec![0.0; n];
    for x in family {
        lhs += norm(space, x)?.powf(s);
        for (c, v) in combined.iter_mut().zip(x) {
            *c += v.abs().powf(s);
        }
    }
    let lhs = lhs.powf(1.0 / s);
    combined.iter_mut().for_each(|c| *c = c.powf(1.0 / s));
    let rhs = norm(space, &combined)?;
    Ok(if rhs > 0.0 { lhs / rhs } else { 0.0 })
}

/// Largest `concavity_ratio` over disjoint unit-vector families and
/// `trials` random families in dimension `dim`: a lower bound for the
/// `s`-concavity constant of the truncation.
pub fn concavity_lower_bound(space: &SpaceSpec, s: f64, dim: usize, trials: usize, seed: u64) -> Result<f64> {
    check_dim(space, dim)?;
    let unit = |k: usize| {
        let mut e = vec![0.0; dim];
        e[k] = 1.0;
        e
    };
    let mut best = concavity_ratio(space, s, &[unit(0)])?;
    for m in 2..=dim {
        let family: Vec<Vec<f64>> = (0..m).map(unit).collect();
        best = best.max(concavity_ratio(space, s, &family)?);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..trials {
        let m = rng.gen_range(2..=dim.max(2));
        let family: Vec<Vec<f64>> = (0..m)
            .map(|_| {
                (0..dim)
                    .map(|_| if rng.gen_bool(0.3) { 0.0 } else { rng.gen_range(-1.0..1.0) })
                    .collect()
            })
            .collect();
        best = best.max(concavity_ratio(space, s, &family)?);
    }
    Ok(best)
}
