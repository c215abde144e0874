use rayon::prelude::*;

use super::ball::{Ball, SpaceBall};
use super::isotonic::project_cone;
use super::objective::{MonomialObjective, Objective};
use super::OptimizerConfig;
use crate::error::{invalid, Error, Result};
use crate::normzoo::SpaceSpec;

pub(crate) const ORACLE_MAX_DIM: usize = 5;
const MIN_GRID_STEPS: usize = 50;

type Ratio<'a> = dyn Fn(&[f64]) -> Result<f64> + Sync + 'a;

fn monomial_ratio<'a>(obj: &'a MonomialObjective, ball: &'a SpaceBall) -> impl Fn(&[f64]) -> Result<f64> + Sync + 'a {
    let m = obj.exponent() as i32;
    move |x: &[f64]| {
        let g = ball.gauge(x)?;
        if !(g > 0.0) {
            return Ok(0.0);
        }
        let f: f64 = obj.coefficients().iter().zip(x).map(|(c, v)| c * v.abs().powi(m)).sum();
        Ok(f / g.powi(m))
    }
}

fn check_args(obj: &MonomialObjective, n: usize, grid_steps: usize) -> Result<()> {
    if n > ORACLE_MAX_DIM {
        return Err(Error::DimensionTooLarge { got: n, max: ORACLE_MAX_DIM });
    }
    if n == 0 {
        return Err(Error::Empty);
    }
    if grid_steps < MIN_GRID_STEPS {
        return Err(invalid("grid_steps", format!("need at least {MIN_GRID_STEPS}")));
    }
    if obj.support() > n {
        return Err(Error::DimensionMismatch { got: obj.support(), max: n });
    }
    Ok(())
}

/// Supremum of `sum c(k)|x(k)|^m` over the unit ball of `space` in
/// dimension `n <= 5`, by exhaustive search over a grid on the boundary of
/// the cube `[-1,1]^n` (every direction, all signs, no ordering assumed),
/// followed by a compass-search polish of the best grid points.
pub fn brute_force_oracle(obj: &MonomialObjective, space: &SpaceSpec, n: usize, grid_steps: usize) -> Result<f64> {
    check_args(obj, n, grid_steps)?;
    let ball = SpaceBall::new(space, &OptimizerConfig::default());
    let ratio = monomial_ratio(obj, &ball);
    grid_oracle(n, grid_steps, false, &ratio)
}

/// The same search restricted to nonnegative nonincreasing directions
/// `1 = x(1) >= x(2) >= ... >= x(n) >= 0`.
pub fn brute_force_oracle_monotone(obj: &MonomialObjective, space: &SpaceSpec, n: usize, grid_steps: usize) -> Result<f64> {
    check_args(obj, n, grid_steps)?;
    let ball = SpaceBall::new(space, &OptimizerConfig::default());
    let ratio = monomial_ratio(obj, &ball);
    grid_oracle(n, grid_steps, true, &ratio)
}

/// Grid maximization of a 0-homogeneous `ratio` over directions in
/// dimension `n`; see [`brute_force_oracle`].
pub fn grid_oracle(n: usize, steps: usize, monotone: bool, ratio: &Ratio<'_>) -> Result<f64> {
    let candidates = if monotone { monotone_grid(n, steps, ratio)? } else { cube_grid(n, steps, ratio)? };
    let mut best = f64::NEG_INFINITY;
    for (_, x) in candidates {
        best = best.max(polish(x, steps, monotone, ratio)?);
    }
    Ok(best)
}

type Best = (f64, Vec<f64>);

fn better(a: Best, b: Best) -> Best {
    if b.0 > a.0 {
        b
    } else {
        a
    }
}

/// Best point on each face `{x(i) = +-1, |x(j)| < 1 for j < i}` of the cube.
fn cube_grid(n: usize, steps: usize, ratio: &Ratio<'_>) -> Result<Vec<Best>> {
    let level = |j: usize| -1.0 + 2.0 * j as f64 / steps as f64;
    let mut out = Vec::new();
    for face in 0..n {
        for &fixed in &[0usize, steps] {
            let inner = steps - 1;
            let outer = steps + 1;
            let total = inner.pow(face as u32) * outer.pow((n - 1 - face) as u32);
            let best = (0..total)
                .into_par_iter()
                .with_min_len(1024)
                .try_fold(
                    || (f64::NEG_INFINITY, vec![0.0; n]),
                    |acc, mut idx| -> Result<Best> {
                        let mut x = vec![0.0; n];
                        for (k, xk) in x.iter_mut().enumerate() {
                            let j = match k.cmp(&face) {
                                std::cmp::Ordering::Less => {
                                    let j = 1 + idx % inner;
                                    idx /= inner;
                                    j
                                }
                                std::cmp::Ordering::Equal => fixed,
                                std::cmp::Ordering::Greater => {
                                    let j = idx % outer;
                                    idx /= outer;
                                    j
                                }
                            };
                            *xk = level(j);
                        }
                        let r = ratio(&x)?;
                        Ok(better(acc, (r, x)))
                    },
                )
                .try_reduce(|| (f64::NEG_INFINITY, vec![0.0; n]), |a, b| Ok(better(a, b)))?;
            out.push(best);
        }
    }
    Ok(out)
}

fn monotone_grid(n: usize, steps: usize, ratio: &Ratio<'_>) -> Result<Vec<Best>> {
    let heads = if n == 1 { 0..=0 } else { 0..=steps };
    let best = heads
        .into_par_iter()
        .try_fold(
            || (f64::NEG_INFINITY, vec![0.0; n]),
            |acc, j2| -> Result<Best> {
                let mut acc = acc;
                let mut idx = vec![j2; n];
                idx[0] = steps;
                let mut x = vec![0.0; n];
                loop {
                    for k in 0..n {
                        x[k] = idx[k] as f64 / steps as f64;
                    }
                    let r = ratio(&x)?;
                    acc = better(acc, (r, x.clone()));
                    if n <= 2 || !advance(&mut idx[1..]) {
                        break;
                    }
                }
                Ok(acc)
            },
        )
        .try_reduce(|| (f64::NEG_INFINITY, vec![0.0; n]), |a, b| Ok(better(a, b)))?;
    Ok(vec![best])
}

/// Next nonincreasing tail `idx[1..]` below the fixed head `idx[0]`, in
/// lexicographic order; `idx` starts at all-equal-to-head.
fn advance(idx: &mut [usize]) -> bool {
    let mut k = idx.len() - 1;
    loop {
        if k == 0 {
            return false;
        }
        if idx[k] > 0 {
            idx[k] -= 1;
            let v = idx[k];
            idx[k + 1..].fill(v);
            return true;
        }
        k -= 1;
    }
}

fn polish(mut x: Vec<f64>, steps: usize, monotone: bool, ratio: &Ratio<'_>) -> Result<f64> {
    let mut best = ratio(&x)?;
    let mut h = 2.0 / steps as f64;
    let mut evals = 0;
    while h > 1e-10 && evals < 20_000 {
        let mut improved = false;
        for i in 0..x.len() {
            for s in [1.0, -1.0] {
                let mut y = x.clone();
                y[i] += s * h;
                if monotone {
                    project_cone(&mut y);
                }
                evals += 1;
                let r = ratio(&y)?;
                if r > best {
                    best = r;
                    x = y;
                    improved = true;
                }
            }
        }
        if !improved {
            h *= 0.5;
        }
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seqcore::{FiniteVector, Weight};

    fn mono(c: &[f64], m: u32) -> MonomialObjective {
        MonomialObjective::new(FiniteVector::new(c.to_vec()).unwrap(), m).unwrap()
    }

    #[test]
    fn worked_examples() {
        let e1 = brute_force_oracle(&mono(&[1.0], 1), &SpaceSpec::lp(2.0).unwrap(), 2, 60).unwrap();
        assert!((e1 - 1.0).abs() <= 2.0 / 60.0);
        let l4 = brute_force_oracle(&mono(&[1.0, 1.0], 2), &SpaceSpec::lp(4.0).unwrap(), 2, 100).unwrap();
        assert!((l4 - 2f64.sqrt()).abs() < 1e-8, "{l4}");
        let w = Weight::new(vec![1.0, 0.5]).unwrap();
        let lor = SpaceSpec::lorentz(w, 1.0).unwrap();
        let v = brute_force_oracle(&mono(&[1.0, 1.0], 1), &lor, 2, 100).unwrap();
        assert!((v - 4.0 / 3.0).abs() < 1e-8, "{v}");
        let v = brute_force_oracle_monotone(&mono(&[1.0, 1.0], 1), &lor, 2, 100).unwrap();
        assert!((v - 4.0 / 3.0).abs() < 1e-8, "{v}");
    }

    #[test]
    fn argument_checks() {
        let space = SpaceSpec::lp(2.0).unwrap();
        assert!(brute_force_oracle(&mono(&[1.0], 1), &space, 6, 60).is_err());
        assert!(brute_force_oracle(&mono(&[1.0], 1), &space, 2, 10).is_err());
    }

    #[test]
    fn monotone_enumeration_counts() {
        // nonincreasing tails below head 3 of length 2: C(3+2, 2) = 10
        let mut idx = vec![3, 3, 3];
        let mut count = 1;
        while advance(&mut idx) {
            count += 1;
            assert!(idx.windows(2).all(|p| p[0] >= p[1]));
        }
        assert_eq!(count, 10);
    }
}
