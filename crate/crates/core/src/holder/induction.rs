use serde::Serialize;

use crate::error::{invalid, Error, Result};
use crate::seqcore::Weight;

/// Per-`M` sides of
/// `Psi(1)x(1)^n + sum_{i=2..M} (Psi(i)-Psi(i-1)) x(i)^n <= (sum_{k<=M} w(k)x(k)^p)^{n/p}`
/// with `Psi(M) = (w(1)+...+w(M))^{n/p}`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PartialSumReport {
    /// Left side as written (increments of `Psi` against `x^n`).
    pub lhs: Vec<f64>,
    /// Left side after Abel summation,
    /// `sum_{i<M} Psi(i)(x(i)^n - x(i+1)^n) + Psi(M) x(M)^n`.
    pub lhs_abel: Vec<f64>,
    pub rhs: Vec<f64>,
    /// `rhs - lhs_abel`; nonnegative when the inequality holds.
    pub residuals: Vec<f64>,
}

impl PartialSumReport {
    pub fn min_residual(&self) -> f64 {
        self.residuals.iter().copied().fold(f64::INFINITY, f64::min)
    }
}

/// Evaluates both sides for `M = 1..=N`. Residuals use the Abel-summed
/// left side, which is exact on the equality cases (`e_1`, flat `x`).
pub fn verify_partial_sum_inequality(x: &[f64], w: &Weight, n: u32, p: f64, dim: usize) -> Result<PartialSumReport> {
    let nf = f64::from(n);
    if !(p > 0.0 && p <= nf) {
        return Err(invalid("p", format!("need 0 < p <= n = {n}, got {p}")));
    }
    if dim == 0 {
        return Err(Error::Empty);
    }
    if dim > x.len() || dim > w.len() {
        return Err(Error::DimensionMismatch { got: dim, max: x.len().min(w.len()) });
    }
    let x = &x[..dim];
    if x.iter().any(|&v| !(v >= 0.0 && v.is_finite())) || x.windows(2).any(|q| q[0] < q[1]) {
        return Err(invalid("x", "must be nonnegative and nonincreasing"));
    }
    let e = nf / p;
    let psi: Vec<f64> = w.partial_sums()[..dim].iter().map(|s| s.powf(e)).collect();
    let xn: Vec<f64> = x.iter().map(|v| v.powi(n as i32)).collect();

    let mut lhs = Vec::with_capacity(dim);
    let mut lhs_abel = Vec::with_capacity(dim);
    let mut rhs = Vec::with_capacity(dim);
    let mut direct = 0.0;
    let mut abel_head = 0.0;
    let mut mass = 0.0;
    for m in 0..dim {
        direct += if m == 0 { psi[0] } else { psi[m] - psi[m - 1] } * xn[m];
        if m > 0 {
            abel_head += psi[m - 1] * (xn[m - 1] - xn[m]);
        }
        mass += w.as_slice()[m] * x[m].powf(p);
        lhs.push(direct);
        lhs_abel.push(abel_head + psi[m] * xn[m]);
        rhs.push(mass.powf(e));
    }
    let residuals = rhs.iter().zip(&lhs_abel).map(|(r, l)| r - l).collect();
    Ok(PartialSumReport { lhs, lhs_abel, rhs, residuals })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn equality_cases() {
        let w = Weight::new(vec![1.0, 0.5]).unwrap();
        let r = verify_partial_sum_inequality(&[1.0, 0.0], &w, 2, 1.0, 2).unwrap();
        assert_eq!(r.lhs_abel, vec![1.0, 1.0]);
        assert_eq!(r.rhs, vec![1.0, 1.0]);
        let r = verify_partial_sum_inequality(&[1.0, 1.0], &w, 2, 1.0, 2).unwrap();
        assert_eq!(r.lhs[1], 2.25);
        assert_eq!(r.rhs[1], 2.25);
        assert_eq!(r.min_residual(), 0.0);
    }

    #[test]
    fn forms_agree_and_inequality_holds() {
        let w = Weight::new(vec![1.0, 0.8, 0.55, 0.5, 0.1]).unwrap();
        let x = [0.9, 0.8, 0.4, 0.35, 0.0];
        for (n, p) in [(2, 1.0), (3, 1.5), (4, 1.0)] {
            let r = verify_partial_sum_inequality(&x, &w, n, p, 5).unwrap();
            for (a, b) in r.lhs.iter().zip(&r.lhs_abel) {
                assert!((a - b).abs() < 1e-13);
            }
            // M = 1 is an equality case, exact only up to rounding.
            assert!(r.min_residual() >= -1e-14);
        }
    }

    #[test]
    fn rejects_bad_input() {
        let w = Weight::new(vec![1.0, 0.5]).unwrap();
        assert!(verify_partial_sum_inequality(&[0.5, 1.0], &w, 2, 1.0, 2).is_err());
        assert!(verify_partial_sum_inequality(&[1.0, 0.5], &w, 2, 3.0, 2).is_err());
        assert!(verify_partial_sum_inequality(&[1.0, 0.5], &w, 2, 1.0, 3).is_err());
    }
}
