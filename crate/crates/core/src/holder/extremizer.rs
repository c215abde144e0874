use crate::error::{invalid, Error, Result};
use crate::seqcore::{FiniteVector, Weight};

/// Closed-form maximizer in the `l_{n'}` sphere of
/// `x -> ||(alpha(k)^{1/n} x(k))_k||_{d(w,p)}` for `n' > p > 1`:
///
/// `x(k) = alpha(k)^{p/((n'-p)n)} w(k)^{1/(n'-p)} / (sum_i alpha(i)^{p'/(p'-n)} w(i)^{n'/(n'-p)})^{1/n'}`.
///
/// `alpha(1..N)` must be positive and nonincreasing.
pub fn dual_lorentz_extremizer(alpha: &[f64], w: &Weight, p: f64, n: u32, dim: usize) -> Result<FiniteVector> {
    let nf = f64::from(n);
    if n < 2 {
        return Err(invalid("n", format!("degree must be >= 2, got {n}")));
    }
    let nc = nf / (nf - 1.0);
    if !(p > 1.0 && p < nc) {
        return Err(invalid("p", format!("need 1 < p < n' = {nc}, got {p}")));
    }
    if dim == 0 {
        return Err(Error::Empty);
    }
    if dim > alpha.len() || dim > w.len() {
        return Err(Error::DimensionMismatch { got: dim, max: alpha.len().min(w.len()) });
    }
    let a = &alpha[..dim];
    if let Some(k) = a.iter().position(|&v| !(v > 0.0 && v.is_finite())) {
        return Err(invalid("alpha", format!("entry {} must be positive (truncate zero tails first)", k + 1)));
    }
    if let Some(k) = a.windows(2).position(|q| q[0] < q[1]) {
        return Err(invalid("alpha", format!("must be nonincreasing (index {})", k + 2)));
    }
    let pc = p / (p - 1.0);
    let w = &w.as_slice()[..dim];
    let denom: f64 = a
        .iter()
        .zip(w)
        .map(|(a, w)| a.powf(pc / (pc - nf)) * w.powf(nc / (nc - p)))
        .sum();
    let scale = denom.powf(1.0 / nc);
    let x: Vec<f64> = a
        .iter()
        .zip(w)
        .map(|(a, w)| a.powf(p / ((nc - p) * nf)) * w.powf(1.0 / (nc - p)) / scale)
        .collect();
    FiniteVector::new(x)
}

/// `||(sigma(k) x(k))_k||_{d(w,p)}` for nonnegative nonincreasing `sigma`, `x`.
pub fn adjoint_image_norm(sigma: &[f64], x: &[f64], w: &Weight, p: f64) -> f64 {
    let mut y: Vec<f64> = sigma.iter().zip(x).map(|(s, x)| (s * x).abs()).collect();
    y.sort_by(|a, b| b.total_cmp(a));
    let s: f64 = y.iter().zip(w.as_slice()).map(|(y, w)| w * y.powf(p)).sum();
    s.powf(1.0 / p)
}
