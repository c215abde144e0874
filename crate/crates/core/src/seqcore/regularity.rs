use serde::Serialize;

use crate::error::{invalid, Result};

use super::Weight;

/// `rho_r(k) = (w(1)^r + ... + w(k)^r) / (k w(k)^r)` for `k = 1..=N`.
///
/// A weight is `r`-regular when this stays bounded. Boundedness is an
/// asymptotic property, so only the profile and trend summaries are exposed.
#[derive(Debug, Clone, Serialize)]
pub struct RegularityProfile {
    pub exponent: f64,
    pub ratios: Vec<f64>,
}

impl RegularityProfile {
    pub fn max(&self) -> f64 {
        self.ratios.iter().copied().fold(1.0, f64::max)
    }

    pub fn min(&self) -> f64 {
        self.ratios.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn max_over_min(&self) -> f64 {
        self.max() / self.min()
    }

    /// `rho_r(k)` with 1-based `k`.
    pub fn at(&self, k: usize) -> f64 {
        self.ratios[k - 1]
    }

    /// Least-squares slope of `ln rho` against `ln k` over the last decade
    /// `k >= N/10` (all of `k` when `N < 10`).
    pub fn tail_slope(&self) -> f64 {
        let n = self.ratios.len();
        let start = if n >= 10 { (n / 10).max(1) } else { 1 };
        log_log_slope((start..=n).map(|k| (k as f64, self.ratios[k - 1])))
    }
}

pub(crate) fn log_log_slope(points: impl Iterator<Item = (f64, f64)>) -> f64 {
    let pts: Vec<(f64, f64)> = points.map(|(x, y)| (x.ln(), y.ln())).collect();
    if pts.len() < 2 {
        return 0.0;
    }
    let m = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / m;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / m;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    if sxx == 0.0 {
        0.0
    } else {
        sxy / sxx
    }
}

pub fn regularity_profile(w: &Weight, r: f64) -> Result<RegularityProfile> {
    if !(r > 0.0) || !r.is_finite() {
        return Err(invalid("r", format!("must be positive, got {r}")));
    }
    // T(k) = sum_{j<=k} (w(j)/w(k))^r via T(k) = T(k-1) (w(k-1)/w(k))^r + 1.
    // Every factor is >= 1 in floating point, so rho(k) = T(k)/k >= 1 exactly.
    let v = w.as_slice();
    let mut ratios = Vec::with_capacity(v.len());
    let mut t = 0.0;
    for k in 0..v.len() {
        t = if k == 0 { 1.0 } else { t * (v[k - 1] / v[k]).powf(r) + 1.0 };
        ratios.push(t / (k + 1) as f64);
    }
    Ok(RegularityProfile { exponent: r, ratios })
}
