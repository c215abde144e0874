use rayon::prelude::*;
use serde::Serialize;

use crate::error::{invalid, Result};
use crate::normzoo::{fundamental_function, SpaceSpec};
use crate::seqcore::log_log_slope;

/// Slope of `log(ratio)` against `log N` below which the ratio is reported
/// as bounded.
const BOUNDED_SLOPE: f64 = 1e-3;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GrowthRow {
    #[serde(rename = "N")]
    pub dim: usize,
    pub lambda_f: f64,
    pub lambda_g: f64,
    /// `lambda_G(N) / lambda_F(N)^{1-eps}`.
    pub ratio: f64,
}

/// Fundamental functions of `F` and `G` over a sweep of `N`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GrowthComparison {
    pub f: String,
    pub g: String,
    pub eps: f64,
    pub rows: Vec<GrowthRow>,
    /// Least-squares slope of `log ratio` against `log N` over the upper
    /// half of the sweep.
    pub tail_slope: f64,
    /// `tail_slope <= 1e-3`: a trend diagnostic, not a proof.
    pub bounded: bool,
}

pub fn lambda_growth_compare(f: &SpaceSpec, g: &SpaceSpec, eps: f64, dims: &[usize]) -> Result<GrowthComparison> {
    if !(eps > 0.0 && eps < 1.0) {
        return Err(invalid("eps", format!("need 0 < eps < 1, got {eps}")));
    }
    if dims.is_empty() {
        return Err(crate::error::Error::Empty);
    }
    let rows: Vec<GrowthRow> = dims
        .par_iter()
        .map(|&dim| {
            let lambda_f = fundamental_function(f, dim)?;
            let lambda_g = fundamental_function(g, dim)?;
            Ok(GrowthRow { dim, lambda_f, lambda_g, ratio: lambda_g / lambda_f.powf(1.0 - eps) })
        })
        .collect::<Result<_>>()?;
    let half = rows.len() / 2;
    let tail_slope = log_log_slope(rows[half..].iter().map(|r| (r.dim as f64, r.ratio)));
    Ok(GrowthComparison { f: f.label(), g: g.label(), eps, rows, tail_slope, bounded: tail_slope <= BOUNDED_SLOPE })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seqcore::Weight;

    fn sweep() -> Vec<usize> {
        (1..=14).map(|k| 1usize << k).collect()
    }

    #[test]
    fn l1_into_l2() {
        let c = lambda_growth_compare(&SpaceSpec::lp(1.0).unwrap(), &SpaceSpec::lp(2.0).unwrap(), 0.4, &sweep()).unwrap();
        assert!(c.bounded);
        assert!((c.tail_slope + 0.1).abs() < 1e-9);
        for r in &c.rows {
            assert!((r.ratio - (r.dim as f64).powf(-0.1)).abs() < 1e-12);
        }
    }

    #[test]
    fn identical_spaces_are_unbounded() {
        let l = SpaceSpec::lp(2.0).unwrap();
        let c = lambda_growth_compare(&l, &l, 0.25, &sweep()).unwrap();
        assert!(!c.bounded);
        assert!((c.tail_slope - 0.125).abs() < 1e-9);
    }

    #[test]
    fn lorentz_vs_marcinkiewicz() {
        let w = Weight::lpq(4.0, 2.0, 1 << 10).unwrap();
        let f = SpaceSpec::lorentz(w.clone(), 1.0).unwrap();
        let g = SpaceSpec::marcinkiewicz(w.clone(), 1.0, 1.0).unwrap();
        let dims = [4usize, 64, 1024];
        let c = lambda_growth_compare(&f, &g, 0.1, &dims).unwrap();
        let ws = w.partial_sums();
        for r in &c.rows {
            assert!((r.lambda_f - ws[r.dim - 1]).abs() < 1e-9);
            let expect = (1..=r.dim).map(|m| m as f64 / ws[m - 1]).fold(0.0, f64::max);
            assert!((r.lambda_g - expect).abs() < 1e-12);
        }
        assert!(lambda_growth_compare(&f, &g, 1.5, &dims).is_err());
    }
}
