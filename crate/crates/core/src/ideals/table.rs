use rayon::prelude::*;

use super::integral::{diagonal_integral_norm, phi_linear_norm, MAX_INTEGRAL_DIM};
use super::IdealTag;
use crate::ballopt::OptimizerConfig;
use crate::error::Result;
use crate::holder::predicted_space;
use crate::normzoo::{fundamental_function, SpaceSpec};
use crate::report::VerificationReport;
use crate::seqcore::FiniteVector;

const TOL_L: f64 = 1e-4;
const TOL_I: f64 = 1e-3;

/// Space predicted for `l_n(ideal, space)`, with a case label.
///
/// `L` uses the best-constant theorems directly. `I` uses
/// `l_n(I, E) = l_n(L, E^x)^x`, so its label is `I/` followed by the case
/// applied to `E^x`.
pub fn predicted_ideal_space(space: &SpaceSpec, n: u32, ideal: IdealTag) -> Result<(String, SpaceSpec)> {
    match ideal {
        IdealTag::L => {
            let (case, s) = predicted_space(space, n)?;
            Ok((case.to_string(), s))
        }
        IdealTag::I => {
            let dual = space.kothe_dual_simplified()?;
            let (case, s) = predicted_space(&dual, n)?;
            Ok((format!("I/{case}"), s.kothe_dual_simplified()?))
        }
    }
}

/// Compares, for every `N` in `dims`, the computed norm of `Phi_N` in
/// `l_n(ideal, space)` with the fundamental function of the predicted
/// space. `I` is computed only for `N <= 6`; larger `N` and spaces without
/// a prediction are reported as skipped.
pub fn verify_ideal_table(
    space: &SpaceSpec,
    n: u32,
    ideal: IdealTag,
    dims: &[usize],
    cfg: &OptimizerConfig,
) -> Result<Vec<VerificationReport>> {
    let instance = format!("l_{n}({ideal},{})", space.label());
    let predicted = predicted_ideal_space(space, n, ideal);
    dims.par_iter()
        .map(|&dim| {
            let (case, pred_space) = match &predicted {
                Ok(p) => p,
                Err(e) => return Ok(VerificationReport::skipped(&instance, "none", dim, e.to_string())),
            };
            let lambda = fundamental_function(pred_space, dim)?;
            let (empirical, converged, tol) = match ideal {
                IdealTag::L => {
                    let r = phi_linear_norm(space, n, dim, cfg)?;
                    (r.value, r.converged, TOL_L)
                }
                IdealTag::I => {
                    if dim > MAX_INTEGRAL_DIM {
                        let reason = format!("integral norms are computed only for N <= {MAX_INTEGRAL_DIM}");
                        return Ok(VerificationReport::skipped(&instance, case.as_str(), dim, reason));
                    }
                    let r = diagonal_integral_norm(&FiniteVector::ones(dim), space, n, dim, cfg)?;
                    (r.value, r.converged, TOL_I)
                }
            };
            Ok(VerificationReport::compare(&instance, case.as_str(), dim, lambda, empirical, tol, converged, vec![cfg.seed])
                .with_note(format!("predicted space {}", pred_space.label())))
        })
        .collect()
}
