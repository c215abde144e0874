//! Best constants of diagonal n-linear Hölder inequalities
//! `|sum alpha(k) x_1(k) ... x_n(k)| <= C ||x_1||_E ... ||x_n||_E`.
//!
//! [`predicted_constant`] gives the closed-form answer for `l_p`, `d(w,p)`,
//! `d(w,p)^*` and `d_*(w,1)`; [`empirical_best_constant`] computes the same
//! constant as a ball maximization.

mod cases;
mod empirical;
mod extremizer;
mod induction;

pub use cases::{case_space, predicted_constant, predicted_constant_for_case, predicted_space, CaseTag, HolderInstance, PredictedConstant};
pub use empirical::{adjoint_diag_norm, empirical_best_constant, empirical_best_constant_direct};
pub use extremizer::{adjoint_image_norm, dual_lorentz_extremizer};
pub use induction::{verify_partial_sum_inequality, PartialSumReport};
