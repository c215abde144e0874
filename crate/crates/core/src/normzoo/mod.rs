//! Norm evaluators for every space family, at finite dimension `N`.
//!
//! Closed-form variants (`l_p`, `d(w,p)`, `d(w,1)^*`, `d_*(w,1)`, `m_Psi`) are
//! exact to floating point. `d(w,p)^*` for `p > 1` and Köthe duals of
//! arbitrary specs are evaluated as ball suprema through [`crate::ballopt`]
//! and carry the optimizer's convergence flag.

mod dual;
mod norms;
mod properties;
mod spec;
mod syntax;

pub use dual::{kothe_dual_norm, kothe_dual_norm_with, level_function, lorentz_dual_level_norm, lorentz_dual_quasinorm};
pub use norms::{concavification_norm, norm, norm_with, Evaluation, NormEvaluator, Strategy};
pub use properties::{concavity_lower_bound, concavity_ratio, fundamental_function};
pub use spec::SpaceSpec;
pub use syntax::{parse_space, parse_weight, ParseContext};

pub(crate) use norms::norm_sorted;
