//! Elementary sequence machinery: finite vectors, rearrangements,
//! exponents, weights and weight regularity.
//!
//! Everything here works on finite truncations. A [`Weight`] only enforces
//! positivity, monotonicity and `w(1) = 1`; the asymptotic conditions
//! `w(k) -> 0` and `sum w = inf` have no meaning at finite length and are not
//! checked.

mod exponent;
mod regularity;
mod vector;
mod weight;

pub use exponent::{conjugate_exponent, Exponent};
pub use regularity::{regularity_profile, RegularityProfile};
pub(crate) use regularity::log_log_slope;
pub use vector::{decreasing_rearrangement, parse_vector_text, read_vector_file, rearranged, FiniteVector};
pub use weight::{make_weight, parse_weight_text, read_weight_file, DerivedSequence, Weight, WeightKind};
