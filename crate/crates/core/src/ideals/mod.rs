//! Diagonal forms in the ideals of all (`L`) and of integral (`I`)
//! multilinear forms, at finite dimension.
//!
//! `||alpha||_{l_n(L,E)}` is the best Hölder constant of `T_alpha` on `E`.
//! `||alpha||_{l_n(I,E)}` is obtained by trace duality,
//! `sup { <alpha, beta> : ||beta||_{l_n(L,E^x)} <= 1 }`; integral and
//! nuclear norms coincide in finite dimension.

mod growth;
mod integral;
mod table;

use std::fmt;
use std::str::FromStr;

use crate::error::{invalid, Error, Result};

pub use growth::{lambda_growth_compare, GrowthComparison, GrowthRow};
pub use integral::{diagonal_integral_norm, phi_linear_norm, IntegralNorm, MAX_INTEGRAL_DIM};
pub use table::{predicted_ideal_space, verify_ideal_table};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum IdealTag {
    /// All n-linear forms.
    L,
    /// Integral (= nuclear) forms.
    I,
}

impl fmt::Display for IdealTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            IdealTag::L => "L",
            IdealTag::I => "I",
        })
    }
}

impl FromStr for IdealTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "L" | "l" | "all" => Ok(IdealTag::L),
            "I" | "i" | "integral" | "nuclear" => Ok(IdealTag::I),
            other => Err(invalid("ideal", format!("unknown ideal `{other}` (L|I)"))),
        }
    }
}
