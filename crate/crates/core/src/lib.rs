//! Numerical laboratory for finite truncations of symmetric Banach sequence
//! spaces.
//!
//! The crate evaluates Lorentz, dual-Lorentz, Marcinkiewicz, Köthe-dual and
//! concavified norms ([`normzoo`]), maximizes diagonal monomials over unit
//! balls ([`ballopt`]), computes best constants of n-linear Hölder
//! inequalities together with their closed-form predictions ([`holder`]),
//! and evaluates diagonal forms in the ideals of all and of integral
//! multilinear forms ([`ideals`]).

// `!(x > 0.0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod ballopt;
pub mod error;
pub mod holder;
pub mod ideals;
pub mod normzoo;
pub mod report;
pub mod seqcore;

pub use ballopt::{maximize_monomial_on_ball, MonomialObjective, OptResult, OptimizerConfig};
pub use error::{Error, Result};
pub use holder::{CaseTag, HolderInstance, PredictedConstant};
pub use normzoo::{norm, SpaceSpec};
pub use report::{ReportFormat, VerificationReport};
pub use seqcore::{Exponent, FiniteVector, Weight};
