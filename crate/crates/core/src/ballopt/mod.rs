//! Maximization of homogeneous objectives over the decreasing nonnegative
//! part of a unit ball, plus a brute-force grid oracle for small `N`.
//!
//! The engine is a multi-start projected ascent on the ratio
//! `f(x) / ||x||^deg` (gradient step, isotonic projection, radial rescale),
//! with backtracking and Barzilai-Borwein step sizes.

mod ascent;
mod ball;
mod config;
mod isotonic;
mod objective;
mod oracle;

pub use ascent::{maximize, maximize_monomial_on_ball, OptResult};
pub use ball::{Ball, SpaceBall};
pub use config::OptimizerConfig;
pub use isotonic::{isotonic_projection, pava_decreasing};
pub use objective::{MonomialObjective, Objective, WeightedImageObjective};
pub use oracle::{brute_force_oracle, brute_force_oracle_monotone, grid_oracle};

pub(crate) use isotonic::project_cone;
