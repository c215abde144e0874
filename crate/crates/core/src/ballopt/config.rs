use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};

/// Settings of the multi-start ascent. Every field has a default, so a JSON
/// file only needs the fields it overrides.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OptimizerConfig {
    /// Random restarts, on top of the structured and corner starts. May be 0:
    /// with no structured start and no corners, `1_d` is still run. Default 16.
    pub restarts: usize,
    /// Iteration cap per start. Default 2000.
    pub max_iter: usize,
    /// First trial step, relative to `|x| / |grad|`. Default 0.1.
    pub initial_step: f64,
    /// Backtracking factor in (0, 1). Default 0.5.
    pub backtrack: f64,
    /// Backtracking steps before a start is declared stationary. Default 40.
    pub max_backtracks: usize,
    /// Relative improvement below which an iteration counts as stalled. Default 1e-13.
    pub tol: f64,
    /// Consecutive stalled iterations that end a start. Default 4.
    pub patience: usize,
    /// Finite-difference step, relative to `max |x|`. Default 1e-7.
    pub fd_step: f64,
    /// Include `e_1` and `1_k / |1_k|` for every `k` as starts. Default true.
    pub corner_starts: bool,
    /// Seed of restart `i` is derived from `(seed, i)`. Default 0.
    pub seed: u64,
    /// Random restarts of optimizations nested inside a norm evaluation. Default 1.
    pub nested_restarts: usize,
    /// Iteration cap of nested optimizations. Default 400.
    pub nested_max_iter: usize,
}

impl Default for OptimizerConfig {
    fn default() -> Self {
        OptimizerConfig {
            restarts: 16,
            max_iter: 2000,
            initial_step: 0.1,
            backtrack: 0.5,
            max_backtracks: 40,
            tol: 1e-13,
            patience: 4,
            fd_step: 1e-7,
            corner_starts: true,
            seed: 0,
            nested_restarts: 1,
            nested_max_iter: 400,
        }
    }
}

impl OptimizerConfig {
    /// Configuration used for optimizations that serve as a norm evaluation
    /// inside another optimization.
    pub fn nested(&self) -> OptimizerConfig {
        OptimizerConfig {
            restarts: self.nested_restarts.max(1),
            max_iter: self.nested_max_iter.max(1),
            ..self.clone()
        }
    }

    /// Default configuration for stand-alone norm evaluations.
    pub fn inner() -> OptimizerConfig {
        OptimizerConfig::default().nested()
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.tol > 0.0) {
            return Err(invalid("tol", "must be > 0"));
        }
        if self.max_iter < 1 {
            return Err(invalid("max_iter", "must be >= 1"));
        }
        if !(self.backtrack > 0.0 && self.backtrack < 1.0) {
            return Err(invalid("backtrack", "must lie in (0, 1)"));
        }
        if !(self.initial_step > 0.0 && self.fd_step > 0.0) {
            return Err(invalid("initial_step/fd_step", "must be > 0"));
        }
        Ok(())
    }

    pub fn from_json_str(text: &str) -> Result<Self> {
        let cfg: OptimizerConfig = serde_json::from_str(text).map_err(|e| Error::Serialize(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn from_json_file(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|source| Error::Io { path: path.to_path_buf(), source })?;
        OptimizerConfig::from_json_str(&text).map_err(|e| match e {
            Error::Serialize(m) => Error::FileFormat { path: path.to_path_buf(), line: 0, message: m },
            other => other,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_partial_and_defaults() {
        let cfg = OptimizerConfig::from_json_str(r#"{"restarts": 4, "seed": 9}"#).unwrap();
        assert_eq!(cfg.restarts, 4);
        assert_eq!(cfg.seed, 9);
        assert_eq!(cfg.max_iter, OptimizerConfig::default().max_iter);
        assert!(OptimizerConfig::from_json_str(r#"{"restarts": 0}"#).is_ok());
        assert!(OptimizerConfig::from_json_str(r#"{"max_iter": 0}"#).is_err());
        assert!(OptimizerConfig::from_json_str(r#"{"tol": 0}"#).is_err());
        assert!(OptimizerConfig::from_json_str(r#"{"bogus": 1}"#).is_err());
        let back: OptimizerConfig = serde_json::from_str(&serde_json::to_string(&cfg).unwrap()).unwrap();
        assert_eq!(back, cfg);
    }
}
