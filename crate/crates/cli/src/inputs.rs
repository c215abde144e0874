use std::path::Path;

use seqlab::normzoo::{parse_space, parse_weight, ParseContext};
use seqlab::seqcore::read_vector_file;
use seqlab::{FiniteVector, SpaceSpec, Weight};

use crate::CliError;

/// Coefficient sources: `ones`, `geometric(r)`, `harmonic`, `@file` or an
/// inline list `1,0.5,...`.
#[derive(Debug, Clone, PartialEq)]
pub enum AlphaSource {
    Ones,
    Geometric(f64),
    Harmonic,
    Values(Vec<f64>),
}

impl AlphaSource {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let t = text.trim();
        match t {
            "ones" => return Ok(AlphaSource::Ones),
            "harmonic" => return Ok(AlphaSource::Harmonic),
            _ => {}
        }
        if let Some(arg) = t.strip_prefix("geometric(").and_then(|r| r.strip_suffix(')')) {
            let r = parse_f64(arg, "geometric ratio")?;
            if !(r > 0.0 && r.is_finite()) {
                return Err(CliError::Usage(format!("geometric ratio must be positive, got {r}")));
            }
            return Ok(AlphaSource::Geometric(r));
        }
        Ok(AlphaSource::Values(parse_vector(t)?.into_vec()))
    }

    /// The first `dim` coefficients.
    pub fn take(&self, dim: usize) -> Result<FiniteVector, CliError> {
        let v: Vec<f64> = match self {
            AlphaSource::Ones => vec![1.0; dim],
            AlphaSource::Geometric(r) => (0..dim).map(|k| r.powi(k as i32)).collect(),
            AlphaSource::Harmonic => (1..=dim).map(|k| 1.0 / k as f64).collect(),
            AlphaSource::Values(v) => {
                if v.len() < dim {
                    return Err(CliError::Usage(format!("alpha has {} entries, N = {dim} requested", v.len())));
                }
                v[..dim].to_vec()
            }
        };
        Ok(FiniteVector::new(v)?)
    }
}

fn parse_f64(text: &str, what: &str) -> Result<f64, CliError> {
    text.trim().parse().map_err(|_| CliError::Usage(format!("bad {what}: `{text}`")))
}

/// `@path` reads a newline-separated file; anything else is a
/// comma-separated list.
pub fn parse_vector(text: &str) -> Result<FiniteVector, CliError> {
    if let Some(path) = text.strip_prefix('@') {
        return Ok(read_vector_file(Path::new(path))?);
    }
    let values = text.split(',').map(|s| parse_f64(s, "vector entry")).collect::<Result<Vec<_>, _>>()?;
    Ok(FiniteVector::new(values)?)
}

/// Accepts the space-syntax weight forms with or without the leading `w`:
/// `@path`, `[1,0.5]`, `ones`, `lpq(p,q)`, `pow(a)`.
pub fn parse_weight_arg(text: &str, len: usize) -> Result<Weight, CliError> {
    let t = text.trim();
    let full = if t.starts_with('w') {
        t.to_string()
    } else if t.starts_with('@') {
        format!("w{t}")
    } else {
        format!("w={t}")
    };
    // len = 0 leaves generated weights without a length, which is an error.
    let ctx = ParseContext { default_len: (len > 0).then_some(len), base_dir: None };
    Ok(parse_weight(&full, &ctx)?)
}

pub fn parse_space_arg(text: &str, len: usize) -> Result<SpaceSpec, CliError> {
    let ctx = ParseContext { default_len: Some(len), base_dir: None };
    Ok(parse_space(text, &ctx)?)
}

/// Dimension lists: `12`, `1..16` (inclusive), `2^1..2^14` (powers of two),
/// and comma-separated combinations of these. Order is preserved and
/// duplicates are dropped.
pub fn parse_dims(text: &str) -> Result<Vec<usize>, CliError> {
    let bad = || CliError::Usage(format!("bad N range `{text}`"));
    let mut out: Vec<usize> = Vec::new();
    for item in text.split(',') {
        let item = item.trim();
        let (lo, hi) = match item.split_once("..") {
            Some((a, b)) => (a.trim(), Some(b.trim())),
            None => (item, None),
        };
        let pow = |s: &str| -> Result<Option<u32>, CliError> {
            match s.strip_prefix("2^") {
                Some(e) => e.parse().map(Some).map_err(|_| bad()),
                None => Ok(None),
            }
        };
        let new: Vec<usize> = match (pow(lo)?, hi) {
            (Some(a), Some(b)) => {
                let b = pow(b)?.ok_or_else(bad)?;
                if a > b || b > 40 {
                    return Err(bad());
                }
                (a..=b).map(|e| 1usize << e).collect()
            }
            (Some(a), None) => vec![1usize.checked_shl(a).ok_or_else(bad)?],
            (None, Some(b)) => {
                let a: usize = lo.parse().map_err(|_| bad())?;
                let b: usize = b.parse().map_err(|_| bad())?;
                if a > b {
                    return Err(bad());
                }
                (a..=b).collect()
            }
            (None, None) => vec![lo.parse().map_err(|_| bad())?],
        };
        for d in new {
            if d == 0 {
                return Err(CliError::Usage("N must be at least 1".into()));
            }
            if !out.contains(&d) {
                out.push(d);
            }
        }
    }
    if out.is_empty() {
        return Err(bad());
    }
    Ok(out)
}
