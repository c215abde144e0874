use std::fmt;
use std::sync::Arc;

use crate::error::{invalid, Result};
use crate::seqcore::{conjugate_exponent, Exponent, Weight};

/// Symbolic description of a sequence space.
#[derive(Debug, Clone, PartialEq)]
pub enum SpaceSpec {
    /// `l_p`, `1 <= p <= inf`.
    Lp(Exponent),
    /// `d(w,p)`: `(sum x*(k)^p w(k))^{1/p}`.
    Lorentz { w: Arc<Weight>, p: f64 },
    /// `d(w,p)^*`, the (Köthe) dual of `d(w,p)`.
    LorentzDual { w: Arc<Weight>, p: f64 },
    /// `d_*(w,1)`: `sup_M (x*(1)+...+x*(M)) / (w(1)+...+w(M))`.
    LorentzPredual { w: Arc<Weight> },
    /// `m_Psi` with `Psi(M) = (w(1)+...+w(M))^{n/p}`.
    Marcinkiewicz { w: Arc<Weight>, n: f64, p: f64 },
    KotheDualOf(Box<SpaceSpec>),
    /// `E_(n)`, quasi-normed by `|| |z|^{1/n} ||_E^n`.
    Concavification(Box<SpaceSpec>, u32),
}

pub(crate) const MAX_DEPTH: usize = 3;

impl SpaceSpec {
    pub fn lp(p: f64) -> Result<Self> {
        let e = Exponent::new(p)?;
        let s = SpaceSpec::Lp(e);
        s.validate()?;
        Ok(s)
    }

    pub fn lorentz(w: Weight, p: f64) -> Result<Self> {
        let s = SpaceSpec::Lorentz { w: Arc::new(w), p };
        s.validate()?;
        Ok(s)
    }

    pub fn lorentz_dual(w: Weight, p: f64) -> Result<Self> {
        let s = SpaceSpec::LorentzDual { w: Arc::new(w), p };
        s.validate()?;
        Ok(s)
    }

    pub fn lorentz_predual(w: Weight) -> Self {
        SpaceSpec::LorentzPredual { w: Arc::new(w) }
    }

    pub fn marcinkiewicz(w: Weight, n: f64, p: f64) -> Result<Self> {
        let s = SpaceSpec::Marcinkiewicz { w: Arc::new(w), n, p };
        s.validate()?;
        Ok(s)
    }

    pub fn kothe_dual_of(inner: SpaceSpec) -> Result<Self> {
        let s = SpaceSpec::KotheDualOf(Box::new(inner));
        s.validate()?;
        Ok(s)
    }

    pub fn concavification(inner: SpaceSpec, n: u32) -> Result<Self> {
        let s = SpaceSpec::Concavification(Box::new(inner), n);
        s.validate()?;
        Ok(s)
    }

    /// Number of wrapper layers (`KotheDualOf`, `Concavification`) above the base space.
    pub fn depth(&self) -> usize {
        match self {
            SpaceSpec::KotheDualOf(inner) | SpaceSpec::Concavification(inner, _) => 1 + inner.depth(),
            _ => 0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.depth() > MAX_DEPTH {
            return Err(invalid("spec", format!("nesting depth {} exceeds {MAX_DEPTH}", self.depth())));
        }
        self.validate_node()
    }

    fn validate_node(&self) -> Result<()> {
        match self {
            SpaceSpec::Lp(Exponent::Finite(p)) if !(*p >= 1.0) => {
                Err(invalid("p", format!("l_p needs p >= 1, got {p}")))
            }
            SpaceSpec::Lp(_) | SpaceSpec::LorentzPredual { .. } => Ok(()),
            SpaceSpec::Lorentz { p, .. } | SpaceSpec::LorentzDual { p, .. } => {
                if *p >= 1.0 && p.is_finite() {
                    Ok(())
                } else {
                    Err(invalid("p", format!("Lorentz exponent must satisfy 1 <= p < inf, got {p}")))
                }
            }
            SpaceSpec::Marcinkiewicz { n, p, .. } => {
                if *n > 0.0 && *p > 0.0 && n.is_finite() && p.is_finite() {
                    Ok(())
                } else {
                    Err(invalid("n,p", format!("Marcinkiewicz needs n, p > 0, got n={n}, p={p}")))
                }
            }
            SpaceSpec::KotheDualOf(inner) => inner.validate_node(),
            SpaceSpec::Concavification(inner, n) => {
                if *n == 0 {
                    return Err(invalid("n", "concavification order must be >= 1"));
                }
                inner.validate_node()
            }
        }
    }

    /// Largest dimension the spec can evaluate (the shortest weight), or
    /// `None` when unlimited.
    pub fn max_dim(&self) -> Option<usize> {
        match self {
            SpaceSpec::Lp(_) => None,
            SpaceSpec::Lorentz { w, .. }
            | SpaceSpec::LorentzDual { w, .. }
            | SpaceSpec::LorentzPredual { w }
            | SpaceSpec::Marcinkiewicz { w, .. } => Some(w.len()),
            SpaceSpec::KotheDualOf(inner) | SpaceSpec::Concavification(inner, _) => inner.max_dim(),
        }
    }

    /// Whether the evaluator is only a quasi-norm.
    ///
    /// `E_(n)` is normed when `E` is `n`-convex with constant 1, which is known
    /// here for `l_p` and `d(w,p)` with `n <= p`; everything else is treated
    /// as a quasi-norm.
    pub fn is_quasi_norm(&self) -> bool {
        match self {
            SpaceSpec::Concavification(inner, n) => {
                let n = f64::from(*n);
                match inner.as_ref() {
                    _ if n == 1.0 => inner.is_quasi_norm(),
                    SpaceSpec::Lp(Exponent::Infinity) => false,
                    SpaceSpec::Lp(Exponent::Finite(p)) | SpaceSpec::Lorentz { p, .. } => n > *p,
                    _ => true,
                }
            }
            SpaceSpec::KotheDualOf(_) => false,
            _ => false,
        }
    }

    /// Whether evaluation needs an inner optimization.
    pub fn is_optimized(&self) -> bool {
        match self {
            SpaceSpec::LorentzDual { p, .. } => *p > 1.0,
            SpaceSpec::KotheDualOf(_) => true,
            SpaceSpec::Concavification(inner, _) => inner.is_optimized(),
            _ => false,
        }
    }

    /// The Köthe dual, simplified by finite-dimensional identities
    /// (`l_p^x = l_p'`, `d(w,p)^x = d(w,p)^*`, `(d(w,p)^*)^x = d(w,p)`,
    /// `d_*(w,1)^x = d(w,1)`, `E^xx = E`). Anything else is wrapped.
    pub fn kothe_dual_simplified(&self) -> Result<SpaceSpec> {
        Ok(match self {
            SpaceSpec::Lp(p) => SpaceSpec::Lp(conjugate_exponent(*p)?),
            SpaceSpec::Lorentz { w, p } => SpaceSpec::LorentzDual { w: w.clone(), p: *p },
            SpaceSpec::LorentzDual { w, p } => SpaceSpec::Lorentz { w: w.clone(), p: *p },
            SpaceSpec::LorentzPredual { w } => SpaceSpec::Lorentz { w: w.clone(), p: 1.0 },
            SpaceSpec::KotheDualOf(inner) => inner.as_ref().clone(),
            other => SpaceSpec::kothe_dual_of(other.clone())?,
        })
    }

    /// Compact human-readable label; weights are summarized by length.
    pub fn label(&self) -> String {
        match self {
            SpaceSpec::Lp(p) => format!("lp({p})"),
            SpaceSpec::Lorentz { w, p } => format!("lorentz(w[{}],p={p})", w.len()),
            SpaceSpec::LorentzDual { w, p } => format!("dual(lorentz(w[{}],p={p}))", w.len()),
            SpaceSpec::LorentzPredual { w } => format!("predual(w[{}])", w.len()),
            SpaceSpec::Marcinkiewicz { w, n, p } => format!("marc(w[{}],n={n},p={p})", w.len()),
            SpaceSpec::KotheDualOf(inner) => format!("kdual({})", inner.label()),
            SpaceSpec::Concavification(inner, n) => format!("concav({},n={n})", inner.label()),
        }
    }
}

fn write_weight(f: &mut fmt::Formatter<'_>, w: &Weight) -> fmt::Result {
    f.write_str("w=[")?;
    for (i, v) in w.as_slice().iter().enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        write!(f, "{v}")?;
    }
    f.write_str("]")
}

/// Canonical text with inline weights; parses back to an equal spec.
impl fmt::Display for SpaceSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpaceSpec::Lp(p) => write!(f, "lp({p})"),
            SpaceSpec::Lorentz { w, p } => {
                f.write_str("lorentz(")?;
                write_weight(f, w)?;
                write!(f, ",p={p})")
            }
            SpaceSpec::LorentzDual { w, p } => {
                f.write_str("dual(lorentz(")?;
                write_weight(f, w)?;
                write!(f, ",p={p}))")
            }
            SpaceSpec::LorentzPredual { w } => {
                f.write_str("predual(")?;
                write_weight(f, w)?;
                f.write_str(")")
            }
            SpaceSpec::Marcinkiewicz { w, n, p } => {
                f.write_str("marc(")?;
                write_weight(f, w)?;
                write!(f, ",n={n},p={p})")
            }
            SpaceSpec::KotheDualOf(inner) => write!(f, "kdual({inner})"),
            SpaceSpec::Concavification(inner, n) => write!(f, "concav({inner},n={n})"),
        }
    }
}
