use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::ballopt::OptimizerConfig;
use crate::error::{invalid, Error, Result};
use crate::normzoo::{lorentz_dual_level_norm, norm, norm_with, SpaceSpec};
use crate::seqcore::{conjugate_exponent, rearranged, Exponent, FiniteVector, Weight};

/// Which closed form applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum CaseTag {
    /// `E = d(w,p)`, `n <= p`: `||alpha||_{d(w,p/n)^*}`.
    T1a,
    /// `E = d(w,p)`, `n > p`: `||alpha||_{m_Psi}`, `Psi = W^{n/p}`.
    T1b,
    /// `E = d(w,p)^*`, `n' <= p`: `||alpha||_inf`.
    T2a,
    /// `E = d(w,p)^*`, `n' > p > 1`: `||alpha||_{d(w^{n'/(n'-p)}, p'/(p'-n))}`.
    T2b,
    /// `E = d(w,1)^*` or `d_*(w,1)`: `||alpha||_{d(w^n,1)}`.
    T2c,
    /// `E = l_p`, `p <= n`: `||alpha||_inf`.
    ClassicalPLeN,
    /// `E = l_p`, `p > n`: `||alpha||_{p/(p-n)}`.
    ClassicalPGtN,
}

impl CaseTag {
    pub fn as_str(self) -> &'static str {
        match self {
            CaseTag::T1a => "T1a",
            CaseTag::T1b => "T1b",
            CaseTag::T2a => "T2a",
            CaseTag::T2b => "T2b",
            CaseTag::T2c => "T2c",
            CaseTag::ClassicalPLeN => "classical_p<=n",
            CaseTag::ClassicalPGtN => "classical_p>n",
        }
    }
}

impl fmt::Display for CaseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CaseTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        [CaseTag::T1a, CaseTag::T1b, CaseTag::T2a, CaseTag::T2b, CaseTag::T2c, CaseTag::ClassicalPLeN, CaseTag::ClassicalPGtN]
            .into_iter()
            .find(|c| c.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| invalid("case", format!("unknown case tag `{s}`")))
    }
}

/// A diagonal form `T_alpha` of degree `n` on the truncation `E_N`.
#[derive(Debug, Clone, PartialEq)]
pub struct HolderInstance {
    pub space: SpaceSpec,
    pub alpha: FiniteVector,
    pub n: u32,
    pub dim: usize,
}

impl HolderInstance {
    pub fn new(space: SpaceSpec, alpha: FiniteVector, n: u32, dim: usize) -> Result<Self> {
        if n < 2 {
            return Err(invalid("n", format!("degree must be >= 2, got {n}")));
        }
        if dim == 0 {
            return Err(Error::Empty);
        }
        if alpha.len() < dim {
            return Err(invalid("alpha", format!("needs at least N = {dim} entries, has {}", alpha.len())));
        }
        if let Some(max) = space.max_dim() {
            if dim > max {
                return Err(Error::DimensionMismatch { got: dim, max });
            }
        }
        space.validate()?;
        Ok(HolderInstance { space, alpha, n, dim })
    }

    /// Decreasing rearrangement of `|alpha(1..N)|`.
    pub fn coefficients(&self) -> Vec<f64> {
        rearranged(&self.alpha[..self.dim])
    }
}

/// Closed-form best constant with the space that houses `alpha`.
#[derive(Debug, Clone, PartialEq)]
pub struct PredictedConstant {
    pub value: f64,
    pub case: CaseTag,
    pub space: SpaceSpec,
}

impl PredictedConstant {
    /// `norm(space, alpha)` evaluated again through the generic dispatcher.
    pub fn recompute(&self, alpha: &[f64], cfg: &OptimizerConfig) -> Result<f64> {
        Ok(norm_with(&self.space, alpha, cfg)?.value)
    }
}

/// Case selection and coefficient space for degree `n` forms on `space`.
/// Boundaries go to the inclusive cases: `n = p` is T1a, `n' = p` is T2a.
pub fn predicted_space(space: &SpaceSpec, n: u32) -> Result<(CaseTag, SpaceSpec)> {
    let case = select_case(space, n)?;
    Ok((case, case_space(space, n, case)?))
}

fn select_case(space: &SpaceSpec, n: u32) -> Result<CaseTag> {
    if n < 2 {
        return Err(invalid("n", format!("degree must be >= 2, got {n}")));
    }
    let nf = f64::from(n);
    let n_conj = nf / (nf - 1.0);
    Ok(match space {
        SpaceSpec::Lp(Exponent::Infinity) => CaseTag::ClassicalPGtN,
        SpaceSpec::Lp(Exponent::Finite(p)) if nf >= *p => CaseTag::ClassicalPLeN,
        SpaceSpec::Lp(_) => CaseTag::ClassicalPGtN,
        SpaceSpec::Lorentz { p, .. } if nf <= *p => CaseTag::T1a,
        SpaceSpec::Lorentz { .. } => CaseTag::T1b,
        SpaceSpec::LorentzDual { p, .. } if *p == 1.0 => CaseTag::T2c,
        SpaceSpec::LorentzPredual { .. } => CaseTag::T2c,
        SpaceSpec::LorentzDual { p, .. } if n_conj <= *p => CaseTag::T2a,
        SpaceSpec::LorentzDual { .. } => CaseTag::T2b,
        other => {
            return Err(Error::Unsupported(format!("no closed-form best constant for {}", other.label())));
        }
    })
}

/// The coefficient space that `case` assigns to `space`, without checking
/// that the parameters lie in the case's range. Fails only when the case
/// does not apply to the family or its formula is undefined.
pub fn case_space(space: &SpaceSpec, n: u32, case: CaseTag) -> Result<SpaceSpec> {
    if n < 2 {
        return Err(invalid("n", format!("degree must be >= 2, got {n}")));
    }
    let nf = f64::from(n);
    let n_conj = nf / (nf - 1.0);
    let mismatch = || Error::Unsupported(format!("case {case} does not apply to {}", space.label()));
    match (space, case) {
        (SpaceSpec::Lp(_), CaseTag::ClassicalPLeN) => SpaceSpec::lp(f64::INFINITY),
        (SpaceSpec::Lp(Exponent::Infinity), CaseTag::ClassicalPGtN) => SpaceSpec::lp(1.0),
        (SpaceSpec::Lp(Exponent::Finite(p)), CaseTag::ClassicalPGtN) if *p > nf => SpaceSpec::lp(p / (p - nf)),
        (SpaceSpec::Lorentz { w, p }, CaseTag::T1a) => {
            let inner = SpaceSpec::Lorentz { w: w.clone(), p: p / nf };
            Ok(SpaceSpec::KotheDualOf(Box::new(inner)))
        }
        (SpaceSpec::Lorentz { w, p }, CaseTag::T1b) => Ok(SpaceSpec::Marcinkiewicz { w: w.clone(), n: nf, p: *p }),
        (SpaceSpec::LorentzDual { w, .. } | SpaceSpec::LorentzPredual { w }, CaseTag::T2c) => t2c(w, n),
        (SpaceSpec::LorentzDual { .. }, CaseTag::T2a) => SpaceSpec::lp(f64::INFINITY),
        (SpaceSpec::LorentzDual { w, p }, CaseTag::T2b) if *p > 1.0 && *p < n_conj => {
            let pc = conjugate_exponent(Exponent::Finite(*p))?.finite().expect("p > 1");
            let weight = w.powered(n_conj / (n_conj - p))?;
            SpaceSpec::lorentz(weight, pc / (pc - nf))
        }
        _ => Err(mismatch()),
    }
}

fn t2c(w: &Weight, n: u32) -> Result<SpaceSpec> {
    SpaceSpec::lorentz(w.powered(f64::from(n))?, 1.0)
}

/// Predicted best constant of `inst`.
///
/// T1a values come from the level-function closed form of the dual Lorentz
/// norm; all other cases are explicit formulas.
pub fn predicted_constant(inst: &HolderInstance) -> Result<PredictedConstant> {
    let case = select_case(&inst.space, inst.n)?;
    predicted_constant_for_case(inst, case)
}

/// Evaluates the formula of `case` on `inst` even outside the case's
/// parameter range. Used to check that a wrong case is detected.
pub fn predicted_constant_for_case(inst: &HolderInstance, case: CaseTag) -> Result<PredictedConstant> {
    let space = case_space(&inst.space, inst.n, case)?;
    let alpha = inst.coefficients();
    let value = match &space {
        SpaceSpec::KotheDualOf(inner) => match inner.as_ref() {
            SpaceSpec::Lorentz { w, p } => lorentz_dual_level_norm(&alpha, w, *p)?,
            _ => unreachable!("only T1a yields a Köthe dual"),
        },
        other => norm(other, &alpha)?,
    };
    Ok(PredictedConstant { value, case, space })
}
