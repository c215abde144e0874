use std::ops::Deref;
use std::path::Path;

use crate::error::{Error, Result};

/// A finite real sequence `x(1), ..., x(N)` with `N >= 1` and finite entries.
#[derive(Debug, Clone, PartialEq)]
pub struct FiniteVector(Vec<f64>);

impl FiniteVector {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::Empty);
        }
        if let Some((index, &value)) = values.iter().enumerate().find(|(_, v)| !v.is_finite()) {
            return Err(Error::NonFinite { index: index + 1, value });
        }
        Ok(FiniteVector(values))
    }

    /// The unit vector `e_k` (1-based) of length `n`.
    pub fn basis(k: usize, n: usize) -> Result<Self> {
        if k == 0 || k > n {
            return Err(crate::error::invalid("k", format!("basis index {k} outside 1..={n}")));
        }
        let mut v = vec![0.0; n];
        v[k - 1] = 1.0;
        Ok(FiniteVector(v))
    }

    /// The indicator `1_N = e_1 + ... + e_N`.
    pub fn ones(n: usize) -> Self {
        assert!(n > 0, "FiniteVector::ones needs n >= 1");
        FiniteVector(vec![1.0; n])
    }

    pub fn zeros(n: usize) -> Self {
        assert!(n > 0, "FiniteVector::zeros needs n >= 1");
        FiniteVector(vec![0.0; n])
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.0
    }

    pub fn scaled(&self, t: f64) -> Self {
        FiniteVector(self.0.iter().map(|v| v * t).collect())
    }

    /// First `n` entries, padded with zeros when the vector is shorter.
    pub fn truncated(&self, n: usize) -> Self {
        let mut v: Vec<f64> = self.0.iter().copied().take(n).collect();
        v.resize(n.max(1), 0.0);
        FiniteVector(v)
    }
}

impl Deref for FiniteVector {
    type Target = [f64];

    fn deref(&self) -> &[f64] {
        &self.0
    }
}

impl AsRef<[f64]> for FiniteVector {
    fn as_ref(&self) -> &[f64] {
        &self.0
    }
}

impl TryFrom<Vec<f64>> for FiniteVector {
    type Error = Error;

    fn try_from(v: Vec<f64>) -> Result<Self> {
        FiniteVector::new(v)
    }
}

/// Moduli sorted nonincreasing. Stable, so ties keep their input order.
pub fn rearranged(x: &[f64]) -> Vec<f64> {
    let mut v: Vec<f64> = x.iter().map(|t| t.abs()).collect();
    v.sort_by(|a, b| b.total_cmp(a));
    v
}

pub fn decreasing_rearrangement(x: &FiniteVector) -> FiniteVector {
    FiniteVector(rearranged(x))
}

/// Newline-separated decimals; blank lines and `#` comments are skipped.
pub fn parse_vector_text(text: &str, path: &Path) -> Result<FiniteVector> {
    let mut values = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let t = line.split('#').next().unwrap_or("").trim();
        if t.is_empty() {
            continue;
        }
        let v: f64 = t.parse().map_err(|_| Error::FileFormat {
            path: path.to_path_buf(),
            line: i + 1,
            message: format!("not a decimal number: `{t}`"),
        })?;
        values.push(v);
    }
    FiniteVector::new(values)
}

pub fn read_vector_file(path: impl AsRef<Path>) -> Result<FiniteVector> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_vector_text(&text, path)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn fv(v: &[f64]) -> FiniteVector {
        FiniteVector::new(v.to_vec()).unwrap()
    }

    #[test]
    fn rearrangement_examples() {
        assert_eq!(decreasing_rearrangement(&fv(&[1.0, -3.0, 2.0])).as_slice(), &[3.0, 2.0, 1.0]);
        assert_eq!(decreasing_rearrangement(&fv(&[0.0, 0.0, 0.0])).as_slice(), &[0.0, 0.0, 0.0]);
        assert_eq!(decreasing_rearrangement(&fv(&[5.0])).as_slice(), &[5.0]);
    }

    #[test]
    fn rejects_bad_vectors() {
        assert!(matches!(FiniteVector::new(vec![]), Err(Error::Empty)));
        assert!(matches!(
            FiniteVector::new(vec![1.0, f64::NAN]),
            Err(Error::NonFinite { index: 2, .. })
        ));
        assert!(FiniteVector::basis(0, 3).is_err());
        assert_eq!(FiniteVector::basis(2, 3).unwrap().as_slice(), &[0.0, 1.0, 0.0]);
    }

    #[test]
    fn vector_text() {
        let v = parse_vector_text("1\n-2.5\n\n# comment\n3e-1\n", Path::new("x")).unwrap();
        assert_eq!(v.as_slice(), &[1.0, -2.5, 0.3]);
        let err = parse_vector_text("1\nabc\n", Path::new("x")).unwrap_err();
        assert!(matches!(err, Error::FileFormat { line: 2, .. }));
    }

    proptest! {
        #[test]
        fn rearrangement_is_idempotent_and_preserves_moduli(v in prop::collection::vec(-1e3f64..1e3, 1..40)) {
            let once = rearranged(&v);
            prop_assert_eq!(&rearranged(&once), &once);
            let mut moduli: Vec<f64> = v.iter().map(|t| t.abs()).collect();
            moduli.sort_by(|a, b| b.partial_cmp(a).unwrap());
            prop_assert_eq!(once, moduli);
        }
    }
}
