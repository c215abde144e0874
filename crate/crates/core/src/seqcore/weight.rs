use std::path::Path;

use crate::error::{invalid, Error, Result};

use super::FiniteVector;

/// A positive nonincreasing sequence with `w(1) = 1`, truncated to length `N`.
///
/// The limit conditions `w(k) -> 0` and `sum w(k) = inf` are asymptotic and
/// are deliberately not enforced.
#[derive(Debug, Clone, PartialEq)]
pub struct Weight(Vec<f64>);

impl Weight {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::Empty);
        }
        if values[0] != 1.0 {
            return Err(Error::WeightNotNormalized { found: values[0] });
        }
        for (i, &v) in values.iter().enumerate() {
            if !v.is_finite() || v <= 0.0 {
                return Err(Error::WeightNotPositive { index: i + 1, value: v });
            }
            if i > 0 && v > values[i - 1] {
                return Err(Error::WeightNotMonotone {
                    index: i + 1,
                    previous: values[i - 1],
                    value: v,
                });
            }
        }
        Ok(Weight(values))
    }

    /// The constant weight `w = 1`; `d(1, p)` is `l_p`.
    pub fn constant(n: usize) -> Self {
        assert!(n > 0);
        Weight(vec![1.0; n])
    }

    /// `w(k) = k^{q/p - 1}`, the weight of `l_{p,q}`.
    pub fn lpq(p: f64, q: f64, n: usize) -> Result<Self> {
        let seq = make_weight(WeightKind::Lpq { p, q }, n)?;
        seq.into_weight()
    }

    /// `w(k) = k^{-a}` for `a >= 0`.
    pub fn power_law(a: f64, n: usize) -> Result<Self> {
        if !(a >= 0.0) || !a.is_finite() {
            return Err(invalid("a", format!("decay exponent must be >= 0, got {a}")));
        }
        Weight::new((1..=n).map(|k| (k as f64).powf(-a)).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    /// `W(k) = w(1) + ... + w(k)` for `k = 1..=N`.
    pub fn partial_sums(&self) -> Vec<f64> {
        self.0
            .iter()
            .scan(0.0, |s, &v| {
                *s += v;
                Some(*s)
            })
            .collect()
    }

    /// Elementwise power `w^s`, again a weight for `s > 0`.
    pub fn powered(&self, s: f64) -> Result<Self> {
        make_weight(WeightKind::Power { w: self, s }, self.len())?.into_weight()
    }

    pub fn truncated(&self, n: usize) -> Result<Self> {
        if n == 0 || n > self.len() {
            return Err(Error::DimensionMismatch { got: n, max: self.len() });
        }
        Ok(Weight(self.0[..n].to_vec()))
    }
}

/// The derived sequences built from weights.
#[derive(Debug, Clone, Copy)]
pub enum WeightKind<'a> {
    /// `k^{q/p - 1}`, requires `p > q >= 1`.
    Lpq { p: f64, q: f64 },
    /// `w(k)^s`.
    Power { w: &'a Weight, s: f64 },
    /// `Psi(k) - Psi(k-1)` with `Psi(k) = (w(1) + ... + w(k))^{n/p}`.
    Breve { w: &'a Weight, n: f64, p: f64 },
    /// `(k w(k))^{n/p} / k`.
    Tilde { w: &'a Weight, n: f64, p: f64 },
}

/// A derived sequence and whether it is nonincreasing, i.e. whether it can
/// be promoted to a [`Weight`].
#[derive(Debug, Clone, PartialEq)]
pub struct DerivedSequence {
    pub values: FiniteVector,
    pub nonincreasing: bool,
}

impl DerivedSequence {
    fn from_values(values: Vec<f64>) -> Result<Self> {
        let nonincreasing = values.windows(2).all(|p| p[0] >= p[1]);
        Ok(DerivedSequence {
            values: FiniteVector::new(values)?,
            nonincreasing,
        })
    }

    pub fn into_weight(self) -> Result<Weight> {
        Weight::new(self.values.into_vec())
    }
}

fn check_positive(name: &'static str, v: f64) -> Result<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(invalid(name, format!("must be positive and finite, got {v}")))
    }
}

fn check_len(w: &Weight, n: usize) -> Result<()> {
    if n == 0 || n > w.len() {
        return Err(Error::DimensionMismatch { got: n, max: w.len() });
    }
    Ok(())
}

pub fn make_weight(kind: WeightKind<'_>, n: usize) -> Result<DerivedSequence> {
    if n == 0 {
        return Err(invalid("N", "length must be at least 1"));
    }
    let values = match kind {
        WeightKind::Lpq { p, q } => {
            if !(q >= 1.0 && p > q && p.is_finite()) {
                return Err(invalid("p,q", format!("need p > q >= 1, got p={p}, q={q}")));
            }
            let e = q / p - 1.0;
            (1..=n).map(|k| (k as f64).powf(e)).collect()
        }
        WeightKind::Power { w, s } => {
            check_positive("s", s)?;
            check_len(w, n)?;
            w.as_slice()[..n].iter().map(|v| v.powf(s)).collect()
        }
        WeightKind::Breve { w, n: deg, p } => {
            check_positive("n", deg)?;
            check_positive("p", p)?;
            check_len(w, n)?;
            let e = deg / p;
            let mut prev = 0.0;
            w.partial_sums()[..n]
                .iter()
                .map(|s| {
                    let psi = s.powf(e);
                    let d = psi - prev;
                    prev = psi;
                    d
                })
                .collect()
        }
        WeightKind::Tilde { w, n: deg, p } => {
            check_positive("n", deg)?;
            check_positive("p", p)?;
            check_len(w, n)?;
            let e = deg / p;
            w.as_slice()[..n]
                .iter()
                .enumerate()
                .map(|(i, v)| {
                    let k = (i + 1) as f64;
                    (k * v).powf(e) / k
                })
                .collect()
        }
    };
    DerivedSequence::from_values(values)
}

/// One positive decimal per line; the first line must be exactly 1.
pub fn parse_weight_text(text: &str, path: &Path) -> Result<Weight> {
    let mut values = Vec::new();
    let mut lines = Vec::new();
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
        lines.push(i + 1);
    }
    Weight::new(values).map_err(|e| {
        let (line, message) = match &e {
            Error::WeightNotNormalized { .. } => (lines.first().copied().unwrap_or(1), e.to_string()),
            Error::WeightNotPositive { index, .. } | Error::WeightNotMonotone { index, .. } => {
                (lines[index - 1], e.to_string())
            }
            _ => (1, e.to_string()),
        };
        Error::FileFormat {
            path: path.to_path_buf(),
            line,
            message,
        }
    })
}

pub fn read_weight_file(path: impl AsRef<Path>) -> Result<Weight> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_weight_text(&text, path)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(v: &[f64]) -> Weight {
        Weight::new(v.to_vec()).unwrap()
    }

    #[test]
    fn weight_invariants() {
        assert!(matches!(Weight::new(vec![0.5]), Err(Error::WeightNotNormalized { .. })));
        assert!(matches!(
            Weight::new(vec![1.0, 0.5, 0.7]),
            Err(Error::WeightNotMonotone { index: 3, .. })
        ));
        assert!(matches!(
            Weight::new(vec![1.0, 0.0]),
            Err(Error::WeightNotPositive { index: 2, .. })
        ));
        assert_eq!(w(&[1.0, 0.5, 0.25]).partial_sums(), vec![1.0, 1.5, 1.75]);
    }

    #[test]
    fn lpq_example() {
        let seq = make_weight(WeightKind::Lpq { p: 4.0, q: 2.0 }, 3).unwrap();
        let expect = [1.0, 2f64.powf(-0.5), 3f64.powf(-0.5)];
        for (a, b) in seq.values.iter().zip(expect) {
            assert!((a - b).abs() < 1e-15);
        }
        assert!(seq.nonincreasing);
        assert!(make_weight(WeightKind::Lpq { p: 2.0, q: 2.0 }, 3).is_err());
        assert!(make_weight(WeightKind::Lpq { p: 3.0, q: 0.5 }, 3).is_err());
    }

    #[test]
    fn breve_example_is_not_monotone() {
        let base = w(&[1.0, 0.5]);
        let seq = make_weight(WeightKind::Breve { w: &base, n: 2.0, p: 1.0 }, 2).unwrap();
        assert_eq!(seq.values.as_slice(), &[1.0, 1.25]);
        assert!(!seq.nonincreasing);
        assert!(seq.into_weight().is_err());
    }

    #[test]
    fn power_example() {
        let base = w(&[1.0, 0.5]);
        let seq = make_weight(WeightKind::Power { w: &base, s: 2.0 }, 2).unwrap();
        assert_eq!(seq.values.as_slice(), &[1.0, 0.25]);
        assert!(make_weight(WeightKind::Power { w: &base, s: 0.0 }, 2).is_err());
        assert!(make_weight(WeightKind::Power { w: &base, s: 1.0 }, 3).is_err());
    }

    #[test]
    fn tilde_of_lpq_is_lpq_with_shifted_exponent() {
        // For w(k) = k^{q/p-1}: (k w(k))^{n/q} / k = k^{n/p - 1}.
        let (p, q, n) = (4.0, 2.0, 3.0);
        let base = Weight::lpq(p, q, 50).unwrap();
        let seq = make_weight(WeightKind::Tilde { w: &base, n, p: q }, 50).unwrap();
        for (k, v) in seq.values.iter().enumerate() {
            let expect = ((k + 1) as f64).powf(n / p - 1.0);
            assert!((v - expect).abs() < 1e-12 * expect.max(1.0));
        }
        assert!(seq.nonincreasing);
    }

    #[test]
    fn weight_file_reports_first_violation() {
        let p = Path::new("w.txt");
        let good = parse_weight_text("1\n0.5\n0.5\n0.25\n", p).unwrap();
        assert_eq!(good.len(), 4);
        match parse_weight_text("1.0\n0.5\n\n0.6\n0.7\n", p) {
            Err(Error::FileFormat { line, message, .. }) => {
                assert_eq!(line, 4);
                assert!(message.contains("index 3"), "{message}");
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(
            parse_weight_text("0.9\n0.5\n", p),
            Err(Error::FileFormat { line: 1, .. })
        ));
        assert!(matches!(
            parse_weight_text("1\n-0.5\n", p),
            Err(Error::FileFormat { line: 2, .. })
        ));
    }
}
