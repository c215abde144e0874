use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};

/// An exponent in `(0, inf]`, with infinity kept out of float arithmetic.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Exponent {
    Finite(f64),
    Infinity,
}

impl Exponent {
    pub fn new(p: f64) -> Result<Self> {
        if p.is_nan() || p <= 0.0 {
            return Err(invalid("p", format!("exponent must be positive, got {p}")));
        }
        if p.is_infinite() {
            return Ok(Exponent::Infinity);
        }
        Ok(Exponent::Finite(p))
    }

    pub fn finite(self) -> Option<f64> {
        match self {
            Exponent::Finite(p) => Some(p),
            Exponent::Infinity => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, Exponent::Infinity)
    }

    /// `1/p`, which is `0` at infinity.
    pub fn reciprocal(self) -> f64 {
        match self {
            Exponent::Finite(p) => 1.0 / p,
            Exponent::Infinity => 0.0,
        }
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Exponent::Finite(p) => write!(f, "{p}"),
            Exponent::Infinity => f.write_str("inf"),
        }
    }
}

impl FromStr for Exponent {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if matches!(t, "inf" | "infinity" | "∞") {
            return Ok(Exponent::Infinity);
        }
        let p: f64 = t.parse().map_err(|_| Error::Parse {
            offset: 0,
            message: format!("not an exponent: `{t}`"),
        })?;
        Exponent::new(p)
    }
}

/// The conjugate exponent `p'` with `1/p + 1/p' = 1`.
pub fn conjugate_exponent(p: Exponent) -> Result<Exponent> {
    match p {
        Exponent::Infinity => Ok(Exponent::Finite(1.0)),
        Exponent::Finite(p) if p < 1.0 => Err(invalid("p", format!("conjugate needs p >= 1, got {p}"))),
        Exponent::Finite(1.0) => Ok(Exponent::Infinity),
        Exponent::Finite(p) => Ok(Exponent::Finite(p / (p - 1.0))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn examples() {
        assert_eq!(conjugate_exponent(Exponent::Finite(2.0)).unwrap(), Exponent::Finite(2.0));
        assert_eq!(conjugate_exponent(Exponent::Finite(1.0)).unwrap(), Exponent::Infinity);
        assert_eq!(conjugate_exponent(Exponent::Infinity).unwrap(), Exponent::Finite(1.0));
        let q = conjugate_exponent(Exponent::Finite(4.0)).unwrap().finite().unwrap();
        assert!((q - 4.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn rejects_below_one() {
        assert!(conjugate_exponent(Exponent::Finite(0.5)).is_err());
        assert!(Exponent::new(-1.0).is_err());
        assert!(Exponent::new(f64::NAN).is_err());
    }

    #[test]
    fn parses() {
        assert_eq!("inf".parse::<Exponent>().unwrap(), Exponent::Infinity);
        assert_eq!("1.5".parse::<Exponent>().unwrap(), Exponent::Finite(1.5));
        assert!("x".parse::<Exponent>().is_err());
    }

    proptest! {
        #[test]
        // For large p the conjugate sits a few ulps above 1, which caps the
        // round-trip accuracy near p * f64::EPSILON.
        fn conjugation_is_an_involution(p in 1.0001f64..1e3) {
            let back = conjugate_exponent(conjugate_exponent(Exponent::Finite(p)).unwrap()).unwrap();
            let back = back.finite().unwrap();
            prop_assert!((back - p).abs() <= 1e-12 * p);
        }
    }
}
