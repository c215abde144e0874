use crate::error::{invalid, Result};
use crate::seqcore::{rearranged, FiniteVector, Weight};

/// A positively homogeneous objective on nonnegative nonincreasing vectors.
pub trait Objective: Sync {
    /// Degree of homogeneity.
    fn degree(&self) -> f64;
    /// Number of leading coordinates the objective depends on.
    fn support(&self) -> usize;
    /// Value at `x`, a nonnegative nonincreasing vector of length `support()`.
    fn value(&self, x: &[f64]) -> f64;
    fn gradient(&self, x: &[f64], g: &mut [f64]);
    /// Coefficients and exponent when the objective is a diagonal monomial.
    fn monomial(&self) -> Option<(&[f64], u32)> {
        None
    }
}

/// `x -> sum_k c(k) x(k)^m` with `c` nonnegative and nonincreasing.
#[derive(Debug, Clone, PartialEq)]
pub struct MonomialObjective {
    c: FiniteVector,
    m: u32,
    support: usize,
}

impl MonomialObjective {
    pub fn new(c: FiniteVector, m: u32) -> Result<Self> {
        if m == 0 {
            return Err(invalid("m", "exponent must be >= 1"));
        }
        if c.iter().any(|&v| v < 0.0) {
            return Err(invalid("c", "coefficients must be nonnegative"));
        }
        if let Some(k) = c.windows(2).position(|p| p[0] < p[1]) {
            return Err(invalid("c", format!("coefficients must be nonincreasing (index {})", k + 2)));
        }
        let support = c.iter().rposition(|&v| v > 0.0).map_or(0, |k| k + 1);
        Ok(MonomialObjective { c, m, support })
    }

    /// Objective with the decreasing rearrangement of `|alpha|` as coefficients.
    pub fn rearranged(alpha: &[f64], m: u32) -> Result<Self> {
        MonomialObjective::new(FiniteVector::new(rearranged(alpha))?, m)
    }

    pub fn coefficients(&self) -> &FiniteVector {
        &self.c
    }

    pub fn exponent(&self) -> u32 {
        self.m
    }

    pub fn len(&self) -> usize {
        self.c.len()
    }

    pub fn is_empty(&self) -> bool {
        self.c.is_empty()
    }

    pub fn scaled(&self, t: f64) -> Result<Self> {
        MonomialObjective::new(self.c.scaled(t), self.m)
    }

    /// Value at an arbitrary vector, `sum c(k) |x(k)|^m`.
    pub fn evaluate(&self, x: &[f64]) -> f64 {
        self.c.iter().zip(x).map(|(c, v)| c * v.abs().powi(self.m as i32)).sum()
    }
}

impl Objective for MonomialObjective {
    fn degree(&self) -> f64 {
        f64::from(self.m)
    }

    fn support(&self) -> usize {
        self.support
    }

    fn value(&self, x: &[f64]) -> f64 {
        self.evaluate(x)
    }

    fn gradient(&self, x: &[f64], g: &mut [f64]) {
        let m = self.m as i32;
        for ((gk, c), v) in g.iter_mut().zip(self.c.iter()).zip(x) {
            *gk = c * f64::from(self.m) * v.powi(m - 1);
        }
    }

    fn monomial(&self) -> Option<(&[f64], u32)> {
        Some((&self.c[..self.support], self.m))
    }
}

/// `x -> || (sigma(k) x(k))_k ||_{d(w,p)}` with `sigma` nonnegative and
/// nonincreasing, so that the image of a decreasing `x` is decreasing.
#[derive(Debug, Clone)]
pub struct WeightedImageObjective {
    sigma: Vec<f64>,
    w: Vec<f64>,
    p: f64,
    support: usize,
}

impl WeightedImageObjective {
    pub fn new(sigma: &[f64], w: &Weight, p: f64) -> Result<Self> {
        if !(p >= 1.0 && p.is_finite()) {
            return Err(invalid("p", format!("need 1 <= p < inf, got {p}")));
        }
        let sigma = rearranged(sigma);
        if sigma.len() > w.len() {
            return Err(crate::error::Error::DimensionMismatch { got: sigma.len(), max: w.len() });
        }
        let support = sigma.iter().rposition(|&v| v > 0.0).map_or(0, |k| k + 1);
        Ok(WeightedImageObjective { sigma, w: w.as_slice().to_vec(), p, support })
    }
}

impl Objective for WeightedImageObjective {
    fn degree(&self) -> f64 {
        1.0
    }

    fn support(&self) -> usize {
        self.support
    }

    fn value(&self, x: &[f64]) -> f64 {
        let s: f64 = x
            .iter()
            .zip(&self.sigma)
            .zip(&self.w)
            .map(|((x, s), w)| w * (s * x).powf(self.p))
            .sum();
        s.powf(1.0 / self.p)
    }

    fn gradient(&self, x: &[f64], g: &mut [f64]) {
        let v = self.value(x);
        if v == 0.0 {
            g.iter_mut().zip(&self.sigma).for_each(|(gk, s)| *gk = *s);
            return;
        }
        let scale = v.powf(1.0 - self.p);
        for (k, gk) in g.iter_mut().enumerate() {
            *gk = scale * self.w[k] * (self.sigma[k] * x[k]).powf(self.p - 1.0) * self.sigma[k];
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation_and_support() {
        let c = FiniteVector::new(vec![2.0, 1.0, 0.0]).unwrap();
        let obj = MonomialObjective::new(c, 2).unwrap();
        assert_eq!(obj.support(), 2);
        assert_eq!(obj.evaluate(&[1.0, -2.0, 5.0]), 2.0 + 4.0);
        assert!(MonomialObjective::new(FiniteVector::new(vec![1.0, 2.0]).unwrap(), 1).is_err());
        assert!(MonomialObjective::new(FiniteVector::new(vec![1.0]).unwrap(), 0).is_err());
        let r = MonomialObjective::rearranged(&[-1.0, 3.0], 1).unwrap();
        assert_eq!(r.coefficients().as_slice(), &[3.0, 1.0]);
    }

    #[test]
    fn gradients_match_finite_differences() {
        let obj = MonomialObjective::new(FiniteVector::new(vec![3.0, 2.0, 1.0]).unwrap(), 3).unwrap();
        let w = Weight::new(vec![1.0, 0.6, 0.3]).unwrap();
        let img = WeightedImageObjective::new(&[1.0, 0.8, 0.5], &w, 1.5).unwrap();
        let x = [0.9, 0.5, 0.2];
        for f in [&obj as &dyn Objective, &img] {
            let mut g = [0.0; 3];
            f.gradient(&x, &mut g);
            for k in 0..3 {
                let h = 1e-6;
                let mut a = x;
                let mut b = x;
                a[k] += h;
                b[k] -= h;
                let fd = (f.value(&a) - f.value(&b)) / (2.0 * h);
                assert!((fd - g[k]).abs() < 1e-6, "k={k}: {fd} vs {}", g[k]);
            }
        }
    }
}
