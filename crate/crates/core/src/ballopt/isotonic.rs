use crate::seqcore::FiniteVector;

/// Weighted least-squares projection of `values` onto nonincreasing
/// sequences (pool-adjacent-violators). `weights` must be positive and at
/// least as long as `values`.
pub fn pava_decreasing(values: &[f64], weights: &[f64]) -> Vec<f64> {
    // (weighted sum, total weight, block length)
    let mut blocks: Vec<(f64, f64, usize)> = Vec::with_capacity(values.len());
    for (&v, &w) in values.iter().zip(weights) {
        blocks.push((w * v, w, 1));
        while blocks.len() >= 2 {
            let (s1, w1, l1) = blocks[blocks.len() - 2];
            let (s2, w2, l2) = blocks[blocks.len() - 1];
            if s1 * w2 >= s2 * w1 {
                break;
            }
            blocks.pop();
            *blocks.last_mut().unwrap() = (s1 + s2, w1 + w2, l1 + l2);
        }
    }
    let mut out = Vec::with_capacity(values.len());
    for (s, w, l) in blocks {
        let mean = s / w;
        out.resize(out.len() + l, mean);
    }
    out
}

/// Euclidean projection onto nonincreasing vectors, then negatives clamped to 0.
pub fn isotonic_projection(v: &FiniteVector) -> FiniteVector {
    let mut out = v.as_slice().to_vec();
    project_cone(&mut out);
    FiniteVector::new(out).expect("projection of a finite vector is finite")
}

pub(crate) fn project_cone(v: &mut [f64]) {
    let sorted = v.windows(2).all(|p| p[0] >= p[1]);
    if !sorted {
        let ones = vec![1.0; v.len()];
        let p = pava_decreasing(v, &ones);
        v.copy_from_slice(&p);
    }
    for x in v.iter_mut() {
        if *x < 0.0 {
            *x = 0.0;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn proj(v: &[f64]) -> Vec<f64> {
        isotonic_projection(&FiniteVector::new(v.to_vec()).unwrap()).into_vec()
    }

    #[test]
    fn small_cases() {
        assert_eq!(proj(&[1.0, 2.0]), vec![1.5, 1.5]);
        assert_eq!(proj(&[3.0, 1.0, 2.0]), vec![3.0, 1.5, 1.5]);
        assert_eq!(proj(&[3.0, 2.0, 1.0]), vec![3.0, 2.0, 1.0]);
        assert_eq!(proj(&[1.0, -3.0]), vec![1.0, 0.0]);
    }

    #[test]
    fn matches_qp_by_enumeration() {
        // Minimize |y - v|^2 over nonincreasing y on a fine grid at N = 3.
        let v = [0.3, 0.9, -0.2];
        let p = pava_decreasing(&v, &[1.0; 3]);
        let steps = 120;
        let grid = |i: usize| -1.0 + 2.0 * i as f64 / steps as f64;
        let mut best = f64::INFINITY;
        for i in 0..=steps {
            for j in 0..=i {
                for k in 0..=j {
                    let y = [grid(i), grid(j), grid(k)];
                    let d: f64 = y.iter().zip(&v).map(|(a, b)| (a - b).powi(2)).sum();
                    best = best.min(d);
                }
            }
        }
        let dp: f64 = p.iter().zip(&v).map(|(a, b)| (a - b).powi(2)).sum();
        assert!(dp <= best + 1e-12);
        assert!(best - dp < 1e-3);
    }

    #[test]
    fn weighted_pool() {
        let h = pava_decreasing(&[1.0, 2.0], &[1.0, 0.5]);
        assert!((h[0] - 4.0 / 3.0).abs() < 1e-15 && h[0] == h[1]);
    }

    proptest! {
        #[test]
        fn output_nonincreasing_and_nonexpansive(
            a in prop::collection::vec(-10.0f64..10.0, 1..20),
            b in prop::collection::vec(-10.0f64..10.0, 1..20),
        ) {
            let n = a.len().min(b.len());
            let (a, b) = (&a[..n], &b[..n]);
            let pa = pava_decreasing(a, &vec![1.0; n]);
            let pb = pava_decreasing(b, &vec![1.0; n]);
            prop_assert!(pa.windows(2).all(|w| w[0] >= w[1]));
            let d = |x: &[f64], y: &[f64]| x.iter().zip(y).map(|(u, v)| (u - v).powi(2)).sum::<f64>().sqrt();
            prop_assert!(d(&pa, &pb) <= d(a, b) + 1e-9);
            let clamped = proj(a);
            prop_assert!(clamped.windows(2).all(|w| w[0] >= w[1]));
            prop_assert!(clamped.iter().all(|&x| x >= 0.0));
        }
    }
}
