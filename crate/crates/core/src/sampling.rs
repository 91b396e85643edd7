//! Shared categorical and Dirichlet sampling primitives.

use rand::Rng;
use rand_distr::{Distribution, Gamma};

use crate::stream::RandomStream;

/// One categorical draw proportional to `weights`. Entries with zero weight
/// are never selected. Returns `None` when no weight is positive.
pub(crate) fn categorical(weights: &[f64], stream: &mut RandomStream) -> Option<usize> {
    let total: f64 = weights.iter().filter(|w| **w > 0.0).sum();
    if !(total > 0.0) {
        return None;
    }
    let u = stream.random::<f64>() * total;
    let mut acc = 0.0;
    let mut last = None;
    for (i, &w) in weights.iter().enumerate() {
        if w > 0.0 {
            acc += w;
            last = Some(i);
            if u < acc {
                return Some(i);
            }
        }
    }
    // u == total can be reached through rounding; the last positive entry
    // owns the closing boundary.
    last
}

/// Draw from a Dirichlet whose concentration vector may contain zeros.
///
/// Zero-concentration entries are excluded from the support and receive
/// exactly 0.0 mass. Returns `None` when every entry is zero.
///
/// Concentrations small enough that every gamma variate underflows to zero
/// degenerate to uniform mass over the support, which preserves the
/// small-concentration categorical marginal.
pub(crate) fn dirichlet_masked(concentration: &[f64], stream: &mut RandomStream) -> Option<Vec<f64>> {
    let support: usize = concentration.iter().filter(|c| **c > 0.0).count();
    if support == 0 {
        return None;
    }
    let mut mass = vec![0.0; concentration.len()];
    let mut sum = 0.0;
    for (slot, &c) in mass.iter_mut().zip(concentration) {
        if c > 0.0 {
            let g = Gamma::new(c, 1.0).expect("positive shape").sample(stream);
            *slot = g;
            sum += g;
        }
    }
    if sum > 0.0 {
        for slot in &mut mass {
            *slot /= sum;
        }
    } else {
        let uniform = 1.0 / support as f64;
        for (slot, &c) in mass.iter_mut().zip(concentration) {
            if c > 0.0 {
                *slot = uniform;
            }
        }
    }
    Some(mass)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn categorical_skips_zero_weights() {
        let mut s = RandomStream::labeling(1);
        for _ in 0..10_000 {
            let i = categorical(&[0.0, 1.0, 0.0, 2.0], &mut s).unwrap();
            assert!(i == 1 || i == 3);
        }
    }

    #[test]
    fn categorical_rejects_all_zero() {
        let mut s = RandomStream::labeling(2);
        assert_eq!(categorical(&[0.0, 0.0], &mut s), None);
    }

    #[test]
    fn categorical_matches_weights() {
        let mut s = RandomStream::labeling(3);
        let weights = [1.0, 3.0];
        let n = 100_000;
        let hits = (0..n)
            .filter(|_| categorical(&weights, &mut s).unwrap() == 1)
            .count();
        let freq = hits as f64 / n as f64;
        assert!((freq - 0.75).abs() < 0.01, "freq {freq}");
    }

    #[test]
    fn dirichlet_simplex_and_support() {
        let mut s = RandomStream::labeling(4);
        for _ in 0..1000 {
            let m = dirichlet_masked(&[2.0, 0.0, 0.5, 1.0], &mut s).unwrap();
            assert_eq!(m[1], 0.0);
            let total: f64 = m.iter().sum();
            assert!((total - 1.0).abs() < 1e-9);
            assert!(m.iter().all(|v| *v >= 0.0));
        }
    }

    #[test]
    fn dirichlet_all_zero_is_none() {
        let mut s = RandomStream::labeling(5);
        assert_eq!(dirichlet_masked(&[0.0, 0.0], &mut s), None);
    }

    #[test]
    fn dirichlet_underflow_degenerates_to_uniform_support() {
        // Shapes this small underflow every gamma draw to zero.
        let mut s = RandomStream::labeling(6);
        let m = dirichlet_masked(&[1e-300, 0.0, 1e-300], &mut s).unwrap();
        assert_eq!(m, vec![0.5, 0.0, 0.5]);
    }
}
