//! Stable softmax and token-level cross-entropy.

use alloc::vec;
use alloc::vec::Vec;

use super::NeuralError;
use crate::float;

/// Max-subtracted softmax. Entries are positive and sum to 1.
pub fn softmax(scores: &[f64]) -> Vec<f64> {
    let max = scores.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let mut out: Vec<f64> = scores.iter().map(|&s| float::exp(s - max)).collect();
    let sum: f64 = out.iter().sum();
    for v in &mut out {
        *v /= sum;
    }
    out
}

/// Negative log-likelihood of `target` under `probs`, plus the gradient of
/// the loss w.r.t. the pre-softmax scores (`probs - one_hot(target)`).
pub fn cross_entropy(probs: &[f64], target: usize) -> Result<(f64, Vec<f64>), NeuralError> {
    if target >= probs.len() {
        return Err(NeuralError::Bounds {
            index: target,
            size: probs.len(),
        });
    }
    let loss = -float::ln(probs[target].max(f64::MIN_POSITIVE));
    let mut grad = probs.to_vec();
    grad[target] -= 1.0;
    Ok((loss, grad))
}

/// Vector of length `size` with 1.0 at `index`.
pub fn one_hot(index: usize, size: usize) -> Result<Vec<f64>, NeuralError> {
    if index >= size {
        return Err(NeuralError::Bounds { index, size });
    }
    let mut v = vec![0.0; size];
    v[index] = 1.0;
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn softmax_of_zeros_is_uniform() {
        assert_eq!(softmax(&[0.0; 4]), vec![0.25, 0.25, 0.25, 0.25]);
    }

    #[test]
    fn softmax_is_overflow_safe() {
        let p = softmax(&[1000.0, 0.0]);
        assert!((p[0] - 1.0).abs() < 1e-12);
        assert!(p[1] >= 0.0 && p[1] < 1e-12);
        assert!(p.iter().all(|v| v.is_finite()));
    }

    #[test]
    fn softmax_hand_value() {
        let p = softmax(&[2.0_f64.ln(), 0.0]);
        assert!((p[0] - 2.0 / 3.0).abs() < 1e-12);
        assert!((p[1] - 1.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn softmax_shift_invariance() {
        let s = [0.3, -1.2, 4.0, 0.0];
        let shifted: Vec<f64> = s.iter().map(|v| v + 123.456).collect();
        let a = softmax(&s);
        let b = softmax(&shifted);
        for (x, y) in a.iter().zip(&b) {
            assert!((x - y).abs() < 1e-12);
        }
    }

    #[test]
    fn cross_entropy_uniform_is_ln_v() {
        let probs = vec![1.0 / 75.0; 75];
        let (loss, _) = cross_entropy(&probs, 3).unwrap();
        assert!((loss - 75.0_f64.ln()).abs() < 1e-12);
        assert!((loss - 4.317_488_113_536_342).abs() < 1e-9);
    }

    #[test]
    fn cross_entropy_certain_is_zero() {
        let (loss, grad) = cross_entropy(&[0.0, 1.0, 0.0], 1).unwrap();
        assert_eq!(loss, 0.0);
        assert_eq!(grad, vec![0.0, 0.0, 0.0]);
    }

    #[test]
    fn cross_entropy_bounds() {
        assert!(cross_entropy(&[1.0], 1).is_err());
    }

    #[test]
    fn one_hot_basics() {
        assert_eq!(one_hot(3, 6).unwrap(), vec![0.0, 0.0, 0.0, 1.0, 0.0, 0.0]);
        assert_eq!(one_hot(0, 1).unwrap(), vec![1.0]);
        assert!(one_hot(6, 6).is_err());
    }
}
