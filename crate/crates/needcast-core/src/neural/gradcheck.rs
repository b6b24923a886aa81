//! Central finite-difference gradient checking for any [`TensorSet`] model.

use alloc::string::{String, ToString};
use alloc::vec::Vec;

use super::TensorSet;
use crate::float;

/// Floor in the relative-error denominator; below this magnitude central
/// differences are dominated by cancellation noise.
const DENOM_FLOOR: f64 = 1e-6;

#[derive(Debug, Clone)]
pub struct GradCheckReport {
    pub max_rel_error: f64,
    pub worst_tensor: String,
    pub worst_index: usize,
    pub checked: usize,
}

impl GradCheckReport {
    pub fn passes(&self, tolerance: f64) -> bool {
        self.max_rel_error < tolerance
    }
}

/// Compare `analytic` gradients against central differences of `loss`.
///
/// Every element of every tensor is perturbed by ±epsilon. The loss closure
/// must be a pure function of the parameters (fix any randomness before
/// calling). Relative error per element is
/// `|analytic - numeric| / max(|analytic|, |numeric|, 1e-6)`.
pub fn check_gradients<T, F>(
    params: &mut T,
    analytic: &T,
    epsilon: f64,
    mut loss: F,
) -> GradCheckReport
where
    T: TensorSet,
    F: FnMut(&T) -> f64,
{
    let shapes: Vec<(String, usize)> = params
        .tensors()
        .iter()
        .map(|(name, t)| (name.to_string(), t.len()))
        .collect();

    let mut report = GradCheckReport {
        max_rel_error: 0.0,
        worst_tensor: String::new(),
        worst_index: 0,
        checked: 0,
    };

    for (ti, (name, len)) in shapes.iter().enumerate() {
        for ei in 0..*len {
            let original = params.tensors()[ti].1[ei];
            {
                let mut ts = params.tensors_mut();
                ts[ti].1[ei] = original + epsilon;
            }
            let loss_plus = loss(params);
            {
                let mut ts = params.tensors_mut();
                ts[ti].1[ei] = original - epsilon;
            }
            let loss_minus = loss(params);
            {
                let mut ts = params.tensors_mut();
                ts[ti].1[ei] = original;
            }
            let numeric = (loss_plus - loss_minus) / (2.0 * epsilon);
            let exact = analytic.tensors()[ti].1[ei];
            let denom = float::abs(exact).max(float::abs(numeric)).max(DENOM_FLOOR);
            let rel = float::abs(exact - numeric) / denom;
            report.checked += 1;
            if rel > report.max_rel_error {
                report.max_rel_error = rel;
                report.worst_tensor = name.clone();
                report.worst_index = ei;
            }
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::neural::lstm::{lstm_backward, lstm_forward, LstmParams, LstmState};
    use alloc::vec;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn sequence_loss(p: &LstmParams, inputs: &[Vec<f64>]) -> f64 {
        // Loss = sum over steps of sum(h_t^2): exercises every path
        // including the peepholes and state recurrence.
        let mut state = LstmState::zeros(p.hidden_dim);
        let mut total = 0.0;
        for x in inputs {
            let (s, _) = lstm_forward(p, x, &state).unwrap();
            total += s.h.iter().map(|v| v * v).sum::<f64>();
            state = s;
        }
        total
    }

    #[test]
    fn bptt_matches_finite_differences_on_hidden8_length5() {
        let mut rng = ChaCha8Rng::seed_from_u64(424_242);
        let mut params = LstmParams::init(4, 8, 0.4, &mut rng);
        let inputs: Vec<Vec<f64>> = (0..5)
            .map(|_| (0..4).map(|_| rng.gen_range(-1.0..1.0)).collect())
            .collect();

        // Analytic gradients of the same loss.
        let mut state = LstmState::zeros(8);
        let mut caches = Vec::new();
        let mut dh_steps = Vec::new();
        for x in &inputs {
            let (s, cache) = lstm_forward(&params, x, &state).unwrap();
            dh_steps.push(s.h.iter().map(|v| 2.0 * v).collect::<Vec<f64>>());
            caches.push(cache);
            state = s;
        }
        let analytic = lstm_backward(&params, &caches, &dh_steps, None)
            .unwrap()
            .params;

        let report = check_gradients(&mut params, &analytic, 1e-5, |p| {
            sequence_loss(p, &inputs)
        });
        assert!(
            report.passes(1e-4),
            "max rel err {} at {}[{}]",
            report.max_rel_error,
            report.worst_tensor,
            report.worst_index
        );
        assert_eq!(report.checked, 4 * 8 * 4 + 8 * 8 * 4 + 8 * 3 + 8 * 4);
    }

    #[test]
    fn initial_state_gradients_match_finite_differences() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let params = LstmParams::init(2, 3, 0.5, &mut rng);
        let inputs: Vec<Vec<f64>> = (0..3)
            .map(|_| (0..2).map(|_| rng.gen_range(-1.0..1.0)).collect())
            .collect();
        let h0: Vec<f64> = (0..3).map(|_| rng.gen_range(-0.5..0.5)).collect();
        let c0: Vec<f64> = (0..3).map(|_| rng.gen_range(-0.5..0.5)).collect();

        let run = |h0: &[f64], c0: &[f64]| {
            let mut state = LstmState {
                h: h0.to_vec(),
                c: c0.to_vec(),
            };
            let mut caches = Vec::new();
            let mut dh_steps = Vec::new();
            for x in &inputs {
                let (s, cache) = lstm_forward(&params, x, &state).unwrap();
                dh_steps.push(s.h.iter().map(|v| 2.0 * v).collect::<Vec<f64>>());
                caches.push(cache);
                state = s;
            }
            let loss: f64 = dh_steps
                .iter()
                .map(|dh| dh.iter().map(|v| v * v / 4.0).sum::<f64>())
                .sum();
            (loss, caches, dh_steps)
        };

        let (_, caches, dh_steps) = run(&h0, &c0);
        let grads = lstm_backward(&params, &caches, &dh_steps, None).unwrap();

        let eps = 1e-5;
        for j in 0..3 {
            for (vec_ref, analytic) in [(&h0, &grads.dh0), (&c0, &grads.dc0)] {
                let mut plus = vec_ref.to_vec();
                plus[j] += eps;
                let mut minus = vec_ref.to_vec();
                minus[j] -= eps;
                let (lp, lm) = if core::ptr::eq(vec_ref, &h0) {
                    (run(&plus, &c0).0, run(&minus, &c0).0)
                } else {
                    (run(&h0, &plus).0, run(&h0, &minus).0)
                };
                let numeric = (lp - lm) / (2.0 * eps);
                assert!(
                    (numeric - analytic[j]).abs() < 1e-6,
                    "initial-state grad mismatch at {j}: {numeric} vs {}",
                    analytic[j]
                );
            }
        }
    }
}
