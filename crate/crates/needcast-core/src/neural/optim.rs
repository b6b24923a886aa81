//! Parameter updates: plain SGD and adaptive-moment estimation, both behind
//! global-norm gradient clipping.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use super::{NeuralError, TensorSet};
use crate::float;

pub const DEFAULT_CLIP_NORM: f64 = 5.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Sgd,
    /// Adam with bias correction.
    AdaptiveMoment,
}

#[derive(Debug, Clone)]
pub struct Optimizer {
    pub method: Method,
    pub learning_rate: f64,
    pub beta1: f64,
    pub beta2: f64,
    pub epsilon: f64,
    pub clip_norm: f64,
    step_count: u64,
    moment1: Vec<Vec<f64>>,
    moment2: Vec<Vec<f64>>,
}

impl Optimizer {
    pub fn sgd(learning_rate: f64) -> Self {
        Optimizer {
            method: Method::Sgd,
            learning_rate,
            beta1: 0.9,
            beta2: 0.999,
            epsilon: 1e-8,
            clip_norm: DEFAULT_CLIP_NORM,
            step_count: 0,
            moment1: Vec::new(),
            moment2: Vec::new(),
        }
    }

    pub fn adaptive_moment(learning_rate: f64) -> Self {
        Optimizer {
            method: Method::AdaptiveMoment,
            ..Optimizer::sgd(learning_rate)
        }
    }

    pub fn step_count(&self) -> u64 {
        self.step_count
    }

    /// Apply one update in place. Gradients are clipped to `clip_norm`
    /// (global norm across all tensors) first; a non-finite gradient
    /// rejects the whole update.
    pub fn step<T: TensorSet>(&mut self, params: &mut T, grads: &T) -> Result<(), NeuralError> {
        let grad_tensors = grads.tensors();
        let mut sq_norm = 0.0;
        for (name, g) in &grad_tensors {
            for &v in g.iter() {
                if !v.is_finite() {
                    return Err(NeuralError::NonFinite(format!(
                        "gradient tensor `{name}` contains a non-finite entry"
                    )));
                }
                sq_norm += v * v;
            }
        }
        let norm = float::sqrt(sq_norm);
        let scale = if norm > self.clip_norm {
            self.clip_norm / norm
        } else {
            1.0
        };

        if self.moment1.is_empty() && self.method == Method::AdaptiveMoment {
            self.moment1 = grad_tensors.iter().map(|(_, g)| vec![0.0; g.len()]).collect();
            self.moment2 = self.moment1.clone();
        }

        self.step_count += 1;
        let mut param_tensors = params.tensors_mut();
        if param_tensors.len() != grad_tensors.len() {
            return Err(NeuralError::Shape(format!(
                "parameter set has {} tensors, gradient set has {}",
                param_tensors.len(),
                grad_tensors.len()
            )));
        }

        match self.method {
            Method::Sgd => {
                for ((_, p), (_, g)) in param_tensors.iter_mut().zip(&grad_tensors) {
                    if p.len() != g.len() {
                        return Err(NeuralError::Shape("tensor size mismatch".into()));
                    }
                    for (pv, gv) in p.iter_mut().zip(g.iter()) {
                        *pv -= self.learning_rate * scale * gv;
                    }
                }
            }
            Method::AdaptiveMoment => {
                let t = self.step_count;
                let bc1 = 1.0 - pow_u64(self.beta1, t);
                let bc2 = 1.0 - pow_u64(self.beta2, t);
                for (k, ((_, p), (_, g))) in
                    param_tensors.iter_mut().zip(&grad_tensors).enumerate()
                {
                    if p.len() != g.len() || p.len() != self.moment1[k].len() {
                        return Err(NeuralError::Shape("tensor size mismatch".into()));
                    }
                    let m = &mut self.moment1[k];
                    let v = &mut self.moment2[k];
                    for j in 0..p.len() {
                        let gv = g[j] * scale;
                        m[j] = self.beta1 * m[j] + (1.0 - self.beta1) * gv;
                        v[j] = self.beta2 * v[j] + (1.0 - self.beta2) * gv * gv;
                        let m_hat = m[j] / bc1;
                        let v_hat = v[j] / bc2;
                        p[j] -= self.learning_rate * m_hat / (float::sqrt(v_hat) + self.epsilon);
                    }
                }
            }
        }
        Ok(())
    }
}

/// beta^t for integer t; exact repeated multiplication keeps this
/// bit-reproducible across platforms.
fn pow_u64(base: f64, mut exp: u64) -> f64 {
    let mut acc = 1.0;
    let mut b = base;
    while exp > 0 {
        if exp & 1 == 1 {
            acc *= b;
        }
        b *= b;
        exp >>= 1;
    }
    acc
}
