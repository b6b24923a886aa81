//! Minimal numerical kernel: dense linear algebra, the peephole LSTM cell
//! with an exact analytic backward pass, softmax/cross-entropy, optimizers,
//! and a finite-difference gradient checker.

pub mod gradcheck;
pub mod linalg;
pub mod loss;
pub mod lstm;
pub mod optim;

pub use linalg::Matrix;
pub use lstm::{lstm_backward, lstm_forward, lstm_step_backward, LstmParams, LstmState};
pub use optim::{Method, Optimizer};

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NeuralError {
    /// Tensor dimensions do not match the operation's contract.
    Shape(String),
    /// A cached forward pass does not match the requested backward pass.
    State(String),
    /// Index outside a vector or vocabulary.
    Bounds { index: usize, size: usize },
    /// A gradient or parameter became NaN/inf; the update was rejected.
    NonFinite(String),
}

impl fmt::Display for NeuralError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NeuralError::Shape(msg) => write!(f, "shape error: {msg}"),
            NeuralError::State(msg) => write!(f, "state error: {msg}"),
            NeuralError::Bounds { index, size } => {
                write!(f, "index {index} out of range for size {size}")
            }
            NeuralError::NonFinite(msg) => write!(f, "non-finite value: {msg}"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for NeuralError {}

/// A fixed, ordered collection of named parameter tensors.
///
/// Model parameter structs implement this; the same struct type doubles as
/// the gradient store (one tensor per parameter, same shapes). The tensor
/// order must be stable — the optimizer keys its moment buffers on it.
pub trait TensorSet {
    fn tensors(&self) -> Vec<(&'static str, &[f64])>;
    fn tensors_mut(&mut self) -> Vec<(&'static str, &mut [f64])>;
    /// A same-shaped set with every entry zero (a fresh gradient store).
    fn zeros_like(&self) -> Self;
}
