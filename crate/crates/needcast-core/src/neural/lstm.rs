//! Peephole LSTM cell: forward step, cached activations, and exact
//! backpropagation through time.
//!
//! Gate updates (peepholes are diagonal, stored as vectors):
//!
//! ```text
//! i = sigmoid(W_xi x + W_hi h_prev + w_ci . c_prev + b_i)
//! f = sigmoid(W_xf x + W_hf h_prev + w_cf . c_prev + b_f)
//! g = tanh   (W_xc x + W_hc h_prev + b_c)
//! c = f . c_prev + i . g
//! o = sigmoid(W_xo x + W_ho h_prev + w_co . c + b_o)   // peephole on the NEW cell
//! h = o . tanh(c)
//! ```
//!
//! The output gate peers at the current cell value `c`, not `c_prev`; the
//! backward pass accounts for that extra path.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use rand::Rng;

use super::linalg::Matrix;
use super::{NeuralError, TensorSet};
use crate::float;

#[inline]
pub(crate) fn sigmoid(x: f64) -> f64 {
    1.0 / (1.0 + float::exp(-x))
}

/// The 15 trainable tensors of one peephole LSTM cell.
#[derive(Debug, Clone, PartialEq)]
pub struct LstmParams {
    pub input_dim: usize,
    pub hidden_dim: usize,
    pub w_xi: Matrix,
    pub w_hi: Matrix,
    pub w_ci: Vec<f64>,
    pub b_i: Vec<f64>,
    pub w_xf: Matrix,
    pub w_hf: Matrix,
    pub w_cf: Vec<f64>,
    pub b_f: Vec<f64>,
    pub w_xc: Matrix,
    pub w_hc: Matrix,
    pub b_c: Vec<f64>,
    pub w_xo: Matrix,
    pub w_ho: Matrix,
    pub w_co: Vec<f64>,
    pub b_o: Vec<f64>,
}

impl LstmParams {
    pub fn zeros(input_dim: usize, hidden_dim: usize) -> Self {
        LstmParams {
            input_dim,
            hidden_dim,
            w_xi: Matrix::zeros(hidden_dim, input_dim),
            w_hi: Matrix::zeros(hidden_dim, hidden_dim),
            w_ci: vec![0.0; hidden_dim],
            b_i: vec![0.0; hidden_dim],
            w_xf: Matrix::zeros(hidden_dim, input_dim),
            w_hf: Matrix::zeros(hidden_dim, hidden_dim),
            w_cf: vec![0.0; hidden_dim],
            b_f: vec![0.0; hidden_dim],
            w_xc: Matrix::zeros(hidden_dim, input_dim),
            w_hc: Matrix::zeros(hidden_dim, hidden_dim),
            b_c: vec![0.0; hidden_dim],
            w_xo: Matrix::zeros(hidden_dim, input_dim),
            w_ho: Matrix::zeros(hidden_dim, hidden_dim),
            w_co: vec![0.0; hidden_dim],
            b_o: vec![0.0; hidden_dim],
        }
    }

    /// Weights uniform(-scale, scale); biases and peephole diagonals zero.
    pub fn init<R: Rng>(input_dim: usize, hidden_dim: usize, scale: f64, rng: &mut R) -> Self {
        let mut p = Self::zeros(input_dim, hidden_dim);
        p.w_xi = Matrix::uniform(hidden_dim, input_dim, scale, rng);
        p.w_hi = Matrix::uniform(hidden_dim, hidden_dim, scale, rng);
        p.w_xf = Matrix::uniform(hidden_dim, input_dim, scale, rng);
        p.w_hf = Matrix::uniform(hidden_dim, hidden_dim, scale, rng);
        p.w_xc = Matrix::uniform(hidden_dim, input_dim, scale, rng);
        p.w_hc = Matrix::uniform(hidden_dim, hidden_dim, scale, rng);
        p.w_xo = Matrix::uniform(hidden_dim, input_dim, scale, rng);
        p.w_ho = Matrix::uniform(hidden_dim, hidden_dim, scale, rng);
        p
    }
}

impl TensorSet for LstmParams {
    fn tensors(&self) -> Vec<(&'static str, &[f64])> {
        vec![
            ("w_xi", &self.w_xi.data[..]),
            ("w_hi", &self.w_hi.data[..]),
            ("w_ci", &self.w_ci[..]),
            ("b_i", &self.b_i[..]),
            ("w_xf", &self.w_xf.data[..]),
            ("w_hf", &self.w_hf.data[..]),
            ("w_cf", &self.w_cf[..]),
            ("b_f", &self.b_f[..]),
            ("w_xc", &self.w_xc.data[..]),
            ("w_hc", &self.w_hc.data[..]),
            ("b_c", &self.b_c[..]),
            ("w_xo", &self.w_xo.data[..]),
            ("w_ho", &self.w_ho.data[..]),
            ("w_co", &self.w_co[..]),
            ("b_o", &self.b_o[..]),
        ]
    }

    fn tensors_mut(&mut self) -> Vec<(&'static str, &mut [f64])> {
        vec![
            ("w_xi", &mut self.w_xi.data[..]),
            ("w_hi", &mut self.w_hi.data[..]),
            ("w_ci", &mut self.w_ci[..]),
            ("b_i", &mut self.b_i[..]),
            ("w_xf", &mut self.w_xf.data[..]),
            ("w_hf", &mut self.w_hf.data[..]),
            ("w_cf", &mut self.w_cf[..]),
            ("b_f", &mut self.b_f[..]),
            ("w_xc", &mut self.w_xc.data[..]),
            ("w_hc", &mut self.w_hc.data[..]),
            ("b_c", &mut self.b_c[..]),
            ("w_xo", &mut self.w_xo.data[..]),
            ("w_ho", &mut self.w_ho.data[..]),
            ("w_co", &mut self.w_co[..]),
            ("b_o", &mut self.b_o[..]),
        ]
    }

    fn zeros_like(&self) -> Self {
        Self::zeros(self.input_dim, self.hidden_dim)
    }
}

/// Hidden and cell vectors carried between steps.
#[derive(Debug, Clone, PartialEq)]
pub struct LstmState {
    pub h: Vec<f64>,
    pub c: Vec<f64>,
}

impl LstmState {
    pub fn zeros(hidden_dim: usize) -> Self {
        LstmState {
            h: vec![0.0; hidden_dim],
            c: vec![0.0; hidden_dim],
        }
    }
}

/// Everything the backward pass needs about one forward step.
#[derive(Debug, Clone)]
pub struct LstmStepCache {
    pub x: Vec<f64>,
    pub h_prev: Vec<f64>,
    pub c_prev: Vec<f64>,
    pub i: Vec<f64>,
    pub f: Vec<f64>,
    pub g: Vec<f64>,
    pub o: Vec<f64>,
    pub c: Vec<f64>,
    pub tanh_c: Vec<f64>,
}

/// One forward step. Returns the new state and the activation cache.
pub fn lstm_forward(
    params: &LstmParams,
    x: &[f64],
    prev: &LstmState,
) -> Result<(LstmState, LstmStepCache), NeuralError> {
    let n = params.hidden_dim;
    if x.len() != params.input_dim {
        return Err(NeuralError::Shape(format!(
            "input length {} != input_dim {}",
            x.len(),
            params.input_dim
        )));
    }
    if prev.h.len() != n || prev.c.len() != n {
        return Err(NeuralError::Shape(format!(
            "state length {}/{} != hidden_dim {}",
            prev.h.len(),
            prev.c.len(),
            n
        )));
    }

    let mut a_i = params.w_xi.matvec(x);
    let mut a_f = params.w_xf.matvec(x);
    let mut a_g = params.w_xc.matvec(x);
    let mut a_o = params.w_xo.matvec(x);
    let hi = params.w_hi.matvec(&prev.h);
    let hf = params.w_hf.matvec(&prev.h);
    let hg = params.w_hc.matvec(&prev.h);
    let ho = params.w_ho.matvec(&prev.h);

    let mut i = vec![0.0; n];
    let mut f = vec![0.0; n];
    let mut g = vec![0.0; n];
    let mut c = vec![0.0; n];
    for j in 0..n {
        a_i[j] += hi[j] + params.w_ci[j] * prev.c[j] + params.b_i[j];
        a_f[j] += hf[j] + params.w_cf[j] * prev.c[j] + params.b_f[j];
        a_g[j] += hg[j] + params.b_c[j];
        i[j] = sigmoid(a_i[j]);
        f[j] = sigmoid(a_f[j]);
        g[j] = float::tanh(a_g[j]);
        c[j] = f[j] * prev.c[j] + i[j] * g[j];
    }
    let mut o = vec![0.0; n];
    let mut tanh_c = vec![0.0; n];
    let mut h = vec![0.0; n];
    for j in 0..n {
        a_o[j] += ho[j] + params.w_co[j] * c[j] + params.b_o[j];
        o[j] = sigmoid(a_o[j]);
        tanh_c[j] = float::tanh(c[j]);
        h[j] = o[j] * tanh_c[j];
    }

    let cache = LstmStepCache {
        x: x.to_vec(),
        h_prev: prev.h.clone(),
        c_prev: prev.c.clone(),
        i,
        f,
        g,
        o,
        c: c.clone(),
        tanh_c,
    };
    Ok((LstmState { h, c }, cache))
}

/// One backward step. `dh`/`dc` are the loss gradients w.r.t. this step's
/// outputs `h` and `c` (the latter from future steps only). Parameter
/// gradients accumulate into `grads`; returns (dx, dh_prev, dc_prev).
pub fn lstm_step_backward(
    params: &LstmParams,
    cache: &LstmStepCache,
    dh: &[f64],
    dc: &[f64],
    grads: &mut LstmParams,
) -> (Vec<f64>, Vec<f64>, Vec<f64>) {
    let n = params.hidden_dim;
    debug_assert_eq!(dh.len(), n);
    debug_assert_eq!(dc.len(), n);

    let mut da_i = vec![0.0; n];
    let mut da_f = vec![0.0; n];
    let mut da_g = vec![0.0; n];
    let mut da_o = vec![0.0; n];
    let mut dc_prev = vec![0.0; n];

    for j in 0..n {
        let o = cache.o[j];
        let tc = cache.tanh_c[j];
        // h = o * tanh(c)
        let d_o = dh[j] * tc;
        da_o[j] = d_o * o * (1.0 - o);
        // c receives gradient through h, through the future (dc), and
        // through the output gate's peephole on the current cell.
        let dct = dh[j] * o * (1.0 - tc * tc) + dc[j] + params.w_co[j] * da_o[j];
        let i = cache.i[j];
        let f = cache.f[j];
        let g = cache.g[j];
        da_g[j] = dct * i * (1.0 - g * g);
        da_i[j] = dct * g * i * (1.0 - i);
        da_f[j] = dct * cache.c_prev[j] * f * (1.0 - f);
        dc_prev[j] = dct * f + params.w_ci[j] * da_i[j] + params.w_cf[j] * da_f[j];

        grads.w_ci[j] += da_i[j] * cache.c_prev[j];
        grads.w_cf[j] += da_f[j] * cache.c_prev[j];
        grads.w_co[j] += da_o[j] * cache.c[j];
        grads.b_i[j] += da_i[j];
        grads.b_f[j] += da_f[j];
        grads.b_c[j] += da_g[j];
        grads.b_o[j] += da_o[j];
    }

    grads.w_xi.add_outer(&da_i, &cache.x);
    grads.w_xf.add_outer(&da_f, &cache.x);
    grads.w_xc.add_outer(&da_g, &cache.x);
    grads.w_xo.add_outer(&da_o, &cache.x);
    grads.w_hi.add_outer(&da_i, &cache.h_prev);
    grads.w_hf.add_outer(&da_f, &cache.h_prev);
    grads.w_hc.add_outer(&da_g, &cache.h_prev);
    grads.w_ho.add_outer(&da_o, &cache.h_prev);

    let mut dx = vec![0.0; params.input_dim];
    params.w_xi.matvec_t_acc(&da_i, &mut dx);
    params.w_xf.matvec_t_acc(&da_f, &mut dx);
    params.w_xc.matvec_t_acc(&da_g, &mut dx);
    params.w_xo.matvec_t_acc(&da_o, &mut dx);

    let mut dh_prev = vec![0.0; n];
    params.w_hi.matvec_t_acc(&da_i, &mut dh_prev);
    params.w_hf.matvec_t_acc(&da_f, &mut dh_prev);
    params.w_hc.matvec_t_acc(&da_g, &mut dh_prev);
    params.w_ho.matvec_t_acc(&da_o, &mut dh_prev);

    (dx, dh_prev, dc_prev)
}

/// Gradients of a full sequence produced by [`lstm_backward`].
#[derive(Debug, Clone)]
pub struct LstmSequenceGrads {
    pub params: LstmParams,
    /// Gradient w.r.t. the initial hidden state.
    pub dh0: Vec<f64>,
    /// Gradient w.r.t. the initial cell state.
    pub dc0: Vec<f64>,
    /// Gradient w.r.t. each step's input, in step order.
    pub dx: Vec<Vec<f64>>,
}

/// Backpropagation through time over a cached sequence.
///
/// `dh_steps[t]` is the upstream gradient on step t's hidden output;
/// `d_final`, when given, adds gradients on the final (h, c) pair.
pub fn lstm_backward(
    params: &LstmParams,
    caches: &[LstmStepCache],
    dh_steps: &[Vec<f64>],
    d_final: Option<(&[f64], &[f64])>,
) -> Result<LstmSequenceGrads, NeuralError> {
    if caches.len() != dh_steps.len() {
        return Err(NeuralError::State(format!(
            "cache length {} != upstream gradient length {}",
            caches.len(),
            dh_steps.len()
        )));
    }
    let n = params.hidden_dim;
    let mut grads = params.zeros_like();
    let mut dh_next = vec![0.0; n];
    let mut dc_next = vec![0.0; n];
    if let Some((dh, dc)) = d_final {
        dh_next.copy_from_slice(dh);
        dc_next.copy_from_slice(dc);
    }
    let mut dx = vec![Vec::new(); caches.len()];
    for t in (0..caches.len()).rev() {
        let mut dh = dh_steps[t].clone();
        for j in 0..n {
            dh[j] += dh_next[j];
        }
        let (dxt, dhp, dcp) = lstm_step_backward(params, &caches[t], &dh, &dc_next, &mut grads);
        dx[t] = dxt;
        dh_next = dhp;
        dc_next = dcp;
    }
    Ok(LstmSequenceGrads {
        params: grads,
        dh0: dh_next,
        dc0: dc_next,
        dx,
    })
}
