//! The toy denoiser: a two-hidden-layer tanh perceptron mapping
//! `(x_t, time embedding, condition)` to predicted noise, with exact
//! backpropagation. Parameters live in one flat vector so the optimizer,
//! EMA, and finite-difference checks treat them uniformly.

use alloc::vec;
use alloc::vec::Vec;

use super::schedule::{q_sample, NoiseSchedule};
use super::DiffusionError;
use crate::fmath::{cos, sin, sqrt, tanh};
use crate::rng::SplitMix64;

/// Sinusoidal timestep features: sin/cos pairs at four octave
/// frequencies of the normalized step `t / t_max`.
pub const TIME_EMBED_DIM: usize = 8;

pub fn time_embedding(t: usize, t_max: usize) -> [f64; TIME_EMBED_DIM] {
    let tt = t as f64 / t_max as f64;
    let mut out = [0.0; TIME_EMBED_DIM];
    for k in 0..TIME_EMBED_DIM / 2 {
        let angle = core::f64::consts::TAU * (1 << k) as f64 * tt;
        out[2 * k] = sin(angle);
        out[2 * k + 1] = cos(angle);
    }
    out
}

/// Shapes of the perceptron; the flat parameter vector is laid out as
/// `w1 | b1 | w2 | b2 | w3 | b3` with row-major weight blocks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MlpLayout {
    pub data_dim: usize,
    pub cond_dim: usize,
    pub hidden: usize,
}

impl MlpLayout {
    pub fn input_dim(&self) -> usize {
        self.data_dim + TIME_EMBED_DIM + self.cond_dim
    }

    pub fn param_count(&self) -> usize {
        let (h, i, o) = (self.hidden, self.input_dim(), self.data_dim);
        h * i + h + h * h + h + o * h + o
    }

    fn offsets(&self) -> [usize; 6] {
        let (h, i, o) = (self.hidden, self.input_dim(), self.data_dim);
        let w1 = 0;
        let b1 = w1 + h * i;
        let w2 = b1 + h;
        let b2 = w2 + h * h;
        let w3 = b2 + h;
        let b3 = w3 + o * h;
        [w1, b1, w2, b2, w3, b3]
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DenoiserParams {
    pub layout: MlpLayout,
    pub theta: Vec<f64>,
}

impl DenoiserParams {
    /// Uniform `+-1/sqrt(fan_in)` initialization, deterministic in the
    /// seed.
    pub fn init(layout: MlpLayout, seed: u64) -> Self {
        let mut rng = SplitMix64::new(seed);
        let mut theta = vec![0.0; layout.param_count()];
        let [w1, b1, w2, b2, w3, _b3] = layout.offsets();
        let bounds = [
            (w1, b1, layout.input_dim()),
            (w2, b2, layout.hidden),
            (w3, theta.len() - layout.data_dim, layout.hidden),
        ];
        for (start, end, fan_in) in bounds {
            let bound = 1.0 / sqrt(fan_in as f64);
            for value in &mut theta[start..end] {
                *value = rng.next_range(-bound, bound);
            }
        }
        // Biases start at zero.
        Self { layout, theta }
    }

    pub fn zeros(layout: MlpLayout) -> Self {
        Self { layout, theta: vec![0.0; layout.param_count()] }
    }

    /// Predicted noise for one input. `t_max` is the schedule length the
    /// time embedding is normalized by.
    pub fn predict(
        &self,
        x_t: &[f64],
        t: usize,
        t_max: usize,
        cond: &[f64],
    ) -> Result<Vec<f64>, DiffusionError> {
        let input = self.assemble_input(x_t, t, t_max, cond)?;
        let (_, _, out) = self.forward(&input);
        if out.iter().any(|v| !v.is_finite()) {
            return Err(DiffusionError::NonFinite);
        }
        Ok(out)
    }

    fn assemble_input(
        &self,
        x_t: &[f64],
        t: usize,
        t_max: usize,
        cond: &[f64],
    ) -> Result<Vec<f64>, DiffusionError> {
        if x_t.len() != self.layout.data_dim {
            return Err(DiffusionError::ShapeMismatch {
                expected: self.layout.data_dim,
                actual: x_t.len(),
            });
        }
        if cond.len() != self.layout.cond_dim {
            return Err(DiffusionError::ShapeMismatch {
                expected: self.layout.cond_dim,
                actual: cond.len(),
            });
        }
        let mut input = Vec::with_capacity(self.layout.input_dim());
        input.extend_from_slice(x_t);
        input.extend_from_slice(&time_embedding(t, t_max));
        input.extend_from_slice(cond);
        Ok(input)
    }

    /// Forward pass returning the tanh activations needed by backprop.
    fn forward(&self, input: &[f64]) -> (Vec<f64>, Vec<f64>, Vec<f64>) {
        let l = &self.layout;
        let (h, i_dim, o) = (l.hidden, l.input_dim(), l.data_dim);
        let [w1, b1, w2, b2, w3, b3] = l.offsets();
        let th = &self.theta;

        let mut a1 = vec![0.0; h];
        for r in 0..h {
            let row = &th[w1 + r * i_dim..w1 + (r + 1) * i_dim];
            let z = dot(row, input) + th[b1 + r];
            a1[r] = tanh(z);
        }
        let mut a2 = vec![0.0; h];
        for r in 0..h {
            let row = &th[w2 + r * h..w2 + (r + 1) * h];
            let z = dot(row, &a1) + th[b2 + r];
            a2[r] = tanh(z);
        }
        let mut out = vec![0.0; o];
        for r in 0..o {
            let row = &th[w3 + r * h..w3 + (r + 1) * h];
            out[r] = dot(row, &a2) + th[b3 + r];
        }
        (a1, a2, out)
    }
}

#[inline]
fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// One training example: clean data, conditioning vector, and the drawn
/// timestep and noise.
#[derive(Debug, Clone, PartialEq)]
pub struct TrainItem {
    pub x0: Vec<f64>,
    pub cond: Vec<f64>,
    pub t: usize,
    pub eps: Vec<f64>,
}

/// Mean-squared noise-prediction loss and its exact gradient.
///
/// `loss = mean over batch and components of (prediction - eps)^2`; the
/// gradient vector is laid out exactly like `params.theta`.
pub fn loss_and_grad(
    params: &DenoiserParams,
    schedule: &NoiseSchedule,
    batch: &[TrainItem],
) -> Result<(f64, Vec<f64>), DiffusionError> {
    if batch.is_empty() {
        return Err(DiffusionError::EmptyBatch);
    }
    let l = &params.layout;
    let (h, i_dim, o) = (l.hidden, l.input_dim(), l.data_dim);
    let [w1, b1, w2, b2, w3, b3] = l.offsets();
    let th = &params.theta;
    let t_max = schedule.len();

    let mut grads = vec![0.0; params.theta.len()];
    let mut loss = 0.0f64;
    let norm = 1.0 / (batch.len() * o) as f64;

    for item in batch {
        if item.eps.len() != o {
            return Err(DiffusionError::ShapeMismatch { expected: o, actual: item.eps.len() });
        }
        let x_t = q_sample(&item.x0, item.t, &item.eps, schedule)?;
        let input = params.assemble_input(&x_t, item.t, t_max, &item.cond)?;
        let (a1, a2, out) = params.forward(&input);
        if out.iter().any(|v| !v.is_finite()) {
            return Err(DiffusionError::NonFinite);
        }

        // d(loss)/d(out_r) = 2 (out_r - eps_r) / (batch * o)
        let mut d_out = vec![0.0; o];
        for r in 0..o {
            let residual = out[r] - item.eps[r];
            loss += residual * residual * norm;
            d_out[r] = 2.0 * residual * norm;
        }

        // Output layer.
        let mut d_a2 = vec![0.0; h];
        for r in 0..o {
            let g = d_out[r];
            for c in 0..h {
                grads[w3 + r * h + c] += g * a2[c];
                d_a2[c] += th[w3 + r * h + c] * g;
            }
            grads[b3 + r] += g;
        }
        // Second hidden layer (tanh' = 1 - a^2).
        let mut d_a1 = vec![0.0; h];
        for r in 0..h {
            let dz = d_a2[r] * (1.0 - a2[r] * a2[r]);
            if dz == 0.0 {
                continue;
            }
            for c in 0..h {
                grads[w2 + r * h + c] += dz * a1[c];
                d_a1[c] += th[w2 + r * h + c] * dz;
            }
            grads[b2 + r] += dz;
        }
        // First hidden layer.
        for r in 0..h {
            let dz = d_a1[r] * (1.0 - a1[r] * a1[r]);
            if dz == 0.0 {
                continue;
            }
            for c in 0..i_dim {
                grads[w1 + r * i_dim + c] += dz * input[c];
            }
            grads[b1 + r] += dz;
        }
    }

    if !loss.is_finite() || grads.iter().any(|g| !g.is_finite()) {
        return Err(DiffusionError::NonFinite);
    }
    Ok((loss, grads))
}
