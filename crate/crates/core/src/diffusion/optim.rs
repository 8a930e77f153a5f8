use alloc::vec;
use alloc::vec::Vec;

use super::DiffusionError;
use crate::fmath::{powi, sqrt};

/// Adam with decoupled weight decay.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AdamW {
    pub lr: f64,
    pub weight_decay: f64,
    pub beta1: f64,
    pub beta2: f64,
    pub epsilon: f64,
}

impl AdamW {
    pub fn new(lr: f64, weight_decay: f64) -> Self {
        Self { lr, weight_decay, beta1: 0.9, beta2: 0.999, epsilon: 1e-8 }
    }

    /// One update: `theta -= lr * mhat / (sqrt(vhat) + eps) + lr * wd * theta`,
    /// with bias-corrected first and second moments.
    pub fn step(
        &self,
        state: &mut AdamWState,
        theta: &mut [f64],
        grads: &[f64],
    ) -> Result<(), DiffusionError> {
        if theta.len() != state.m.len() || grads.len() != state.m.len() {
            return Err(DiffusionError::ShapeMismatch {
                expected: state.m.len(),
                actual: theta.len().max(grads.len()),
            });
        }
        state.step += 1;
        let bc1 = 1.0 - powi(self.beta1, state.step as i32);
        let bc2 = 1.0 - powi(self.beta2, state.step as i32);
        for i in 0..theta.len() {
            let g = grads[i];
            state.m[i] = self.beta1 * state.m[i] + (1.0 - self.beta1) * g;
            state.v[i] = self.beta2 * state.v[i] + (1.0 - self.beta2) * g * g;
            let m_hat = state.m[i] / bc1;
            let v_hat = state.v[i] / bc2;
            theta[i] -= self.lr * m_hat / (sqrt(v_hat) + self.epsilon)
                + self.lr * self.weight_decay * theta[i];
        }
        Ok(())
    }
}

/// First/second moment accumulators plus the step counter.
#[derive(Debug, Clone, PartialEq)]
pub struct AdamWState {
    pub m: Vec<f64>,
    pub v: Vec<f64>,
    pub step: u64,
}

impl AdamWState {
    pub fn new(len: usize) -> Self {
        Self { m: vec![0.0; len], v: vec![0.0; len], step: 0 }
    }
}

/// Exponential moving average of the parameter vector:
/// `shadow <- decay * shadow + (1 - decay) * theta`.
#[derive(Debug, Clone, PartialEq)]
pub struct EmaState {
    pub shadow: Vec<f64>,
    pub decay: f64,
}

impl EmaState {
    pub fn new(shadow: Vec<f64>, decay: f64) -> Self {
        Self { shadow, decay }
    }

    /// Starts the average at the live weights.
    pub fn from_params(theta: &[f64], decay: f64) -> Self {
        Self { shadow: theta.to_vec(), decay }
    }

    pub fn update(&mut self, theta: &[f64]) -> Result<(), DiffusionError> {
        if theta.len() != self.shadow.len() {
            return Err(DiffusionError::ShapeMismatch {
                expected: self.shadow.len(),
                actual: theta.len(),
            });
        }
        for (s, &t) in self.shadow.iter_mut().zip(theta) {
            *s = self.decay * *s + (1.0 - self.decay) * t;
        }
        Ok(())
    }

    /// Max-norm gap between shadow and live weights.
    pub fn gap_inf(&self, theta: &[f64]) -> f64 {
        self.shadow
            .iter()
            .zip(theta)
            .map(|(s, t)| (s - t).abs())
            .fold(0.0, f64::max)
    }
}
