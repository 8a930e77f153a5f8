//! Desk-scale denoising-diffusion training contract: forward noising,
//! the noise-prediction loss with exact backpropagation through a small
//! perceptron, decoupled-weight-decay Adam updates, EMA shadow weights,
//! and ancestral sampling.

mod mlp;
mod optim;
mod sampler;
mod schedule;
mod toy;

pub use mlp::{loss_and_grad, time_embedding, DenoiserParams, MlpLayout, TrainItem, TIME_EMBED_DIM};
pub use optim::{AdamW, AdamWState, EmaState};
pub use sampler::ddpm_sample;
pub use schedule::{linear_schedule, q_sample, NoiseSchedule};
pub use toy::{train_toy, LossPoint, ToyConfig, ToyRunLog, CLUSTER_MEANS, CLUSTER_STD};

/// Errors from schedule construction, training, and sampling.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DiffusionError {
    /// A schedule needs at least one step.
    ZeroSteps,
    /// Timestep outside `1..=T`.
    StepOutOfRange { t: usize, t_max: usize },
    /// Vector length disagrees with the expected dimension.
    ShapeMismatch { expected: usize, actual: usize },
    EmptyBatch,
    /// An activation or gradient went NaN/infinite.
    NonFinite,
}

impl core::fmt::Display for DiffusionError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            Self::ZeroSteps => write!(f, "schedule needs at least one step"),
            Self::StepOutOfRange { t, t_max } => {
                write!(f, "timestep {t} outside 1..={t_max}")
            }
            Self::ShapeMismatch { expected, actual } => {
                write!(f, "shape mismatch: expected {expected}, got {actual}")
            }
            Self::EmptyBatch => write!(f, "batch is empty"),
            Self::NonFinite => write!(f, "non-finite value in computation"),
        }
    }
}

impl core::error::Error for DiffusionError {}
