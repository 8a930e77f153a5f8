//! The 2-D two-cluster conditional task used to demonstrate the
//! training contract end to end: noising, loss, AdamW, EMA, sampling.

use alloc::vec;
use alloc::vec::Vec;

use super::mlp::{DenoiserParams, MlpLayout, TrainItem};
use super::optim::{AdamW, AdamWState, EmaState};
use super::sampler::ddpm_sample;
use super::schedule::{linear_schedule, NoiseSchedule};
use super::{loss_and_grad, DiffusionError};
use crate::rng::SplitMix64;

/// Cluster means of the toy dataset; conditioning is the one-hot
/// cluster id.
pub const CLUSTER_MEANS: [[f64; 2]; 2] = [[1.5, 1.5], [-1.5, -1.5]];
/// Within-cluster standard deviation.
pub const CLUSTER_STD: f64 = 0.25;

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ToyConfig {
    pub steps: usize,
    pub lr: f64,
    pub weight_decay: f64,
    pub ema_decay: f64,
    pub seed: u64,
    pub hidden: usize,
    pub t_steps: usize,
    pub batch: usize,
    /// Fixed held-out batch used for the loss trace.
    pub eval_size: usize,
    /// Samples drawn per cluster for the accuracy check.
    pub samples_per_cluster: usize,
}

impl Default for ToyConfig {
    fn default() -> Self {
        Self {
            steps: 2000,
            lr: 1e-3,
            weight_decay: 0.01,
            ema_decay: 0.9999,
            seed: 0,
            hidden: 64,
            t_steps: 200,
            batch: 32,
            eval_size: 256,
            samples_per_cluster: 250,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct LossPoint {
    pub step: usize,
    pub loss: f64,
}

/// Everything a training run reports.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ToyRunLog {
    pub config: ToyConfig,
    /// Held-out loss every 100 steps, including step 0.
    pub losses: Vec<LossPoint>,
    pub initial_loss: f64,
    pub final_loss: f64,
    /// `max_inf |theta_ema - theta|` after training.
    pub ema_gap_inf: f64,
    /// Largest single-step parameter update (inf norm) seen.
    pub max_update_inf: f64,
    /// Geometric-series bound `max_update_inf / (1 - decay)` the gap
    /// must respect.
    pub ema_gap_bound: f64,
    /// Fraction of conditioned samples landing nearer their cluster's
    /// mean.
    pub cluster_accuracy: f64,
}

fn draw_item(rng: &mut SplitMix64, t_max: usize) -> TrainItem {
    let cluster = rng.next_index(2);
    let mean = CLUSTER_MEANS[cluster];
    let x0 = vec![
        mean[0] + CLUSTER_STD * rng.next_gaussian(),
        mean[1] + CLUSTER_STD * rng.next_gaussian(),
    ];
    let mut cond = vec![0.0; 2];
    cond[cluster] = 1.0;
    let t = 1 + rng.next_index(t_max);
    let eps = vec![rng.next_gaussian(), rng.next_gaussian()];
    TrainItem { x0, cond, t, eps }
}

fn eval_loss(
    params: &DenoiserParams,
    schedule: &NoiseSchedule,
    batch: &[TrainItem],
) -> Result<f64, DiffusionError> {
    loss_and_grad(params, schedule, batch).map(|(loss, _)| loss)
}

pub fn train_toy(config: &ToyConfig) -> Result<ToyRunLog, DiffusionError> {
    let schedule = linear_schedule(config.t_steps)?;
    let layout = MlpLayout { data_dim: 2, cond_dim: 2, hidden: config.hidden };
    let mut params = DenoiserParams::init(layout, SplitMix64::derive(config.seed, 1));

    let mut eval_rng = SplitMix64::new(SplitMix64::derive(config.seed, 2));
    let eval_batch: Vec<TrainItem> = (0..config.eval_size)
        .map(|_| draw_item(&mut eval_rng, config.t_steps))
        .collect();

    let optimizer = AdamW::new(config.lr, config.weight_decay);
    let mut opt_state = AdamWState::new(params.theta.len());
    let mut ema = EmaState::from_params(&params.theta, config.ema_decay);

    let initial_loss = eval_loss(&params, &schedule, &eval_batch)?;
    let mut losses = vec![LossPoint { step: 0, loss: initial_loss }];

    let mut train_rng = SplitMix64::new(SplitMix64::derive(config.seed, 3));
    let mut max_update_inf = 0.0f64;
    let mut previous = params.theta.clone();

    for step in 1..=config.steps {
        let batch: Vec<TrainItem> = (0..config.batch)
            .map(|_| draw_item(&mut train_rng, config.t_steps))
            .collect();
        let (_, grads) = loss_and_grad(&params, &schedule, &batch)?;
        optimizer.step(&mut opt_state, &mut params.theta, &grads)?;
        ema.update(&params.theta)?;

        let update = params
            .theta
            .iter()
            .zip(&previous)
            .map(|(new, old)| (new - old).abs())
            .fold(0.0, f64::max);
        max_update_inf = max_update_inf.max(update);
        previous.copy_from_slice(&params.theta);

        if step % 100 == 0 {
            losses.push(LossPoint {
                step,
                loss: eval_loss(&params, &schedule, &eval_batch)?,
            });
        }
    }
    let final_loss = eval_loss(&params, &schedule, &eval_batch)?;

    // Sampling accuracy uses the EMA weights, as at inference.
    let ema_params = DenoiserParams { layout, theta: ema.shadow.clone() };
    let mut correct = 0usize;
    let total = 2 * config.samples_per_cluster;
    for cluster in 0..2usize {
        let mut cond = vec![0.0; 2];
        cond[cluster] = 1.0;
        let stream = SplitMix64::derive(config.seed, 10 + cluster as u64);
        for i in 0..config.samples_per_cluster {
            let sample_seed = SplitMix64::derive(stream, i as u64);
            let x = ddpm_sample(&ema_params, &schedule, &cond, sample_seed)?;
            let own = dist_sq(&x, &CLUSTER_MEANS[cluster]);
            let other = dist_sq(&x, &CLUSTER_MEANS[1 - cluster]);
            if own < other {
                correct += 1;
            }
        }
    }

    Ok(ToyRunLog {
        config: *config,
        losses,
        initial_loss,
        final_loss,
        ema_gap_inf: ema.gap_inf(&params.theta),
        max_update_inf,
        ema_gap_bound: max_update_inf / (1.0 - config.ema_decay),
        cluster_accuracy: correct as f64 / total as f64,
    })
}

fn dist_sq(x: &[f64], mean: &[f64; 2]) -> f64 {
    let dx = x[0] - mean[0];
    let dy = x[1] - mean[1];
    dx * dx + dy * dy
}
