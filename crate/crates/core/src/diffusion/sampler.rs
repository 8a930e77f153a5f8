use alloc::vec::Vec;

use super::mlp::DenoiserParams;
use super::schedule::NoiseSchedule;
use super::DiffusionError;
use crate::fmath::sqrt;
use crate::rng::SplitMix64;

/// Ancestral DDPM sampling: start from pure noise and walk the reverse
/// chain using epsilon prediction, adding posterior-variance noise at
/// every step but the last. Deterministic for a given seed.
///
/// Pass EMA shadow weights (wrapped in `DenoiserParams`) for inference-
/// quality samples.
pub fn ddpm_sample(
    params: &DenoiserParams,
    schedule: &NoiseSchedule,
    cond: &[f64],
    seed: u64,
) -> Result<Vec<f64>, DiffusionError> {
    let dim = params.layout.data_dim;
    let t_max = schedule.len();
    let mut rng = SplitMix64::new(seed);
    let mut x: Vec<f64> = (0..dim).map(|_| rng.next_gaussian()).collect();

    for t in (1..=t_max).rev() {
        let eps_hat = params.predict(&x, t, t_max, cond)?;
        let beta = schedule.beta(t);
        let alpha = schedule.alpha(t);
        let alpha_bar = schedule.alpha_bar(t);
        let coef = beta / sqrt(1.0 - alpha_bar);
        let inv_sqrt_alpha = 1.0 / sqrt(alpha);
        for (xi, ei) in x.iter_mut().zip(&eps_hat) {
            *xi = inv_sqrt_alpha * (*xi - coef * ei);
        }
        if t > 1 {
            let alpha_bar_prev = schedule.alpha_bar(t - 1);
            let posterior_var = beta * (1.0 - alpha_bar_prev) / (1.0 - alpha_bar);
            let sigma = sqrt(posterior_var);
            for xi in x.iter_mut() {
                *xi += sigma * rng.next_gaussian();
            }
        }
    }
    if x.iter().any(|v| !v.is_finite()) {
        return Err(DiffusionError::NonFinite);
    }
    Ok(x)
}
