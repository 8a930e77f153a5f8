use alloc::vec::Vec;

use super::DiffusionError;
use crate::fmath::sqrt;

/// Forward-process noise schedule: per-step betas with the cumulative
/// alpha products used by noising and sampling.
#[derive(Debug, Clone, PartialEq)]
pub struct NoiseSchedule {
    betas: Vec<f64>,
    alpha_bars: Vec<f64>,
}

impl NoiseSchedule {
    pub fn from_betas(betas: Vec<f64>) -> Result<Self, DiffusionError> {
        if betas.is_empty() {
            return Err(DiffusionError::ZeroSteps);
        }
        debug_assert!(betas.iter().all(|&b| b > 0.0 && b < 1.0));
        let mut alpha_bars = Vec::with_capacity(betas.len());
        let mut running = 1.0f64;
        for &beta in &betas {
            running *= 1.0 - beta;
            alpha_bars.push(running);
        }
        Ok(Self { betas, alpha_bars })
    }

    /// Number of diffusion steps `T`; timesteps are 1-based.
    pub fn len(&self) -> usize {
        self.betas.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    fn check(&self, t: usize) -> Result<(), DiffusionError> {
        if t == 0 || t > self.len() {
            return Err(DiffusionError::StepOutOfRange { t, t_max: self.len() });
        }
        Ok(())
    }

    pub fn beta(&self, t: usize) -> f64 {
        self.betas[t - 1]
    }

    pub fn alpha(&self, t: usize) -> f64 {
        1.0 - self.betas[t - 1]
    }

    /// Cumulative product of alphas through step `t`.
    pub fn alpha_bar(&self, t: usize) -> f64 {
        self.alpha_bars[t - 1]
    }
}

/// Betas linearly spaced from 1e-4 to 0.02 (the standard DDPM range);
/// `t_count = 1` degenerates to the single starting beta.
pub fn linear_schedule(t_count: usize) -> Result<NoiseSchedule, DiffusionError> {
    if t_count == 0 {
        return Err(DiffusionError::ZeroSteps);
    }
    const BETA_START: f64 = 1e-4;
    const BETA_END: f64 = 0.02;
    let betas = if t_count == 1 {
        alloc::vec![BETA_START]
    } else {
        (0..t_count)
            .map(|i| {
                BETA_START + (BETA_END - BETA_START) * i as f64 / (t_count as f64 - 1.0)
            })
            .collect()
    };
    NoiseSchedule::from_betas(betas)
}

/// Forward noising `x_t = sqrt(abar_t) x0 + sqrt(1 - abar_t) eps`.
pub fn q_sample(
    x0: &[f64],
    t: usize,
    eps: &[f64],
    schedule: &NoiseSchedule,
) -> Result<Vec<f64>, DiffusionError> {
    schedule.check(t)?;
    if x0.len() != eps.len() {
        return Err(DiffusionError::ShapeMismatch {
            expected: x0.len(),
            actual: eps.len(),
        });
    }
    let ab = schedule.alpha_bar(t);
    let (signal, noise) = (sqrt(ab), sqrt(1.0 - ab));
    Ok(x0
        .iter()
        .zip(eps)
        .map(|(x, e)| signal * x + noise * e)
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn linear_endpoints() {
        let s = linear_schedule(1000).unwrap();
        assert!((s.beta(1) - 1e-4).abs() < 1e-18);
        assert!((s.beta(1000) - 0.02).abs() < 1e-18);
    }

    #[test]
    fn alpha_bar_strictly_decreasing() {
        let s = linear_schedule(500).unwrap();
        let mut prev = 1.0;
        for t in 1..=500 {
            let ab = s.alpha_bar(t);
            assert!(ab < prev, "alpha_bar not decreasing at t={t}");
            prev = ab;
        }
        assert!((s.alpha_bar(1) - (1.0 - 1e-4)).abs() < 1e-15);
    }

    #[test]
    fn degenerate_single_step() {
        let s = linear_schedule(1).unwrap();
        assert_eq!(s.len(), 1);
        assert_eq!(s.beta(1), 1e-4);
    }

    #[test]
    fn zero_steps_rejected() {
        assert_eq!(linear_schedule(0), Err(DiffusionError::ZeroSteps));
    }

    #[test]
    fn q_sample_limits() {
        // alpha_bar near 1 keeps the signal; a deep schedule forgets it.
        let s = NoiseSchedule::from_betas(vec![1e-12]).unwrap();
        let x = q_sample(&[2.0], 1, &[5.0], &s).unwrap();
        assert!((x[0] - 2.0).abs() < 1e-5);

        let deep = NoiseSchedule::from_betas(vec![0.999999; 30]).unwrap();
        let x = q_sample(&[2.0], 30, &[5.0], &deep).unwrap();
        assert!((x[0] - 5.0).abs() < 1e-3);
    }

    #[test]
    fn q_sample_quarter_alpha_bar() {
        // alpha_bar = 0.25 with x0 = 2, eps = 0 gives exactly 1.
        let s = NoiseSchedule::from_betas(vec![0.75]).unwrap();
        assert_eq!(s.alpha_bar(1), 0.25);
        let x = q_sample(&[2.0], 1, &[0.0], &s).unwrap();
        assert_eq!(x[0], 1.0);
    }

    #[test]
    fn q_sample_shape_and_range_checks() {
        let s = linear_schedule(10).unwrap();
        assert_eq!(
            q_sample(&[1.0, 2.0], 1, &[0.0], &s),
            Err(DiffusionError::ShapeMismatch { expected: 2, actual: 1 })
        );
        assert_eq!(
            q_sample(&[1.0], 11, &[0.0], &s),
            Err(DiffusionError::StepOutOfRange { t: 11, t_max: 10 })
        );
        assert_eq!(
            q_sample(&[1.0], 0, &[0.0], &s),
            Err(DiffusionError::StepOutOfRange { t: 0, t_max: 10 })
        );
    }

    #[test]
    fn variance_preserved_for_unit_gaussian_data() {
        use crate::rng::SplitMix64;
        let s = linear_schedule(100).unwrap();
        let mut rng = SplitMix64::new(5);
        let n = 100_000;
        let mut sum = 0.0;
        let mut sum_sq = 0.0;
        for i in 0..n {
            let t = 1 + (i % 100);
            let x0 = rng.next_gaussian();
            let eps = rng.next_gaussian();
            let xt = q_sample(&[x0], t, &[eps], &s).unwrap()[0];
            sum += xt;
            sum_sq += xt * xt;
        }
        let mean = sum / n as f64;
        let var = sum_sq / n as f64 - mean * mean;
        assert!((var - 1.0).abs() < 0.05, "marginal variance {var}");
    }
}
