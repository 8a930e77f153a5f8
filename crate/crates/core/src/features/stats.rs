use alloc::vec;
use alloc::vec::Vec;

use super::{FeatureError, FeatureSet};
use crate::linalg::{psd_sqrt, Matrix};

/// Default diagonal regularization added to both covariances before the
/// FID matrix square root.
pub const FID_EPSILON: f64 = 1e-6;

/// Mean vector and unbiased sample covariance of a feature set.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussianStats {
    pub mean: Vec<f64>,
    pub cov: Matrix,
}

impl GaussianStats {
    pub fn dim(&self) -> usize {
        self.mean.len()
    }
}

/// Column means and the (n-1)-normalized covariance. Needs `n >= 2`.
pub fn gaussian_stats(set: &FeatureSet) -> Result<GaussianStats, FeatureError> {
    let (n, d) = (set.n(), set.d());
    if n < 2 {
        return Err(FeatureError::TooFewRows);
    }
    let mut mean = vec![0.0f64; d];
    for i in 0..n {
        for (m, v) in mean.iter_mut().zip(set.row(i)) {
            *m += v;
        }
    }
    for m in &mut mean {
        *m /= n as f64;
    }

    let mut cov = Matrix::zeros(d, d);
    let mut centered = vec![0.0f64; d];
    for i in 0..n {
        for (c, (v, m)) in centered.iter_mut().zip(set.row(i).iter().zip(&mean)) {
            *c = v - m;
        }
        for r in 0..d {
            let cr = centered[r];
            if cr == 0.0 {
                continue;
            }
            for (c, &cc) in centered.iter().enumerate().skip(r) {
                let v = cov.get(r, c) + cr * cc;
                cov.set(r, c, v);
            }
        }
    }
    let norm = 1.0 / (n as f64 - 1.0);
    for r in 0..d {
        for c in r..d {
            let v = cov.get(r, c) * norm;
            cov.set(r, c, v);
            cov.set(c, r, v);
        }
    }
    Ok(GaussianStats { mean, cov })
}

/// Frechet distance between two Gaussians with the default `+eps I`
/// covariance regularization.
pub fn fid(a: &GaussianStats, b: &GaussianStats) -> Result<f64, FeatureError> {
    fid_with_epsilon(a, b, FID_EPSILON)
}

/// `||mu1 - mu2||^2 + Tr(S1 + S2 - 2 (S1 S2)^(1/2))`.
///
/// The root of the non-symmetric product is computed as
/// `psd_sqrt(R1 S2 R1)` with `R1 = psd_sqrt(S1)`, which is equal in exact
/// arithmetic and keeps the intermediate symmetric. Both covariances get
/// `+epsilon` on the diagonal first; tiny negative results (above -1e-6,
/// pure rounding) clamp to zero.
pub fn fid_with_epsilon(
    a: &GaussianStats,
    b: &GaussianStats,
    epsilon: f64,
) -> Result<f64, FeatureError> {
    if a.dim() != b.dim() {
        return Err(FeatureError::DimensionMismatch {
            left: a.dim(),
            right: b.dim(),
        });
    }
    let mut cov_a = a.cov.clone();
    let mut cov_b = b.cov.clone();
    cov_a.add_diagonal(epsilon);
    cov_b.add_diagonal(epsilon);

    let root_a = psd_sqrt(&cov_a)?;
    let inner = root_a.matmul(&cov_b).matmul(&root_a);
    let cross_root = psd_sqrt(&inner)?;

    let mean_gap_sq: f64 = a
        .mean
        .iter()
        .zip(&b.mean)
        .map(|(x, y)| (x - y) * (x - y))
        .sum();
    let value = mean_gap_sq + cov_a.trace() + cov_b.trace() - 2.0 * cross_root.trace();
    Ok(if value < 0.0 && value > -1e-6 { 0.0 } else { value })
}
