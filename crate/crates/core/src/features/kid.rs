use alloc::vec::Vec;

use super::{FeatureError, FeatureSet};
use crate::fmath::{pairwise_sum, sqrt};
use crate::rng::SplitMix64;

/// Unbiased squared-MMD estimate, optionally averaged over random blocks.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct KidReport {
    /// Mean unbiased MMD^2 across blocks (may be slightly negative).
    pub mmd2: f64,
    /// Sample standard deviation across blocks; 0 for a single block.
    pub block_std: f64,
    pub blocks: usize,
}

#[derive(Debug, Clone, Copy)]
pub struct KidOptions {
    /// Number of equal random splits; 1 means the full sets.
    pub blocks: usize,
    /// Seed for the block shuffle (unused when `blocks == 1`).
    pub seed: u64,
}

impl Default for KidOptions {
    fn default() -> Self {
        Self { blocks: 1, seed: 0 }
    }
}

/// Single-block KID over the full feature sets.
pub fn kid(a: &FeatureSet, b: &FeatureSet) -> Result<KidReport, FeatureError> {
    kid_with(a, b, KidOptions::default())
}

/// Kernel `k(x, y) = (x.y / d + 1)^3`; the estimator is the standard
/// unbiased MMD^2 with diagonal terms excluded.
pub fn kid_with(
    a: &FeatureSet,
    b: &FeatureSet,
    options: KidOptions,
) -> Result<KidReport, FeatureError> {
    if a.d() != b.d() {
        return Err(FeatureError::DimensionMismatch { left: a.d(), right: b.d() });
    }
    if a.n() < 2 || b.n() < 2 {
        return Err(FeatureError::TooFewRows);
    }
    let blocks = options.blocks;
    if blocks == 0 || a.n() / blocks < 2 || b.n() / blocks < 2 {
        return Err(FeatureError::InvalidBlocks);
    }

    if blocks == 1 {
        return Ok(KidReport {
            mmd2: mmd2_unbiased(a, b),
            block_std: 0.0,
            blocks: 1,
        });
    }

    let mut rng = SplitMix64::new(options.seed);
    let order_a = shuffled(a.n(), &mut rng);
    let order_b = shuffled(b.n(), &mut rng);
    let (size_a, size_b) = (a.n() / blocks, b.n() / blocks);

    let mut values = Vec::with_capacity(blocks);
    for block in 0..blocks {
        let sub_a = a.select_rows(&order_a[block * size_a..(block + 1) * size_a]);
        let sub_b = b.select_rows(&order_b[block * size_b..(block + 1) * size_b]);
        values.push(mmd2_unbiased(&sub_a, &sub_b));
    }
    let mean = pairwise_sum(&values) / blocks as f64;
    let var = values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / (blocks as f64 - 1.0);
    Ok(KidReport { mmd2: mean, block_std: sqrt(var), blocks })
}

#[inline]
fn poly3(dot_over_d: f64) -> f64 {
    let base = dot_over_d + 1.0;
    base * base * base
}

fn mmd2_unbiased(a: &FeatureSet, b: &FeatureSet) -> f64 {
    let d_inv = 1.0 / a.d() as f64;
    let (na, nb) = (a.n(), b.n());

    // Row-wise partial sums keep the reduction order fixed.
    let mut rows: Vec<f64> = Vec::with_capacity(na.max(nb));

    rows.clear();
    for i in 0..na {
        let ri = a.row(i);
        let mut acc = 0.0;
        for j in 0..na {
            if i != j {
                acc += poly3(dot(ri, a.row(j)) * d_inv);
            }
        }
        rows.push(acc);
    }
    let term_aa = pairwise_sum(&rows) / (na as f64 * (na as f64 - 1.0));

    rows.clear();
    for i in 0..nb {
        let ri = b.row(i);
        let mut acc = 0.0;
        for j in 0..nb {
            if i != j {
                acc += poly3(dot(ri, b.row(j)) * d_inv);
            }
        }
        rows.push(acc);
    }
    let term_bb = pairwise_sum(&rows) / (nb as f64 * (nb as f64 - 1.0));

    rows.clear();
    for i in 0..na {
        let ri = a.row(i);
        let mut acc = 0.0;
        for j in 0..nb {
            acc += poly3(dot(ri, b.row(j)) * d_inv);
        }
        rows.push(acc);
    }
    let term_ab = pairwise_sum(&rows) * 2.0 / (na as f64 * nb as f64);

    term_aa + term_bb - term_ab
}

#[inline]
fn dot(x: &[f64], y: &[f64]) -> f64 {
    x.iter().zip(y).map(|(a, b)| a * b).sum()
}

fn shuffled(n: usize, rng: &mut SplitMix64) -> Vec<usize> {
    let mut order: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        let j = rng.next_index(i + 1);
        order.swap(i, j);
    }
    order
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn gaussian_set(n: usize, d: usize, shift: f64, seed: u64) -> FeatureSet {
        let mut rng = SplitMix64::new(seed);
        let data: Vec<f64> = (0..n * d).map(|_| rng.next_gaussian() + shift).collect();
        FeatureSet::from_rows(n, d, data).unwrap()
    }

    /// Independently written plain-loop oracle.
    fn brute_mmd2(a: &FeatureSet, b: &FeatureSet) -> f64 {
        let d = a.d() as f64;
        let k = |x: &[f64], y: &[f64]| {
            let mut s = 0.0;
            for i in 0..x.len() {
                s += x[i] * y[i];
            }
            let t = s / d + 1.0;
            t * t * t
        };
        let (na, nb) = (a.n() as f64, b.n() as f64);
        let mut aa = 0.0;
        for i in 0..a.n() {
            for j in 0..a.n() {
                if i != j {
                    aa += k(a.row(i), a.row(j));
                }
            }
        }
        let mut bb = 0.0;
        for i in 0..b.n() {
            for j in 0..b.n() {
                if i != j {
                    bb += k(b.row(i), b.row(j));
                }
            }
        }
        let mut ab = 0.0;
        for i in 0..a.n() {
            for j in 0..b.n() {
                ab += k(a.row(i), b.row(j));
            }
        }
        aa / (na * (na - 1.0)) + bb / (nb * (nb - 1.0)) - 2.0 * ab / (na * nb)
    }

    #[test]
    fn matches_double_sum_oracle_small() {
        let a = FeatureSet::from_rows(3, 2, vec![0.5, -1.0, 2.0, 0.25, -0.75, 1.5]).unwrap();
        let b = FeatureSet::from_rows(3, 2, vec![1.0, 1.0, -0.5, 0.0, 0.1, 2.0]).unwrap();
        let got = kid(&a, &b).unwrap().mmd2;
        let want = brute_mmd2(&a, &b);
        assert!((got - want).abs() < 1e-12, "{got} vs {want}");
    }

    #[test]
    fn matches_double_sum_oracle_range() {
        for n in [3usize, 7, 20, 50] {
            let a = gaussian_set(n, 4, 0.0, n as u64);
            let b = gaussian_set(n, 4, 0.3, n as u64 + 1000);
            let got = kid(&a, &b).unwrap().mmd2;
            let want = brute_mmd2(&a, &b);
            assert!((got - want).abs() < 1e-12, "n={n}: {got} vs {want}");
        }
    }

    #[test]
    fn shifted_distribution_increases_mmd2() {
        let a = gaussian_set(200, 4, 0.0, 1);
        let same = gaussian_set(200, 4, 0.0, 2);
        let far = gaussian_set(200, 4, 5.0, 3);
        let near_zero = kid(&a, &same).unwrap().mmd2;
        let separated = kid(&a, &far).unwrap().mmd2;
        assert!(separated > 0.0);
        assert!(separated > near_zero.abs() * 10.0);
    }

    #[test]
    fn block_mode_reports_spread() {
        let a = gaussian_set(64, 3, 0.0, 10);
        let b = gaussian_set(64, 3, 0.0, 11);
        let r = kid_with(&a, &b, KidOptions { blocks: 4, seed: 5 }).unwrap();
        assert_eq!(r.blocks, 4);
        assert!(r.block_std >= 0.0);
    }

    #[test]
    fn invalid_blocks_rejected() {
        let a = gaussian_set(4, 2, 0.0, 1);
        let b = gaussian_set(4, 2, 0.0, 2);
        assert_eq!(
            kid_with(&a, &b, KidOptions { blocks: 0, seed: 0 }),
            Err(FeatureError::InvalidBlocks)
        );
        assert_eq!(
            kid_with(&a, &b, KidOptions { blocks: 3, seed: 0 }),
            Err(FeatureError::InvalidBlocks)
        );
    }

    #[test]
    fn too_few_rows_rejected() {
        let a = gaussian_set(1, 2, 0.0, 1);
        let b = gaussian_set(4, 2, 0.0, 2);
        assert_eq!(kid(&a, &b), Err(FeatureError::TooFewRows));
    }
}
