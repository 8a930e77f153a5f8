use alloc::vec::Vec;

use super::{FeatureError, FeatureSet};
use crate::fmath::{pairwise_sum, sqrt};

/// Mean cosine similarity over paired rows: row `i` of `a` against row
/// `i` of `b`. Rows with zero norm are rejected.
pub fn clip_score(a: &FeatureSet, b: &FeatureSet) -> Result<f64, FeatureError> {
    if a.d() != b.d() {
        return Err(FeatureError::DimensionMismatch { left: a.d(), right: b.d() });
    }
    if a.n() != b.n() {
        return Err(FeatureError::CountMismatch { left: a.n(), right: b.n() });
    }
    let mut cosines = Vec::with_capacity(a.n());
    for i in 0..a.n() {
        let (ra, rb) = (a.row(i), b.row(i));
        let (mut dot, mut na, mut nb) = (0.0f64, 0.0f64, 0.0f64);
        for (x, y) in ra.iter().zip(rb) {
            dot += x * y;
            na += x * x;
            nb += y * y;
        }
        if na == 0.0 || nb == 0.0 {
            return Err(FeatureError::ZeroNormRow(i));
        }
        cosines.push(dot / (sqrt(na) * sqrt(nb)));
    }
    Ok(pairwise_sum(&cosines) / a.n() as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn identical_unit_rows_score_one() {
        let a = FeatureSet::from_rows(2, 2, vec![1.0, 0.0, 0.0, 1.0]).unwrap();
        assert_eq!(clip_score(&a, &a).unwrap(), 1.0);
    }

    #[test]
    fn orthogonal_rows_score_zero() {
        let a = FeatureSet::from_rows(2, 2, vec![1.0, 0.0, 0.0, 1.0]).unwrap();
        let b = FeatureSet::from_rows(2, 2, vec![0.0, 1.0, 1.0, 0.0]).unwrap();
        assert_eq!(clip_score(&a, &b).unwrap(), 0.0);
    }

    #[test]
    fn sixty_degree_pairs() {
        // (1, 0) against (cos 60, sin 60).
        let a = FeatureSet::from_rows(1, 2, vec![1.0, 0.0]).unwrap();
        let b = FeatureSet::from_rows(1, 2, vec![0.5, 0.75f64.sqrt()]).unwrap();
        let v = clip_score(&a, &b).unwrap();
        assert!((v - 0.5).abs() < 1e-9);
    }

    #[test]
    fn scale_invariant() {
        let a = FeatureSet::from_rows(2, 3, vec![1.0, 2.0, -1.0, 0.5, 0.25, 4.0]).unwrap();
        let b = FeatureSet::from_rows(2, 3, vec![-2.0, 1.0, 0.5, 1.0, 1.0, 1.0]).unwrap();
        let scaled =
            FeatureSet::from_rows(2, 3, vec![-2.0 * 7.0, 7.0, 0.5 * 7.0, 0.2, 0.2, 0.2]).unwrap();
        let v1 = clip_score(&a, &b).unwrap();
        let v2 = clip_score(&a, &scaled).unwrap();
        assert!((v1 - v2).abs() < 1e-12);
    }

    #[test]
    fn count_mismatch_rejected() {
        let a = FeatureSet::from_rows(2, 2, vec![1.0; 4]).unwrap();
        let b = FeatureSet::from_rows(3, 2, vec![1.0; 6]).unwrap();
        assert_eq!(
            clip_score(&a, &b),
            Err(FeatureError::CountMismatch { left: 2, right: 3 })
        );
    }

    #[test]
    fn zero_norm_row_rejected() {
        let a = FeatureSet::from_rows(2, 2, vec![1.0, 0.0, 0.0, 0.0]).unwrap();
        assert_eq!(clip_score(&a, &a), Err(FeatureError::ZeroNormRow(1)));
    }
}
