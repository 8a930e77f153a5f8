use super::MetricError;
use crate::geometry::{build_index, PointCloud};

/// Precision/recall of predicted points against ground truth at a fixed
/// distance threshold, plus their harmonic mean.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct FScoreReport {
    pub tau: f64,
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
}

/// F-Score at threshold `tau` (closed comparison: a point within exactly
/// `tau` counts as matched).
///
/// `predicted` plays the role of the reconstruction, `truth` the
/// reference: precision is the matched fraction of `predicted`, recall
/// the matched fraction of `truth`.
pub fn f_score(
    predicted: &PointCloud,
    truth: &PointCloud,
    tau: f64,
) -> Result<FScoreReport, MetricError> {
    if tau.is_nan() || tau <= 0.0 || !tau.is_finite() {
        return Err(MetricError::InvalidTau);
    }
    let tau_sq = tau * tau;
    let precision = matched_fraction(predicted, truth, tau_sq);
    let recall = matched_fraction(truth, predicted, tau_sq);
    let f1 = if precision + recall > 0.0 {
        2.0 * precision * recall / (precision + recall)
    } else {
        0.0
    };
    Ok(FScoreReport { tau, precision, recall, f1 })
}

fn matched_fraction(from: &PointCloud, to: &PointCloud, tau_sq: f64) -> f64 {
    let index = build_index(to);
    let hits = from
        .points()
        .iter()
        .filter(|p| index.nearest_sq(p) <= tau_sq)
        .count();
    hits as f64 / from.len() as f64
}
