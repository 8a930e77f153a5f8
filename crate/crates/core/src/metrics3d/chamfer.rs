use alloc::vec::Vec;

use crate::fmath::pairwise_sum;
use crate::geometry::{build_index, PointCloud};

/// Bidirectional Chamfer distance between two point clouds.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ChamferReport {
    /// Mean nearest-neighbor distance from cloud A into cloud B.
    pub mean_a_to_b: f64,
    /// Mean nearest-neighbor distance from cloud B into cloud A.
    pub mean_b_to_a: f64,
    /// Average of the two directional means.
    pub cd: f64,
    /// Whether per-point distances were squared before averaging.
    pub squared: bool,
}

/// Chamfer distance with unsquared Euclidean distances: per-direction
/// means of exact nearest-neighbor distances, averaged over the two
/// directions.
pub fn chamfer_distance(a: &PointCloud, b: &PointCloud) -> ChamferReport {
    chamfer_distance_with(a, b, false)
}

/// `squared` switches the per-point contribution to squared distances.
pub fn chamfer_distance_with(a: &PointCloud, b: &PointCloud, squared: bool) -> ChamferReport {
    let mean_a_to_b = directed_mean(a, b, squared);
    let mean_b_to_a = directed_mean(b, a, squared);
    ChamferReport {
        mean_a_to_b,
        mean_b_to_a,
        cd: 0.5 * (mean_a_to_b + mean_b_to_a),
        squared,
    }
}

fn directed_mean(from: &PointCloud, to: &PointCloud, squared: bool) -> f64 {
    let index = build_index(to);
    let dists: Vec<f64> = from
        .points()
        .iter()
        .map(|p| {
            if squared {
                index.nearest_sq(p)
            } else {
                index.nearest(p).0
            }
        })
        .collect();
    pairwise_sum(&dists) / dists.len() as f64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Point3;
    use alloc::vec;

    fn cloud(pts: &[(f64, f64, f64)]) -> PointCloud {
        PointCloud::new(pts.iter().map(|&(x, y, z)| Point3::new(x, y, z)).collect()).unwrap()
    }

    #[test]
    fn identical_clouds_have_zero_cd() {
        let a = cloud(&[(0.0, 0.0, 0.0), (1.0, 2.0, 3.0), (-1.0, 0.5, 0.25)]);
        let r = chamfer_distance(&a, &a);
        assert_eq!(r.cd, 0.0);
        assert_eq!(r.mean_a_to_b, 0.0);
        assert_eq!(r.mean_b_to_a, 0.0);
    }

    #[test]
    fn two_points_unit_apart() {
        let a = cloud(&[(0.0, 0.0, 0.0)]);
        let b = cloud(&[(1.0, 0.0, 0.0)]);
        let r = chamfer_distance(&a, &b);
        assert_eq!(r.mean_a_to_b, 1.0);
        assert_eq!(r.mean_b_to_a, 1.0);
        assert_eq!(r.cd, 1.0);
    }

    #[test]
    fn asymmetric_counts_still_average_to_one() {
        let a = cloud(&[(0.0, 0.0, 0.0), (2.0, 0.0, 0.0)]);
        let b = cloud(&[(1.0, 0.0, 0.0)]);
        let r = chamfer_distance(&a, &b);
        assert_eq!(r.mean_a_to_b, 1.0);
        assert_eq!(r.mean_b_to_a, 1.0);
        assert_eq!(r.cd, 1.0);
    }

    #[test]
    fn symmetric_in_cd() {
        let a = cloud(&[(0.0, 0.0, 0.0), (0.5, 0.5, 0.5), (3.0, 1.0, 0.0)]);
        let b = cloud(&[(1.0, 1.0, 1.0), (-0.5, 0.0, 2.0)]);
        let ab = chamfer_distance(&a, &b);
        let ba = chamfer_distance(&b, &a);
        assert_eq!(ab.cd, ba.cd);
        assert_eq!(ab.mean_a_to_b, ba.mean_b_to_a);
    }

    #[test]
    fn squared_mode() {
        let a = cloud(&[(0.0, 0.0, 0.0)]);
        let b = cloud(&[(2.0, 0.0, 0.0)]);
        let r = chamfer_distance_with(&a, &b, true);
        assert_eq!(r.cd, 4.0);
    }
}
