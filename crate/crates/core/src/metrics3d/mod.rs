//! 3D fidelity metrics over aligned meshes: Chamfer distance, F-Score,
//! and volumetric IoU on parity-voxelized occupancy grids.

mod chamfer;
mod fscore;
mod voxel;

pub use chamfer::{chamfer_distance, chamfer_distance_with, ChamferReport};
pub use fscore::{f_score, FScoreReport};
pub use voxel::{volume_iou, voxelize_solid, voxelize_surface_fill, OccupancyGrid};

/// Errors from metric evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MetricError {
    /// F-Score threshold must be positive.
    InvalidTau,
    /// Voxel grid resolution must be at least 1.
    ZeroResolution,
    /// IoU operands differ in resolution, origin, or voxel size.
    GridMismatch,
    /// Both occupancy grids are empty; IoU is undefined.
    NoOccupiedVolume,
}

impl core::fmt::Display for MetricError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            Self::InvalidTau => write!(f, "tau must be positive"),
            Self::ZeroResolution => write!(f, "voxel resolution must be at least 1"),
            Self::GridMismatch => write!(f, "occupancy grids do not share a layout"),
            Self::NoOccupiedVolume => write!(f, "no occupied volume"),
        }
    }
}

impl core::error::Error for MetricError {}
