//! Core algorithms for occlusion-aware single-image 3D reconstruction
//! benchmarking: mesh and point-cloud metrics (Chamfer distance, F-Score,
//! volume IoU), feature-distribution metrics (FID, KID, CLIP score),
//! occlusion pair synthesis over masks and RGBA buffers, camera-pose and
//! occlusion-level stratification, and a small denoising-diffusion
//! training loop with exact gradients.
//!
//! The crate is `no_std`-compatible (`alloc` required). File formats are
//! handled as byte sequences here; actual file and image IO lives in the
//! companion `deocc` crate.

#![cfg_attr(not(feature = "std"), no_std)]
#![deny(unsafe_code)]

extern crate alloc;

#[cfg(all(not(feature = "std"), not(feature = "libm")))]
compile_error!("deocc-core requires either the `std` or the `libm` feature");

pub(crate) mod fmath;

pub mod benchmark;
pub mod diffusion;
pub mod features;
pub mod geometry;
pub mod linalg;
pub mod metrics3d;
pub mod occlusion;
pub mod rng;

pub use benchmark::{
    canonical_poses, classify_level, random_poses, BenchmarkError, CameraPose, LevelHistogram,
    OcclusionLevel,
};
pub use geometry::{
    align_unit_sphere, build_index, parse_obj, sample_surface, write_obj, AlignmentTransform,
    GeometryError, Point3, PointCloud, SpatialIndex, TriangleMesh,
};
pub use metrics3d::{
    chamfer_distance, f_score, volume_iou, voxelize_solid, voxelize_surface_fill, ChamferReport,
    FScoreReport, MetricError, OccupancyGrid,
};
pub use rng::SplitMix64;
