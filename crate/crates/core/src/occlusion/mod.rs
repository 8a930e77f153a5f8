//! Occlusion pair synthesis over binary masks and RGBA buffers:
//! element-wise mask application, occluder compositing, mask morphology,
//! and the filtering rules that keep only usable training samples.
//!
//! PNG encoding/decoding and dataset manifests live in the companion
//! `deocc` crate; everything here operates on in-memory buffers.

mod compose;
mod filter;
mod image;
mod mask;
mod morphology;

pub use compose::{
    composite_occluder, make_sample, mask_apply, occlusion_ratio, OcclusionSample,
};
pub use filter::{filter_sample, touches_boundary, FilterDecision, FilterPolicy, RejectReason};
pub use image::RgbaImage;
pub use mask::BinaryMask;
pub use morphology::{dilate, erode};

/// Errors from mask and image operations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OcclusionError {
    /// Width and height must both be positive.
    EmptyDimensions,
    /// Buffer length disagrees with width * height.
    BufferSize { expected: usize, actual: usize },
    /// Operands differ in size.
    DimensionMismatch {
        left: (usize, usize),
        right: (usize, usize),
    },
    /// The full-object mask has no pixels; no ratio is defined.
    EmptyFullMask,
    /// The visible mask is not contained in the full mask.
    NotSubset,
}

impl core::fmt::Display for OcclusionError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            Self::EmptyDimensions => write!(f, "image dimensions must be positive"),
            Self::BufferSize { expected, actual } => {
                write!(f, "buffer size mismatch: expected {expected}, got {actual}")
            }
            Self::DimensionMismatch { left, right } => write!(
                f,
                "dimension mismatch: {}x{} vs {}x{}",
                left.0, left.1, right.0, right.1
            ),
            Self::EmptyFullMask => write!(f, "full mask is empty"),
            Self::NotSubset => write!(f, "visible mask is not a subset of the full mask"),
        }
    }
}

impl core::error::Error for OcclusionError {}
