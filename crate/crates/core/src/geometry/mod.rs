//! Mesh and point-cloud primitives: OBJ parsing, unit-sphere alignment,
//! area-weighted surface sampling, and an exact nearest-neighbor index.

mod align;
mod kdtree;
mod mesh;
mod obj;
mod point;
mod sample;
pub mod shapes;

pub use align::{align_unit_sphere, AlignmentTransform};
pub use kdtree::{build_index, SpatialIndex};
pub use mesh::TriangleMesh;
pub use obj::{format_g, parse_obj, write_obj};
pub use point::{Point3, PointCloud};
pub use sample::sample_surface;

use alloc::string::String;

/// Errors from mesh parsing, validation, and sampling.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GeometryError {
    /// OBJ text could not be parsed; `line` is 1-based.
    Parse { line: usize, message: String },
    /// A face references a vertex index that does not exist.
    FaceIndexOutOfRange { face: usize, index: usize, vertex_count: usize },
    /// Mesh has no vertices or no faces.
    EmptyMesh,
    /// All vertices coincide, so no unit-sphere scale exists.
    DegenerateMesh,
    /// Total surface area is zero; nothing to sample.
    ZeroSurfaceArea,
    /// A point cloud must hold at least one point.
    EmptyCloud,
    /// A coordinate is NaN or infinite.
    NonFinite,
    /// Requested a sample count of zero.
    ZeroSampleCount,
}

impl core::fmt::Display for GeometryError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            Self::Parse { line, message } => write!(f, "parse error at line {line}: {message}"),
            Self::FaceIndexOutOfRange { face, index, vertex_count } => write!(
                f,
                "face {face}: index {index} out of range for {vertex_count} vertices"
            ),
            Self::EmptyMesh => write!(f, "empty mesh"),
            Self::DegenerateMesh => write!(f, "degenerate mesh: all vertices coincident"),
            Self::ZeroSurfaceArea => write!(f, "mesh has zero total surface area"),
            Self::EmptyCloud => write!(f, "point cloud is empty"),
            Self::NonFinite => write!(f, "non-finite coordinate"),
            Self::ZeroSampleCount => write!(f, "sample count must be at least 1"),
        }
    }
}

impl core::error::Error for GeometryError {}
