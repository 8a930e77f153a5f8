use super::{GeometryError, Point3, TriangleMesh};

/// Normalization mapping `v -> (v - center) / scale`.
///
/// Returned by [`align_unit_sphere`] so the identical normalization can
/// be replayed on a paired mesh or point when callers need a shared frame.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AlignmentTransform {
    pub center: Point3,
    pub scale: f64,
}

impl AlignmentTransform {
    pub const IDENTITY: AlignmentTransform = AlignmentTransform {
        center: Point3::ORIGIN,
        scale: 1.0,
    };

    pub fn apply_point(&self, p: &Point3) -> Point3 {
        p.sub(&self.center).scale(1.0 / self.scale)
    }

    pub fn apply(&self, mesh: &TriangleMesh) -> TriangleMesh {
        mesh.map_vertices(|v| self.apply_point(v))
    }
}

/// Centers the mesh on its bounding-box center and scales it so the
/// farthest vertex sits on the unit sphere.
///
/// The bounding-box center (rather than the vertex centroid) keeps the
/// normalization insensitive to tessellation density.
pub fn align_unit_sphere(
    mesh: &TriangleMesh,
) -> Result<(TriangleMesh, AlignmentTransform), GeometryError> {
    let (lo, hi) = mesh.bbox();
    let center = Point3::new(
        0.5 * (lo.x + hi.x),
        0.5 * (lo.y + hi.y),
        0.5 * (lo.z + hi.z),
    );
    let scale = mesh
        .vertices()
        .iter()
        .map(|v| v.sub(&center).norm())
        .fold(0.0f64, f64::max);
    if scale == 0.0 {
        return Err(GeometryError::DegenerateMesh);
    }
    let transform = AlignmentTransform { center, scale };
    Ok((transform.apply(mesh), transform))
}
