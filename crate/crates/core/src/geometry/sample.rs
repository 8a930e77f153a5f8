use alloc::vec::Vec;

use super::{GeometryError, Point3, PointCloud, TriangleMesh};
use crate::fmath::sqrt;
use crate::rng::SplitMix64;

/// Draws `n` points uniformly from the mesh surface.
///
/// Each sample picks a face with probability proportional to its area,
/// then a uniform point on that face through the square-root barycentric
/// warp `u = 1 - sqrt(r1)`, `v = sqrt(r1) (1 - r2)`, `w = sqrt(r1) r2`.
/// Deterministic for a given seed.
pub fn sample_surface(
    mesh: &TriangleMesh,
    n: usize,
    seed: u64,
) -> Result<PointCloud, GeometryError> {
    if n == 0 {
        return Err(GeometryError::ZeroSampleCount);
    }
    let mut cumulative = Vec::with_capacity(mesh.face_count());
    let mut total = 0.0f64;
    for i in 0..mesh.face_count() {
        total += mesh.face_area(i);
        cumulative.push(total);
    }
    if total <= 0.0 {
        return Err(GeometryError::ZeroSurfaceArea);
    }

    let mut rng = SplitMix64::new(seed);
    let mut points = Vec::with_capacity(n);
    for _ in 0..n {
        let target = rng.next_f64() * total;
        // First face whose cumulative area exceeds the target; zero-area
        // faces give empty intervals and can never be selected.
        let fi = cumulative.partition_point(|&c| c <= target);
        let fi = fi.min(mesh.face_count() - 1);
        let [a, b, c] = mesh.triangle(fi);
        let r1 = rng.next_f64();
        let r2 = rng.next_f64();
        let s = sqrt(r1);
        let (u, v, w) = (1.0 - s, s * (1.0 - r2), s * r2);
        points.push(Point3::new(
            u * a.x + v * b.x + w * c.x,
            u * a.y + v * b.y + w * c.y,
            u * a.z + v * b.z + w * c.z,
        ));
    }
    PointCloud::new(points)
}
