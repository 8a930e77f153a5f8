//! Closed primitive meshes, used as fixtures by the metric self-checks
//! (sampling-noise floors, voxelization convergence) and the test
//! suites.

use alloc::vec::Vec;

use super::{Point3, TriangleMesh};
use crate::fmath::{cos, sin};

/// Axis-aligned box as 12 consistently wound triangles.
pub fn box_mesh(lo: [f64; 3], hi: [f64; 3]) -> TriangleMesh {
    let corners: Vec<Point3> = (0..8)
        .map(|i| {
            Point3::new(
                if i & 1 == 0 { lo[0] } else { hi[0] },
                if i & 2 == 0 { lo[1] } else { hi[1] },
                if i & 4 == 0 { lo[2] } else { hi[2] },
            )
        })
        .collect();
    let quads: [[usize; 4]; 6] = [
        [0, 2, 3, 1], // z = lo
        [4, 5, 7, 6], // z = hi
        [0, 1, 5, 4], // y = lo
        [2, 6, 7, 3], // y = hi
        [0, 4, 6, 2], // x = lo
        [1, 3, 7, 5], // x = hi
    ];
    let mut faces = Vec::with_capacity(12);
    for q in quads {
        faces.push([q[0], q[1], q[2]]);
        faces.push([q[0], q[2], q[3]]);
    }
    TriangleMesh::new(corners, faces).expect("box is a valid mesh")
}

/// Watertight UV sphere centered at the origin.
///
/// `rings >= 2` latitude bands and `segments >= 3` longitude steps give
/// `2 * segments * (rings - 1)` triangles.
pub fn uv_sphere(radius: f64, rings: usize, segments: usize) -> TriangleMesh {
    assert!(rings >= 2 && segments >= 3);
    let mut vertices = Vec::with_capacity(2 + (rings - 1) * segments);
    vertices.push(Point3::new(0.0, 0.0, radius));
    for ring in 1..rings {
        let polar = core::f64::consts::PI * ring as f64 / rings as f64;
        let (sp, cp) = (sin(polar), cos(polar));
        for seg in 0..segments {
            let azimuth = core::f64::consts::TAU * seg as f64 / segments as f64;
            vertices.push(Point3::new(
                radius * sp * cos(azimuth),
                radius * sp * sin(azimuth),
                radius * cp,
            ));
        }
    }
    vertices.push(Point3::new(0.0, 0.0, -radius));
    let south = vertices.len() - 1;

    let ring_start = |ring: usize| 1 + (ring - 1) * segments;
    let mut faces = Vec::with_capacity(2 * segments * (rings - 1));
    for s in 0..segments {
        let next = (s + 1) % segments;
        faces.push([0, ring_start(1) + s, ring_start(1) + next]);
    }
    for ring in 1..rings - 1 {
        let (a0, b0) = (ring_start(ring), ring_start(ring + 1));
        for s in 0..segments {
            let next = (s + 1) % segments;
            faces.push([a0 + s, b0 + s, b0 + next]);
            faces.push([a0 + s, b0 + next, a0 + next]);
        }
    }
    let last = ring_start(rings - 1);
    for s in 0..segments {
        let next = (s + 1) % segments;
        faces.push([last + s, south, last + next]);
    }
    TriangleMesh::new(vertices, faces).expect("sphere is a valid mesh")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fmath::sqrt;

    #[test]
    fn box_area_matches() {
        let mesh = box_mesh([0.0; 3], [1.0, 2.0, 3.0]);
        let expect = 2.0 * (1.0 * 2.0 + 2.0 * 3.0 + 1.0 * 3.0);
        assert!((mesh.total_area() - expect).abs() < 1e-12);
        assert_eq!(mesh.face_count(), 12);
    }

    #[test]
    fn sphere_vertices_on_radius() {
        let mesh = uv_sphere(0.8, 12, 18);
        for v in mesh.vertices() {
            assert!((v.norm() - 0.8).abs() < 1e-12);
        }
        assert_eq!(mesh.face_count(), 2 * 18 * 11);
    }

    #[test]
    fn sphere_area_approaches_analytic() {
        let mesh = uv_sphere(1.0, 48, 96);
        let analytic = 4.0 * core::f64::consts::PI;
        let got = mesh.total_area();
        assert!((got - analytic).abs() / analytic < 0.01, "area {got}");
        let _ = sqrt(got);
    }

    #[test]
    fn sphere_is_closed() {
        // Every edge must be shared by exactly two faces.
        let mesh = uv_sphere(1.0, 6, 8);
        let mut edges = alloc::collections::BTreeMap::new();
        for f in mesh.faces() {
            for k in 0..3 {
                let (a, b) = (f[k], f[(k + 1) % 3]);
                let key = (a.min(b), a.max(b));
                *edges.entry(key).or_insert(0usize) += 1;
            }
        }
        assert!(edges.values().all(|&c| c == 2));
    }
}
