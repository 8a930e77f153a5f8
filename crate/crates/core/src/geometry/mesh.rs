use alloc::vec::Vec;

use super::{GeometryError, Point3};

/// An indexed triangle mesh.
///
/// Zero-area faces are permitted; they simply carry zero sampling weight.
#[derive(Debug, Clone, PartialEq)]
pub struct TriangleMesh {
    vertices: Vec<Point3>,
    faces: Vec<[usize; 3]>,
}

impl TriangleMesh {
    /// Validates that every face index resolves and that the mesh carries
    /// at least one vertex and one face.
    pub fn new(vertices: Vec<Point3>, faces: Vec<[usize; 3]>) -> Result<Self, GeometryError> {
        if vertices.is_empty() || faces.is_empty() {
            return Err(GeometryError::EmptyMesh);
        }
        if vertices.iter().any(|v| !v.is_finite()) {
            return Err(GeometryError::NonFinite);
        }
        for (fi, face) in faces.iter().enumerate() {
            for &idx in face {
                if idx >= vertices.len() {
                    return Err(GeometryError::FaceIndexOutOfRange {
                        face: fi,
                        index: idx,
                        vertex_count: vertices.len(),
                    });
                }
            }
        }
        Ok(Self { vertices, faces })
    }

    pub fn vertices(&self) -> &[Point3] {
        &self.vertices
    }

    pub fn faces(&self) -> &[[usize; 3]] {
        &self.faces
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    /// The three corner points of face `i`.
    pub fn triangle(&self, i: usize) -> [Point3; 3] {
        let [a, b, c] = self.faces[i];
        [self.vertices[a], self.vertices[b], self.vertices[c]]
    }

    pub fn face_area(&self, i: usize) -> f64 {
        let [a, b, c] = self.triangle(i);
        let ab = b.sub(&a);
        let ac = c.sub(&a);
        0.5 * ab.cross(&ac).norm()
    }

    pub fn total_area(&self) -> f64 {
        (0..self.face_count()).map(|i| self.face_area(i)).sum()
    }

    /// Axis-aligned bounding box as `(min, max)` corner points.
    pub fn bbox(&self) -> (Point3, Point3) {
        let mut lo = self.vertices[0];
        let mut hi = self.vertices[0];
        for v in &self.vertices {
            lo.x = lo.x.min(v.x);
            lo.y = lo.y.min(v.y);
            lo.z = lo.z.min(v.z);
            hi.x = hi.x.max(v.x);
            hi.y = hi.y.max(v.y);
            hi.z = hi.z.max(v.z);
        }
        (lo, hi)
    }

    /// Maps every vertex through `f`, keeping connectivity.
    pub fn map_vertices(&self, f: impl Fn(&Point3) -> Point3) -> TriangleMesh {
        TriangleMesh {
            vertices: self.vertices.iter().map(f).collect(),
            faces: self.faces.clone(),
        }
    }
}
