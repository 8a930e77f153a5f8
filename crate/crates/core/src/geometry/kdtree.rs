//! Exact nearest-neighbor search over 3D points.
//!
//! A balanced KD-tree built by median splits on the widest axis. Queries
//! prune with the usual hyperplane bound, so returned distances are exact
//! (not approximate). Read-only after construction and safe to query from
//! many threads.

use alloc::vec::Vec;

use super::{Point3, PointCloud};
use crate::fmath::sqrt;

#[derive(Debug, Clone)]
struct Node {
    /// Index into the point array.
    point: u32,
    axis: u8,
    left: i32,
    right: i32,
}

const NONE: i32 = -1;

/// Spatial index over a point cloud; queries return exact nearest
/// Euclidean distances.
#[derive(Debug, Clone)]
pub struct SpatialIndex {
    points: Vec<Point3>,
    nodes: Vec<Node>,
    root: i32,
}

/// Builds the index. The `PointCloud` type guarantees a non-empty,
/// finite input, which is exactly the precondition the tree needs.
pub fn build_index(cloud: &PointCloud) -> SpatialIndex {
    SpatialIndex::new(cloud)
}

impl SpatialIndex {
    pub fn new(cloud: &PointCloud) -> Self {
        let points = cloud.points().to_vec();
        let mut order: Vec<u32> = (0..points.len() as u32).collect();
        let mut nodes = Vec::with_capacity(points.len());
        let root = build(&points, &mut order, &mut nodes);
        Self { points, nodes, root }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Exact nearest neighbor: `(distance, index of the closest point)`.
    pub fn nearest(&self, query: &Point3) -> (f64, usize) {
        let mut best_sq = f64::INFINITY;
        let mut best_idx = 0usize;
        self.search(self.root, query, &mut best_sq, &mut best_idx);
        (sqrt(best_sq), best_idx)
    }

    /// Squared distance variant, for callers that only threshold.
    pub fn nearest_sq(&self, query: &Point3) -> f64 {
        let mut best_sq = f64::INFINITY;
        let mut best_idx = 0usize;
        self.search(self.root, query, &mut best_sq, &mut best_idx);
        best_sq
    }

    fn search(&self, node: i32, query: &Point3, best_sq: &mut f64, best_idx: &mut usize) {
        if node == NONE {
            return;
        }
        let n = &self.nodes[node as usize];
        let p = &self.points[n.point as usize];
        let d_sq = query.dist_sq(p);
        if d_sq < *best_sq {
            *best_sq = d_sq;
            *best_idx = n.point as usize;
        }
        let delta = query.coord(n.axis as usize) - p.coord(n.axis as usize);
        let (near, far) = if delta < 0.0 {
            (n.left, n.right)
        } else {
            (n.right, n.left)
        };
        self.search(near, query, best_sq, best_idx);
        if delta * delta < *best_sq {
            self.search(far, query, best_sq, best_idx);
        }
    }
}

fn build(points: &[Point3], order: &mut [u32], nodes: &mut Vec<Node>) -> i32 {
    if order.is_empty() {
        return NONE;
    }
    let axis = widest_axis(points, order);
    let mid = order.len() / 2;
    order.select_nth_unstable_by(mid, |&a, &b| {
        points[a as usize]
            .coord(axis)
            .total_cmp(&points[b as usize].coord(axis))
    });
    let point = order[mid];
    let idx = nodes.len() as i32;
    nodes.push(Node { point, axis: axis as u8, left: NONE, right: NONE });
    let (lo, rest) = order.split_at_mut(mid);
    let hi = &mut rest[1..];
    let left = build(points, lo, nodes);
    let right = build(points, hi, nodes);
    nodes[idx as usize].left = left;
    nodes[idx as usize].right = right;
    idx
}

fn widest_axis(points: &[Point3], order: &[u32]) -> usize {
    let mut lo = [f64::INFINITY; 3];
    let mut hi = [f64::NEG_INFINITY; 3];
    for &i in order {
        let p = &points[i as usize];
        for axis in 0..3 {
            lo[axis] = lo[axis].min(p.coord(axis));
            hi[axis] = hi[axis].max(p.coord(axis));
        }
    }
    let mut best = 0;
    for axis in 1..3 {
        if hi[axis] - lo[axis] > hi[best] - lo[best] {
            best = axis;
        }
    }
    best
}
