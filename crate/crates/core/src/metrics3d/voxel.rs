//! Solid voxelization of meshes into the fixed `[-1, 1]^3` box.
//!
//! The default mode decides each voxel by the parity of triangle
//! crossings along a +z ray from the voxel center, which is meaningful
//! for closed (watertight) meshes only - that is a caller contract. A
//! surface-fill fallback rasterizes triangle surfaces and flood-fills
//! from the box exterior for near-watertight inputs.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use super::MetricError;
use crate::fmath::{ceil, floor};
use crate::geometry::{Point3, TriangleMesh};

/// Ray origins and voxel centers sit at `(index + CENTER_OFFSET) * voxel
/// size` per axis. The 1e-4 sub-voxel shift keeps rays off mesh vertices,
/// edges, and axis-aligned faces that coincide with the regular grid.
const CENTER_OFFSET: f64 = 0.5 + 1e-4;

/// Bit-packed voxel occupancy over `[-1, 1]^3`.
///
/// Linear layout is x-fastest: `index = (k * R + j) * R + i`.
#[derive(Debug, Clone, PartialEq)]
pub struct OccupancyGrid {
    resolution: usize,
    origin: Point3,
    voxel_size: f64,
    words: Vec<u64>,
}

impl OccupancyGrid {
    fn empty(resolution: usize) -> Result<Self, MetricError> {
        if resolution == 0 {
            return Err(MetricError::ZeroResolution);
        }
        let cells = resolution * resolution * resolution;
        Ok(Self {
            resolution,
            origin: Point3::new(-1.0, -1.0, -1.0),
            voxel_size: 2.0 / resolution as f64,
            words: vec![0u64; cells.div_ceil(64)],
        })
    }

    pub fn resolution(&self) -> usize {
        self.resolution
    }

    pub fn origin(&self) -> Point3 {
        self.origin
    }

    pub fn voxel_size(&self) -> f64 {
        self.voxel_size
    }

    #[inline]
    fn linear(&self, i: usize, j: usize, k: usize) -> usize {
        (k * self.resolution + j) * self.resolution + i
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize, k: usize) -> bool {
        let idx = self.linear(i, j, k);
        self.words[idx / 64] >> (idx % 64) & 1 == 1
    }

    #[inline]
    fn set(&mut self, i: usize, j: usize, k: usize) {
        let idx = self.linear(i, j, k);
        self.words[idx / 64] |= 1 << (idx % 64);
    }

    pub fn occupied_count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn occupied_fraction(&self) -> f64 {
        self.occupied_count() as f64 / (self.resolution.pow(3)) as f64
    }

    /// Center coordinate of cell `index` along one axis (all axes share
    /// the same origin and spacing).
    fn center(&self, index: usize, axis: usize) -> f64 {
        self.origin.coord(axis) + (index as f64 + CENTER_OFFSET) * self.voxel_size
    }

    fn same_layout(&self, other: &Self) -> bool {
        self.resolution == other.resolution
            && self.origin == other.origin
            && self.voxel_size == other.voxel_size
    }
}

/// Intersection-over-union of two occupancy grids.
pub fn volume_iou(a: &OccupancyGrid, b: &OccupancyGrid) -> Result<f64, MetricError> {
    if !a.same_layout(b) {
        return Err(MetricError::GridMismatch);
    }
    let mut inter = 0u64;
    let mut union = 0u64;
    for (wa, wb) in a.words.iter().zip(&b.words) {
        inter += (wa & wb).count_ones() as u64;
        union += (wa | wb).count_ones() as u64;
    }
    if union == 0 {
        return Err(MetricError::NoOccupiedVolume);
    }
    Ok(inter as f64 / union as f64)
}

/// A mesh triangle projected to the xy plane, wound counter-clockwise.
struct ProjTri {
    ax: f64,
    ay: f64,
    az: f64,
    bx: f64,
    by: f64,
    bz: f64,
    cx: f64,
    cy: f64,
    cz: f64,
    area2: f64,
}

#[inline]
fn edge_fn(x0: f64, y0: f64, x1: f64, y1: f64, px: f64, py: f64) -> f64 {
    (x1 - x0) * (py - y0) - (y1 - y0) * (px - x0)
}

/// Half-open boundary rule: a point exactly on an edge belongs to the
/// triangle whose directed edge is "top or left", so shared edges are
/// counted exactly once across neighbors.
#[inline]
fn top_left(x0: f64, y0: f64, x1: f64, y1: f64) -> bool {
    let dy = y1 - y0;
    dy < 0.0 || (dy == 0.0 && x1 < x0)
}

impl ProjTri {
    fn new([a, b, c]: [Point3; 3]) -> Option<Self> {
        let area2 = edge_fn(a.x, a.y, b.x, b.y, c.x, c.y);
        if area2 == 0.0 {
            // Projects edge-on; its silhouette edges are owned by the
            // adjacent faces, so skipping keeps parity consistent.
            return None;
        }
        let (b, c) = if area2 < 0.0 { (c, b) } else { (b, c) };
        Some(Self {
            ax: a.x,
            ay: a.y,
            az: a.z,
            bx: b.x,
            by: b.y,
            bz: b.z,
            cx: c.x,
            cy: c.y,
            cz: c.z,
            area2: area2.abs(),
        })
    }

    fn xy_bounds(&self) -> (f64, f64, f64, f64) {
        (
            self.ax.min(self.bx).min(self.cx),
            self.ax.max(self.bx).max(self.cx),
            self.ay.min(self.by).min(self.cy),
            self.ay.max(self.by).max(self.cy),
        )
    }

    /// The z at which a vertical line through `(px, py)` pierces this
    /// triangle, or `None` if it misses under the half-open rule.
    fn crossing_z(&self, px: f64, py: f64) -> Option<f64> {
        let w0 = edge_fn(self.bx, self.by, self.cx, self.cy, px, py);
        let w1 = edge_fn(self.cx, self.cy, self.ax, self.ay, px, py);
        let w2 = edge_fn(self.ax, self.ay, self.bx, self.by, px, py);

        let inside = check(w0, self.bx, self.by, self.cx, self.cy)
            && check(w1, self.cx, self.cy, self.ax, self.ay)
            && check(w2, self.ax, self.ay, self.bx, self.by);
        if !inside {
            return None;
        }
        Some((w0 * self.az + w1 * self.bz + w2 * self.cz) / self.area2)
    }
}

#[inline]
fn check(w: f64, x0: f64, y0: f64, x1: f64, y1: f64) -> bool {
    if w > 0.0 {
        true
    } else if w == 0.0 {
        top_left(x0, y0, x1, y1)
    } else {
        false
    }
}

/// Range of cell indices whose sampling position lies within `[lo, hi]`
/// along one axis, clamped to the grid.
fn cell_range(lo: f64, hi: f64, resolution: usize, voxel_size: f64) -> Option<(usize, usize)> {
    let first = ceil((lo + 1.0) / voxel_size - CENTER_OFFSET);
    let last = floor((hi + 1.0) / voxel_size - CENTER_OFFSET);
    let first = first.max(0.0) as isize;
    let last = last.min(resolution as f64 - 1.0) as isize;
    if first > last || last < 0 {
        None
    } else {
        Some((first as usize, last as usize))
    }
}

/// Parity voxelization: a voxel is occupied iff a +z ray from its
/// (jittered) center crosses the mesh an odd number of times.
pub fn voxelize_solid(
    mesh: &TriangleMesh,
    resolution: usize,
) -> Result<OccupancyGrid, MetricError> {
    let mut grid = OccupancyGrid::empty(resolution)?;
    let r = resolution;
    let vs = grid.voxel_size;

    let tris: Vec<ProjTri> = (0..mesh.face_count())
        .filter_map(|i| ProjTri::new(mesh.triangle(i)))
        .collect();

    // Bucket triangles by the grid columns their xy bounds touch.
    let mut columns: Vec<Vec<u32>> = vec![Vec::new(); r * r];
    for (ti, tri) in tris.iter().enumerate() {
        let (xmin, xmax, ymin, ymax) = tri.xy_bounds();
        let Some((i0, i1)) = cell_range(xmin, xmax, r, vs) else {
            continue;
        };
        let Some((j0, j1)) = cell_range(ymin, ymax, r, vs) else {
            continue;
        };
        for j in j0..=j1 {
            for i in i0..=i1 {
                columns[j * r + i].push(ti as u32);
            }
        }
    }

    let mut crossings: Vec<f64> = Vec::new();
    for j in 0..r {
        let py = grid.center(j, 1);
        for i in 0..r {
            let bucket = &columns[j * r + i];
            if bucket.is_empty() {
                continue;
            }
            let px = grid.center(i, 0);
            crossings.clear();
            for &ti in bucket {
                if let Some(z) = tris[ti as usize].crossing_z(px, py) {
                    crossings.push(z);
                }
            }
            if crossings.is_empty() {
                continue;
            }
            crossings.sort_unstable_by(f64::total_cmp);
            // Crossings strictly above the center determine parity; walk
            // the sorted list once as k ascends.
            let mut below = 0usize;
            for k in 0..r {
                let cz = grid.center(k, 2);
                while below < crossings.len() && crossings[below] <= cz {
                    below += 1;
                }
                if (crossings.len() - below) % 2 == 1 {
                    grid.set(i, j, k);
                }
            }
        }
    }
    Ok(grid)
}

/// Surface-fill voxelization for near-watertight meshes: rasterize the
/// triangle surfaces, flood-fill the exterior from the box boundary, and
/// take the complement.
pub fn voxelize_surface_fill(
    mesh: &TriangleMesh,
    resolution: usize,
) -> Result<OccupancyGrid, MetricError> {
    let mut surface = OccupancyGrid::empty(resolution)?;
    let r = resolution;
    let vs = surface.voxel_size;
    let half = [vs * 0.5; 3];

    for f in 0..mesh.face_count() {
        let tri = mesh.triangle(f);
        let mut lo = [f64::INFINITY; 3];
        let mut hi = [f64::NEG_INFINITY; 3];
        for v in &tri {
            for axis in 0..3 {
                lo[axis] = lo[axis].min(v.coord(axis));
                hi[axis] = hi[axis].max(v.coord(axis));
            }
        }
        // Voxel AABB ranges overlapped by the triangle AABB.
        let mut ranges = [(0usize, 0usize); 3];
        let mut hit = true;
        for axis in 0..3 {
            let first = floor((lo[axis] + 1.0) / vs).max(0.0) as isize;
            let last = floor((hi[axis] + 1.0) / vs).min(r as f64 - 1.0) as isize;
            if first > last || last < 0 || first >= r as isize {
                hit = false;
                break;
            }
            ranges[axis] = (first.max(0) as usize, last as usize);
        }
        if !hit {
            continue;
        }
        for k in ranges[2].0..=ranges[2].1 {
            for j in ranges[1].0..=ranges[1].1 {
                for i in ranges[0].0..=ranges[0].1 {
                    if surface.get(i, j, k) {
                        continue;
                    }
                    let center = [
                        -1.0 + (i as f64 + 0.5) * vs,
                        -1.0 + (j as f64 + 0.5) * vs,
                        -1.0 + (k as f64 + 0.5) * vs,
                    ];
                    if tri_box_overlap(center, half, &tri) {
                        surface.set(i, j, k);
                    }
                }
            }
        }
    }

    // BFS from every boundary cell that is not surface; unreached cells
    // are surface or enclosed interior.
    let mut outside = vec![false; r * r * r];
    let mut queue: VecDeque<(usize, usize, usize)> = VecDeque::new();
    let try_seed = |i: usize, j: usize, k: usize,
                    outside: &mut Vec<bool>,
                    queue: &mut VecDeque<(usize, usize, usize)>| {
        let idx = (k * r + j) * r + i;
        if !outside[idx] && !surface.get(i, j, k) {
            outside[idx] = true;
            queue.push_back((i, j, k));
        }
    };
    for a in 0..r {
        for b in 0..r {
            try_seed(0, a, b, &mut outside, &mut queue);
            try_seed(r - 1, a, b, &mut outside, &mut queue);
            try_seed(a, 0, b, &mut outside, &mut queue);
            try_seed(a, r - 1, b, &mut outside, &mut queue);
            try_seed(a, b, 0, &mut outside, &mut queue);
            try_seed(a, b, r - 1, &mut outside, &mut queue);
        }
    }
    while let Some((i, j, k)) = queue.pop_front() {
        let neighbors = [
            (i.wrapping_sub(1), j, k),
            (i + 1, j, k),
            (i, j.wrapping_sub(1), k),
            (i, j + 1, k),
            (i, j, k.wrapping_sub(1)),
            (i, j, k + 1),
        ];
        for (ni, nj, nk) in neighbors {
            if ni >= r || nj >= r || nk >= r {
                continue;
            }
            let idx = (nk * r + nj) * r + ni;
            if !outside[idx] && !surface.get(ni, nj, nk) {
                outside[idx] = true;
                queue.push_back((ni, nj, nk));
            }
        }
    }

    let mut grid = OccupancyGrid::empty(resolution)?;
    for k in 0..r {
        for j in 0..r {
            for i in 0..r {
                if !outside[(k * r + j) * r + i] {
                    grid.set(i, j, k);
                }
            }
        }
    }
    Ok(grid)
}

/// Separating-axis triangle/box overlap test (Akenine-Moller).
fn tri_box_overlap(center: [f64; 3], half: [f64; 3], tri: &[Point3; 3]) -> bool {
    let v: [[f64; 3]; 3] = core::array::from_fn(|i| {
        [
            tri[i].x - center[0],
            tri[i].y - center[1],
            tri[i].z - center[2],
        ]
    });
    let e: [[f64; 3]; 3] = [
        [v[1][0] - v[0][0], v[1][1] - v[0][1], v[1][2] - v[0][2]],
        [v[2][0] - v[1][0], v[2][1] - v[1][1], v[2][2] - v[1][2]],
        [v[0][0] - v[2][0], v[0][1] - v[2][1], v[0][2] - v[2][2]],
    ];

    // 9 cross-product axes: unit axis u_a x edge e_b.
    for (a, edge) in [(0usize, 0usize), (0, 1), (0, 2), (1, 0), (1, 1), (1, 2), (2, 0), (2, 1), (2, 2)]
    {
        let axis = cross(unit(a), e[edge]);
        if is_separating(&v, half, axis) {
            return false;
        }
    }
    // 3 box face normals.
    for axis in 0..3 {
        let lo = v.iter().map(|p| p[axis]).fold(f64::INFINITY, f64::min);
        let hi = v.iter().map(|p| p[axis]).fold(f64::NEG_INFINITY, f64::max);
        if lo > half[axis] || hi < -half[axis] {
            return false;
        }
    }
    // Triangle plane.
    let normal = cross(e[0], e[1]);
    !is_separating(&v, half, normal)
}

fn unit(a: usize) -> [f64; 3] {
    let mut u = [0.0; 3];
    u[a] = 1.0;
    u
}

fn cross(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

fn is_separating(v: &[[f64; 3]; 3], half: [f64; 3], axis: [f64; 3]) -> bool {
    let proj: [f64; 3] = core::array::from_fn(|i| {
        v[i][0] * axis[0] + v[i][1] * axis[1] + v[i][2] * axis[2]
    });
    let radius = half[0] * axis[0].abs() + half[1] * axis[1].abs() + half[2] * axis[2].abs();
    let lo = proj[0].min(proj[1]).min(proj[2]);
    let hi = proj[0].max(proj[1]).max(proj[2]);
    lo > radius || hi < -radius
}
