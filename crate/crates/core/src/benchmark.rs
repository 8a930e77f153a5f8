//! Benchmark assembly: the six canonical camera poses, random evaluation
//! poses, occlusion-level stratification, and manifest entries binding
//! occluded inputs to ground-truth views and meshes.

use alloc::string::String;
use alloc::vec::Vec;

use crate::rng::SplitMix64;

/// Camera pose in degrees at a fixed radius.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct CameraPose {
    pub elevation_deg: f64,
    pub azimuth_deg: f64,
    pub radius: f64,
}

/// The fixed six-view grid: azimuths 30..330 in 60-degree steps with
/// elevations alternating 30, -20 starting at 30.
pub fn canonical_poses() -> [CameraPose; 6] {
    let mut poses = [CameraPose { elevation_deg: 0.0, azimuth_deg: 0.0, radius: 1.0 }; 6];
    for (i, pose) in poses.iter_mut().enumerate() {
        pose.azimuth_deg = 30.0 + 60.0 * i as f64;
        pose.elevation_deg = if i % 2 == 0 { 30.0 } else { -20.0 };
    }
    poses
}

/// Random poses with azimuth uniform on [0, 360) and elevation uniform
/// on [-20, 30], re-drawn whenever both angles land within 1 degree of a
/// canonical pose. Deterministic for a given seed.
pub fn random_poses(n: usize, seed: u64) -> Vec<CameraPose> {
    let canonical = canonical_poses();
    let mut rng = SplitMix64::new(seed);
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        let azimuth = rng.next_range(0.0, 360.0);
        let elevation = rng.next_range(-20.0, 30.0);
        let collides = canonical.iter().any(|c| {
            let d_az = (azimuth - c.azimuth_deg).abs();
            let d_az = d_az.min(360.0 - d_az);
            d_az < 1.0 && (elevation - c.elevation_deg).abs() < 1.0
        });
        if !collides {
            out.push(CameraPose { elevation_deg: elevation, azimuth_deg: azimuth, radius: 1.0 });
        }
    }
    out
}

/// Occlusion difficulty bands over the hidden fraction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum OcclusionLevel {
    L1,
    L2,
    L3,
    L4,
    L5,
}

impl OcclusionLevel {
    pub const ALL: [OcclusionLevel; 5] = [
        OcclusionLevel::L1,
        OcclusionLevel::L2,
        OcclusionLevel::L3,
        OcclusionLevel::L4,
        OcclusionLevel::L5,
    ];

    pub fn label(&self) -> &'static str {
        match self {
            Self::L1 => "L1",
            Self::L2 => "L2",
            Self::L3 => "L3",
            Self::L4 => "L4",
            Self::L5 => "L5",
        }
    }

    pub fn index(&self) -> usize {
        match self {
            Self::L1 => 0,
            Self::L2 => 1,
            Self::L3 => 2,
            Self::L4 => 3,
            Self::L5 => 4,
        }
    }
}

impl core::fmt::Display for OcclusionLevel {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(self.label())
    }
}

/// Maps a hidden fraction to its level band. Bands are lower-closed:
/// [0, 0.1) -> L1, [0.1, 0.2) -> L2, [0.2, 0.3) -> L3, [0.3, 0.4) -> L4,
/// and [0.4, 1.0] -> L5, so a boundary ratio lands in the harder level.
pub fn classify_level(ratio: f64) -> Result<OcclusionLevel, BenchmarkError> {
    if !(0.0..=1.0).contains(&ratio) || !ratio.is_finite() {
        return Err(BenchmarkError::RatioOutOfRange(ratio));
    }
    Ok(if ratio < 0.1 {
        OcclusionLevel::L1
    } else if ratio < 0.2 {
        OcclusionLevel::L2
    } else if ratio < 0.3 {
        OcclusionLevel::L3
    } else if ratio < 0.4 {
        OcclusionLevel::L4
    } else {
        OcclusionLevel::L5
    })
}

/// Per-level entry counts with derived proportions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct LevelHistogram {
    pub counts: [usize; 5],
}

impl LevelHistogram {
    pub fn add(&mut self, level: OcclusionLevel) {
        self.counts[level.index()] += 1;
    }

    pub fn total(&self) -> usize {
        self.counts.iter().sum()
    }

    pub fn proportions(&self) -> [f64; 5] {
        let total = self.total();
        if total == 0 {
            return [0.0; 5];
        }
        core::array::from_fn(|i| self.counts[i] as f64 / total as f64)
    }
}

/// Raw benchmark sample as supplied by the caller: view paths rendered
/// externally, plus the occlusion ratio and mesh path.
#[derive(Debug, Clone, PartialEq)]
pub struct BenchmarkSample {
    pub id: String,
    pub occluded_input: String,
    pub canonical_views: Vec<String>,
    pub random_views: Vec<String>,
    pub mesh: String,
    pub ratio: f64,
}

/// A camera pose bound to the image rendered from it.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ViewRef {
    pub pose: CameraPose,
    pub path: String,
}

/// Validated manifest row: exactly six canonical and four random views.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct BenchmarkEntry {
    pub id: String,
    pub occluded_input: String,
    pub canonical_views: Vec<ViewRef>,
    pub random_views: Vec<ViewRef>,
    pub mesh: String,
    pub ratio: f64,
    pub level: OcclusionLevel,
}

pub const CANONICAL_VIEW_COUNT: usize = 6;
pub const RANDOM_VIEW_COUNT: usize = 4;

/// Errors from benchmark stratification and manifest assembly.
#[derive(Debug, Clone, PartialEq)]
pub enum BenchmarkError {
    RatioOutOfRange(f64),
    EmptySampleSet,
    /// Entry `id` does not carry the required number of views.
    WrongViewCount { id: String, expected: usize, actual: usize },
    MissingMesh { id: String },
}

impl core::fmt::Display for BenchmarkError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            Self::RatioOutOfRange(r) => write!(f, "occlusion ratio {r} outside [0, 1]"),
            Self::EmptySampleSet => write!(f, "no benchmark samples"),
            Self::WrongViewCount { id, expected, actual } => {
                write!(f, "entry `{id}`: expected {expected} views, found {actual}")
            }
            Self::MissingMesh { id } => write!(f, "entry `{id}`: missing ground-truth mesh path"),
        }
    }
}

impl core::error::Error for BenchmarkError {}

/// Validates samples, attaches canonical and per-entry random poses, and
/// tallies the level histogram. Random poses derive from
/// `(seed, entry id)` so the result is independent of evaluation order.
pub fn build_benchmark_entries(
    samples: &[BenchmarkSample],
    seed: u64,
) -> Result<(Vec<BenchmarkEntry>, LevelHistogram), BenchmarkError> {
    if samples.is_empty() {
        return Err(BenchmarkError::EmptySampleSet);
    }
    let canonical = canonical_poses();
    let mut entries = Vec::with_capacity(samples.len());
    let mut histogram = LevelHistogram::default();

    for sample in samples {
        if sample.canonical_views.len() != CANONICAL_VIEW_COUNT {
            return Err(BenchmarkError::WrongViewCount {
                id: sample.id.clone(),
                expected: CANONICAL_VIEW_COUNT,
                actual: sample.canonical_views.len(),
            });
        }
        if sample.random_views.len() != RANDOM_VIEW_COUNT {
            return Err(BenchmarkError::WrongViewCount {
                id: sample.id.clone(),
                expected: RANDOM_VIEW_COUNT,
                actual: sample.random_views.len(),
            });
        }
        if sample.mesh.is_empty() {
            return Err(BenchmarkError::MissingMesh { id: sample.id.clone() });
        }
        let level = classify_level(sample.ratio)?;
        histogram.add(level);

        let entry_seed = SplitMix64::derive(seed, SplitMix64::hash_bytes(sample.id.as_bytes()));
        let random = random_poses(RANDOM_VIEW_COUNT, entry_seed);
        entries.push(BenchmarkEntry {
            id: sample.id.clone(),
            occluded_input: sample.occluded_input.clone(),
            canonical_views: canonical
                .iter()
                .zip(&sample.canonical_views)
                .map(|(&pose, path)| ViewRef { pose, path: path.clone() })
                .collect(),
            random_views: random
                .iter()
                .zip(&sample.random_views)
                .map(|(&pose, path)| ViewRef { pose, path: path.clone() })
                .collect(),
            mesh: sample.mesh.clone(),
            ratio: sample.ratio,
            level,
        });
    }
    Ok((entries, histogram))
}
