//!2D distribution metrics over embedding matrices: FID between fitted
//! Gaussians, KID as unbiased squared MMD under a degree-3 polynomial
//! kernel, and paired CLIP cosine similarity.
//!
//! Feature extraction is out of scope; embeddings arrive through the
//! DOFB byte format and the metrics are model-agnostic.

mod clip;
mod fvec;
mod kid;
mod stats;

pub use clip::clip_score;
pub use fvec::{read_fvec, write_fvec};
pub use kid::{kid, kid_with, KidOptions, KidReport};
pub use stats::{fid, fid_with_epsilon, gaussian_stats, GaussianStats, FID_EPSILON};

use alloc::vec::Vec;

use crate::linalg::LinalgError;

/// An `n x d` matrix of row-major feature vectors, one row per image.
#[derive(Debug, Clone, PartialEq)]
pub struct FeatureSet {
    n: usize,
    d: usize,
    data: Vec<f64>,
}

impl FeatureSet {
    pub fn from_rows(n: usize, d: usize, data: Vec<f64>) -> Result<Self, FeatureError> {
        if n == 0 || d == 0 {
            return Err(FeatureError::ZeroDimension);
        }
        if data.len() != n * d {
            return Err(FeatureError::ShapeMismatch {
                expected: n * d,
                actual: data.len(),
            });
        }
        if data.iter().any(|v| !v.is_finite()) {
            return Err(FeatureError::NonFinite);
        }
        Ok(Self { n, d, data })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.d
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.d..(i + 1) * self.d]
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    /// New set holding the given rows of `self`, in order.
    pub fn select_rows(&self, rows: &[usize]) -> FeatureSet {
        let mut data = Vec::with_capacity(rows.len() * self.d);
        for &r in rows {
            data.extend_from_slice(self.row(r));
        }
        FeatureSet { n: rows.len(), d: self.d, data }
    }
}

/// Errors from feature-file decoding and metric evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FeatureError {
    BadMagic,
    BadVersion(u32),
    TruncatedHeader,
    TruncatedPayload { expected: usize, actual: usize },
    TrailingBytes { expected: usize, actual: usize },
    /// `n * d * 4` exceeds any addressable payload.
    PayloadOverflow,
    ZeroDimension,
    NonFinite,
    ShapeMismatch { expected: usize, actual: usize },
    /// Fewer than two rows; no covariance exists.
    TooFewRows,
    /// Feature dimensions differ between the two sets.
    DimensionMismatch { left: usize, right: usize },
    /// Paired metrics need equal row counts.
    CountMismatch { left: usize, right: usize },
    ZeroNormRow(usize),
    /// KID block count must be at least 1 and leave two rows per block.
    InvalidBlocks,
    Linalg(LinalgError),
}

impl From<LinalgError> for FeatureError {
    fn from(e: LinalgError) -> Self {
        Self::Linalg(e)
    }
}

impl core::fmt::Display for FeatureError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            Self::BadMagic => write!(f, "bad magic: expected DOFB"),
            Self::BadVersion(v) => write!(f, "unsupported DOFB version {v}"),
            Self::TruncatedHeader => write!(f, "truncated header"),
            Self::TruncatedPayload { expected, actual } => {
                write!(f, "truncated payload: expected {expected} bytes, got {actual}")
            }
            Self::TrailingBytes { expected, actual } => {
                write!(f, "trailing bytes: expected {expected} bytes, got {actual}")
            }
            Self::PayloadOverflow => write!(f, "header n*d overflows declared length"),
            Self::ZeroDimension => write!(f, "n and d must both be at least 1"),
            Self::NonFinite => write!(f, "non-finite feature entry"),
            Self::ShapeMismatch { expected, actual } => {
                write!(f, "shape mismatch: expected {expected} values, got {actual}")
            }
            Self::TooFewRows => write!(f, "need at least 2 rows"),
            Self::DimensionMismatch { left, right } => {
                write!(f, "feature dimension mismatch: {left} vs {right}")
            }
            Self::CountMismatch { left, right } => {
                write!(f, "row count mismatch: {left} vs {right}")
            }
            Self::ZeroNormRow(i) => write!(f, "zero-norm row {i}"),
            Self::InvalidBlocks => write!(f, "invalid KID block count"),
            Self::Linalg(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for FeatureError {}
