//! DOFB binary feature files.
//!
//! Layout, all little-endian: magic `DOFB`, u32 version (= 1), u32 n,
//! u32 d, then `n * d` 32-bit floats in row-major order.

use alloc::vec::Vec;

use super::{FeatureError, FeatureSet};

const MAGIC: &[u8; 4] = b"DOFB";
const VERSION: u32 = 1;
const HEADER_LEN: usize = 16;

pub fn read_fvec(bytes: &[u8]) -> Result<FeatureSet, FeatureError> {
    if bytes.len() < HEADER_LEN {
        return Err(FeatureError::TruncatedHeader);
    }
    if &bytes[0..4] != MAGIC {
        return Err(FeatureError::BadMagic);
    }
    let version = u32::from_le_bytes(bytes[4..8].try_into().unwrap());
    if version != VERSION {
        return Err(FeatureError::BadVersion(version));
    }
    let n = u32::from_le_bytes(bytes[8..12].try_into().unwrap()) as usize;
    let d = u32::from_le_bytes(bytes[12..16].try_into().unwrap()) as usize;
    if n == 0 || d == 0 {
        return Err(FeatureError::ZeroDimension);
    }

    let payload = (n as u128) * (d as u128) * 4;
    if payload > (usize::MAX - HEADER_LEN) as u128 {
        return Err(FeatureError::PayloadOverflow);
    }
    let expected = HEADER_LEN + payload as usize;
    if bytes.len() < expected {
        return Err(FeatureError::TruncatedPayload {
            expected,
            actual: bytes.len(),
        });
    }
    if bytes.len() > expected {
        return Err(FeatureError::TrailingBytes {
            expected,
            actual: bytes.len(),
        });
    }

    let mut data = Vec::with_capacity(n * d);
    for chunk in bytes[HEADER_LEN..].chunks_exact(4) {
        let v = f32::from_le_bytes(chunk.try_into().unwrap());
        if !v.is_finite() {
            return Err(FeatureError::NonFinite);
        }
        data.push(v as f64);
    }
    FeatureSet::from_rows(n, d, data)
}

/// Serializes at 32-bit precision; values that came in through
/// [`read_fvec`] round-trip losslessly.
pub fn write_fvec(set: &FeatureSet) -> Vec<u8> {
    let mut out = Vec::with_capacity(HEADER_LEN + set.data().len() * 4);
    out.extend_from_slice(MAGIC);
    out.extend_from_slice(&VERSION.to_le_bytes());
    out.extend_from_slice(&(set.n() as u32).to_le_bytes());
    out.extend_from_slice(&(set.d() as u32).to_le_bytes());
    for &v in set.data() {
        out.extend_from_slice(&(v as f32).to_le_bytes());
    }
    out
}
