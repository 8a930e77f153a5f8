use alloc::vec;
use alloc::vec::Vec;

use super::OcclusionError;

/// A row-major boolean mask.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinaryMask {
    width: usize,
    height: usize,
    bits: Vec<bool>,
}

impl BinaryMask {
    pub fn new(width: usize, height: usize) -> Result<Self, OcclusionError> {
        if width == 0 || height == 0 {
            return Err(OcclusionError::EmptyDimensions);
        }
        Ok(Self { width, height, bits: vec![false; width * height] })
    }

    pub fn from_bits(
        width: usize,
        height: usize,
        bits: Vec<bool>,
    ) -> Result<Self, OcclusionError> {
        if width == 0 || height == 0 {
            return Err(OcclusionError::EmptyDimensions);
        }
        if bits.len() != width * height {
            return Err(OcclusionError::BufferSize {
                expected: width * height,
                actual: bits.len(),
            });
        }
        Ok(Self { width, height, bits })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.width, self.height)
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize) -> bool {
        self.bits[y * self.width + x]
    }

    /// Reads with the border treated as outside (false).
    #[inline]
    pub fn get_clipped(&self, x: isize, y: isize) -> bool {
        if x < 0 || y < 0 || x as usize >= self.width || y as usize >= self.height {
            false
        } else {
            self.bits[y as usize * self.width + x as usize]
        }
    }

    #[inline]
    pub fn set(&mut self, x: usize, y: usize, value: bool) {
        self.bits[y * self.width + x] = value;
    }

    /// Number of true pixels.
    pub fn count(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn is_subset_of(&self, other: &BinaryMask) -> bool {
        self.dims() == other.dims()
            && self
                .bits
                .iter()
                .zip(&other.bits)
                .all(|(&a, &b)| !a || b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_dims_rejected() {
        assert_eq!(BinaryMask::new(0, 5), Err(OcclusionError::EmptyDimensions));
    }

    #[test]
    fn count_and_subset() {
        let mut a = BinaryMask::new(4, 4).unwrap();
        a.set(1, 1, true);
        a.set(2, 3, true);
        assert_eq!(a.count(), 2);

        let mut b = a.clone();
        b.set(0, 0, true);
        assert!(a.is_subset_of(&b));
        assert!(!b.is_subset_of(&a));
    }

    #[test]
    fn clipped_reads_are_false_outside() {
        let mut m = BinaryMask::new(2, 2).unwrap();
        m.set(0, 0, true);
        assert!(m.get_clipped(0, 0));
        assert!(!m.get_clipped(-1, 0));
        assert!(!m.get_clipped(0, 2));
    }
}
