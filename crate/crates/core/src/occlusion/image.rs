use alloc::vec;
use alloc::vec::Vec;

use super::OcclusionError;

/// 8-bit RGBA pixels, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RgbaImage {
    width: usize,
    height: usize,
    pixels: Vec<u8>,
}

impl RgbaImage {
    /// Fully transparent black canvas.
    pub fn new(width: usize, height: usize) -> Result<Self, OcclusionError> {
        if width == 0 || height == 0 {
            return Err(OcclusionError::EmptyDimensions);
        }
        Ok(Self { width, height, pixels: vec![0; width * height * 4] })
    }

    pub fn from_pixels(
        width: usize,
        height: usize,
        pixels: Vec<u8>,
    ) -> Result<Self, OcclusionError> {
        if width == 0 || height == 0 {
            return Err(OcclusionError::EmptyDimensions);
        }
        if pixels.len() != width * height * 4 {
            return Err(OcclusionError::BufferSize {
                expected: width * height * 4,
                actual: pixels.len(),
            });
        }
        Ok(Self { width, height, pixels })
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
    pub fn get(&self, x: usize, y: usize) -> [u8; 4] {
        let i = (y * self.width + x) * 4;
        [self.pixels[i], self.pixels[i + 1], self.pixels[i + 2], self.pixels[i + 3]]
    }

    #[inline]
    pub fn set(&mut self, x: usize, y: usize, px: [u8; 4]) {
        let i = (y * self.width + x) * 4;
        self.pixels[i..i + 4].copy_from_slice(&px);
    }

    pub fn pixels(&self) -> &[u8] {
        &self.pixels
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pixel_roundtrip() {
        let mut img = RgbaImage::new(3, 2).unwrap();
        img.set(2, 1, [10, 20, 30, 255]);
        assert_eq!(img.get(2, 1), [10, 20, 30, 255]);
        assert_eq!(img.get(0, 0), [0, 0, 0, 0]);
    }

    #[test]
    fn buffer_size_checked() {
        assert_eq!(
            RgbaImage::from_pixels(2, 2, vec![0; 15]),
            Err(OcclusionError::BufferSize { expected: 16, actual: 15 })
        );
    }
}
