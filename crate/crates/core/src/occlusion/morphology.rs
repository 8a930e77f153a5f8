//! Binary morphology with a discrete Euclidean disk structuring element
//! `{(dx, dy) : dx^2 + dy^2 <= r^2}`.
//!
//! Border convention: dilation reads out-of-bounds pixels as false,
//! erosion reads them as true. This pairing is what makes closing
//! extensive and opening anti-extensive on the finite canvas; treating
//! the border as false for erosion too would let a closing drop mask
//! pixels within `r` of an edge.

use alloc::vec::Vec;

use super::BinaryMask;

fn disk_offsets(r: usize) -> Vec<(isize, isize)> {
    let r = r as isize;
    let r_sq = r * r;
    let mut offsets = Vec::new();
    for dy in -r..=r {
        for dx in -r..=r {
            if dx * dx + dy * dy <= r_sq {
                offsets.push((dx, dy));
            }
        }
    }
    offsets
}

/// Minkowski sum with the disk of radius `r >= 1`.
pub fn dilate(mask: &BinaryMask, r: usize) -> BinaryMask {
    assert!(r >= 1, "dilation radius must be at least 1");
    let offsets = disk_offsets(r);
    let (w, h) = mask.dims();
    let mut out = BinaryMask::new(w, h).expect("same dims");
    for y in 0..h {
        for x in 0..w {
            let hit = offsets
                .iter()
                .any(|&(dx, dy)| mask.get_clipped(x as isize + dx, y as isize + dy));
            if hit {
                out.set(x, y, true);
            }
        }
    }
    out
}

/// Minkowski difference with the disk of radius `r >= 1`.
pub fn erode(mask: &BinaryMask, r: usize) -> BinaryMask {
    assert!(r >= 1, "erosion radius must be at least 1");
    let offsets = disk_offsets(r);
    let (w, h) = mask.dims();
    let mut out = BinaryMask::new(w, h).expect("same dims");
    for y in 0..h {
        for x in 0..w {
            let all = offsets.iter().all(|&(dx, dy)| {
                let (px, py) = (x as isize + dx, y as isize + dy);
                if px < 0 || py < 0 || px as usize >= w || py as usize >= h {
                    true // outside reads as true for erosion
                } else {
                    mask.get(px as usize, py as usize)
                }
            });
            if all {
                out.set(x, y, true);
            }
        }
    }
    out
}
