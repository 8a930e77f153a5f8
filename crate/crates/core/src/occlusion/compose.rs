use super::{BinaryMask, OcclusionError, RgbaImage};
use crate::benchmark::{classify_level, OcclusionLevel};

/// Element-wise mask multiplication: pixels outside the mask become
/// transparent black, pixels inside are copied verbatim.
pub fn mask_apply(img: &RgbaImage, mask: &BinaryMask) -> Result<RgbaImage, OcclusionError> {
    if img.dims() != mask.dims() {
        return Err(OcclusionError::DimensionMismatch {
            left: img.dims(),
            right: mask.dims(),
        });
    }
    let (w, h) = img.dims();
    let mut out = RgbaImage::new(w, h).expect("same dims");
    for y in 0..h {
        for x in 0..w {
            if mask.get(x, y) {
                out.set(x, y, img.get(x, y));
            }
        }
    }
    Ok(out)
}

/// Pastes `occluder` over `target` at `offset` (clipped to the canvas)
/// wherever `occluder_mask` is set, and returns the composite together
/// with the visible-part mask `m_full AND NOT shifted(occluder_mask)`.
///
/// Full occlusion is legal here; filtering is the caller's decision.
pub fn composite_occluder(
    target: &RgbaImage,
    m_full: &BinaryMask,
    occluder: &RgbaImage,
    occluder_mask: &BinaryMask,
    offset: (i64, i64),
) -> Result<(RgbaImage, BinaryMask), OcclusionError> {
    if target.dims() != m_full.dims() {
        return Err(OcclusionError::DimensionMismatch {
            left: target.dims(),
            right: m_full.dims(),
        });
    }
    if occluder.dims() != occluder_mask.dims() {
        return Err(OcclusionError::DimensionMismatch {
            left: occluder.dims(),
            right: occluder_mask.dims(),
        });
    }
    let (w, h) = target.dims();
    let (ow, oh) = occluder.dims();
    let mut mix = target.clone();
    let mut m_occ = m_full.clone();
    for oy in 0..oh {
        for ox in 0..ow {
            if !occluder_mask.get(ox, oy) {
                continue;
            }
            let tx = ox as i64 + offset.0;
            let ty = oy as i64 + offset.1;
            if tx < 0 || ty < 0 || tx >= w as i64 || ty >= h as i64 {
                continue;
            }
            let (tx, ty) = (tx as usize, ty as usize);
            mix.set(tx, ty, occluder.get(ox, oy));
            m_occ.set(tx, ty, false);
        }
    }
    Ok((mix, m_occ))
}

/// Fraction of the full object hidden by the occluder:
/// `1 - |m_occ| / |m_full|`.
pub fn occlusion_ratio(m_full: &BinaryMask, m_occ: &BinaryMask) -> Result<f64, OcclusionError> {
    if m_full.dims() != m_occ.dims() {
        return Err(OcclusionError::DimensionMismatch {
            left: m_full.dims(),
            right: m_occ.dims(),
        });
    }
    let full = m_full.count();
    if full == 0 {
        return Err(OcclusionError::EmptyFullMask);
    }
    if !m_occ.is_subset_of(m_full) {
        return Err(OcclusionError::NotSubset);
    }
    Ok(1.0 - m_occ.count() as f64 / full as f64)
}

/// One synthesized training pair with its derived images and stats.
///
/// Invariants held by construction: `i_full = i_raw * m_full`,
/// `i_occ = i_mix * m_occ` (pixel-exact), `m_occ` a subset of `m_full`.
#[derive(Debug, Clone, PartialEq)]
pub struct OcclusionSample {
    pub i_raw: RgbaImage,
    pub i_mix: RgbaImage,
    pub i_full: RgbaImage,
    pub i_occ: RgbaImage,
    pub m_full: BinaryMask,
    pub m_occ: BinaryMask,
    /// Hidden fraction in `[0, 1]`.
    pub ratio: f64,
    pub level: OcclusionLevel,
}

/// Derives the foreground images and occlusion stats from the raw
/// inputs of one composite.
pub fn make_sample(
    i_raw: &RgbaImage,
    m_full: &BinaryMask,
    i_mix: &RgbaImage,
    m_occ: &BinaryMask,
) -> Result<OcclusionSample, OcclusionError> {
    if i_raw.dims() != i_mix.dims() {
        return Err(OcclusionError::DimensionMismatch {
            left: i_raw.dims(),
            right: i_mix.dims(),
        });
    }
    let ratio = occlusion_ratio(m_full, m_occ)?;
    let i_full = mask_apply(i_raw, m_full)?;
    let i_occ = mask_apply(i_mix, m_occ)?;
    let level = classify_level(ratio).expect("ratio is in [0,1] by construction");
    Ok(OcclusionSample {
        i_raw: i_raw.clone(),
        i_mix: i_mix.clone(),
        i_full,
        i_occ,
        m_full: m_full.clone(),
        m_occ: m_occ.clone(),
        ratio,
        level,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec::Vec;

    fn filled_image(w: usize, h: usize, px: [u8; 4]) -> RgbaImage {
        let mut img = RgbaImage::new(w, h).unwrap();
        for y in 0..h {
            for x in 0..w {
                img.set(x, y, px);
            }
        }
        img
    }

    fn full_mask(w: usize, h: usize) -> BinaryMask {
        BinaryMask::from_bits(w, h, alloc::vec![true; w * h]).unwrap()
    }

    #[test]
    fn all_true_mask_is_identity() {
        let img = filled_image(4, 3, [9, 8, 7, 255]);
        let out = mask_apply(&img, &full_mask(4, 3)).unwrap();
        assert_eq!(out, img);
    }

    #[test]
    fn all_false_mask_blanks() {
        let img = filled_image(4, 3, [9, 8, 7, 255]);
        let out = mask_apply(&img, &BinaryMask::new(4, 3).unwrap()).unwrap();
        assert!(out.pixels().iter().all(|&b| b == 0));
    }

    #[test]
    fn checkerboard_mask_selects_cells() {
        let img = filled_image(4, 4, [1, 2, 3, 4]);
        let bits: Vec<bool> = (0..16).map(|i| (i % 4 + i / 4) % 2 == 0).collect();
        let mask = BinaryMask::from_bits(4, 4, bits).unwrap();
        let out = mask_apply(&img, &mask).unwrap();
        for y in 0..4 {
            for x in 0..4 {
                let expect = if (x + y) % 2 == 0 { [1, 2, 3, 4] } else { [0, 0, 0, 0] };
                assert_eq!(out.get(x, y), expect);
            }
        }
    }

    #[test]
    fn dimension_mismatch_rejected() {
        let img = filled_image(4, 3, [0, 0, 0, 0]);
        let mask = BinaryMask::new(3, 4).unwrap();
        assert!(matches!(
            mask_apply(&img, &mask),
            Err(OcclusionError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn occluder_fully_outside_is_noop() {
        let target = filled_image(8, 8, [5, 5, 5, 255]);
        let m_full = full_mask(8, 8);
        let occluder = filled_image(4, 4, [200, 0, 0, 255]);
        let omask = full_mask(4, 4);
        let (mix, m_occ) =
            composite_occluder(&target, &m_full, &occluder, &omask, (20, 20)).unwrap();
        assert_eq!(mix, target);
        assert_eq!(m_occ, m_full);
        assert_eq!(occlusion_ratio(&m_full, &m_occ).unwrap(), 0.0);
    }

    #[test]
    fn total_occlusion_gives_ratio_one() {
        let target = filled_image(4, 4, [5, 5, 5, 255]);
        let m_full = full_mask(4, 4);
        let occluder = filled_image(8, 8, [200, 0, 0, 255]);
        let omask = full_mask(8, 8);
        let (mix, m_occ) =
            composite_occluder(&target, &m_full, &occluder, &omask, (-2, -2)).unwrap();
        assert_eq!(m_occ.count(), 0);
        assert_eq!(occlusion_ratio(&m_full, &m_occ).unwrap(), 1.0);
        assert_eq!(mix.get(0, 0), [200, 0, 0, 255]);
    }

    #[test]
    fn partial_occlusion_ratio() {
        // 10x10 object, occluder hides a 2x10 strip: ratio 0.2.
        let target = filled_image(10, 10, [1, 1, 1, 255]);
        let m_full = full_mask(10, 10);
        let occluder = filled_image(2, 10, [9, 9, 9, 255]);
        let omask = full_mask(2, 10);
        let (_, m_occ) =
            composite_occluder(&target, &m_full, &occluder, &omask, (0, 0)).unwrap();
        let ratio = occlusion_ratio(&m_full, &m_occ).unwrap();
        assert!((ratio - 0.2).abs() < 1e-12);
    }

    #[test]
    fn ratio_preconditions() {
        let empty = BinaryMask::new(4, 4).unwrap();
        let full = full_mask(4, 4);
        assert_eq!(
            occlusion_ratio(&empty, &empty),
            Err(OcclusionError::EmptyFullMask)
        );
        let mut not_subset = BinaryMask::new(4, 4).unwrap();
        not_subset.set(0, 0, true);
        let mut partial = full.clone();
        partial.set(0, 0, false);
        assert_eq!(
            occlusion_ratio(&partial, &full),
            Err(OcclusionError::NotSubset)
        );
    }

    #[test]
    fn sample_equations_hold() {
        let target = filled_image(6, 6, [3, 1, 4, 255]);
        let mut m_full = BinaryMask::new(6, 6).unwrap();
        for y in 1..5 {
            for x in 1..5 {
                m_full.set(x, y, true);
            }
        }
        let occluder = filled_image(3, 3, [255, 0, 0, 255]);
        let omask = full_mask(3, 3);
        let (mix, m_occ) =
            composite_occluder(&target, &m_full, &occluder, &omask, (3, 3)).unwrap();
        let s = make_sample(&target, &m_full, &mix, &m_occ).unwrap();
        assert_eq!(s.i_full, mask_apply(&s.i_raw, &s.m_full).unwrap());
        assert_eq!(s.i_occ, mask_apply(&s.i_mix, &s.m_occ).unwrap());
        assert!(s.m_occ.is_subset_of(&s.m_full));
        let expect = 1.0 - s.m_occ.count() as f64 / s.m_full.count() as f64;
        assert_eq!(s.ratio, expect);
    }
}
