use super::{BinaryMask, OcclusionSample};

/// Sample acceptance rules.
///
/// The boundary and minimum-area rules together stand in for "is the
/// foreground object intrinsically complete"; an external curation list
/// can override decisions upstream of this check.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FilterPolicy {
    /// Reject when the visible fraction `1 - ratio` drops below this.
    pub min_visible_ratio: f64,
    /// Reject full masks smaller than this many pixels.
    pub min_full_area_px: usize,
    /// Reject full masks with any pixel within this many pixels of an
    /// image edge.
    pub boundary_margin: usize,
}

impl Default for FilterPolicy {
    fn default() -> Self {
        Self {
            min_visible_ratio: 0.05,
            min_full_area_px: 1024,
            boundary_margin: 1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RejectReason {
    /// The full object touches the image boundary.
    Boundary,
    /// Full mask below the minimum pixel area.
    TooSmall,
    /// Visible fraction below the policy minimum.
    OverOccluded,
}

impl RejectReason {
    pub fn as_str(&self) -> &'static str {
        match self {
            Self::Boundary => "boundary",
            Self::TooSmall => "too-small",
            Self::OverOccluded => "over-occluded",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FilterDecision {
    Keep,
    Reject(RejectReason),
}

impl FilterDecision {
    pub fn is_keep(&self) -> bool {
        matches!(self, Self::Keep)
    }
}

/// True iff any set pixel lies within `margin` pixels of an image edge.
/// `margin = 0` never triggers; an empty mask is vacuously false.
pub fn touches_boundary(mask: &BinaryMask, margin: usize) -> bool {
    if margin == 0 {
        return false;
    }
    let (w, h) = mask.dims();
    for y in 0..h {
        let near_y = y < margin || y >= h.saturating_sub(margin);
        for x in 0..w {
            if !mask.get(x, y) {
                continue;
            }
            if near_y || x < margin || x >= w.saturating_sub(margin) {
                return true;
            }
        }
    }
    false
}

pub fn filter_sample(sample: &OcclusionSample, policy: &FilterPolicy) -> FilterDecision {
    if touches_boundary(&sample.m_full, policy.boundary_margin) {
        return FilterDecision::Reject(RejectReason::Boundary);
    }
    if sample.m_full.count() < policy.min_full_area_px {
        return FilterDecision::Reject(RejectReason::TooSmall);
    }
    if 1.0 - sample.ratio < policy.min_visible_ratio {
        return FilterDecision::Reject(RejectReason::OverOccluded);
    }
    FilterDecision::Keep
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::occlusion::{composite_occluder, make_sample, RgbaImage};

    #[test]
    fn boundary_detection() {
        let mut m = BinaryMask::new(10, 10).unwrap();
        m.set(0, 5, true);
        assert!(touches_boundary(&m, 1));

        let mut interior = BinaryMask::new(10, 10).unwrap();
        for y in 2..8 {
            for x in 2..8 {
                interior.set(x, y, true);
            }
        }
        assert!(!touches_boundary(&interior, 1));
        assert!(touches_boundary(&interior, 3));
    }

    #[test]
    fn empty_mask_never_touches() {
        let m = BinaryMask::new(10, 10).unwrap();
        assert!(!touches_boundary(&m, 1));
        assert!(!touches_boundary(&m, 5));
    }

    fn build_sample(object: (usize, usize, usize, usize), hide: usize, dims: usize)
        -> OcclusionSample
    {
        let img = RgbaImage::new(dims, dims).unwrap();
        let mut m_full = BinaryMask::new(dims, dims).unwrap();
        let (x0, y0, x1, y1) = object;
        for y in y0..y1 {
            for x in x0..x1 {
                m_full.set(x, y, true);
            }
        }
        let occluder = RgbaImage::new(dims, dims).unwrap();
        let mut omask = BinaryMask::new(dims, dims).unwrap();
        for y in y0..y1 {
            for x in x0..x0 + hide {
                omask.set(x, y, true);
            }
        }
        let (mix, m_occ) =
            composite_occluder(&img, &m_full, &occluder, &omask, (0, 0)).unwrap();
        make_sample(&img, &m_full, &mix, &m_occ).unwrap()
    }

    #[test]
    fn boundary_reject() {
        let s = build_sample((0, 10, 50, 60), 5, 64);
        let d = filter_sample(&s, &FilterPolicy::default());
        assert_eq!(d, FilterDecision::Reject(RejectReason::Boundary));
    }

    #[test]
    fn over_occluded_reject() {
        // 40x40 object (1600 px >= 1024), all but a sliver hidden.
        let s = build_sample((10, 10, 50, 50), 39, 64);
        assert!(1.0 - s.ratio < 0.05);
        let d = filter_sample(&s, &FilterPolicy::default());
        assert_eq!(d, FilterDecision::Reject(RejectReason::OverOccluded));
    }

    #[test]
    fn small_object_reject() {
        let s = build_sample((10, 10, 20, 20), 2, 64);
        let d = filter_sample(&s, &FilterPolicy::default());
        assert_eq!(d, FilterDecision::Reject(RejectReason::TooSmall));
    }

    #[test]
    fn interior_moderate_occlusion_keeps() {
        let s = build_sample((10, 10, 50, 50), 12, 64);
        assert!((s.ratio - 0.3).abs() < 1e-12);
        assert_eq!(filter_sample(&s, &FilterPolicy::default()), FilterDecision::Keep);
    }
}
