//! Feasible effort sets: finite unions of closed intervals and points.

use serde::{Deserialize, Serialize};

use crate::error::{ContestError, Result};

/// Closed interval `[lo, hi]`; a single point when `lo == hi`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Segment {
    pub lo: f64,
    pub hi: f64,
}

impl Segment {
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if !(lo.is_finite() && hi.is_finite() && lo >= 0.0 && lo <= hi) {
            return Err(ContestError::InvalidSegment { lo, hi });
        }
        Ok(Self { lo, hi })
    }

    pub fn point(e: f64) -> Result<Self> {
        Self::new(e, e)
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(&self, e: f64) -> bool {
        self.lo <= e && e <= self.hi
    }
}

/// Nonempty, sorted, pairwise disjoint closed segments in `[0, ∞)`.
///
/// Every segment is closed, so the nearest feasible efforts on either side
/// of any target always exist.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ChoiceSet {
    segments: Vec<Segment>,
}

impl ChoiceSet {
    /// Sorts the segments and rejects empty input or overlapping (including
    /// touching) segments.
    pub fn new(mut segments: Vec<Segment>) -> Result<Self> {
        if segments.is_empty() {
            return Err(ContestError::EmptyChoiceSet);
        }
        for s in &segments {
            Segment::new(s.lo, s.hi)?;
        }
        segments.sort_by(|a, b| a.lo.total_cmp(&b.lo));
        for w in segments.windows(2) {
            if w[1].lo <= w[0].hi {
                return Err(ContestError::OverlappingSegments {
                    a_lo: w[0].lo,
                    a_hi: w[0].hi,
                    b_lo: w[1].lo,
                    b_hi: w[1].hi,
                });
            }
        }
        Ok(Self { segments })
    }

    pub fn from_points(points: &[f64]) -> Result<Self> {
        let segments = points.iter().map(|&e| Segment::point(e)).collect::<Result<Vec<_>>>()?;
        Self::new(segments)
    }

    pub fn interval(lo: f64, hi: f64) -> Result<Self> {
        Self::new(vec![Segment::new(lo, hi)?])
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    pub fn min(&self) -> f64 {
        self.segments[0].lo
    }

    pub fn max(&self) -> f64 {
        self.segments[self.segments.len() - 1].hi
    }

    /// Exact membership, no tolerance.
    pub fn contains(&self, e: f64) -> bool {
        self.segments.iter().any(|s| s.contains(e))
    }

    /// Largest feasible effort `<= target`.
    pub fn floor(&self, target: f64) -> Option<f64> {
        self.segments
            .iter()
            .rev()
            .find(|s| s.lo <= target)
            .map(|s| s.hi.min(target))
    }

    /// Smallest feasible effort `>= target`.
    pub fn ceil(&self, target: f64) -> Option<f64> {
        self.segments.iter().find(|s| s.hi >= target).map(|s| s.lo.max(target))
    }

    pub fn is_finite(&self) -> bool {
        self.segments.iter().all(Segment::is_point)
    }

    /// The points of a finite set, or the first nondegenerate segment.
    pub fn points(&self) -> Result<Vec<f64>> {
        match self.segments.iter().find(|s| !s.is_point()) {
            Some(s) => Err(ContestError::ContinuousChoiceSet { lo: s.lo, hi: s.hi }),
            None => Ok(self.segments.iter().map(|s| s.lo).collect()),
        }
    }
}

impl<'de> Deserialize<'de> for ChoiceSet {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            segments: Vec<Segment>,
        }
        let raw = Raw::deserialize(d)?;
        ChoiceSet::new(raw.segments).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sorts_and_validates() {
        let s = ChoiceSet::new(vec![Segment::new(0.6, 1.0).unwrap(), Segment::point(0.0).unwrap()]).unwrap();
        assert_eq!(s.min(), 0.0);
        assert_eq!(s.max(), 1.0);
        assert!(s.contains(0.0) && s.contains(0.6) && s.contains(1.0));
        assert!(!s.contains(0.3));
        assert!(!s.is_finite());
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(ChoiceSet::new(vec![]), Err(ContestError::EmptyChoiceSet));
        assert!(Segment::new(0.5, 0.2).is_err());
        assert!(Segment::new(-0.1, 0.2).is_err());
        assert!(Segment::new(0.0, f64::INFINITY).is_err());
        let touching = vec![Segment::new(0.0, 1.0).unwrap(), Segment::new(1.0, 2.0).unwrap()];
        assert!(matches!(
            ChoiceSet::new(touching),
            Err(ContestError::OverlappingSegments { .. })
        ));
        assert!(ChoiceSet::from_points(&[0.2, 0.2]).is_err());
    }

    #[test]
    fn floor_and_ceil() {
        let s = ChoiceSet::new(vec![Segment::point(0.0).unwrap(), Segment::new(0.6, 1.0).unwrap()]).unwrap();
        assert_eq!(s.floor(0.25), Some(0.0));
        assert_eq!(s.ceil(0.25), Some(0.6));
        assert_eq!(s.floor(0.7), Some(0.7));
        assert_eq!(s.ceil(1.5), None);
        assert_eq!(s.floor(-1.0), None);
    }

    #[test]
    fn points_of_finite_sets() {
        let s = ChoiceSet::from_points(&[0.4, 0.1]).unwrap();
        assert_eq!(s.points().unwrap(), vec![0.1, 0.4]);
        let c = ChoiceSet::interval(0.0, 1.0).unwrap();
        assert!(matches!(c.points(), Err(ContestError::ContinuousChoiceSet { .. })));
    }

    #[test]
    fn deserialization_validates() {
        let ok: ChoiceSet = serde_json::from_str(r#"{"segments":[{"lo":0.5,"hi":0.7}]}"#).unwrap();
        assert_eq!(ok.segments().len(), 1);
        assert!(serde_json::from_str::<ChoiceSet>(r#"{"segments":[]}"#).is_err());
    }
}
