//! Closed intervals with exact rational endpoints.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::rational::Rational;

/// A closed interval `[lo, hi]` with `lo <= hi`. Degenerate (single-point)
/// intervals are allowed; many diagnostics treat them specially because a
/// non-degenerate interval is one with positive length.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct ClosedInterval {
    lo: Rational,
    hi: Rational,
}

impl ClosedInterval {
    pub fn new(lo: Rational, hi: Rational) -> Result<Self> {
        if lo > hi {
            return Err(Error::EmptyInterval { lo, hi });
        }
        Ok(ClosedInterval { lo, hi })
    }

    /// The interval spanned by two endpoints in either order.
    pub fn spanning(a: Rational, b: Rational) -> Self {
        if a <= b {
            ClosedInterval { lo: a, hi: b }
        } else {
            ClosedInterval { lo: b, hi: a }
        }
    }

    pub fn point(x: Rational) -> Self {
        ClosedInterval {
            lo: x.clone(),
            hi: x,
        }
    }

    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    pub fn hi(&self) -> &Rational {
        &self.hi
    }

    pub fn length(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn is_degenerate(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains_point(&self, x: &Rational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn contains(&self, other: &ClosedInterval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    /// Strict containment: contained and not equal.
    pub fn properly_contains(&self, other: &ClosedInterval) -> bool {
        self.contains(other) && self != other
    }

    pub fn intersection(&self, other: &ClosedInterval) -> Option<ClosedInterval> {
        let lo = self.lo.clone().max(other.lo.clone());
        let hi = self.hi.clone().min(other.hi.clone());
        (lo <= hi).then_some(ClosedInterval { lo, hi })
    }

    /// Smallest closed interval containing both.
    pub fn hull(&self, other: &ClosedInterval) -> ClosedInterval {
        ClosedInterval {
            lo: self.lo.clone().min(other.lo.clone()),
            hi: self.hi.clone().max(other.hi.clone()),
        }
    }

    /// Interiors are disjoint iff one interval ends where the other begins
    /// (sharing an endpoint is fine).
    pub fn interiors_disjoint(&self, other: &ClosedInterval) -> bool {
        self.hi <= other.lo || other.hi <= self.lo
    }

    /// Set distance between the two closed intervals (0 when they touch or
    /// overlap).
    pub fn distance(&self, other: &ClosedInterval) -> Rational {
        let gap = (&other.lo - &self.hi).max(&self.lo - &other.hi);
        gap.max(Rational::zero())
    }
}

impl fmt::Display for ClosedInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iv(a: (i64, i64), b: (i64, i64)) -> ClosedInterval {
        ClosedInterval::new(Rational::new(a.0, a.1), Rational::new(b.0, b.1)).unwrap()
    }

    #[test]
    fn construction_enforces_order() {
        assert!(ClosedInterval::new(Rational::one(), Rational::zero()).is_err());
        let p = ClosedInterval::point(Rational::new(1, 2));
        assert!(p.is_degenerate());
        assert!(p.length().is_zero());
    }

    #[test]
    fn hull_intersection_distance() {
        let a = iv((0, 1), (1, 2));
        let b = iv((3, 4), (1, 1));
        assert_eq!(a.hull(&b), iv((0, 1), (1, 1)));
        assert!(a.intersection(&b).is_none());
        assert_eq!(a.distance(&b), Rational::new(1, 4));
        assert!(a.interiors_disjoint(&b));

        let c = iv((1, 2), (1, 1));
        assert_eq!(
            a.intersection(&c).unwrap(),
            ClosedInterval::point(Rational::new(1, 2))
        );
        assert!(a.distance(&c).is_zero());
        assert!(a.interiors_disjoint(&c));

        let d = iv((1, 4), (3, 4));
        assert!(!a.interiors_disjoint(&d));
        assert!(a.distance(&d).is_zero());
    }

    #[test]
    fn containment() {
        let whole = iv((0, 1), (1, 1));
        let half = iv((0, 1), (1, 2));
        assert!(whole.contains(&half));
        assert!(whole.properly_contains(&half));
        assert!(!whole.properly_contains(&whole));
        assert!(half.contains_point(&Rational::new(1, 2)));
        assert!(!half.contains_point(&Rational::new(2, 3)));
    }
}
