//! Exact periodic-point solving and Sharkovskii-type classification.
//!
//! All solving is done per linear segment of the relevant iterate, so
//! periodic points come out as exact rationals. Segments of slope 1 lying on
//! the diagonal carry a continuum of periodic points; they are reported as
//! ranges and kept out of the orbit listing and the period set.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::interval::ClosedInterval;
use crate::pwl::{PwlMap, DEFAULT_NODE_BUDGET};
use crate::rational::Rational;
use crate::sharkovskii::{sharkovskii_min, SharkovskiiKey};

/// Exact solutions of `f(x) = x`: isolated points plus whole segments that
/// lie on the diagonal.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FixedPoints {
    pub points: Vec<Rational>,
    pub ranges: Vec<ClosedInterval>,
}

/// A periodic orbit listed in cycle order starting from its smallest point.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PeriodicOrbit {
    pub points: Vec<Rational>,
    pub period: u32,
}

impl PeriodicOrbit {
    /// Re-checks the orbit against the map: the eval chain closes and no
    /// proper divisor of the period closes it.
    pub fn verify(&self, map: &PwlMap) -> bool {
        if self.points.len() != self.period as usize || self.points.is_empty() {
            return false;
        }
        for i in 0..self.points.len() {
            let next = &self.points[(i + 1) % self.points.len()];
            match map.eval(&self.points[i]) {
                Ok(y) if &y == next => {}
                _ => return false,
            }
        }
        let distinct: BTreeSet<&Rational> = self.points.iter().collect();
        distinct.len() == self.points.len()
    }
}

/// Solutions of `f^p(x) = x` organized for period analysis.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PeriodicSolve {
    /// Orbits whose minimal period is exactly the requested `p`.
    pub orbits: Vec<PeriodicOrbit>,
    /// Diagonal slope-1 segments of `f^p` (continua of periodic points).
    pub diagonal_ranges: Vec<ClosedInterval>,
}

/// Minimal periods realized up to a bound. `achieved_bound < requested_bound`
/// happens only when the node budget cut the search short.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PeriodSet {
    pub periods: BTreeSet<u32>,
    pub requested_bound: u32,
    pub achieved_bound: u32,
}

/// Sharkovskii-type classification of the detected period set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "value")]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    /// The Sharkovskii-minimal detected period, not a power of two.
    Finite(u32),
    /// Only powers of two were detected, the largest being `2^max_power`.
    /// A finite search cannot distinguish type `2^k` from type-2-infinity,
    /// so this verdict deliberately stops short of claiming either.
    AtMostPowersOfTwo(u32),
}

/// Type classification together with the evidence that produced it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TypeVerdict {
    pub detected_periods: BTreeSet<u32>,
    pub search_bound: u32,
    pub verdict: Verdict,
}

impl TypeVerdict {
    /// The key this verdict occupies in the Sharkovskii order.
    pub fn key(&self) -> SharkovskiiKey {
        match self.verdict {
            Verdict::Finite(n) => SharkovskiiKey::of(n as u64),
            Verdict::AtMostPowersOfTwo(a) => SharkovskiiKey::of(1u64 << a),
        }
    }
}

/// Exact solutions of `f(x) = x`. On each linear segment with slope `s != 1`
/// there is at most one solution; slope-1 segments on the diagonal are
/// returned whole.
pub fn fixed_points(map: &PwlMap) -> FixedPoints {
    let mut points: Vec<Rational> = Vec::new();
    let mut ranges: Vec<ClosedInterval> = Vec::new();
    for w in map.nodes().windows(2) {
        let (x0, y0, x1, y1) = (&w[0].x, &w[0].y, &w[1].x, &w[1].y);
        let run = x1 - x0;
        let rise = y1 - y0;
        if rise == run {
            // slope exactly 1: on the diagonal iff y0 == x0
            if y0 == x0 {
                match ranges.last_mut() {
                    Some(last) if last.hi() == x0 => {
                        *last = last.hull(&ClosedInterval::spanning(x0.clone(), x1.clone()));
                    }
                    _ => ranges.push(ClosedInterval::spanning(x0.clone(), x1.clone())),
                }
            }
            continue;
        }
        // solve y0 + s (x - x0) = x  with  s = rise/run:
        // x = (y0·run - x0·rise) / (run - rise)
        let x = &(&(y0 * &run) - &(x0 * &rise)) / &(&run - &rise);
        if &x >= x0 && &x <= x1 && points.last() != Some(&x) {
            points.push(x);
        }
    }
    // drop isolated points swallowed by a range (shared segment endpoints)
    points.retain(|p| !ranges.iter().any(|r| r.contains_point(p)));
    FixedPoints { points, ranges }
}

/// All orbits of minimal period exactly `p`, found by solving
/// `f^p(x) = x` per segment of the exact iterate.
pub fn periodic_points(map: &PwlMap, p: u32) -> Result<PeriodicSolve> {
    periodic_points_budget(map, p, DEFAULT_NODE_BUDGET)
}

pub fn periodic_points_budget(map: &PwlMap, p: u32, budget: usize) -> Result<PeriodicSolve> {
    assert!(p >= 1, "period must be positive");
    let iterate = map.power_budget(p, budget)?;
    let fixed = fixed_points(&iterate);

    let divisors: Vec<u32> = (1..p).filter(|d| p.is_multiple_of(*d)).collect();
    let mut orbits: BTreeMap<Rational, PeriodicOrbit> = BTreeMap::new();

    'solutions: for x in fixed.points {
        // walk the orbit under f itself
        let mut orbit = vec![x.clone()];
        for _ in 1..p {
            let next = map.eval(orbit.last().unwrap())?;
            orbit.push(next);
        }
        for &d in &divisors {
            if orbit[0] == orbit[d as usize % orbit.len()] && closes_with_period(&orbit, d) {
                continue 'solutions; // minimal period is a proper divisor
            }
        }
        let min_idx = orbit
            .iter()
            .enumerate()
            .min_by(|a, b| a.1.cmp(b.1))
            .map(|(i, _)| i)
            .unwrap();
        orbit.rotate_left(min_idx);
        orbits.entry(orbit[0].clone()).or_insert(PeriodicOrbit {
            points: orbit,
            period: p,
        });
    }

    Ok(PeriodicSolve {
        orbits: orbits.into_values().collect(),
        diagonal_ranges: fixed.ranges,
    })
}

fn closes_with_period(orbit: &[Rational], d: u32) -> bool {
    let d = d as usize;
    (0..orbit.len()).all(|i| orbit[i] == orbit[(i + d) % orbit.len()])
}

/// All minimal periods `<= p_max` realized by some periodic orbit. If the
/// node budget stops the iterate computation, the partial result is flagged
/// through `achieved_bound`.
pub fn period_set(map: &PwlMap, p_max: u32) -> PeriodSet {
    period_set_budget(map, p_max, DEFAULT_NODE_BUDGET)
}

pub fn period_set_budget(map: &PwlMap, p_max: u32, budget: usize) -> PeriodSet {
    let mut periods = BTreeSet::new();
    let mut achieved = 0;
    for p in 1..=p_max {
        match periodic_points_budget(map, p, budget) {
            Ok(solve) => {
                achieved = p;
                // a diagonal range of f itself is a continuum of fixed
                // points, so it realizes period 1; for p >= 2 the minimal
                // periods inside a range are mixed and ranges stay excluded
                let realized =
                    !solve.orbits.is_empty() || (p == 1 && !solve.diagonal_ranges.is_empty());
                if realized {
                    periods.insert(p);
                }
            }
            Err(Error::NodeBudget { .. }) => break,
            Err(_) => break,
        }
    }
    PeriodSet {
        periods,
        requested_bound: p_max,
        achieved_bound: achieved,
    }
}

/// Classifies the map by the Sharkovskii-minimal period detected up to
/// `p_max`. When only powers of two show up, the verdict says just that: a
/// finite search cannot separate type `2^k` from type-2-infinity.
pub fn sharkovskii_type_estimate(map: &PwlMap, p_max: u32) -> TypeVerdict {
    let set = period_set(map, p_max);
    let verdict = classify(&set.periods);
    TypeVerdict {
        detected_periods: set.periods,
        search_bound: set.achieved_bound,
        verdict,
    }
}

fn classify(periods: &BTreeSet<u32>) -> Verdict {
    let min = sharkovskii_min(periods.iter().map(|&p| p as u64));
    match min {
        Some(n) if !n.is_power_of_two() => Verdict::Finite(n as u32),
        _ => {
            let max_power = periods
                .iter()
                .map(|p| p.trailing_zeros())
                .max()
                .unwrap_or(0);
            Verdict::AtMostPowersOfTwo(max_power)
        }
    }
}
