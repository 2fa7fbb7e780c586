//! Horseshoe search and verification for iterates of a map.
//!
//! A horseshoe for `g` is a pair of closed non-degenerate subintervals `J, K`
//! with disjoint interiors such that `g(J) ∩ g(K) ⊇ J ∪ K`. All checks here
//! are exact rational comparisons. The search walks pairs of monotone pieces
//! of the iterate (maximal laps and single linear segments), which is
//! sufficient for piecewise-linear maps whose horseshoes align with monotone
//! pieces; a miss is therefore reported as "not found up to this iterate",
//! never as a proof of absence.

use serde::Serialize;

use crate::chaos::invariant_intervals;
use crate::error::{Error, Result};
use crate::interval::ClosedInterval;
use crate::pwl::{Direction, Lap, PwlMap};
use crate::rational::Rational;

/// A verified horseshoe: `J` and `K` have disjoint interiors and the images
/// under the stated iterate each cover the hull of `J ∪ K`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HorseshoeCertificate {
    pub iterate_n: u32,
    pub j: ClosedInterval,
    pub k: ClosedInterval,
    pub image_j: ClosedInterval,
    pub image_k: ClosedInterval,
}

impl HorseshoeCertificate {
    /// Re-verifies the certificate from scratch against the map.
    pub fn verify(&self, map: &PwlMap) -> bool {
        verify_horseshoe(map, self.iterate_n, &self.j, &self.k)
            && map.iterated_image(&self.j, self.iterate_n).as_ref() == Ok(&self.image_j)
            && map.iterated_image(&self.k, self.iterate_n).as_ref() == Ok(&self.image_k)
    }
}

/// One level of the nested invariant-interval probe.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NestedLevel {
    pub interval: ClosedInterval,
    /// Horseshoe for the second iterate of the map restricted to `interval`,
    /// when the lap-pair search finds one.
    pub certificate: Option<HorseshoeCertificate>,
}

/// Result of greedily descending through proper invariant subintervals,
/// attaching a second-iterate horseshoe certificate at each level.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NestedStructureReport {
    pub levels: Vec<NestedLevel>,
}

impl NestedStructureReport {
    /// True when every level found carries a certificate.
    pub fn structure_present(&self) -> bool {
        !self.levels.is_empty() && self.levels.iter().all(|l| l.certificate.is_some())
    }
}

/// Exact check of the horseshoe conditions for the `n`-th iterate: `J`, `K`
/// non-degenerate with disjoint interiors, and both iterate images contain
/// the hull of `J ∪ K`. Any failed condition (including intervals outside
/// the domain) yields `false`.
pub fn verify_horseshoe(map: &PwlMap, n: u32, j: &ClosedInterval, k: &ClosedInterval) -> bool {
    if j.is_degenerate() || k.is_degenerate() || !j.interiors_disjoint(k) {
        return false;
    }
    let hull = j.hull(k);
    let (image_j, image_k) = match (map.iterated_image(j, n), map.iterated_image(k, n)) {
        (Ok(a), Ok(b)) => (a, b),
        _ => return false,
    };
    image_j.contains(&hull) && image_k.contains(&hull)
}

/// Searches for a horseshoe of the `n`-th iterate by scanning ordered pairs
/// of monotone pieces of `f^n` with disjoint interiors. The pieces are the
/// maximal laps together with every single linear segment — segments matter
/// because a horseshoe can sit astride half of a lap whose middle node is a
/// straight-through point. For a qualifying pair both pieces are shrunk to
/// the minimal closed subintervals mapping exactly onto the pair's hull, so
/// the certificate's images both equal that hull. The first qualifying pair
/// in left-to-right piece order wins, which keeps the result deterministic.
pub fn find_horseshoe(map: &PwlMap, n: u32) -> Result<Option<HorseshoeCertificate>> {
    let iterate = map.power(n)?;
    let pieces = monotone_pieces(&iterate);
    for i in 0..pieces.len() {
        let image_i = piece_image(&iterate, &pieces[i]);
        for piece_j in &pieces[i + 1..] {
            if !pieces[i].interval.interiors_disjoint(&piece_j.interval) {
                continue;
            }
            let hull = pieces[i].interval.hull(&piece_j.interval);
            if image_i.contains(&hull) && piece_image(&iterate, piece_j).contains(&hull) {
                let j = shrink_to_hull(&iterate, &pieces[i], &hull);
                let k = shrink_to_hull(&iterate, piece_j, &hull);
                let cert = HorseshoeCertificate {
                    iterate_n: n,
                    image_j: map.iterated_image(&j, n)?,
                    image_k: map.iterated_image(&k, n)?,
                    j,
                    k,
                };
                debug_assert!(cert.verify(map));
                return Ok(Some(cert));
            }
        }
    }
    Ok(None)
}

/// Non-constant monotone pieces of a map: its maximal laps plus each linear
/// segment, deduplicated and sorted left-to-right (then by width).
fn monotone_pieces(map: &PwlMap) -> Vec<Lap> {
    let mut pieces: Vec<Lap> = map
        .laps()
        .into_iter()
        .filter(|l| l.direction != Direction::Constant)
        .collect();
    for w in map.nodes().windows(2) {
        let direction = match w[1].y.cmp(&w[0].y) {
            std::cmp::Ordering::Greater => Direction::Increasing,
            std::cmp::Ordering::Less => Direction::Decreasing,
            std::cmp::Ordering::Equal => continue,
        };
        pieces.push(Lap {
            interval: ClosedInterval::spanning(w[0].x.clone(), w[1].x.clone()),
            direction,
        });
    }
    pieces.sort_by(|a, b| {
        (a.interval.lo(), a.interval.hi()).cmp(&(b.interval.lo(), b.interval.hi()))
    });
    pieces.dedup();
    pieces
}

/// Image of a monotone piece: the values at its endpoints.
fn piece_image(map: &PwlMap, piece: &Lap) -> ClosedInterval {
    let a = map.eval(piece.interval.lo()).expect("piece inside domain");
    let b = map.eval(piece.interval.hi()).expect("piece inside domain");
    ClosedInterval::spanning(a, b)
}

/// The minimal closed subinterval of a strictly monotone piece mapping
/// exactly onto `hull`. Solutions are unique within the piece because it is
/// strictly monotone.
fn shrink_to_hull(map: &PwlMap, piece: &Lap, hull: &ClosedInterval) -> ClosedInterval {
    let (left_target, right_target) = match piece.direction {
        Direction::Increasing => (hull.lo(), hull.hi()),
        Direction::Decreasing => (hull.hi(), hull.lo()),
        Direction::Constant => unreachable!("constant pieces are filtered out"),
    };
    let a = solve_on_piece(map, piece, left_target);
    let b = solve_on_piece(map, piece, right_target);
    ClosedInterval::spanning(a, b)
}

fn solve_on_piece(map: &PwlMap, piece: &Lap, c: &Rational) -> Rational {
    for sol in map.solve_value(c) {
        if let Some(hit) = sol.intersection(&piece.interval) {
            return hit.lo().clone();
        }
    }
    unreachable!("piece image covers the hull, so the preimage exists")
}

/// Greedy probe for nested invariant intervals carrying second-iterate
/// horseshoes: starting from the whole domain, each level restricts the map
/// to the shortest proper invariant subinterval found among the candidate
/// endpoints, attaching a horseshoe certificate for the restricted second
/// iterate along the way. Returns however many levels exist, possibly just
/// the whole domain.
pub fn nested_structure_probe(map: &PwlMap, depth: u32) -> NestedStructureReport {
    assert!(depth >= 1, "depth must be positive");
    let mut levels = Vec::new();
    let mut current = map.clone();
    loop {
        let interval = current.domain();
        let certificate = find_horseshoe(&current, 2).ok().flatten();
        levels.push(NestedLevel {
            interval: interval.clone(),
            certificate,
        });
        if levels.len() as u32 == depth {
            break;
        }
        // shortest proper invariant subinterval, if any
        let next = invariant_intervals(&current, &[])
            .into_iter()
            .find(|j| interval.properly_contains(j));
        match next {
            Some(j) => match current.restrict(&j) {
                Ok(restricted) => current = restricted,
                Err(_) => break,
            },
            None => break,
        }
    }
    NestedStructureReport { levels }
}

/// Largest lower entropy bound obtainable from horseshoes of iterates up to
/// `n_max`: a horseshoe for `f^n` forces entropy at least `log 2 / n`.
/// Returns the best `(bound, iterate)` pair, or `(0.0, 0)` when no horseshoe
/// was found (including when the node budget stopped the iterate search).
pub fn horseshoe_entropy_bound(map: &PwlMap, n_max: u32) -> (f64, u32) {
    let mut best = (0.0f64, 0u32);
    for n in 1..=n_max {
        match find_horseshoe(map, n) {
            Ok(Some(_)) => {
                let bound = std::f64::consts::LN_2 / n as f64;
                if bound > best.0 {
                    best = (bound, n);
                }
            }
            Ok(None) => {}
            Err(Error::NodeBudget { .. }) => break,
            Err(_) => break,
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::builtin;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    fn iv(a: (i64, i64), b: (i64, i64)) -> ClosedInterval {
        ClosedInterval::new(r(a.0, a.1), r(b.0, b.1)).unwrap()
    }

    #[test]
    fn tent_halves_form_a_horseshoe() {
        let t = builtin("tent").unwrap();
        assert!(verify_horseshoe(
            &t,
            1,
            &iv((0, 1), (1, 2)),
            &iv((1, 2), (1, 1))
        ));
    }

    #[test]
    fn sqrt_tent_second_iterate_horseshoe() {
        let g = builtin("sqrt_tent").unwrap();
        assert!(verify_horseshoe(
            &g,
            2,
            &iv((0, 1), (1, 4)),
            &iv((1, 4), (1, 2))
        ));
        // not a horseshoe for the map itself
        assert!(!verify_horseshoe(
            &g,
            1,
            &iv((0, 1), (1, 4)),
            &iv((1, 4), (1, 2))
        ));
    }

    #[test]
    fn identity_has_no_horseshoe() {
        let id = builtin("identity").unwrap();
        assert!(!verify_horseshoe(
            &id,
            1,
            &iv((0, 1), (1, 2)),
            &iv((1, 2), (1, 1))
        ));
        assert_eq!(find_horseshoe(&id, 1).unwrap(), None);
    }

    #[test]
    fn degenerate_or_overlapping_intervals_fail() {
        let t = builtin("tent").unwrap();
        let point = ClosedInterval::point(r(1, 2));
        assert!(!verify_horseshoe(&t, 1, &point, &iv((1, 2), (1, 1))));
        assert!(!verify_horseshoe(
            &t,
            1,
            &iv((0, 1), (3, 4)),
            &iv((1, 4), (1, 1))
        ));
        // outside the domain
        assert!(!verify_horseshoe(
            &t,
            1,
            &iv((-1, 1), (0, 1)),
            &iv((0, 1), (1, 1))
        ));
    }

    #[test]
    fn find_on_tent_shrinks_to_halves() {
        let cert = find_horseshoe(&builtin("tent").unwrap(), 1)
            .unwrap()
            .unwrap();
        assert_eq!(cert.j, iv((0, 1), (1, 2)));
        assert_eq!(cert.k, iv((1, 2), (1, 1)));
        assert_eq!(cert.image_j, iv((0, 1), (1, 1)));
        assert_eq!(cert.image_k, iv((0, 1), (1, 1)));
        assert!(cert.verify(&builtin("tent").unwrap()));
    }

    #[test]
    fn find_on_sqrt_tent() {
        let g = builtin("sqrt_tent").unwrap();
        assert_eq!(find_horseshoe(&g, 1).unwrap(), None);
        let cert = find_horseshoe(&g, 2).unwrap().unwrap();
        assert_eq!(cert.iterate_n, 2);
        assert_eq!(cert.j, iv((0, 1), (1, 4)));
        assert_eq!(cert.k, iv((1, 4), (1, 2)));
        // shrink-to-hull makes both images exactly the hull
        let hull = cert.j.hull(&cert.k);
        assert_eq!(cert.image_j, hull);
        assert_eq!(cert.image_k, hull);
        assert!(cert.verify(&g));
    }

    #[test]
    fn horseshoe_for_iterate_doubles() {
        // a horseshoe for f^n yields one for f^(2n)
        let t = builtin("tent").unwrap();
        assert!(find_horseshoe(&t, 1).unwrap().is_some());
        assert!(find_horseshoe(&t, 2).unwrap().is_some());
        let g = builtin("sqrt_tent").unwrap();
        assert!(find_horseshoe(&g, 2).unwrap().is_some());
        assert!(find_horseshoe(&g, 4).unwrap().is_some());
    }

    #[test]
    fn entropy_bounds_from_horseshoes() {
        let ln2 = std::f64::consts::LN_2;
        let (bound, n) = horseshoe_entropy_bound(&builtin("tent").unwrap(), 3);
        assert_eq!(n, 1);
        assert!((bound - ln2).abs() < 1e-15);
        let (bound, n) = horseshoe_entropy_bound(&builtin("sqrt_tent").unwrap(), 3);
        assert_eq!(n, 2);
        assert!((bound - ln2 / 2.0).abs() < 1e-15);
        assert_eq!(
            horseshoe_entropy_bound(&builtin("identity").unwrap(), 3),
            (0.0, 0)
        );
    }

    #[test]
    fn probes() {
        let t = nested_structure_probe(&builtin("tent").unwrap(), 3);
        assert_eq!(t.levels.len(), 1);
        assert_eq!(t.levels[0].interval, iv((0, 1), (1, 1)));
        assert!(t.levels[0].certificate.is_some());
        assert!(t.structure_present());

        let g = nested_structure_probe(&builtin("sqrt_tent").unwrap(), 3);
        assert_eq!(g.levels.len(), 1);
        assert!(g.levels[0].certificate.is_some());

        let id = nested_structure_probe(&builtin("identity").unwrap(), 2);
        assert_eq!(id.levels.len(), 1);
        assert!(id.levels[0].certificate.is_none());
        assert!(!id.structure_present());
    }
}
