//! Continuous piecewise-linear self-maps of a compact interval, represented
//! exactly by their node list and evaluated with rational arithmetic.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::interval::ClosedInterval;
use crate::rational::Rational;

/// Default cap on the node count an exact composition may produce. Lap counts
/// of iterates grow exponentially, so the cap is what keeps `power` honest:
/// past it the operation fails loudly instead of truncating.
pub const DEFAULT_NODE_BUDGET: usize = 1 << 20;

/// A node `(x, f(x))` of a piecewise-linear map.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Node {
    pub x: Rational,
    pub y: Rational,
}

/// Monotonicity of a lap. Constant pieces are kept separate from increasing
/// and decreasing ones; they never merge with a neighbor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    Increasing,
    Decreasing,
    Constant,
}

/// A maximal monotone piece of a map.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Lap {
    pub interval: ClosedInterval,
    pub direction: Direction,
}

/// A continuous piecewise-linear self-map `f: [x_0, x_k] -> [x_0, x_k]`,
/// stored as its node list. Invariants enforced at construction:
///
/// * at least two nodes, abscissas strictly increasing;
/// * every node value lies in the domain (self-map);
/// * the map is the linear interpolation between consecutive nodes.
///
/// Values are immutable after construction and all operations are pure, so a
/// map can be shared freely across threads.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PwlMap {
    nodes: Vec<Node>,
}

impl PwlMap {
    pub fn new(nodes: Vec<(Rational, Rational)>) -> Result<Self> {
        if nodes.len() < 2 {
            return Err(Error::TooFewNodes(nodes.len()));
        }
        for i in 1..nodes.len() {
            if nodes[i - 1].0 >= nodes[i].0 {
                return Err(Error::UnsortedNodes { index: i });
            }
        }
        let lo = nodes[0].0.clone();
        let hi = nodes[nodes.len() - 1].0.clone();
        for (i, (_, y)) in nodes.iter().enumerate() {
            if y < &lo || y > &hi {
                return Err(Error::ValueOutsideDomain {
                    index: i,
                    y: y.clone(),
                    lo,
                    hi,
                });
            }
        }
        Ok(PwlMap {
            nodes: nodes.into_iter().map(|(x, y)| Node { x, y }).collect(),
        })
    }

    /// Convenience constructor from `(x_num, x_den, y_num, y_den)` tuples.
    pub fn from_i64_nodes(nodes: &[(i64, i64, i64, i64)]) -> Result<Self> {
        PwlMap::new(
            nodes
                .iter()
                .map(|&(xn, xd, yn, yd)| (Rational::new(xn, xd), Rational::new(yn, yd)))
                .collect(),
        )
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn domain(&self) -> ClosedInterval {
        ClosedInterval::spanning(
            self.nodes[0].x.clone(),
            self.nodes[self.nodes.len() - 1].x.clone(),
        )
    }

    /// Exact range `[min f, max f]`; extrema of a PWL map occur at nodes.
    pub fn range(&self) -> ClosedInterval {
        let mut lo = self.nodes[0].y.clone();
        let mut hi = lo.clone();
        for n in &self.nodes[1..] {
            if n.y < lo {
                lo = n.y.clone();
            }
            if n.y > hi {
                hi = n.y.clone();
            }
        }
        ClosedInterval::new(lo, hi).expect("range endpoints ordered")
    }

    /// Exact value of the interpolant at `x`.
    pub fn eval(&self, x: &Rational) -> Result<Rational> {
        let dom = self.domain();
        if !dom.contains_point(x) {
            return Err(Error::PointOutsideDomain {
                x: x.clone(),
                lo: dom.lo().clone(),
                hi: dom.hi().clone(),
            });
        }
        // Index of the segment [x_i, x_{i+1}] containing x.
        let i = match self.nodes.binary_search_by(|n| n.x.cmp(x)) {
            Ok(i) => return Ok(self.nodes[i].y.clone()),
            Err(i) => i - 1, // x strictly between nodes i-1+1... i.e. in (x_{i-1}, x_i)
        };
        let a = &self.nodes[i];
        let b = &self.nodes[i + 1];
        // y = y0 + (x - x0) * (y1 - y0) / (x1 - x0)
        let t = (x - &a.x) / (&b.x - &a.x);
        Ok(&a.y + &(&t * &(&b.y - &a.y)))
    }

    /// Exact image `[min, max]` of a subinterval: values at the endpoints and
    /// at every interior node.
    pub fn image(&self, j: &ClosedInterval) -> Result<ClosedInterval> {
        let dom = self.domain();
        if !dom.contains(j) {
            return Err(Error::IntervalOutsideDomain {
                lo: j.lo().clone(),
                hi: j.hi().clone(),
                dom_lo: dom.lo().clone(),
                dom_hi: dom.hi().clone(),
            });
        }
        let mut lo = self.eval(j.lo())?;
        let mut hi = lo.clone();
        let mut take = |v: Rational| {
            if v < lo {
                lo = v;
            } else if v > hi {
                hi = v;
            }
        };
        take(self.eval(j.hi())?);
        for n in &self.nodes {
            if &n.x > j.lo() && &n.x < j.hi() {
                take(n.y.clone());
            }
        }
        ClosedInterval::new(lo, hi)
    }

    /// Exact image of `j` under the `n`-th iterate, computed by iterating
    /// `image` (the set image of an iterate is the iterated set image, so
    /// this agrees with `power(n)?.image(j)` without building the iterate).
    pub fn iterated_image(&self, j: &ClosedInterval, n: u32) -> Result<ClosedInterval> {
        let mut cur = j.clone();
        for _ in 0..n {
            cur = self.image(&cur)?;
        }
        Ok(cur)
    }

    /// Maximal monotone pieces in left-to-right order. Segments of equal
    /// direction merge; constant segments stand alone, so adjacent laps never
    /// share a non-constant direction.
    pub fn laps(&self) -> Vec<Lap> {
        let mut laps: Vec<Lap> = Vec::new();
        for w in self.nodes.windows(2) {
            let dir = match w[1].y.cmp(&w[0].y) {
                std::cmp::Ordering::Greater => Direction::Increasing,
                std::cmp::Ordering::Less => Direction::Decreasing,
                std::cmp::Ordering::Equal => Direction::Constant,
            };
            match laps.last_mut() {
                Some(last) if last.direction == dir && dir != Direction::Constant => {
                    last.interval =
                        ClosedInterval::spanning(last.interval.lo().clone(), w[1].x.clone());
                }
                _ => laps.push(Lap {
                    interval: ClosedInterval::spanning(w[0].x.clone(), w[1].x.clone()),
                    direction: dir,
                }),
            }
        }
        laps
    }

    pub fn lap_count(&self) -> usize {
        self.laps().len()
    }

    /// Exact composition `self ∘ inner` with the default node budget.
    pub fn compose(&self, inner: &PwlMap) -> Result<PwlMap> {
        self.compose_budget(inner, DEFAULT_NODE_BUDGET)
    }

    /// Exact composition `self ∘ inner`. The node set of the result is
    /// `inner`'s abscissas together with the exact preimages under `inner` of
    /// `self`'s node abscissas; the composite is affine between consecutive
    /// such points. Exceeding `budget` nodes is an error, never a truncation.
    pub fn compose_budget(&self, inner: &PwlMap, budget: usize) -> Result<PwlMap> {
        let inner_range = inner.range();
        let outer_dom = self.domain();
        if !outer_dom.contains(&inner_range) {
            return Err(Error::RangeMismatch {
                range_lo: inner_range.lo().clone(),
                range_hi: inner_range.hi().clone(),
                dom_lo: outer_dom.lo().clone(),
                dom_hi: outer_dom.hi().clone(),
            });
        }

        if inner.nodes.len() > budget {
            return Err(Error::NodeBudget {
                budget,
                achieved: 1,
            });
        }
        let mut xs: BTreeSet<Rational> = inner.nodes.iter().map(|n| n.x.clone()).collect();
        let outer_xs: Vec<&Rational> = self.nodes.iter().map(|n| &n.x).collect();
        for w in inner.nodes.windows(2) {
            let (x0, y0, x1, y1) = (&w[0].x, &w[0].y, &w[1].x, &w[1].y);
            if y0 == y1 {
                continue; // constant segment: endpoints are already nodes
            }
            let (vlo, vhi) = if y0 < y1 { (y0, y1) } else { (y1, y0) };
            // Outer abscissas crossed by this segment's value range.
            let start = outer_xs.partition_point(|c| *c < vlo);
            for c in &outer_xs[start..] {
                if *c > vhi {
                    break;
                }
                // solve y0 + t (y1 - y0) = c  =>  x = x0 + (c - y0)(x1 - x0)/(y1 - y0)
                let x = x0 + &(&(&(*c - y0) * &(x1 - x0)) / &(y1 - y0));
                xs.insert(x);
                if xs.len() > budget {
                    return Err(Error::NodeBudget {
                        budget,
                        achieved: 1,
                    });
                }
            }
        }

        let mut nodes = Vec::with_capacity(xs.len());
        for x in xs {
            let y = self.eval(&inner.eval(&x)?)?;
            nodes.push((x, y));
        }
        PwlMap::new(nodes)
    }

    /// Exact `n`-th iterate with the default node budget.
    pub fn power(&self, n: u32) -> Result<PwlMap> {
        self.power_budget(n, DEFAULT_NODE_BUDGET)
    }

    pub fn power_budget(&self, n: u32, budget: usize) -> Result<PwlMap> {
        assert!(n >= 1, "iterate must be positive");
        let mut acc = self.clone();
        for k in 2..=n {
            acc = self.compose_budget(&acc, budget).map_err(|e| match e {
                Error::NodeBudget { budget, .. } => Error::NodeBudget {
                    budget,
                    achieved: k - 1,
                },
                other => other,
            })?;
        }
        Ok(acc)
    }

    /// Functional equality: two PWL maps agree everywhere iff they agree on
    /// the union of their node abscissas (both are affine between consecutive
    /// points of the union).
    pub fn eq_as_function(&self, other: &PwlMap) -> bool {
        if self.domain() != other.domain() {
            return false;
        }
        let xs: BTreeSet<&Rational> = self
            .nodes
            .iter()
            .chain(other.nodes.iter())
            .map(|n| &n.x)
            .collect();
        xs.into_iter().all(|x| match (self.eval(x), other.eval(x)) {
            (Ok(a), Ok(b)) => a == b,
            _ => false,
        })
    }

    /// Restriction to a subinterval. Succeeds only when the restriction is
    /// again a self-map, i.e. when `j` is invariant (`f(j) ⊆ j`).
    pub fn restrict(&self, j: &ClosedInterval) -> Result<PwlMap> {
        let mut nodes = vec![(j.lo().clone(), self.eval(j.lo())?)];
        for n in &self.nodes {
            if &n.x > j.lo() && &n.x < j.hi() {
                nodes.push((n.x.clone(), n.y.clone()));
            }
        }
        nodes.push((j.hi().clone(), self.eval(j.hi())?));
        PwlMap::new(nodes)
    }

    /// All exact solutions of `f(x) = c`, as maximal points/segments in
    /// left-to-right order. A constant segment at level `c` contributes the
    /// whole segment.
    pub fn solve_value(&self, c: &Rational) -> Vec<ClosedInterval> {
        let mut out: Vec<ClosedInterval> = Vec::new();
        let mut push = |iv: ClosedInterval| {
            // merge solutions sharing an endpoint (adjacent segments)
            if let Some(last) = out.last_mut() {
                if last.hi() >= iv.lo() {
                    *last = last.hull(&iv);
                    return;
                }
            }
            out.push(iv);
        };
        for w in self.nodes.windows(2) {
            let (x0, y0, x1, y1) = (&w[0].x, &w[0].y, &w[1].x, &w[1].y);
            if y0 == y1 {
                if y0 == c {
                    push(ClosedInterval::spanning(x0.clone(), x1.clone()));
                }
                continue;
            }
            let (vlo, vhi) = if y0 < y1 { (y0, y1) } else { (y1, y0) };
            if c < vlo || c > vhi {
                continue;
            }
            let x = x0 + &(&(&(c - y0) * &(x1 - x0)) / &(y1 - y0));
            push(ClosedInterval::point(x));
        }
        out
    }

    /// Parses the map text format: one `<x> <y>` node per line, rationals as
    /// `p/q` or integer literals, `#` starting a comment line, blank lines
    /// ignored. Nodes must already be sorted. Errors carry 1-based line
    /// numbers.
    pub fn parse_text(text: &str) -> Result<PwlMap> {
        let mut nodes: Vec<(Rational, Rational)> = Vec::new();
        let mut lines: Vec<usize> = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut parts = line.split_whitespace();
            let (xs, ys) = match (parts.next(), parts.next(), parts.next()) {
                (Some(x), Some(y), None) => (x, y),
                _ => {
                    return Err(Error::Parse {
                        line: line_no,
                        message: format!("expected `<x> <y>`, got `{line}`"),
                    })
                }
            };
            let x: Rational = xs.parse().map_err(|e| Error::Parse {
                line: line_no,
                message: e,
            })?;
            let y: Rational = ys.parse().map_err(|e| Error::Parse {
                line: line_no,
                message: e,
            })?;
            if let Some((px, _)) = nodes.last() {
                if px >= &x {
                    return Err(Error::Parse {
                        line: line_no,
                        message: format!(
                            "node abscissa {x} is not greater than the previous one {px}"
                        ),
                    });
                }
            }
            nodes.push((x, y));
            lines.push(line_no);
        }
        PwlMap::new(nodes).map_err(|e| match e {
            Error::ValueOutsideDomain { index, y, lo, hi } => Error::Parse {
                line: lines[index],
                message: format!("value {y} escapes the domain [{lo}, {hi}]"),
            },
            Error::TooFewNodes(n) => Error::Parse {
                line: text.lines().count(),
                message: format!("need at least two nodes, got {n}"),
            },
            other => other,
        })
    }

    /// Canonical text form: one `<x> <y>` node per line with normalized
    /// rationals. `parse_text` of the output reproduces the map bit-exactly.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for n in &self.nodes {
            s.push_str(&format!("{} {}\n", n.x, n.y));
        }
        s
    }
}

impl fmt::Display for PwlMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .nodes
            .iter()
            .map(|n| format!("({}, {})", n.x, n.y))
            .collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// Double-precision shadow of a map, used by the Monte Carlo chaos sampler.
/// Exact arithmetic is deliberately not used there: pointwise rational orbits
/// of expanding maps blow up denominators exponentially.
#[derive(Debug, Clone)]
pub struct FloatPwl {
    xs: Vec<f64>,
    ys: Vec<f64>,
    slopes: Vec<f64>,
}

impl FloatPwl {
    pub fn domain(&self) -> (f64, f64) {
        (self.xs[0], self.xs[self.xs.len() - 1])
    }

    /// Evaluates the interpolant, clamping the argument into the domain to
    /// absorb floating-point drift.
    pub fn eval(&self, x: f64) -> f64 {
        let (lo, hi) = self.domain();
        let x = x.clamp(lo, hi);
        let i = match self.xs.partition_point(|v| *v <= x) {
            0 => 0,
            i if i >= self.xs.len() => self.xs.len() - 2,
            i => i - 1,
        };
        self.ys[i] + (x - self.xs[i]) * self.slopes[i]
    }
}

impl From<&PwlMap> for FloatPwl {
    fn from(map: &PwlMap) -> Self {
        let xs: Vec<f64> = map.nodes.iter().map(|n| n.x.to_f64()).collect();
        let ys: Vec<f64> = map.nodes.iter().map(|n| n.y.to_f64()).collect();
        let slopes = xs
            .windows(2)
            .zip(ys.windows(2))
            .map(|(x, y)| (y[1] - y[0]) / (x[1] - x[0]))
            .collect();
        FloatPwl { xs, ys, slopes }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::builtin;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    fn tent() -> PwlMap {
        builtin("tent").unwrap()
    }

    fn sqrt_tent() -> PwlMap {
        builtin("sqrt_tent").unwrap()
    }

    fn identity() -> PwlMap {
        builtin("identity").unwrap()
    }

    #[test]
    fn construction_rejects_bad_maps() {
        assert!(matches!(
            PwlMap::from_i64_nodes(&[(0, 1, 0, 1)]),
            Err(Error::TooFewNodes(1))
        ));
        assert!(matches!(
            PwlMap::from_i64_nodes(&[(0, 1, 0, 1), (0, 1, 1, 1)]),
            Err(Error::UnsortedNodes { index: 1 })
        ));
        assert!(matches!(
            PwlMap::from_i64_nodes(&[(0, 1, 0, 1), (1, 1, 2, 1)]),
            Err(Error::ValueOutsideDomain { index: 1, .. })
        ));
    }

    #[test]
    fn eval_tent() {
        let t = tent();
        assert_eq!(t.eval(&r(1, 3)).unwrap(), r(2, 3));
        assert_eq!(t.eval(&r(0, 1)).unwrap(), r(0, 1));
        assert_eq!(t.eval(&r(1, 2)).unwrap(), r(1, 1));
        assert!(t.eval(&r(3, 2)).is_err());
    }

    #[test]
    fn eval_sqrt_tent_right_piece() {
        // linear piece 2x - 3/2 on [3/4, 1]
        assert_eq!(sqrt_tent().eval(&r(7, 8)).unwrap(), r(1, 4));
    }

    #[test]
    fn compose_tent_with_itself() {
        let t2 = tent().compose(&tent()).unwrap();
        let expected = PwlMap::from_i64_nodes(&[
            (0, 1, 0, 1),
            (1, 4, 1, 1),
            (1, 2, 0, 1),
            (3, 4, 1, 1),
            (1, 1, 0, 1),
        ])
        .unwrap();
        assert_eq!(t2, expected);
    }

    #[test]
    fn compose_with_identity_is_node_exact() {
        for map in [tent(), sqrt_tent()] {
            assert_eq!(identity().compose(&map).unwrap(), map);
            assert_eq!(map.compose(&identity()).unwrap(), map);
        }
        assert_eq!(identity().power(5).unwrap(), identity());
    }

    #[test]
    fn sqrt_tent_squares_to_double_tent() {
        // g² is the tent map on each half of the domain, upside down on the
        // left half: nodes (0,1/2),(1/4,0),(1/2,1/2),(3/4,1),(1,1/2).
        let g2 = sqrt_tent().power(2).unwrap();
        let expected = PwlMap::from_i64_nodes(&[
            (0, 1, 1, 2),
            (1, 4, 0, 1),
            (1, 2, 1, 2),
            (3, 4, 1, 1),
            (1, 1, 1, 2),
        ])
        .unwrap();
        assert_eq!(g2, expected);
        // the node at 1/2 is a straight-through point (slope 2 on both
        // sides), so the two middle segments merge into one lap
        assert_eq!(g2.laps().len(), 3);

        // restricted to [0,1/2] it is x -> |2x - 1/2|
        for num in 0..=8 {
            let x = r(num, 16);
            let direct = (&(&r(2, 1) * &x) - &r(1, 2)).abs();
            assert_eq!(g2.eval(&x).unwrap(), direct);
        }
    }

    #[test]
    fn power_one_is_identity_operation() {
        let t = tent();
        assert_eq!(t.power(1).unwrap(), t);
        assert_eq!(t.power(2).unwrap(), t.compose(&t).unwrap());
    }

    #[test]
    fn images() {
        let t = tent();
        let j = ClosedInterval::new(r(1, 4), r(3, 4)).unwrap();
        assert_eq!(
            t.image(&j).unwrap(),
            ClosedInterval::new(r(1, 2), r(1, 1)).unwrap()
        );
        // point image
        let p = ClosedInterval::point(r(1, 3));
        assert_eq!(t.image(&p).unwrap(), ClosedInterval::point(r(2, 3)));
        // image under an iterate, the covering half of the g² horseshoe
        let g = sqrt_tent();
        let j = ClosedInterval::new(r(0, 1), r(1, 4)).unwrap();
        assert_eq!(
            g.power(2).unwrap().image(&j).unwrap(),
            ClosedInterval::new(r(0, 1), r(1, 2)).unwrap()
        );
        assert_eq!(
            g.iterated_image(&j, 2).unwrap(),
            ClosedInterval::new(r(0, 1), r(1, 2)).unwrap()
        );
    }

    #[test]
    fn iterated_image_matches_power_image() {
        let g = sqrt_tent();
        let j = ClosedInterval::new(r(1, 8), r(1, 3)).unwrap();
        for n in 1..=6 {
            assert_eq!(
                g.iterated_image(&j, n).unwrap(),
                g.power(n).unwrap().image(&j).unwrap()
            );
        }
    }

    #[test]
    fn lap_decomposition() {
        let t = tent();
        let laps = t.laps();
        assert_eq!(laps.len(), 2);
        assert_eq!(laps[0].direction, Direction::Increasing);
        assert_eq!(laps[1].direction, Direction::Decreasing);

        // T² has 4 laps with turning points 1/4, 1/2, 3/4
        let t2 = t.power(2).unwrap();
        let laps = t2.laps();
        assert_eq!(laps.len(), 4);
        assert_eq!(laps[0].interval.hi(), &r(1, 4));
        assert_eq!(laps[1].interval.hi(), &r(1, 2));
        assert_eq!(laps[2].interval.hi(), &r(3, 4));

        // g's first two segments share the decreasing direction and merge
        let laps = sqrt_tent().laps();
        assert_eq!(laps.len(), 2);
        assert_eq!(
            laps[0].interval,
            ClosedInterval::new(r(0, 1), r(3, 4)).unwrap()
        );
        assert_eq!(laps[0].direction, Direction::Decreasing);
        assert_eq!(laps[1].direction, Direction::Increasing);
    }

    #[test]
    fn constant_laps_do_not_merge() {
        // truncated tent: plateau between the two slope pieces
        let m =
            PwlMap::from_i64_nodes(&[(0, 1, 0, 1), (9, 20, 9, 10), (11, 20, 9, 10), (1, 1, 0, 1)])
                .unwrap();
        let laps = m.laps();
        assert_eq!(laps.len(), 3);
        assert_eq!(laps[1].direction, Direction::Constant);
    }

    #[test]
    fn node_budget_is_enforced() {
        let t = tent();
        let err = t.power_budget(12, 64).unwrap_err();
        assert!(matches!(err, Error::NodeBudget { budget: 64, .. }));
    }

    #[test]
    fn solve_value_finds_preimages() {
        let t = tent();
        let sols = t.solve_value(&r(1, 2));
        assert_eq!(
            sols,
            vec![
                ClosedInterval::point(r(1, 4)),
                ClosedInterval::point(r(3, 4))
            ]
        );
        // constant plateau at the level is returned whole
        let m =
            PwlMap::from_i64_nodes(&[(0, 1, 0, 1), (9, 20, 9, 10), (11, 20, 9, 10), (1, 1, 0, 1)])
                .unwrap();
        let sols = m.solve_value(&r(9, 10));
        assert_eq!(
            sols,
            vec![ClosedInterval::new(r(9, 20), r(11, 20)).unwrap()]
        );
    }

    #[test]
    fn restrict_requires_invariance() {
        let g2 = sqrt_tent().power(2).unwrap();
        let left = ClosedInterval::new(r(0, 1), r(1, 2)).unwrap();
        let restricted = g2.restrict(&left).unwrap();
        assert_eq!(restricted.domain(), left);
        assert_eq!(restricted.node_count(), 3);
        // [0, 1/4] is not invariant under g²
        let j = ClosedInterval::new(r(0, 1), r(1, 4)).unwrap();
        assert!(g2.restrict(&j).is_err());
    }

    #[test]
    fn parse_and_serialize() {
        let t = PwlMap::parse_text("0 0\n1/2 1\n1 0\n").unwrap();
        assert_eq!(t, tent());
        let g = PwlMap::parse_text("# sqrt tent\n0 1\n1/2 1/2\n3/4 0\n\n1 1/2").unwrap();
        assert_eq!(g, sqrt_tent());
        // canonical round-trip
        for m in [tent(), sqrt_tent()] {
            assert_eq!(PwlMap::parse_text(&m.to_text()).unwrap(), m);
        }
        // non-canonical rationals normalize
        let m = PwlMap::parse_text("0 0\n2/4 1\n1 0").unwrap();
        assert_eq!(m, tent());
        assert_eq!(m.to_text(), "0 0\n1/2 1\n1 0\n");
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        match PwlMap::parse_text("1 0\n0 1") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("expected parse error, got {other:?}"),
        }
        match PwlMap::parse_text("0 0\n1/2 x\n1 0") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("expected parse error, got {other:?}"),
        }
        match PwlMap::parse_text("# comment\n0 0\n1/2 2\n1 0") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("expected range-escape error, got {other:?}"),
        }
        match PwlMap::parse_text("0 0 0\n1 1") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 1),
            other => panic!("expected arity error, got {other:?}"),
        }
    }

    #[test]
    fn float_shadow_matches_exact_eval() {
        let g = sqrt_tent();
        let f = FloatPwl::from(&g);
        for num in 0..=32 {
            let x = r(num, 32);
            assert_eq!(f.eval(x.to_f64()), g.eval(&x).unwrap().to_f64());
        }
        // clamping
        assert_eq!(f.eval(-0.5), 1.0);
        assert_eq!(f.eval(1.5), 0.5);
    }
}
