//! Markov structure detection and Perron-root computation.
//!
//! A piecewise-linear map is Markov when the forward orbits of its node
//! abscissas close up into a finite set. That set cuts the domain into cells,
//! each of which maps affinely onto a union of consecutive cells, and the
//! 0/1 cell-covering matrix carries the map's entropy in its spectral radius.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};
use serde::Serialize;

use crate::interval::ClosedInterval;
use crate::pwl::PwlMap;
use crate::rational::Rational;

/// Default budget for closing breakpoint orbits: catalog maps close within a
/// handful of steps, so this is generous headroom without an unbounded loop.
pub const DEFAULT_ORBIT_STEPS: u32 = 512;

/// A forward-invariant cut set together with the cell-covering matrix:
/// `matrix[i][j] = 1` iff the image of the `i`-th cell contains the `j`-th.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MarkovData {
    /// Sorted cut points `c_0 < ... < c_m`; the first and last are the domain
    /// endpoints and every node abscissa appears.
    pub cuts: Vec<Rational>,
    pub matrix: Vec<Vec<u8>>,
}

impl MarkovData {
    pub fn cell_count(&self) -> usize {
        self.cuts.len() - 1
    }

    pub fn cell(&self, i: usize) -> ClosedInterval {
        ClosedInterval::new(self.cuts[i].clone(), self.cuts[i + 1].clone())
            .expect("cuts are sorted")
    }

    /// Matrix rows as strings of 0/1 digits, the report output form.
    pub fn matrix_digit_rows(&self) -> Vec<String> {
        self.matrix
            .iter()
            .map(|row| {
                row.iter()
                    .map(|&b| if b == 0 { '0' } else { '1' })
                    .collect()
            })
            .collect()
    }

    /// Re-checks every matrix entry against the exact interval image of the
    /// corresponding cell.
    pub fn verify(&self, map: &PwlMap) -> bool {
        (0..self.cell_count()).all(|i| {
            let image = match map.image(&self.cell(i)) {
                Ok(image) => image,
                Err(_) => return false,
            };
            (0..self.cell_count()).all(|j| {
                let covers = image.contains(&self.cell(j));
                covers == (self.matrix[i][j] == 1)
            })
        })
    }

    pub fn is_irreducible(&self) -> bool {
        is_irreducible(&self.matrix)
    }
}

/// Builds the Markov partition by iterating the forward orbit of every node
/// abscissa with exact arithmetic. `None` when some orbit fails to close
/// (repeat an exact value) within `max_steps` — absence of a verdict, not an
/// error, since a larger budget might still close it.
pub fn markov_partition(map: &PwlMap, max_steps: u32) -> Option<MarkovData> {
    assert!(max_steps >= 1, "orbit budget must be positive");
    let mut cuts: BTreeSet<Rational> = BTreeSet::new();
    for node in map.nodes() {
        let mut seen: BTreeSet<Rational> = BTreeSet::new();
        seen.insert(node.x.clone());
        let mut x = node.x.clone();
        let mut closed = false;
        for _ in 0..max_steps {
            x = map.eval(&x).expect("orbits stay inside the domain");
            if !seen.insert(x.clone()) {
                closed = true;
                break;
            }
        }
        if !closed {
            return None;
        }
        cuts.extend(seen);
    }

    let cuts: Vec<Rational> = cuts.into_iter().collect();
    let m = cuts.len() - 1;
    let mut matrix = vec![vec![0u8; m]; m];
    for i in 0..m {
        // no node abscissa lies strictly inside a cell, so the map is affine
        // there and the image endpoints are the endpoint values
        let a = map.eval(&cuts[i]).expect("cut inside domain");
        let b = map.eval(&cuts[i + 1]).expect("cut inside domain");
        let image = ClosedInterval::spanning(a, b);
        // the cut set is forward-invariant, so both endpoints are cuts
        let lo = cuts
            .binary_search(image.lo())
            .expect("image endpoint is a cut");
        let hi = cuts
            .binary_search(image.hi())
            .expect("image endpoint is a cut");
        for entry in &mut matrix[i][lo..hi] {
            *entry = 1;
        }
    }

    let data = MarkovData { cuts, matrix };
    debug_assert!(data.verify(map));
    Some(data)
}

/// True iff the directed graph of the 0/1 matrix is strongly connected. For a
/// single cell this requires the self-loop, matching the usual convention
/// that a 1x1 zero matrix is reducible.
pub fn is_irreducible(matrix: &[Vec<u8>]) -> bool {
    let n = matrix.len();
    if n == 0 {
        return false;
    }
    if n == 1 {
        return matrix[0][0] != 0;
    }
    let reaches_all = |forward: bool| {
        let mut seen = vec![false; n];
        let mut stack = vec![0usize];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for w in 0..n {
                let edge = if forward { matrix[v][w] } else { matrix[w][v] };
                if edge != 0 && !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen.into_iter().all(|b| b)
    };
    reaches_all(true) && reaches_all(false)
}

/// Spectral radius of a nonnegative integer matrix with certified error
/// bounds.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PerronRoot {
    /// Midpoint of the final bracket.
    pub value: f64,
    /// Exact lower bound at termination.
    pub lower: f64,
    /// Exact upper bound at termination.
    pub upper: f64,
    pub iterations: u32,
}

/// Spectral radius of a nonnegative 0/1 matrix to within `tol`, by power
/// iteration on `A + I` (the shift defeats periodicity) with exact integer
/// matrix-vector products. The min/max ratios of consecutive iterates bracket
/// the root from below and above; iteration stops once the bracket is
/// narrower than `tol`, and only the reported numbers are rounded.
///
/// Reducible matrices are split into strongly connected components first —
/// the bracket of a reducible matrix need not tighten — and the largest
/// component root wins. A zero matrix has root 0.
pub fn perron_root(matrix: &[Vec<u8>], tol: f64) -> PerronRoot {
    assert!(tol > 0.0, "tolerance must be positive");
    let zero = PerronRoot {
        value: 0.0,
        lower: 0.0,
        upper: 0.0,
        iterations: 0,
    };
    let n = matrix.len();
    if n == 0 {
        return zero;
    }
    let tol_rat = BigRational::from_float(tol).expect("finite tolerance");

    let mut best: Option<(BigRational, PerronRootExact)> = None;
    for scc in strongly_connected_components(matrix) {
        let root = if scc.len() == 1 && matrix[scc[0]][scc[0]] == 0 {
            continue; // trivial component, spectral radius 0
        } else {
            perron_irreducible(matrix, &scc, &tol_rat)
        };
        let mid = (&root.lower + &root.upper) / BigRational::from_integer(BigInt::from(2));
        if best.as_ref().is_none_or(|(m, _)| mid > *m) {
            best = Some((mid, root));
        }
    }

    match best {
        None => zero,
        Some((mid, root)) => PerronRoot {
            value: rat_to_f64(&mid),
            lower: rat_to_f64(&root.lower),
            upper: rat_to_f64(&root.upper),
            iterations: root.iterations,
        },
    }
}

struct PerronRootExact {
    lower: BigRational,
    upper: BigRational,
    iterations: u32,
}

/// Collatz-Wielandt bracketing on one strongly connected component: for a
/// positive vector `v`, `min_i (Bv)_i / v_i <= rho(B) <= max_i (Bv)_i / v_i`,
/// and for primitive `B` both sides converge to the root. `B = A_scc + I` is
/// primitive because the component is irreducible and the diagonal positive.
/// The returned bracket is for `rho(A) = rho(B) - 1`.
fn perron_irreducible(matrix: &[Vec<u8>], scc: &[usize], tol: &BigRational) -> PerronRootExact {
    const MAX_ITERATIONS: u32 = 100_000;
    let m = scc.len();
    let b: Vec<Vec<BigInt>> = (0..m)
        .map(|i| {
            (0..m)
                .map(|j| {
                    let a = BigInt::from(matrix[scc[i]][scc[j]]);
                    if i == j {
                        a + BigInt::one()
                    } else {
                        a
                    }
                })
                .collect()
        })
        .collect();

    let mut v: Vec<BigInt> = vec![BigInt::one(); m];
    let mut iterations = 0u32;
    loop {
        iterations += 1;
        let w: Vec<BigInt> = (0..m)
            .map(|i| (0..m).map(|j| &b[i][j] * &v[j]).sum())
            .collect();
        let mut lower: Option<BigRational> = None;
        let mut upper: Option<BigRational> = None;
        for i in 0..m {
            let ratio = BigRational::new(w[i].clone(), v[i].clone());
            if lower.as_ref().is_none_or(|l| ratio < *l) {
                lower = Some(ratio.clone());
            }
            if upper.as_ref().is_none_or(|u| ratio > *u) {
                upper = Some(ratio);
            }
        }
        let (lower, upper) = (lower.unwrap(), upper.unwrap());
        if &upper - &lower <= *tol || iterations >= MAX_ITERATIONS {
            let one = BigRational::one();
            return PerronRootExact {
                lower: lower - &one,
                upper: upper - one,
                iterations,
            };
        }
        v = w;
    }
}

fn rat_to_f64(r: &BigRational) -> f64 {
    if r.is_negative() {
        return 0.0;
    }
    r.to_f64().unwrap_or(f64::NAN)
}

/// Kosaraju's algorithm, iterative. Components come out in an arbitrary but
/// deterministic order.
fn strongly_connected_components(matrix: &[Vec<u8>]) -> Vec<Vec<usize>> {
    let n = matrix.len();
    let mut order: Vec<usize> = Vec::with_capacity(n);
    let mut seen = vec![false; n];
    for start in 0..n {
        if seen[start] {
            continue;
        }
        // iterative post-order DFS on the forward graph
        let mut stack: Vec<(usize, usize)> = vec![(start, 0)];
        seen[start] = true;
        while let Some(top) = stack.len().checked_sub(1) {
            let (v, next) = stack[top];
            if next < n {
                stack[top].1 += 1;
                if matrix[v][next] != 0 && !seen[next] {
                    seen[next] = true;
                    stack.push((next, 0));
                }
            } else {
                order.push(v);
                stack.pop();
            }
        }
    }

    let mut component = vec![usize::MAX; n];
    let mut components: Vec<Vec<usize>> = Vec::new();
    for &start in order.iter().rev() {
        if component[start] != usize::MAX {
            continue;
        }
        let id = components.len();
        let mut members = vec![start];
        component[start] = id;
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            for w in 0..n {
                if matrix[w][v] != 0 && component[w] == usize::MAX {
                    component[w] = id;
                    members.push(w);
                    stack.push(w);
                }
            }
        }
        members.sort_unstable();
        components.push(members);
    }
    components
}
