//! Topological entropy estimators.
//!
//! Three routes with different guarantees:
//!
//! * `entropy_markov` — exact when it applies: the log of the Perron root of
//!   the Markov cell-covering matrix.
//! * `entropy_lapcount` — `log(lap count of f^n) / n` at the largest computed
//!   iterate. An upper-biased finite-`n` estimate (lap counts are
//!   submultiplicative); the whole sequence is returned so the bias is
//!   visible.
//! * `entropy_lower_bound_horseshoe` — `log 2 / n` for the smallest iterate
//!   carrying a horseshoe; a rigorous lower bound.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::horseshoe::horseshoe_entropy_bound;
use crate::markov::{markov_partition, perron_root};
use crate::pwl::{PwlMap, DEFAULT_NODE_BUDGET};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EntropyMethod {
    Perron,
    LapCount,
    HorseshoeBound,
}

/// An entropy value in natural-log units, tagged with how it was obtained.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EntropyEstimate {
    pub value: f64,
    pub method: EntropyMethod,
    pub iterate_used: u32,
    pub error_bound_note: String,
}

/// Entropy from the Markov transition matrix: `log` of the Perron root,
/// clamped below at 0 (roots below 1 mean zero entropy). `None` when no
/// Markov structure closes within `max_steps`.
pub fn entropy_markov(map: &PwlMap, max_steps: u32, tol: f64) -> Option<EntropyEstimate> {
    let data = markov_partition(map, max_steps)?;
    let root = perron_root(&data.matrix, tol);
    let value = if root.value <= 1.0 {
        0.0
    } else {
        root.value.ln()
    };
    Some(EntropyEstimate {
        value,
        method: EntropyMethod::Perron,
        iterate_used: 1,
        error_bound_note: format!(
            "log of the Perron root of the {}-cell covering matrix; root bracketed in \
             [{:.15}, {:.15}] after {} iterations",
            data.cell_count(),
            root.lower,
            root.upper,
            root.iterations
        ),
    })
}

/// Lap-count growth estimate with the full sequence for `n = 1..=n_max`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LapCountEstimate {
    pub estimate: EntropyEstimate,
    /// `lap_counts[i]` is the lap count of `f^(i+1)`.
    pub lap_counts: Vec<u64>,
    /// `log(lap_counts[i]) / (i+1)`, the per-iterate estimates.
    pub per_iterate: Vec<f64>,
}

/// Entropy from lap-count growth: the raw value `log(laps(f^n_max)) / n_max`,
/// reported without extrapolation, plus the whole sequence. Exceeding the
/// node budget is an error carrying the largest iterate that was achieved.
pub fn entropy_lapcount(map: &PwlMap, n_max: u32) -> Result<LapCountEstimate> {
    entropy_lapcount_budget(map, n_max, DEFAULT_NODE_BUDGET)
}

pub fn entropy_lapcount_budget(
    map: &PwlMap,
    n_max: u32,
    budget: usize,
) -> Result<LapCountEstimate> {
    assert!(n_max >= 1, "need at least one iterate");
    let mut lap_counts: Vec<u64> = Vec::with_capacity(n_max as usize);
    let mut iterate = map.clone();
    lap_counts.push(iterate.lap_count() as u64);
    for n in 2..=n_max {
        iterate = map.compose_budget(&iterate, budget).map_err(|e| match e {
            Error::NodeBudget { budget, .. } => Error::NodeBudget {
                budget,
                achieved: n - 1,
            },
            other => other,
        })?;
        lap_counts.push(iterate.lap_count() as u64);
    }
    let per_iterate: Vec<f64> = lap_counts
        .iter()
        .enumerate()
        .map(|(i, &c)| (c as f64).ln() / (i as f64 + 1.0))
        .collect();
    let value = *per_iterate.last().expect("n_max >= 1");
    Ok(LapCountEstimate {
        estimate: EntropyEstimate {
            value,
            method: EntropyMethod::LapCount,
            iterate_used: n_max,
            error_bound_note: format!(
                "log(lap(f^{n_max}))/{n_max}, no extrapolation; finite-n bias is \
                 at most log(C)/{n_max} for the submultiplicativity constant C"
            ),
        },
        lap_counts,
        per_iterate,
    })
}

/// Rigorous lower bound from horseshoes of iterates: the best `log 2 / n`
/// over `n <= n_max` with a horseshoe found, 0 when none was.
pub fn entropy_lower_bound_horseshoe(map: &PwlMap, n_max: u32) -> EntropyEstimate {
    let (value, iterate) = horseshoe_entropy_bound(map, n_max);
    let note = if iterate == 0 {
        format!("no horseshoe found up to iterate {n_max}; the bound is vacuous")
    } else {
        format!("horseshoe found for iterate {iterate}, forcing entropy >= log 2 / {iterate}")
    };
    EntropyEstimate {
        value,
        method: EntropyMethod::HorseshoeBound,
        iterate_used: iterate,
        error_bound_note: note,
    }
}
