//! The report harness: runs every analysis on a map, assembles one document,
//! and cross-checks the results against each other.
//!
//! The consistency block encodes a theorem-backed implication: a map whose
//! chaos diagnostics come back positive must show a second-iterate horseshoe,
//! entropy at least `log 2 / 2`, and a Sharkovskii minimum of 3 or 6. A red
//! flag there cannot be blamed on the map — it means some analysis in this
//! crate is wrong, which is exactly what makes it a useful harness.

use serde::Serialize;

use crate::catalog::{all as catalog_entries, CatalogEntry};
use crate::chaos::{
    invariant_intervals, ly_density_sample_records, snoha_interval_criterion, ChaosVerdict,
    Classification, LyParams, DENSE_CHAOS_THRESHOLD,
};
use crate::entropy::{
    entropy_lapcount_budget, entropy_lower_bound_horseshoe, EntropyEstimate, LapCountEstimate,
};
use crate::horseshoe::{
    find_horseshoe, nested_structure_probe, HorseshoeCertificate, NestedStructureReport,
};
use crate::interval::ClosedInterval;
use crate::markov::{markov_partition, perron_root, PerronRoot, DEFAULT_ORBIT_STEPS};
use crate::periodic::{fixed_points, sharkovskii_type_estimate, FixedPoints, TypeVerdict, Verdict};
use crate::pwl::{Node, PwlMap, DEFAULT_NODE_BUDGET};
use crate::rational::Rational;

const HALF_LOG2: f64 = std::f64::consts::LN_2 / 2.0;

/// Everything the report harness needs, centralized so the CLI's flags and
/// config file have a single layer to override.
#[derive(Debug, Clone, PartialEq)]
pub struct ReportOptions {
    pub perron_tol: f64,
    pub markov_max_steps: u32,
    pub lapcount_iterates: u32,
    pub horseshoe_iterate_max: u32,
    pub period_bound: u32,
    pub probe_depth: u32,
    pub ly_params: LyParams,
    pub ly_pairs: usize,
    pub seed: u64,
    pub evidence_threshold: f64,
    pub snoha_grid_k: u32,
    pub snoha_delta: Rational,
    pub snoha_eps: Rational,
    pub snoha_horizon: u32,
    pub node_budget: usize,
}

impl Default for ReportOptions {
    fn default() -> Self {
        ReportOptions {
            perron_tol: 1e-12,
            markov_max_steps: DEFAULT_ORBIT_STEPS,
            lapcount_iterates: 12,
            horseshoe_iterate_max: 4,
            period_bound: 8,
            probe_depth: 3,
            ly_params: LyParams::default(),
            ly_pairs: 2_000,
            seed: 42,
            evidence_threshold: DENSE_CHAOS_THRESHOLD,
            snoha_grid_k: 3,
            snoha_delta: Rational::new(1, 4),
            snoha_eps: Rational::zero(),
            snoha_horizon: 20,
            node_budget: DEFAULT_NODE_BUDGET,
        }
    }
}

/// Markov structure found for the map, if any.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MarkovSection {
    pub cuts: Vec<Rational>,
    pub matrix_rows: Vec<String>,
    pub irreducible: bool,
    pub perron: PerronRoot,
}

/// All entropy estimates side by side.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EntropySection {
    pub markov: Option<EntropyEstimate>,
    pub lapcount: Option<LapCountEstimate>,
    /// Set when the lap-count estimator hit the node budget.
    pub lapcount_error: Option<String>,
    pub horseshoe_bound: EntropyEstimate,
}

impl EntropySection {
    /// The soundest available value for lower-bound checks: the exact Markov
    /// entropy when present, otherwise the rigorous horseshoe bound. The
    /// lap-count estimate is upper-biased and never used here.
    pub fn sound_value(&self) -> f64 {
        self.markov
            .as_ref()
            .map(|e| e.value)
            .unwrap_or(self.horseshoe_bound.value)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ChaosSection {
    pub ly_sampling: ChaosVerdict,
    pub snoha_grid: ChaosVerdict,
}

/// The three theorem-backed consequences checked when the chaos diagnostics
/// report evidence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ConsistencyChecks {
    pub f2_horseshoe_found: bool,
    pub entropy_at_least_half_log2: bool,
    pub type_minimum_in_3_or_6: bool,
    pub all_green: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConsistencySection {
    /// Whether any chaos diagnostic reported evidence (the trigger).
    pub dense_chaos_evidence: bool,
    /// `None` when the trigger is off: the implication is vacuous.
    pub checks: Option<ConsistencyChecks>,
    pub notes: Vec<String>,
}

/// One document holding every analysis result. The human rendering in the
/// CLI prints from this same structure, so machine and human outputs cannot
/// drift apart.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReportDocument {
    pub map_name: String,
    pub domain: ClosedInterval,
    pub nodes: Vec<Node>,
    pub markov: Option<MarkovSection>,
    pub entropy: EntropySection,
    /// Certificates found per iterate `1..=horseshoe_iterate_max`.
    pub horseshoes: Vec<HorseshoeCertificate>,
    pub horseshoe_searched_up_to: u32,
    pub fixed_points: FixedPoints,
    pub type_verdict: TypeVerdict,
    pub chaos: ChaosSection,
    pub invariant_intervals: Vec<ClosedInterval>,
    pub nested_structure: NestedStructureReport,
    pub consistency: ConsistencySection,
}

/// Runs the full analysis pipeline and cross-checks the results.
pub fn corollary_report(name: &str, map: &PwlMap, options: &ReportOptions) -> ReportDocument {
    let markov_data = markov_partition(map, options.markov_max_steps);
    let markov = markov_data.as_ref().map(|data| MarkovSection {
        cuts: data.cuts.clone(),
        matrix_rows: data.matrix_digit_rows(),
        irreducible: data.is_irreducible(),
        perron: perron_root(&data.matrix, options.perron_tol),
    });

    let markov_entropy = markov.as_ref().map(|m| {
        let value = if m.perron.value <= 1.0 {
            0.0
        } else {
            m.perron.value.ln()
        };
        EntropyEstimate {
            value,
            method: crate::entropy::EntropyMethod::Perron,
            iterate_used: 1,
            error_bound_note: format!(
                "log of the Perron root of the {}-cell covering matrix; root bracketed in \
                 [{:.15}, {:.15}] after {} iterations",
                m.matrix_rows.len(),
                m.perron.lower,
                m.perron.upper,
                m.perron.iterations
            ),
        }
    });

    let (lapcount, lapcount_error) =
        match entropy_lapcount_budget(map, options.lapcount_iterates, options.node_budget) {
            Ok(est) => (Some(est), None),
            Err(e) => (None, Some(e.to_string())),
        };

    let horseshoe_bound = entropy_lower_bound_horseshoe(map, options.horseshoe_iterate_max);

    let mut horseshoes = Vec::new();
    for n in 1..=options.horseshoe_iterate_max {
        match find_horseshoe(map, n) {
            Ok(Some(cert)) => horseshoes.push(cert),
            Ok(None) => {}
            Err(_) => break,
        }
    }

    let type_verdict = sharkovskii_type_estimate(map, options.period_bound);

    let (ly_sampling, _records) = ly_density_sample_records(
        map,
        &options.ly_params,
        options.ly_pairs,
        options.seed,
        options.evidence_threshold,
    );
    let snoha_grid = snoha_interval_criterion(
        map,
        options.snoha_grid_k,
        &options.snoha_delta,
        &options.snoha_eps,
        options.snoha_horizon,
    );

    let entropy = EntropySection {
        markov: markov_entropy,
        lapcount,
        lapcount_error,
        horseshoe_bound,
    };

    let evidence = ly_sampling.classification == Classification::DenseChaosEvidence
        || snoha_grid.classification == Classification::DenseChaosEvidence;

    let mut notes = Vec::new();
    let checks = if evidence {
        let f2 = horseshoes.iter().any(|c| c.iterate_n == 2);
        let entropy_ok = entropy.sound_value() >= HALF_LOG2 - 1e-9;
        let type_ok = matches!(
            type_verdict.verdict,
            Verdict::Finite(3) | Verdict::Finite(6)
        );
        let all_green = f2 && entropy_ok && type_ok;
        if (entropy.sound_value() - HALF_LOG2).abs() <= 1e-9 {
            notes
                .push("entropy attains the lower bound log(2)/2 exactly (within tolerance)".into());
        }
        if !all_green {
            notes.push(
                "CONSISTENCY VIOLATION: chaos evidence without the forced consequences \
                 indicates a bug in this toolkit, not a property of the map"
                    .into(),
            );
        }
        Some(ConsistencyChecks {
            f2_horseshoe_found: f2,
            entropy_at_least_half_log2: entropy_ok,
            type_minimum_in_3_or_6: type_ok,
            all_green,
        })
    } else {
        notes.push("no dense-chaos evidence: consequence checks are vacuous".into());
        None
    };

    ReportDocument {
        map_name: name.to_string(),
        domain: map.domain(),
        nodes: map.nodes().to_vec(),
        markov,
        entropy,
        horseshoes,
        horseshoe_searched_up_to: options.horseshoe_iterate_max,
        fixed_points: fixed_points(map),
        type_verdict,
        chaos: ChaosSection {
            ly_sampling,
            snoha_grid,
        },
        invariant_intervals: invariant_intervals(map, &[]),
        nested_structure: nested_structure_probe(map, options.probe_depth),
        consistency: ConsistencySection {
            dense_chaos_evidence: evidence,
            checks,
            notes,
        },
    }
}

/// Checks every catalog entry with an expectation record against the actual
/// analyses. Returns the list of mismatches, empty on success.
pub fn catalog_self_test(options: &ReportOptions) -> Vec<String> {
    let mut failures = Vec::new();
    for entry in catalog_entries() {
        self_test_entry(&entry, options, &mut failures);
    }
    failures
}

fn self_test_entry(entry: &CatalogEntry, options: &ReportOptions, failures: &mut Vec<String>) {
    let Some(expected) = &entry.expected else {
        return;
    };
    let name = entry.name;

    let got =
        crate::entropy::entropy_markov(&entry.map, options.markov_max_steps, options.perron_tol);
    match (&expected.markov_entropy, &got) {
        (Some(want), Some(est)) => {
            if (est.value - want).abs() > 1e-9 {
                failures.push(format!(
                    "{name}: markov entropy {} differs from expected {want}",
                    est.value
                ));
            }
        }
        (None, None) => {}
        (Some(want), None) => failures.push(format!(
            "{name}: expected markov entropy {want}, found no structure"
        )),
        (None, Some(est)) => {
            failures.push(format!(
                "{name}: expected no markov structure, found entropy {}",
                est.value
            ));
        }
    }

    let verdict = sharkovskii_type_estimate(&entry.map, 7);
    if verdict.verdict != expected.type_verdict {
        failures.push(format!(
            "{name}: type verdict {:?} differs from expected {:?}",
            verdict.verdict, expected.type_verdict
        ));
    }

    let mut first = None;
    for n in 1..=2 {
        match find_horseshoe(&entry.map, n) {
            Ok(Some(_)) => {
                first = Some(n);
                break;
            }
            Ok(None) => {}
            Err(e) => failures.push(format!("{name}: horseshoe search failed: {e}")),
        }
    }
    if first != expected.first_horseshoe_iterate {
        failures.push(format!(
            "{name}: first horseshoe iterate {first:?} differs from expected {:?}",
            expected.first_horseshoe_iterate
        ));
    }
}
