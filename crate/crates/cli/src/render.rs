//! Human renderings of the report structures. Every number printed here is
//! read off the same struct the `--json` path serializes, so the two outputs
//! cannot disagree.

use pwlchaos::chaos::ChaosVerdict;
use pwlchaos::entropy::{EntropyEstimate, LapCountEstimate};
use pwlchaos::periodic::{FixedPoints, TypeVerdict, Verdict};
use pwlchaos::report::ReportDocument;
use pwlchaos::HorseshoeCertificate;

/// Entropy values are printed with 12 significant digits; everything
/// relevant here lives in [0, log 2], so 12 decimal places does it.
pub fn sig12(x: f64) -> String {
    format!("{x:.12}")
}

pub fn verdict_line(v: &Verdict) -> String {
    match v {
        Verdict::Finite(n) => format!("finite type {n}"),
        Verdict::AtMostPowersOfTwo(a) => format!(
            "only powers of two detected up to 2^{a} (type 2^k and type-2-infinity \
             are indistinguishable at a finite bound)"
        ),
    }
}

pub fn type_verdict(v: &TypeVerdict) -> String {
    let periods: Vec<String> = v.detected_periods.iter().map(|p| p.to_string()).collect();
    format!(
        "verdict: {}\ndetected periods up to {}: {{{}}}",
        verdict_line(&v.verdict),
        v.search_bound,
        periods.join(", ")
    )
}

pub fn fixed_points(fp: &FixedPoints) -> String {
    let mut parts: Vec<String> = fp.points.iter().map(|p| p.to_string()).collect();
    parts.extend(fp.ranges.iter().map(|r| format!("all of {r}")));
    if parts.is_empty() {
        "none".into()
    } else {
        parts.join(", ")
    }
}

pub fn certificate(cert: &HorseshoeCertificate) -> String {
    format!(
        "iterate {}: J = {}, K = {}, image(J) = {}, image(K) = {}",
        cert.iterate_n, cert.j, cert.k, cert.image_j, cert.image_k
    )
}

pub fn estimate(label: &str, est: &EntropyEstimate) -> String {
    format!("{label}: {}   [{}]", sig12(est.value), est.error_bound_note)
}

pub fn lapcount(est: &LapCountEstimate) -> String {
    let counts: Vec<String> = est.lap_counts.iter().map(|c| c.to_string()).collect();
    format!(
        "{}\n  lap counts 1..={}: {}",
        estimate("entropy (lap-count growth)", &est.estimate),
        est.lap_counts.len(),
        counts.join(", ")
    )
}

pub fn chaos_verdict(label: &str, v: &ChaosVerdict) -> String {
    format!(
        "{label}: fraction {:.4} of {} pairs -> {:?}\n  {}",
        v.ly_fraction, v.pairs_tested, v.classification, v.caveat
    )
}

pub fn report(doc: &ReportDocument) -> String {
    let mut out = String::new();
    let mut line = |s: String| {
        out.push_str(&s);
        out.push('\n');
    };

    line(format!("map: {}   domain: {}", doc.map_name, doc.domain));
    let nodes: Vec<String> = doc
        .nodes
        .iter()
        .map(|n| format!("({}, {})", n.x, n.y))
        .collect();
    line(format!("nodes: {}", nodes.join(" ")));
    line(String::new());

    match &doc.markov {
        Some(m) => {
            let cuts: Vec<String> = m.cuts.iter().map(|c| c.to_string()).collect();
            line(format!("markov partition: cuts {{{}}}", cuts.join(", ")));
            line(format!("  matrix rows: {}", m.matrix_rows.join(" ")));
            line(format!(
                "  irreducible: {}   perron root: {} in [{}, {}] after {} iterations",
                m.irreducible,
                sig12(m.perron.value),
                sig12(m.perron.lower),
                sig12(m.perron.upper),
                m.perron.iterations
            ));
        }
        None => line("markov partition: none within the orbit budget".into()),
    }
    if let Some(est) = &doc.entropy.markov {
        line(estimate("entropy (markov/perron)", est));
    }
    match (&doc.entropy.lapcount, &doc.entropy.lapcount_error) {
        (Some(est), _) => line(lapcount(est)),
        (None, Some(err)) => line(format!("entropy (lap-count growth): failed: {err}")),
        (None, None) => {}
    }
    line(estimate(
        "entropy (horseshoe lower bound)",
        &doc.entropy.horseshoe_bound,
    ));
    line(String::new());

    if doc.horseshoes.is_empty() {
        line(format!(
            "horseshoes: none found for iterates 1..={}",
            doc.horseshoe_searched_up_to
        ));
    } else {
        line(format!(
            "horseshoes found (iterates 1..={}):",
            doc.horseshoe_searched_up_to
        ));
        for cert in &doc.horseshoes {
            line(format!("  {}", certificate(cert)));
        }
    }
    line(format!("fixed points: {}", fixed_points(&doc.fixed_points)));
    line(type_verdict(&doc.type_verdict));
    line(String::new());

    line(chaos_verdict("li-yorke sampling", &doc.chaos.ly_sampling));
    line(chaos_verdict(
        "interval-grid criterion",
        &doc.chaos.snoha_grid,
    ));
    let invariants: Vec<String> = doc
        .invariant_intervals
        .iter()
        .map(|j| j.to_string())
        .collect();
    line(format!("invariant intervals: {}", invariants.join(", ")));
    line(format!(
        "nested structure probe: {} level(s), horseshoe at every level: {}",
        doc.nested_structure.levels.len(),
        doc.nested_structure.structure_present()
    ));
    line(String::new());

    line(format!(
        "dense-chaos evidence: {}",
        doc.consistency.dense_chaos_evidence
    ));
    match &doc.consistency.checks {
        None => line("consequence checks: skipped (vacuous without evidence)".into()),
        Some(c) => {
            let flag = |ok: bool| if ok { "ok" } else { "VIOLATION" };
            line(format!(
                "  second-iterate horseshoe: {}",
                flag(c.f2_horseshoe_found)
            ));
            line(format!(
                "  entropy >= log(2)/2:      {}",
                flag(c.entropy_at_least_half_log2)
            ));
            line(format!(
                "  type minimum in {{3, 6}}:   {}",
                flag(c.type_minimum_in_3_or_6)
            ));
            line(format!("  all green: {}", c.all_green));
        }
    }
    for note in &doc.consistency.notes {
        line(format!("note: {note}"));
    }
    out
}
