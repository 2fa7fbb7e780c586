//! Defaults layer: built-in values, overridable by an optional JSON config
//! file, overridable again by command-line flags. No environment variables.

use std::path::Path;

use anyhow::{Context, Result};
use serde::Deserialize;

use pwlchaos::chaos::DENSE_CHAOS_THRESHOLD;
use pwlchaos::markov::DEFAULT_ORBIT_STEPS;
use pwlchaos::report::ReportOptions;
use pwlchaos::{LyParams, Rational, DEFAULT_NODE_BUDGET};

/// Optional config-file overrides; every field may be omitted.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub seed: Option<u64>,
    pub tol: Option<f64>,
    pub pairs: Option<usize>,
    pub delta: Option<f64>,
    pub eps_close: Option<f64>,
    pub horizon: Option<u32>,
    pub burn_in: Option<u32>,
    pub threshold: Option<f64>,
    pub grid_k: Option<u32>,
    pub snoha_delta: Option<String>,
    pub snoha_eps: Option<String>,
    pub snoha_horizon: Option<u32>,
    pub markov_steps: Option<u32>,
    pub lap_iterates: Option<u32>,
    pub horseshoe_max: Option<u32>,
    pub period_bound: Option<u32>,
    pub probe_depth: Option<u32>,
    pub node_budget: Option<usize>,
}

impl ConfigFile {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("reading config file {}", path.display()))?;
        serde_json::from_str(&text)
            .with_context(|| format!("parsing config file {}", path.display()))
    }
}

/// Fully resolved settings for one invocation.
#[derive(Debug, Clone)]
pub struct Settings {
    pub seed: u64,
    pub tol: f64,
    pub pairs: usize,
    pub ly: LyParams,
    pub threshold: f64,
    pub grid_k: u32,
    pub snoha_delta: Rational,
    pub snoha_eps: Rational,
    pub snoha_horizon: u32,
    pub markov_steps: u32,
    pub lap_iterates: u32,
    pub horseshoe_max: u32,
    pub period_bound: u32,
    pub probe_depth: u32,
    pub node_budget: usize,
}

impl Settings {
    pub fn resolve(config: &ConfigFile) -> Result<Self> {
        let base = LyParams::default();
        let ly = LyParams::new(
            config.delta.unwrap_or(base.delta),
            config.eps_close.unwrap_or(base.eps_close),
            config.horizon.unwrap_or(base.horizon),
            config.burn_in.unwrap_or(base.burn_in),
        )?;
        let parse_rat = |s: &Option<String>, fallback: Rational| -> Result<Rational> {
            match s {
                None => Ok(fallback),
                Some(text) => text
                    .parse::<Rational>()
                    .map_err(|e| anyhow::anyhow!("config rational: {e}")),
            }
        };
        Ok(Settings {
            seed: config.seed.unwrap_or(42),
            tol: config.tol.unwrap_or(1e-12),
            pairs: config.pairs.unwrap_or(10_000),
            ly,
            threshold: config.threshold.unwrap_or(DENSE_CHAOS_THRESHOLD),
            grid_k: config.grid_k.unwrap_or(3),
            snoha_delta: parse_rat(&config.snoha_delta, Rational::new(1, 4))?,
            snoha_eps: parse_rat(&config.snoha_eps, Rational::zero())?,
            snoha_horizon: config.snoha_horizon.unwrap_or(20),
            markov_steps: config.markov_steps.unwrap_or(DEFAULT_ORBIT_STEPS),
            lap_iterates: config.lap_iterates.unwrap_or(12),
            horseshoe_max: config.horseshoe_max.unwrap_or(4),
            period_bound: config.period_bound.unwrap_or(8),
            probe_depth: config.probe_depth.unwrap_or(3),
            node_budget: config.node_budget.unwrap_or(DEFAULT_NODE_BUDGET),
        })
    }

    pub fn report_options(&self, report_pairs: usize) -> ReportOptions {
        ReportOptions {
            perron_tol: self.tol,
            markov_max_steps: self.markov_steps,
            lapcount_iterates: self.lap_iterates,
            horseshoe_iterate_max: self.horseshoe_max,
            period_bound: self.period_bound,
            probe_depth: self.probe_depth,
            ly_params: self.ly,
            ly_pairs: report_pairs,
            seed: self.seed,
            evidence_threshold: self.threshold,
            snoha_grid_k: self.grid_k,
            snoha_delta: self.snoha_delta.clone(),
            snoha_eps: self.snoha_eps.clone(),
            snoha_horizon: self.snoha_horizon,
            node_budget: self.node_budget,
        }
    }
}
