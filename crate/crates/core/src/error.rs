use crate::rational::Rational;
use thiserror::Error;

/// Errors produced by the exact core and the analyses built on it.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A point fell outside the map's domain.
    #[error("point {x} lies outside the domain [{lo}, {hi}]")]
    PointOutsideDomain {
        x: Rational,
        lo: Rational,
        hi: Rational,
    },

    /// An interval is not contained in the map's domain.
    #[error("interval [{lo}, {hi}] is not contained in the domain [{dom_lo}, {dom_hi}]")]
    IntervalOutsideDomain {
        lo: Rational,
        hi: Rational,
        dom_lo: Rational,
        dom_hi: Rational,
    },

    /// Interval endpoints were given in the wrong order.
    #[error("interval endpoints out of order: {lo} > {hi}")]
    EmptyInterval { lo: Rational, hi: Rational },

    /// A map needs at least two nodes to span a non-degenerate domain.
    #[error("a piecewise-linear map needs at least two nodes, got {0}")]
    TooFewNodes(usize),

    /// Node abscissas must be strictly increasing.
    #[error("node {index} breaks the strictly increasing abscissa order")]
    UnsortedNodes { index: usize },

    /// A node value escapes the domain, so the map is not a self-map.
    #[error("node {index} has value {y} outside the domain [{lo}, {hi}]")]
    ValueOutsideDomain {
        index: usize,
        y: Rational,
        lo: Rational,
        hi: Rational,
    },

    /// Composition pre-condition: the inner map's range must land in the
    /// outer map's domain.
    #[error("inner range [{range_lo}, {range_hi}] escapes the outer domain [{dom_lo}, {dom_hi}]")]
    RangeMismatch {
        range_lo: Rational,
        range_hi: Rational,
        dom_lo: Rational,
        dom_hi: Rational,
    },

    /// Exact composition would exceed the configured node budget. The result
    /// is refused outright rather than truncated.
    #[error("composition exceeds the node budget of {budget} nodes (at iterate {achieved})")]
    NodeBudget { budget: usize, achieved: u32 },

    /// Text-format parse failure; `line` is 1-based.
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    /// Invalid diagnostic parameters.
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
}

pub type Result<T> = std::result::Result<T, Error>;
