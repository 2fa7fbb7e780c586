//! Exact-arithmetic dynamics toolkit for continuous piecewise-linear
//! self-maps of a compact interval.
//!
//! Everything is built on arbitrary-precision rationals: map evaluation,
//! composition, iterate powers and interval images are computed without any
//! rounding. On top of that core the crate provides
//!
//! * horseshoe search and certificate verification for iterates ([`horseshoe`]),
//! * Markov partitions, Perron-root and lap-count entropy estimates ([`markov`], [`entropy`]),
//! * exact periodic-orbit solving and the Sharkovskii forcing order
//!   ([`periodic`], [`sharkovskii`]),
//! * finite-horizon Li-Yorke and interval-expansion chaos diagnostics ([`chaos`]),
//! * a small catalog of built-in maps and a report harness that cross-checks
//!   the diagnostics against each other ([`catalog`], [`report`]).
//!
//! ```
//! use pwlchaos::{PwlMap, Rational};
//!
//! let tent = PwlMap::from_i64_nodes(&[(0, 1, 0, 1), (1, 2, 1, 1), (1, 1, 0, 1)]).unwrap();
//! let x = Rational::new(1, 3);
//! assert_eq!(tent.eval(&x).unwrap(), Rational::new(2, 3));
//! ```

#![allow(clippy::result_large_err)]

pub mod catalog;
pub mod chaos;
pub mod entropy;
mod error;
pub mod horseshoe;
pub mod interval;
pub mod markov;
pub mod periodic;
pub mod pwl;
pub mod rational;
pub mod report;
pub mod sharkovskii;

pub use catalog::{builtin, CatalogEntry};
pub use chaos::{ChaosVerdict, Classification, LyParams};
pub use entropy::{EntropyEstimate, EntropyMethod};
pub use error::{Error, Result};
pub use horseshoe::{HorseshoeCertificate, NestedStructureReport};
pub use interval::ClosedInterval;
pub use markov::{MarkovData, PerronRoot};
pub use periodic::{PeriodicOrbit, TypeVerdict, Verdict};
pub use pwl::{Direction, Lap, PwlMap, DEFAULT_NODE_BUDGET};
pub use rational::Rational;
pub use report::ReportDocument;
pub use sharkovskii::{sharkovskii_compare, SharkovskiiKey};
