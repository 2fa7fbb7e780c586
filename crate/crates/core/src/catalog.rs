//! Built-in catalog of maps used throughout the tests, the CLI and the
//! report harness.

use crate::periodic::Verdict;
use crate::pwl::PwlMap;

/// Expected analysis results for a catalog map, used as a self-test before
/// reports are produced.
#[derive(Debug, Clone, PartialEq)]
pub struct CatalogExpectation {
    /// Markov-partition entropy in natural-log units; `None` when the map has
    /// no Markov structure within the default orbit budget.
    pub markov_entropy: Option<f64>,
    pub type_verdict: Verdict,
    /// Smallest iterate whose lap-pair search yields a horseshoe, probing
    /// iterates 1 and 2.
    pub first_horseshoe_iterate: Option<u32>,
}

/// A named map with optional self-test expectations.
#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub description: &'static str,
    pub map: PwlMap,
    pub expected: Option<CatalogExpectation>,
}

fn entry(
    name: &'static str,
    description: &'static str,
    nodes: &[(i64, i64, i64, i64)],
    expected: Option<CatalogExpectation>,
) -> CatalogEntry {
    CatalogEntry {
        name,
        description,
        map: PwlMap::from_i64_nodes(nodes).expect("catalog maps are valid"),
        expected,
    }
}

/// The full catalog, in stable order.
pub fn all() -> Vec<CatalogEntry> {
    vec![
        entry(
            "identity",
            "x -> x on [0,1]; every point is fixed, nothing moves",
            &[(0, 1, 0, 1), (1, 1, 1, 1)],
            Some(CatalogExpectation {
                markov_entropy: Some(0.0),
                type_verdict: Verdict::AtMostPowersOfTwo(0),
                first_horseshoe_iterate: None,
            }),
        ),
        entry(
            "tent",
            "the full tent map: 2x on [0,1/2], 2-2x on [1/2,1]",
            &[(0, 1, 0, 1), (1, 2, 1, 1), (1, 1, 0, 1)],
            Some(CatalogExpectation {
                markov_entropy: Some(std::f64::consts::LN_2),
                type_verdict: Verdict::Finite(3),
                first_horseshoe_iterate: Some(1),
            }),
        ),
        entry(
            "sqrt_tent",
            "a square root of the tent map under composition: it swaps \
             [0,1/2] and [1/2,1], and its second iterate restricted to either \
             half is the tent map (upside down on the left half). Node list: \
             1-x on [0,1/2], 3/2-2x on [1/2,3/4], 2x-3/2 on [3/4,1].",
            &[(0, 1, 1, 1), (1, 2, 1, 2), (3, 4, 0, 1), (1, 1, 1, 2)],
            Some(CatalogExpectation {
                markov_entropy: Some(0.5 * std::f64::consts::LN_2),
                type_verdict: Verdict::Finite(6),
                first_horseshoe_iterate: Some(2),
            }),
        ),
        entry(
            "half",
            "x -> x/2 on [0,1]; contracts everything onto the fixed point 0",
            &[(0, 1, 0, 1), (1, 1, 1, 2)],
            Some(CatalogExpectation {
                // the breakpoint orbit 1 -> 1/2 -> 1/4 -> ... never closes
                markov_entropy: None,
                type_verdict: Verdict::AtMostPowersOfTwo(0),
                first_horseshoe_iterate: None,
            }),
        ),
        entry(
            "flip",
            "x -> 1-x on [0,1]; an involution, so every orbit has period 1 or 2",
            &[(0, 1, 1, 1), (1, 1, 0, 1)],
            Some(CatalogExpectation {
                markov_entropy: Some(0.0),
                // flip² is the identity, so its period-2 points form a
                // diagonal continuum and stay out of the period set
                type_verdict: Verdict::AtMostPowersOfTwo(0),
                first_horseshoe_iterate: None,
            }),
        ),
    ]
}

/// Looks up a built-in map by name.
pub fn builtin(name: &str) -> Option<PwlMap> {
    all()
        .into_iter()
        .find(|e| e.name == name)
        .map(|e| e.map)
}
