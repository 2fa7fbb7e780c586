//! The Sharkovskii forcing order on positive integers:
//!
//! ```text
//! 3 ◁ 5 ◁ 7 ◁ ... ◁ 2·3 ◁ 2·5 ◁ ... ◁ 4·3 ◁ 4·5 ◁ ... ◁ 2^n ◁ ... ◁ 8 ◁ 4 ◁ 2 ◁ 1
//! ```
//!
//! `m ◁ n` ("m before n") means the presence of a period-`m` orbit forces
//! orbits of every period `n` that comes after `m`.

use std::cmp::Ordering;

use serde::Serialize;

/// Decomposition `n = 2^a · q` with `q` odd, plus the distinguished value
/// used to classify maps whose period set is exactly the powers of two.
///
/// The key ordering is the Sharkovskii order: numbers with odd part > 1 come
/// first (graded by the power of two, then by the odd part), `TwoInfinity`
/// sits between those and the pure powers of two, and the powers of two come
/// last in descending order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SharkovskiiKey {
    Finite { two_power: u32, odd_part: u64 },
    TwoInfinity,
}

impl SharkovskiiKey {
    pub fn of(n: u64) -> Self {
        assert!(n >= 1, "periods are positive");
        let two_power = n.trailing_zeros();
        SharkovskiiKey::Finite {
            two_power,
            odd_part: n >> two_power,
        }
    }

    fn rank(&self) -> (u8, u32, u64) {
        // (class, within-class graded position) encoded so that
        // lexicographic comparison of the tuple is the Sharkovskii order.
        match *self {
            SharkovskiiKey::Finite {
                two_power,
                odd_part,
            } if odd_part > 1 => (0, two_power, odd_part),
            SharkovskiiKey::TwoInfinity => (1, 0, 0),
            SharkovskiiKey::Finite { two_power, .. } => (2, u32::MAX - two_power, 0),
        }
    }
}

impl Ord for SharkovskiiKey {
    fn cmp(&self, other: &Self) -> Ordering {
        self.rank().cmp(&other.rank())
    }
}

impl PartialOrd for SharkovskiiKey {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Compares two periods in the Sharkovskii order. `Ordering::Less` means
/// `m ◁ n`: `m` comes earlier, so a period-`m` orbit forces period-`n`
/// orbits.
pub fn sharkovskii_compare(m: u64, n: u64) -> Ordering {
    SharkovskiiKey::of(m).cmp(&SharkovskiiKey::of(n))
}

/// The Sharkovskii-minimal element of a non-empty period set.
pub fn sharkovskii_min<I: IntoIterator<Item = u64>>(periods: I) -> Option<u64> {
    periods
        .into_iter()
        .min_by(|a, b| sharkovskii_compare(*a, *b))
}
