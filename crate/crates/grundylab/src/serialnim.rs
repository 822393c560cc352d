//! Serial Nim: heaps in a row, moves only in the leftmost nonempty heap.
//!
//! The Grundy value of [a_1, ..., a_k] is always a_1 or a_1 - 1 and is
//! decided by the leftmost heap whose size differs from a_1. The bracket
//! is right-associative, [a_1, ..., a_k] = [a_1, [a_2, ..., a_k]], which
//! the oracle exploits by folding from the right; it is not
//! left-associative, and the test suite exhibits a witness.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::maxnim::naive_grundy;
use crate::mex::MexTracker;
use crate::rule::RuleSequence;

/// Total stones an oracle evaluation is willing to process.
const ORACLE_SIZE_BOUND: u64 = 1 << 22;

/// An ordered row of positive heap sizes, leftmost first.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SerialPosition {
    heaps: Vec<u64>,
}

impl SerialPosition {
    pub fn new(heaps: Vec<u64>) -> Result<Self> {
        if heaps.is_empty() {
            return Err(Error::EmptyPosition);
        }
        for (index, &h) in heaps.iter().enumerate() {
            if h == 0 {
                return Err(Error::NonPositiveHeap { index });
            }
        }
        Ok(Self { heaps })
    }

    /// Builds a position from a row that may begin with empty heaps,
    /// which are skipped: a zero leftmost heap just passes play to the
    /// next one. Returns None if nothing remains.
    pub fn from_row(row: Vec<u64>) -> Result<Option<Self>> {
        let start = row.iter().position(|&h| h != 0);
        match start {
            None => Ok(None),
            Some(s) => Self::new(row[s..].to_vec()).map(Some),
        }
    }

    pub fn heaps(&self) -> &[u64] {
        &self.heaps
    }
}

/// Closed-form Grundy value.
///
/// With the sentinel a_{k+1} = 0 and m the least index whose size
/// differs from a_1: the value is a_1 - 1 when m is odd and a_m < a_1
/// or m is even and a_m > a_1, otherwise a_1.
pub fn serial_grundy(position: &SerialPosition) -> u64 {
    let heaps = position.heaps();
    let first = heaps[0];
    // 1-indexed scan over a_2 .. a_{k+1} with the sentinel appended.
    let mut m = heaps.len() + 1;
    let mut differing = 0u64;
    for (idx, &h) in heaps.iter().enumerate().skip(1) {
        if h != first {
            m = idx + 1;
            differing = h;
            break;
        }
    }
    let odd = m % 2 == 1;
    if (odd && differing < first) || (!odd && differing > first) {
        first - 1
    } else {
        first
    }
}

/// Game-tree Grundy value by the bracket recurrence, folding right to
/// left: [a, b] = mex{[i, b] : 0 <= i < a} with [0, b] = b.
///
/// Each heap contributes a table of size a_j, computed once; total cost
/// is the sum of the heap sizes, which is bounded for tractability.
pub fn serial_grundy_oracle(position: &SerialPosition) -> Result<u64> {
    let total: u64 = position.heaps().iter().sum();
    if total > ORACLE_SIZE_BOUND {
        return Err(Error::SizeBoundExceeded {
            total,
            bound: ORACLE_SIZE_BOUND,
        });
    }
    let mut value = 0u64; // empty row
    for &a in position.heaps().iter().rev() {
        value = bracket(a, value);
    }
    Ok(value)
}

/// [a, b] by the mex recurrence on the first coordinate.
fn bracket(a: u64, b: u64) -> u64 {
    let mut tracker = MexTracker::new();
    let mut current = b; // [0, b]
    for _ in 0..a {
        tracker.insert(current);
        current = tracker.mex();
    }
    current
}

/// Grundy values [a, b] for a = 0..=max_a at a fixed b, by the mex
/// recurrence. A second heap of size 0 leaves a single Nim heap.
pub fn two_heap_table(b: u64, max_a: u64) -> Result<Vec<u64>> {
    if max_a.saturating_add(b) > ORACLE_SIZE_BOUND {
        return Err(Error::SizeBoundExceeded {
            total: max_a.saturating_add(b),
            bound: ORACLE_SIZE_BOUND,
        });
    }
    let mut tracker = MexTracker::new();
    let mut row = Vec::with_capacity(max_a as usize + 1);
    let mut current = b; // [0, b]
    for _ in 0..=max_a {
        row.push(current);
        tracker.insert(current);
        current = tracker.mex();
    }
    Ok(row)
}

/// The winning reduction of the leftmost heap, if one exists: the
/// largest new size i < a_1 for which the resulting position has value
/// zero. None exactly when the position already has value zero.
pub fn serial_winning_move(position: &SerialPosition) -> Option<u64> {
    if serial_grundy(position) == 0 {
        return None;
    }
    let heaps = position.heaps();
    for new_size in (0..heaps[0]).rev() {
        let mut row = heaps.to_vec();
        row[0] = new_size;
        let value = match SerialPosition::from_row(row).expect("tail heaps are positive") {
            Some(next) => serial_grundy(&next),
            None => 0,
        };
        if value == 0 {
            return Some(new_size);
        }
    }
    // mex{options} != 0 guarantees an option of value 0.
    unreachable!("nonzero serial position must admit a zero move")
}

/// Smallest Nim: only the smallest heap may be played, which is Serial
/// Nim with the heaps arranged in nondecreasing order.
pub fn smallest_nim_grundy(heaps: &[u64]) -> Result<u64> {
    let mut sorted = heaps.to_vec();
    sorted.sort_unstable();
    Ok(serial_grundy(&SerialPosition::new(sorted)?))
}

/// Result of comparing Maximum Nim under a heap-generated rule with the
/// equivalent Serial Nim row.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EquivalenceReport {
    pub n: u64,
    pub row: Vec<u64>,
    pub max_nim_value: u64,
    pub serial_value: u64,
    pub equal: bool,
}

/// Maximum Nim with the rule 1,2,...,a_1,1,2,...,a_2,... on a single
/// pile of size n equals Serial Nim on the row
/// [n - (a_1 + ... + a_k), a_k, ..., a_1], with k chosen so the partial
/// sum is the last one below n. Computes both sides and reports.
pub fn check_serial_maxnim_equivalence(heaps: &[u64], n: u64) -> Result<EquivalenceReport> {
    let rule = RuleSequence::serial(heaps.to_vec())?;
    if n == 0 || n > rule.horizon() {
        return Err(Error::OutOfHorizon {
            n,
            horizon: rule.horizon(),
        });
    }
    let max_nim_value = naive_grundy(&rule, n as usize + 1)?
        .get(n as usize)
        .expect("window covers n");

    let mut k = 0usize;
    let mut partial = 0u64;
    while partial + heaps[k] < n {
        partial += heaps[k];
        k += 1;
    }
    let mut row = vec![n - partial];
    row.extend(heaps[..k].iter().rev());
    let position = SerialPosition::from_row(row.clone())?
        .expect("first entry n - partial is positive");
    let serial_value = serial_grundy_oracle(&position)?;

    // At boundary values of n the row can equivalently be written with
    // a leading zero and one more heap; both forms must agree.
    if partial + heaps[k] == n && k + 1 < heaps.len() {
        let mut boundary = vec![0u64];
        boundary.extend(heaps[..=k].iter().rev());
        let alt = SerialPosition::from_row(boundary)?.expect("row contains positive heaps");
        debug_assert_eq!(serial_grundy_oracle(&alt)?, serial_value);
    }

    Ok(EquivalenceReport {
        n,
        row: position.heaps().to_vec(),
        max_nim_value,
        serial_value,
        equal: max_nim_value == serial_value,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn pos(heaps: &[u64]) -> SerialPosition {
        SerialPosition::new(heaps.to_vec()).unwrap()
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(serial_grundy(&pos(&[3, 5])), 2);
        assert_eq!(serial_grundy(&pos(&[5, 3])), 5);
        assert_eq!(serial_grundy(&pos(&[7])), 7);
        assert_eq!(serial_grundy(&pos(&[2, 2, 1])), 1);
    }

    #[test]
    fn invalid_positions_rejected() {
        assert_eq!(
            SerialPosition::new(vec![]).unwrap_err(),
            Error::EmptyPosition
        );
        assert_eq!(
            SerialPosition::new(vec![3, 0, 2]).unwrap_err(),
            Error::NonPositiveHeap { index: 1 }
        );
    }

    #[test]
    fn two_heap_row_matches_pattern() {
        // For fixed b the sequence [a, b] runs b, 0, 1, ..., b-1, b+1, ...
        assert_eq!(two_heap_table(3, 5).unwrap(), vec![3, 0, 1, 2, 4, 5]);
        for b in 0..8u64 {
            let row = two_heap_table(b, 16).unwrap();
            for (a, &v) in row.iter().enumerate() {
                let a = a as u64;
                let expected = if a == 0 {
                    b
                } else if a <= b {
                    a - 1
                } else {
                    a
                };
                assert_eq!(v, expected, "[{a}, {b}]");
            }
        }
    }

    #[test]
    fn single_heap_is_nim() {
        assert_eq!(serial_grundy_oracle(&pos(&[7])).unwrap(), 7);
    }

    #[test]
    fn closed_form_matches_oracle_exhaustively() {
        // Every position with up to 4 heaps of size at most 6.
        let mut count = 0usize;
        for k in 1..=4usize {
            let mut heaps = vec![1u64; k];
            loop {
                let p = pos(&heaps);
                assert_eq!(
                    serial_grundy(&p),
                    serial_grundy_oracle(&p).unwrap(),
                    "{heaps:?}"
                );
                count += 1;
                // Odometer over heap sizes 1..=6.
                let mut idx = 0;
                loop {
                    if idx == k {
                        break;
                    }
                    heaps[idx] += 1;
                    if heaps[idx] <= 6 {
                        break;
                    }
                    heaps[idx] = 1;
                    idx += 1;
                }
                if idx == k {
                    break;
                }
            }
        }
        assert_eq!(count, 6 + 36 + 216 + 1296);
    }

    #[test]
    fn value_is_first_heap_or_one_less() {
        let mut rng = StdRng::seed_from_u64(11);
        for _ in 0..200 {
            let k = rng.gen_range(1..=6);
            let heaps: Vec<u64> = (0..k).map(|_| rng.gen_range(1..=12)).collect();
            let v = serial_grundy(&pos(&heaps));
            assert!(v == heaps[0] || v + 1 == heaps[0], "{heaps:?} -> {v}");
        }
    }

    #[test]
    fn winning_move_examples() {
        let from = pos(&[5, 3]);
        let new_size = serial_winning_move(&from).unwrap();
        let next = SerialPosition::from_row(vec![new_size, 3]).unwrap();
        let value = next.map(|p| serial_grundy(&p)).unwrap_or(0);
        assert_eq!(value, 0);

        // [1, 2] has value 0: no winning move exists.
        assert_eq!(serial_grundy(&pos(&[1, 2])), 0);
        assert_eq!(serial_winning_move(&pos(&[1, 2])), None);

        assert!(serial_winning_move(&pos(&[3, 5])).is_some());
    }

    #[test]
    fn winning_moves_verified_by_oracle() {
        let mut rng = StdRng::seed_from_u64(5);
        for _ in 0..100 {
            let k = rng.gen_range(1..=4);
            let heaps: Vec<u64> = (0..k).map(|_| rng.gen_range(1..=8)).collect();
            let p = pos(&heaps);
            match serial_winning_move(&p) {
                None => assert_eq!(serial_grundy_oracle(&p).unwrap(), 0),
                Some(new_size) => {
                    let mut row = heaps.clone();
                    row[0] = new_size;
                    let value = match SerialPosition::from_row(row).unwrap() {
                        Some(next) => serial_grundy_oracle(&next).unwrap(),
                        None => 0,
                    };
                    assert_eq!(value, 0, "{heaps:?} -> {new_size}");
                }
            }
        }
    }

    #[test]
    fn smallest_nim_sorts_before_solving() {
        assert_eq!(smallest_nim_grundy(&[5, 3]).unwrap(), 2);
        assert_eq!(smallest_nim_grundy(&[4]).unwrap(), 4);
        // [1,2,2]: the only move is to [2,2] = 1, so the value is 0.
        assert_eq!(smallest_nim_grundy(&[2, 2, 1]).unwrap(), 0);
        assert_eq!(
            smallest_nim_grundy(&[2, 2, 1]).unwrap(),
            serial_grundy_oracle(&pos(&[1, 2, 2])).unwrap()
        );
    }

    #[test]
    fn equivalence_examples() {
        for n in 1..=5u64 {
            let report = check_serial_maxnim_equivalence(&[3, 2], n).unwrap();
            assert!(report.equal, "n={n}: {report:?}");
        }
        for n in 1..=4u64 {
            let report = check_serial_maxnim_equivalence(&[4], n).unwrap();
            assert!(report.equal);
            assert_eq!(report.max_nim_value, n);
        }
        let report = check_serial_maxnim_equivalence(&[2, 3, 4], 6).unwrap();
        assert_eq!(report.row, vec![1, 3, 2]);
        assert!(report.equal);
    }

    #[test]
    fn equivalence_on_random_heap_lists() {
        let mut rng = StdRng::seed_from_u64(23);
        for _ in 0..40 {
            let k = rng.gen_range(1..=4);
            let heaps: Vec<u64> = (0..k).map(|_| rng.gen_range(1..=6)).collect();
            let total: u64 = heaps.iter().sum();
            for n in 1..=total {
                let report = check_serial_maxnim_equivalence(&heaps, n).unwrap();
                assert!(report.equal, "heaps {heaps:?}, n={n}: {report:?}");
            }
        }
    }

    #[test]
    fn bracket_is_not_left_associative() {
        // Search for heaps where collapsing the left pair first changes
        // the value.
        let mut witness = None;
        'search: for a in 1..=4u64 {
            for b in 1..=4u64 {
                for c in 1..=4u64 {
                    let direct = serial_grundy_oracle(&pos(&[a, b, c])).unwrap();
                    let left_pair = serial_grundy_oracle(&pos(&[a, b])).unwrap();
                    let collapsed = match SerialPosition::from_row(vec![left_pair, c]).unwrap() {
                        Some(p) => serial_grundy_oracle(&p).unwrap(),
                        None => c,
                    };
                    if direct != collapsed {
                        witness = Some((a, b, c));
                        break 'search;
                    }
                }
            }
        }
        assert!(witness.is_some(), "no witness in the searched range");
    }

    #[test]
    fn bracket_is_right_associative() {
        for a in 1..=5u64 {
            for b in 1..=5u64 {
                for c in 1..=5u64 {
                    let direct = serial_grundy(&pos(&[a, b, c]));
                    let tail = serial_grundy(&pos(&[b, c]));
                    let folded = match tail {
                        0 => a,
                        t => serial_grundy(&pos(&[a, t])),
                    };
                    assert_eq!(direct, folded, "[{a},{b},{c}]");
                }
            }
        }
    }

    #[test]
    fn oracle_size_bound_enforced() {
        let p = pos(&[ORACLE_SIZE_BOUND, 1]);
        assert!(matches!(
            serial_grundy_oracle(&p).unwrap_err(),
            Error::SizeBoundExceeded { .. }
        ));
    }
}
