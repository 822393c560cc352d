//! Minimum Nim: strictly more than f(m) stones must be removed from a
//! pile of size m.
//!
//! For regular rules the Grundy sequence h is itself regular and is
//! determined by its jump positions, which form the orbit of 0 under
//! q(k) = min{j : j - f(j) > k}. The same q-orbit gives the zero
//! positions of the Maximum-Nim sequence, which couples the two games:
//! h_n counts the zeros of g on (0, n], and n can be recovered from the
//! pair (g_n, h_n).

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fractal::AssociatedArray;
use crate::maxnim::{fast_grundy_values, first_instances};
use crate::mex::MexTracker;
use crate::prefix::{Game, GrundyPrefix, Method};
use crate::rule::RuleSequence;

/// Grundy values by the defining recurrence h_n = mex{h_0, ..., h_{n-f(n)-1}}.
///
/// The mex is over a prefix of already-computed values, so the whole
/// window costs O(n): prefix mexes are tracked incrementally and are
/// always available by the time they are needed (n - f(n) <= n).
pub fn naive_min_grundy(rule: &RuleSequence, n_terms: usize) -> Result<GrundyPrefix> {
    let mut values: Vec<u64> = Vec::with_capacity(n_terms);
    // prefix_mex[k] = mex{h_0, ..., h_{k-1}}.
    let mut prefix_mex: Vec<u64> = Vec::with_capacity(n_terms + 1);
    prefix_mex.push(0);
    let mut tracker = MexTracker::new();
    for n in 0..n_terms {
        let f = rule.eval(n as u64)?;
        let limit = (n as u64 - f) as usize;
        let h = prefix_mex[limit];
        values.push(h);
        tracker.insert(h);
        prefix_mex.push(tracker.mex());
    }
    GrundyPrefix::new(values, rule.clone(), Game::Minimum, Method::Naive)
}

/// q(k) = least j with j - f(j) > k.
///
/// Errors if no such j exists within the rule horizon, which signals
/// that n - f(n) stays bounded on this window.
pub fn q_of(rule: &RuleSequence, k: u64) -> Result<u64> {
    // j - f(j) > k forces j > k, so start there.
    for j in (k + 1)..=rule.horizon() {
        if j - rule.eval(j)? > k {
            return Ok(j);
        }
    }
    Err(Error::QUndefined {
        k,
        horizon: rule.horizon(),
    })
}

/// Grundy values for a regular rule via the jump chain
/// ĥ(0) = 0, ĥ(i) = q(ĥ(i-1)): h steps up by one exactly at the chain
/// positions. Equals `naive_min_grundy` elementwise.
pub fn fast_min_grundy(rule: &RuleSequence, n_terms: usize) -> Result<GrundyPrefix> {
    let values = fast_min_values(rule, n_terms)?;
    GrundyPrefix::new(values, rule.clone(), Game::Minimum, Method::Fast)
}

pub(crate) fn fast_min_values(rule: &RuleSequence, n_terms: usize) -> Result<Vec<u64>> {
    if n_terms == 0 {
        return Ok(Vec::new());
    }
    if let Some(witness) = rule.first_irregularity(n_terms as u64 - 1)? {
        return Err(Error::NotRegular { witness });
    }
    let mut values = Vec::with_capacity(n_terms);
    values.push(0u64);
    let mut level = 0u64;
    let mut last_jump = 0u64;
    for j in 1..n_terms as u64 {
        if j - rule.eval(j)? > last_jump {
            level += 1;
            last_jump = j;
        }
        values.push(level);
    }
    Ok(values)
}

/// The jump positions ĥ(0), ĥ(1), ... of a regular-rule Minimum-Nim
/// sequence that lie inside the window.
pub fn min_jump_positions(rule: &RuleSequence, n_terms: usize) -> Result<Vec<u64>> {
    let values = fast_min_values(rule, n_terms)?;
    Ok(first_instances(&values))
}

/// Minimum-Nim values from a Maximum-Nim prefix: h_n is the number of
/// zeros of g at positions 1..=n. Valid when the underlying rule is
/// regular with n - f(n) unbounded.
pub fn min_from_max(max_prefix: &GrundyPrefix) -> GrundyPrefix {
    let mut values = Vec::with_capacity(max_prefix.len());
    let mut zeros = 0u64;
    for (n, &g) in max_prefix.values().iter().enumerate() {
        if n > 0 && g == 0 {
            zeros += 1;
        }
        values.push(zeros);
    }
    GrundyPrefix::new(
        values,
        max_prefix.rule().clone(),
        Game::Minimum,
        Method::ClosedForm,
    )
    .expect("zero counts start at 0 and are regular")
}

/// Both Grundy values (g_n, h_n) for a pile of size n.
pub fn pair_encode(rule: &RuleSequence, n: u64) -> Result<(u64, u64)> {
    let window = n as usize + 1;
    let g = fast_grundy_values(rule, window)?;
    let h = fast_min_values(rule, window)?;
    Ok((g[n as usize], h[n as usize]))
}

/// Number of zeros of g strictly before the first instance of i, not
/// counting position 0. Row i of the pair array starts at this column.
fn row_offset(g: &[u64], firsts: &[u64], i: u64) -> u64 {
    if i == 0 {
        return 0;
    }
    let first = firsts[i as usize] as usize;
    g[1..first].iter().filter(|&&v| v == 0).count() as u64
}

/// The unique n <= search_bound with g_n = i and h_n = j, by scanning
/// the computed prefix.
///
/// Pairs with j below the row offset s_{0i} are outside the range of
/// the encoding and rejected.
pub fn pair_decode(rule: &RuleSequence, i: u64, j: u64, search_bound: u64) -> Result<u64> {
    let window = search_bound as usize + 1;
    let g = fast_grundy_values(rule, window)?;
    let h = fast_min_values(rule, window)?;
    let firsts = first_instances(&g);
    if (i as usize) < firsts.len() {
        let min_col = row_offset(&g, &firsts, i);
        if j < min_col {
            return Err(Error::PairOutOfRange { i, j, min_col });
        }
    }
    for n in 0..window {
        if g[n] == i && h[n] == j {
            return Ok(n as u64);
        }
    }
    Err(Error::PairNotFound {
        i,
        j,
        bound: search_bound,
    })
}

/// Accelerated inverse: start at the first instance of i and iterate q
/// once per column past the row offset. Cross-validated against
/// `pair_decode` in the test suites.
pub fn pair_decode_via_chain(rule: &RuleSequence, i: u64, j: u64, search_bound: u64) -> Result<u64> {
    let window = search_bound as usize + 1;
    let g = fast_grundy_values(rule, window)?;
    let firsts = first_instances(&g);
    if (i as usize) >= firsts.len() {
        return Err(Error::PairNotFound {
            i,
            j,
            bound: search_bound,
        });
    }
    let min_col = row_offset(&g, &firsts, i);
    if j < min_col {
        return Err(Error::PairOutOfRange { i, j, min_col });
    }
    let mut position = firsts[i as usize];
    for _ in min_col..j {
        position = q_of(rule, position)?;
        if position > search_bound {
            return Err(Error::PairNotFound {
                i,
                j,
                bound: search_bound,
            });
        }
    }
    Ok(position)
}

/// Table of (n, g_n, h_n) triples on a window.
#[derive(Debug, Clone)]
pub struct PairTable {
    entries: Vec<(u64, u64, u64)>,
    rule: RuleSequence,
}

impl PairTable {
    pub fn build(rule: &RuleSequence, n_terms: usize) -> Result<Self> {
        let g = fast_grundy_values(rule, n_terms)?;
        let h = fast_min_values(rule, n_terms)?;
        let entries = (0..n_terms)
            .map(|n| (n as u64, g[n], h[n]))
            .collect();
        Ok(Self {
            entries,
            rule: rule.clone(),
        })
    }

    pub fn entries(&self) -> &[(u64, u64, u64)] {
        &self.entries
    }

    pub fn rule(&self) -> &RuleSequence {
        &self.rule
    }

    /// Two positions with the same (g, h) pair, if any exist.
    pub fn injectivity_witness(&self) -> Option<(u64, u64)> {
        let mut seen = std::collections::HashMap::new();
        for &(n, g, h) in &self.entries {
            if let Some(&m) = seen.get(&(g, h)) {
                return Some((m, n));
            }
            seen.insert((g, h), n);
        }
        None
    }

    /// A pair (i, j) with j at or past the row offset that is missing
    /// even though later columns of row i appear in the window.
    pub fn surjectivity_witness(&self) -> Option<(u64, u64)> {
        let g: Vec<u64> = self.entries.iter().map(|e| e.1).collect();
        let firsts = first_instances(&g);
        let mut row_cols: Vec<Vec<u64>> = vec![Vec::new(); firsts.len()];
        for &(_, gv, hv) in &self.entries {
            if (gv as usize) < row_cols.len() {
                row_cols[gv as usize].push(hv);
            }
        }
        for (i, cols) in row_cols.iter().enumerate() {
            let offset = row_offset(&g, &firsts, i as u64);
            // Within the window the columns of row i must be exactly
            // offset, offset+1, ... with nothing skipped.
            for (idx, &col) in cols.iter().enumerate() {
                if col != offset + idx as u64 {
                    return Some((i as u64, offset + idx as u64));
                }
            }
        }
        None
    }
}

/// One row of the pair array: entries for columns offset, offset+1, ....
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OffsetRow {
    pub value: u64,
    pub offset: u64,
    pub entries: Vec<u64>,
}

/// The array inverse to n -> (g_n, h_n): row i, column j holds the
/// unique n with g_n = i and h_n = j. Row i starts at column s_{0i};
/// the lower-left region is empty.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OffsetArray {
    pub rule: String,
    pub rows: Vec<OffsetRow>,
}

impl OffsetArray {
    /// Aligned plain-text rendering with the lower-left region blank.
    pub fn render_text(&self) -> String {
        let max_col = self
            .rows
            .iter()
            .map(|r| r.offset as usize + r.entries.len())
            .max()
            .unwrap_or(0);
        let width = self
            .rows
            .iter()
            .flat_map(|r| r.entries.iter())
            .map(|e| e.to_string().len())
            .max()
            .unwrap_or(1);
        let mut out = String::new();
        for row in &self.rows {
            let mut line = String::new();
            for col in 0..max_col {
                let cell = if col >= row.offset as usize {
                    row.entries
                        .get(col - row.offset as usize)
                        .map(|e| e.to_string())
                        .unwrap_or_default()
                } else {
                    String::new()
                };
                line.push_str(&format!("{cell:>width$}"));
                if col + 1 < max_col {
                    line.push(' ');
                }
            }
            out.push_str(line.trim_end());
            out.push('\n');
        }
        out
    }
}

/// Build the offset-justified pair array A' and its left-justified form
/// A for the requested shape. Row i covers columns s_{0i} .. cols-1.
///
/// The window grows by doubling until every requested entry appears, up
/// to the rule horizon.
pub fn build_arrays(
    rule: &RuleSequence,
    rows: usize,
    cols: usize,
) -> Result<(OffsetArray, AssociatedArray)> {
    let mut window = 1024usize.min(rule.horizon() as usize + 1);
    loop {
        let g = fast_grundy_values(rule, window)?;
        let h = fast_min_values(rule, window)?;
        if let Some(arrays) = try_fill(rule, &g, &h, rows, cols) {
            return Ok(arrays);
        }
        if window as u64 >= rule.horizon() {
            return Err(Error::InsufficientWindow {
                window,
                needed: format!("{rows} rows x {cols} columns of the pair array"),
            });
        }
        window = (window * 2).min(rule.horizon() as usize + 1);
    }
}

fn try_fill(
    rule: &RuleSequence,
    g: &[u64],
    h: &[u64],
    rows: usize,
    cols: usize,
) -> Option<(OffsetArray, AssociatedArray)> {
    let firsts = first_instances(g);
    if firsts.len() < rows {
        return None;
    }
    let mut positions: Vec<Vec<u64>> = vec![Vec::new(); rows];
    for (n, &v) in g.iter().enumerate() {
        if (v as usize) < rows {
            positions[v as usize].push(n as u64);
        }
    }
    let mut offset_rows = Vec::with_capacity(rows);
    for i in 0..rows {
        let offset = row_offset(g, &firsts, i as u64);
        let need = cols.saturating_sub(offset as usize);
        if positions[i].len() < need {
            return None;
        }
        let entries: Vec<u64> = positions[i][..need].to_vec();
        debug_assert!(entries
            .iter()
            .enumerate()
            .all(|(idx, &n)| h[n as usize] == offset + idx as u64));
        offset_rows.push(OffsetRow {
            value: i as u64,
            offset,
            entries,
        });
    }
    let left = AssociatedArray::new(
        offset_rows
            .iter()
            .map(|r| r.entries.clone())
            .collect::<Vec<_>>(),
    );
    Some((
        OffsetArray {
            rule: rule.to_string(),
            rows: offset_rows,
        },
        left,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::maxnim::fast_grundy;
    use crate::rule::RuleSequence;

    const HALF_H17: [u64; 17] = [0, 1, 2, 2, 3, 3, 3, 3, 4, 4, 4, 4, 4, 4, 4, 4, 5];

    #[test]
    fn naive_half_matches_display() {
        let h = naive_min_grundy(&RuleSequence::half(32), 17).unwrap();
        assert_eq!(h.values(), &HALF_H17);
    }

    #[test]
    fn half_value_is_log2_plus_one() {
        let h = naive_min_grundy(&RuleSequence::half(64), 33).unwrap();
        assert_eq!(h.get(5), Some(3));
        for n in 1..=32usize {
            assert_eq!(h.get(n), Some((n as u64).ilog2() as u64 + 1));
        }
    }

    #[test]
    fn single_term_is_zero() {
        let h = naive_min_grundy(&RuleSequence::sqrt(4), 1).unwrap();
        assert_eq!(h.values(), &[0]);
    }

    #[test]
    fn q_examples() {
        let half = RuleSequence::half(64);
        assert_eq!(q_of(&half, 3).unwrap(), 6);
        assert_eq!(q_of(&half, 0).unwrap(), 1);
        let sqrt = RuleSequence::sqrt(64);
        assert_eq!(q_of(&sqrt, 5).unwrap(), 8);
    }

    #[test]
    fn q_undefined_when_reach_stays_bounded() {
        // f(n) = n keeps n - f(n) = 0.
        let rule = RuleSequence::from_table((0..8).collect()).unwrap();
        assert_eq!(
            q_of(&rule, 0).unwrap_err(),
            Error::QUndefined { k: 0, horizon: 7 }
        );
    }

    #[test]
    fn fast_matches_naive() {
        for rule in [RuleSequence::half(512), RuleSequence::sqrt(512)] {
            let fast = fast_min_grundy(&rule, 512).unwrap();
            let naive = naive_min_grundy(&rule, 512).unwrap();
            assert_eq!(fast.values(), naive.values(), "rule {rule}");
        }
    }

    #[test]
    fn fast_rejects_irregular_rules() {
        let pow2 = RuleSequence::pow2(64);
        assert_eq!(
            fast_min_grundy(&pow2, 16).unwrap_err(),
            Error::NotRegular { witness: 4 }
        );
    }

    #[test]
    fn half_jump_chain_is_powers_of_two() {
        let jumps = min_jump_positions(&RuleSequence::half(64), 17).unwrap();
        assert_eq!(jumps, vec![0, 1, 2, 4, 8, 16]);
    }

    #[test]
    fn min_from_max_equals_min_grundy() {
        for rule in [RuleSequence::half(512), RuleSequence::sqrt(512)] {
            let g = fast_grundy(&rule, 512).unwrap();
            let h = min_from_max(&g);
            let direct = naive_min_grundy(&rule, 512).unwrap();
            assert_eq!(h.values(), direct.values(), "rule {rule}");
        }
    }

    #[test]
    fn min_from_max_without_zeros_is_constant() {
        let g = GrundyPrefix::new(
            vec![0, 1, 2, 3],
            RuleSequence::from_table(vec![0, 1, 2, 3]).unwrap(),
            Game::Maximum,
            Method::Naive,
        )
        .unwrap();
        assert_eq!(min_from_max(&g).values(), &[0, 0, 0, 0]);
    }

    #[test]
    fn pair_encode_examples() {
        let half = RuleSequence::half(64);
        assert_eq!(pair_encode(&half, 12).unwrap(), (1, 4));
        assert_eq!(pair_encode(&half, 0).unwrap(), (0, 0));
        assert_eq!(pair_encode(&half, 9).unwrap(), (4, 4));
    }

    #[test]
    fn pair_decode_examples() {
        let half = RuleSequence::half(128);
        assert_eq!(pair_decode(&half, 2, 5, 64).unwrap(), 20);
        assert_eq!(pair_decode(&half, 0, 0, 64).unwrap(), 0);
        assert_eq!(pair_decode(&half, 3, 3, 64).unwrap(), 7);
    }

    #[test]
    fn pair_decode_rejects_lower_left_region() {
        let half = RuleSequence::half(128);
        assert_eq!(
            pair_decode(&half, 2, 2, 64).unwrap_err(),
            Error::PairOutOfRange { i: 2, j: 2, min_col: 3 }
        );
        assert!(matches!(
            pair_decode(&half, 1, 40, 64).unwrap_err(),
            Error::PairNotFound { .. }
        ));
    }

    #[test]
    fn chain_decode_matches_scan() {
        let half = RuleSequence::half(256);
        let sqrt = RuleSequence::sqrt(256);
        for rule in [half, sqrt] {
            let g = fast_grundy_values(&rule, 128).unwrap();
            let h = fast_min_values(&rule, 128).unwrap();
            for n in 0..128u64 {
                let (i, j) = (g[n as usize], h[n as usize]);
                assert_eq!(pair_decode(&rule, i, j, 255).unwrap(), n);
                assert_eq!(pair_decode_via_chain(&rule, i, j, 255).unwrap(), n);
            }
        }
    }

    #[test]
    fn dispersion_q_preserves_max_values() {
        for rule in [RuleSequence::half(512), RuleSequence::sqrt(512)] {
            let g = fast_grundy_values(&rule, 512).unwrap();
            for n in 0..256u64 {
                let q = q_of(&rule, n).unwrap();
                if (q as usize) < g.len() {
                    assert_eq!(g[q as usize], g[n as usize], "rule {rule}, n={n}");
                }
            }
        }
    }

    #[test]
    fn zero_positions_are_q_orbit() {
        let half = RuleSequence::half(512);
        let g = fast_grundy_values(&half, 512).unwrap();
        let mut orbit = Vec::new();
        let mut z = 0u64;
        loop {
            match q_of(&half, z) {
                Ok(next) if (next as usize) < g.len() => {
                    orbit.push(next);
                    z = next;
                }
                _ => break,
            }
        }
        let zeros: Vec<u64> = (1..g.len() as u64)
            .filter(|&n| g[n as usize] == 0)
            .collect();
        assert_eq!(orbit, zeros);
    }

    #[test]
    fn pair_table_checks() {
        let table = PairTable::build(&RuleSequence::half(1024), 1024).unwrap();
        assert_eq!(table.injectivity_witness(), None);
        assert_eq!(table.surjectivity_witness(), None);
    }

    #[test]
    fn array_rows_match_display() {
        let (prime, left) = build_arrays(&RuleSequence::half(256), 5, 7).unwrap();
        assert_eq!(prime.rows[0].offset, 0);
        assert_eq!(prime.rows[0].entries, vec![0, 1, 2, 4, 8, 16, 32]);
        assert_eq!(prime.rows[1].offset, 2);
        assert_eq!(prime.rows[1].entries, vec![3, 6, 12, 24, 48]);
        assert_eq!(prime.rows[2].offset, 3);
        assert_eq!(prime.rows[2].entries, vec![5, 10, 20, 40]);
        assert_eq!(prime.rows[3].offset, 3);
        assert_eq!(prime.rows[3].entries, vec![7, 14, 28, 56]);
        assert_eq!(prime.rows[4].offset, 4);
        assert_eq!(prime.rows[4].entries, vec![9, 18, 36]);
        // Left-justified rows coincide with the instance positions.
        assert_eq!(left.rows()[0], vec![0, 1, 2, 4, 8, 16, 32]);
        assert_eq!(left.rows()[1], vec![3, 6, 12, 24, 48]);
    }

    #[test]
    fn offset_array_text_rendering() {
        let (prime, _) = build_arrays(&RuleSequence::half(256), 3, 4).unwrap();
        let text = prime.render_text();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0].trim(), "0 1 2 4");
        assert_eq!(lines[1].trim(), "3 6");
        assert_eq!(lines[2].trim(), "5");
    }

    #[test]
    fn offset_array_json_roundtrip() {
        let (prime, _) = build_arrays(&RuleSequence::half(256), 3, 5).unwrap();
        let json = serde_json::to_string(&prime).unwrap();
        assert!(json.contains("\"rule\":\"half\""));
        assert!(json.contains("\"offset\":2"));
        let back: OffsetArray = serde_json::from_str(&json).unwrap();
        assert_eq!(back, prime);
    }
}
