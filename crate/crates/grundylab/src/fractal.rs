//! Fractal-sequence machinery: the self-similarity operator, fractal and
//! interspersion checks, restrictions, associated arrays, and the
//! bijection with subadditive triangles.
//!
//! The underlying objects are infinite; everything here works on finite
//! prefixes and reports verdicts that are exact for failures and
//! window-qualified for passes. Whether a sequence is infinitive cannot
//! be decided from a prefix and is never claimed.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::maxnim::{check_first_instance_order, first_instances};

/// Outcome of a windowed check: exact on failure, window-limited on pass.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "lowercase")]
pub enum Check {
    Pass,
    Fail { witness: usize },
}

impl Check {
    pub fn passed(&self) -> bool {
        matches!(self, Check::Pass)
    }

    pub fn witness(&self) -> Option<usize> {
        match self {
            Check::Pass => None,
            Check::Fail { witness } => Some(*witness),
        }
    }
}

/// Parses a sequence file: either a JSON array of nonnegative integers
/// or plain text with one integer per line ('#' lines and blank lines
/// ignored).
pub fn parse_sequence(text: &str) -> Result<Vec<u64>> {
    let trimmed = text.trim_start();
    if trimmed.starts_with('[') {
        return serde_json::from_str(trimmed).map_err(|e| Error::ParseLine {
            line: 1,
            content: format!("JSON array: {e}"),
        });
    }
    let mut values = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let value: u64 = line.parse().map_err(|_| Error::ParseLine {
            line: lineno + 1,
            content: raw.to_string(),
        })?;
        values.push(value);
    }
    Ok(values)
}

/// Deletes, for each value, its first occurrence.
///
/// The output has length N - D where D is the number of distinct values
/// in the input. Which positions survive does not depend on how the
/// sequence continues, so the output is a true prefix of the operator
/// applied to any extension.
pub fn lambda_op(seq: &[u64]) -> Vec<u64> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::with_capacity(seq.len());
    for &v in seq {
        if !seen.insert(v) {
            out.push(v);
        }
    }
    out
}

/// Verdict of the fractal-sequence checks on a window.
///
/// F2: first instances appear in increasing value order (the r-th
/// distinct value to appear is r). F3: deleting all first instances
/// reproduces the sequence on the determined length. Infinitivity is
/// not decidable from a prefix and is not checked.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct FractalVerdict {
    pub f2: Check,
    pub f3: Check,
    pub window: usize,
}

impl FractalVerdict {
    pub fn passed(&self) -> bool {
        self.f2.passed() && self.f3.passed()
    }
}

pub fn check_fractal(seq: &[u64]) -> FractalVerdict {
    let f2 = match check_first_instance_order(seq) {
        Ok(()) => Check::Pass,
        Err(Error::F2Violation { position, .. }) => Check::Fail { witness: position },
        Err(_) => unreachable!("order check only reports F2 violations"),
    };
    let deleted = lambda_op(seq);
    let f3 = match deleted.iter().zip(seq.iter()).position(|(a, b)| a != b) {
        None => Check::Pass,
        Some(witness) => Check::Fail { witness },
    };
    FractalVerdict {
        f2,
        f3,
        window: seq.len(),
    }
}

/// Subsequence of the terms whose values lie in `m`, order preserved.
pub fn restrict(seq: &[u64], m: &BTreeSet<u64>) -> Vec<u64> {
    seq.iter().copied().filter(|v| m.contains(v)).collect()
}

/// Restricts to `m` and replaces the k-th smallest element of `m` by k.
pub fn relabel(seq: &[u64], m: &BTreeSet<u64>) -> Vec<u64> {
    let rank: std::collections::BTreeMap<u64, u64> = m
        .iter()
        .enumerate()
        .map(|(k, &v)| (v, k as u64))
        .collect();
    seq.iter().filter_map(|v| rank.get(v).copied()).collect()
}

/// Interspersion verdict for a sequence prefix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct InterspersionVerdict {
    pub result: Check,
    /// The value pair the witness belongs to, when failing.
    pub pair: Option<(u64, u64)>,
    pub window: usize,
}

impl InterspersionVerdict {
    pub fn passed(&self) -> bool {
        self.result.passed()
    }
}

/// Checks the pairwise occurrence pattern of an interspersion: for each
/// pair of values i < j both present, the restriction to {i, j} must be
/// a block of i's followed by strict alternation starting with j.
///
/// Two conditions per pair: the first i precedes the first j, and after
/// the first j no two consecutive terms of the restriction are equal.
/// The witness is a position in the original sequence.
pub fn check_interspersion_prefix(seq: &[u64]) -> InterspersionVerdict {
    // Positions per value; the {i, j} restriction is their merge.
    let mut positions: std::collections::BTreeMap<u64, Vec<usize>> = Default::default();
    for (pos, &v) in seq.iter().enumerate() {
        positions.entry(v).or_default().push(pos);
    }
    let values: Vec<u64> = positions.keys().copied().collect();
    for (a, &i) in values.iter().enumerate() {
        for &j in &values[a + 1..] {
            let (pi, pj) = (&positions[&i], &positions[&j]);
            if pj[0] < pi[0] {
                return fail_pair(pj[0], i, j, seq.len());
            }
            // Two-pointer merge; alternation starts at the first j.
            let (mut x, mut y) = (0usize, 0usize);
            let mut started = false;
            let mut prev_is_j = false;
            while x < pi.len() || y < pj.len() {
                let take_i = y >= pj.len() || (x < pi.len() && pi[x] < pj[y]);
                let (pos, is_j) = if take_i {
                    let p = pi[x];
                    x += 1;
                    (p, false)
                } else {
                    let p = pj[y];
                    y += 1;
                    (p, true)
                };
                if is_j && !started {
                    started = true;
                    prev_is_j = true;
                    continue;
                }
                if started {
                    if prev_is_j == is_j {
                        return fail_pair(pos, i, j, seq.len());
                    }
                    prev_is_j = is_j;
                }
            }
        }
    }
    InterspersionVerdict {
        result: Check::Pass,
        pair: None,
        window: seq.len(),
    }
}

fn fail_pair(pos: usize, i: u64, j: u64, window: usize) -> InterspersionVerdict {
    InterspersionVerdict {
        result: Check::Fail { witness: pos },
        pair: Some((i, j)),
        window,
    }
}

/// Row i lists the positions of the instances of i, in increasing order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AssociatedArray {
    rows: Vec<Vec<u64>>,
}

impl AssociatedArray {
    pub fn new(rows: Vec<Vec<u64>>) -> Self {
        Self { rows }
    }

    pub fn rows(&self) -> &[Vec<u64>] {
        &self.rows
    }
}

/// The associated array of a sequence prefix: row i holds the positions
/// of value i. Rows run from 0 to the largest value present; a value
/// with no instances yields an empty row.
pub fn associated_array(seq: &[u64]) -> AssociatedArray {
    let max = seq.iter().copied().max().map_or(0, |m| m as usize + 1);
    let mut rows = vec![Vec::new(); if seq.is_empty() { 0 } else { max }];
    for (pos, &v) in seq.iter().enumerate() {
        rows[v as usize].push(pos as u64);
    }
    AssociatedArray::new(rows)
}

/// What an array verdict failure violated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ArrayAxiom {
    RowOrder,
    ColumnOrder,
    Interlacing,
    Alternation,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ArrayVerdict {
    pub result: Check,
    pub axiom: Option<ArrayAxiom>,
    /// Rows involved in the failure, when failing.
    pub rows: Option<(usize, usize)>,
}

impl ArrayVerdict {
    pub fn passed(&self) -> bool {
        self.result.passed()
    }

    fn pass() -> Self {
        ArrayVerdict {
            result: Check::Pass,
            axiom: None,
            rows: None,
        }
    }

    fn fail(axiom: ArrayAxiom, rows: (usize, usize), witness: usize) -> Self {
        ArrayVerdict {
            result: Check::Fail { witness },
            axiom: Some(axiom),
            rows: Some(rows),
        }
    }
}

/// Interspersion axioms on an associated array, restricted to entries
/// present in the window: rows increase, columns increase, consecutive
/// entries of one row interlace with the next entries of any row that
/// meets the gap, and entries of any two rows alternate after the first
/// entry of the later row.
pub fn check_interspersion_array(arr: &AssociatedArray) -> ArrayVerdict {
    let rows = arr.rows();
    for (i, row) in rows.iter().enumerate() {
        for w in row.windows(2) {
            if w[0] >= w[1] {
                return ArrayVerdict::fail(ArrayAxiom::RowOrder, (i, i), w[1] as usize);
            }
        }
    }
    for i in 1..rows.len() {
        let (upper, lower) = (&rows[i - 1], &rows[i]);
        for (col, (a, b)) in upper.iter().zip(lower.iter()).enumerate() {
            if a >= b {
                let _ = col;
                return ArrayVerdict::fail(ArrayAxiom::ColumnOrder, (i - 1, i), *b as usize);
            }
        }
    }
    // Interlacing: a_{ij} < a_{kl} < a_{i,j+1} forces the next entry of
    // row k between the next two entries of row i.
    for i in 0..rows.len() {
        for j in 0..rows[i].len().saturating_sub(1) {
            let (lo, hi) = (rows[i][j], rows[i][j + 1]);
            for (k, other) in rows.iter().enumerate() {
                if k == i {
                    continue;
                }
                for (l, &entry) in other.iter().enumerate() {
                    if entry <= lo || entry >= hi {
                        continue;
                    }
                    if let (Some(&next_k), Some(next_i)) =
                        (other.get(l + 1), rows[i].get(j + 2).copied())
                    {
                        if !(hi < next_k && next_k < next_i) {
                            return ArrayVerdict::fail(
                                ArrayAxiom::Interlacing,
                                (i, k),
                                next_k as usize,
                            );
                        }
                    }
                }
            }
        }
    }
    // Alternation: merging rows i < k, entries alternate once row k starts.
    for i in 0..rows.len() {
        for k in (i + 1)..rows.len() {
            if let Some(witness) = alternation_violation(&rows[i], &rows[k]) {
                return ArrayVerdict::fail(ArrayAxiom::Alternation, (i, k), witness);
            }
        }
    }
    ArrayVerdict::pass()
}

/// Merge two increasing rows; after the first entry of `later`, entries
/// must come from the two rows alternately. Returns a violating position.
fn alternation_violation(earlier: &[u64], later: &[u64]) -> Option<usize> {
    let mut merged: Vec<(u64, bool)> = earlier
        .iter()
        .map(|&p| (p, false))
        .chain(later.iter().map(|&p| (p, true)))
        .collect();
    merged.sort_unstable();
    let mut started = false;
    let mut prev: Option<bool> = None;
    for &(pos, from_later) in &merged {
        if from_later {
            started = true;
        }
        if started {
            if prev == Some(from_later) {
                return Some(pos as usize);
            }
            prev = Some(from_later);
        }
    }
    None
}

/// Least preperiod after which the restriction of `seq` to `m` repeats
/// with period #m, verified on the available window.
///
/// Requires at least two full periods of agreement past the preperiod;
/// shorter windows are reported as such rather than guessed at.
pub fn check_restriction_periodicity(seq: &[u64], m: &BTreeSet<u64>) -> Result<(usize, usize)> {
    let restricted = restrict(seq, m);
    let period = m.len().max(1);
    let len = restricted.len();
    let need = 3 * period;
    if len < need {
        return Err(Error::PeriodicityWindowTooShort { len, need });
    }
    // Deepest preperiod we can still certify with two full periods.
    let max_pre = len - 2 * period;
    let mut preperiod = None;
    for p in 0..=max_pre {
        if (p..len - period).all(|t| restricted[t] == restricted[t + period]) {
            preperiod = Some(p);
            break;
        }
    }
    match preperiod {
        Some(p) => Ok((p, period)),
        None => {
            let witness = (0..len - period)
                .rev()
                .find(|&t| restricted[t] != restricted[t + period])
                .unwrap_or(0);
            Err(Error::NotPeriodic { period, witness })
        }
    }
}

/// Strictly upper-triangular counts s_{ij} for 0 <= i < j < dim, where
/// s_{ij} is the number of instances of i preceding the first instance
/// of j (not counting the instance at position 0 when i = 0).
///
/// Entries satisfy s_{ij} + s_{jk} - 1 <= s_{ik} <= s_{ij} + s_{jk}.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, serde::Deserialize)]
pub struct SubadditiveTriangle {
    dim: usize,
    rows: Vec<Vec<u64>>,
}

impl SubadditiveTriangle {
    /// Rows from the outside: row i must hold entries s_{i,i+1} .. s_{i,dim-1}.
    pub fn new(dim: usize, rows: Vec<Vec<u64>>) -> Result<Self> {
        let expected_rows = dim.saturating_sub(1);
        if rows.len() != expected_rows {
            return Err(Error::InvalidTriangle(format!(
                "dimension {dim} needs {expected_rows} rows, found {}",
                rows.len()
            )));
        }
        for (i, row) in rows.iter().enumerate() {
            let expected = dim - 1 - i;
            if row.len() != expected {
                return Err(Error::InvalidTriangle(format!(
                    "row {i} needs {expected} entries, found {}",
                    row.len()
                )));
            }
        }
        Ok(Self { dim, rows })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rows(&self) -> &[Vec<u64>] {
        &self.rows
    }

    /// s_{ij} for i < j < dim.
    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.rows[i][j - i - 1]
    }

    /// Column sums c_j = sum of s_{ij} over i < j, for j = 1..dim-1.
    pub fn column_sums(&self) -> Vec<u64> {
        (1..self.dim)
            .map(|j| (0..j).map(|i| self.get(i, j)).sum())
            .collect()
    }

    /// The triangle restricted to indices below `dim`.
    pub fn truncate(&self, dim: usize) -> Result<Self> {
        if dim > self.dim {
            return Err(Error::InvalidTriangle(format!(
                "cannot truncate dimension {} up to {dim}",
                self.dim
            )));
        }
        let rows = (0..dim.saturating_sub(1))
            .map(|i| self.rows[i][..dim - 1 - i].to_vec())
            .collect();
        Self::new(dim, rows)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("triangle serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: serde_json::Value = serde_json::from_str(text)
            .map_err(|e| Error::InvalidTriangle(format!("malformed JSON: {e}")))?;
        let parsed: SubadditiveTriangle = serde_json::from_value(raw)
            .map_err(|e| Error::InvalidTriangle(format!("unexpected shape: {e}")))?;
        // Re-validate row lengths; serde fills the fields blindly.
        Self::new(parsed.dim, parsed.rows)
    }
}

/// The subadditive triangle of a sequence prefix. Requires first
/// instances in increasing value order; the dimension is the number of
/// values whose first instance lies in the window.
pub fn triangle_of(seq: &[u64]) -> Result<SubadditiveTriangle> {
    check_first_instance_order(seq)?;
    let firsts = first_instances(seq);
    let dim = firsts.len();
    let positions = associated_array(seq);
    let mut rows = Vec::with_capacity(dim.saturating_sub(1));
    for i in 0..dim.saturating_sub(1) {
        let mut row = Vec::with_capacity(dim - 1 - i);
        for j in (i + 1)..dim {
            let before = firsts[j];
            let count = positions.rows()[i]
                .iter()
                .filter(|&&p| p < before && !(i == 0 && p == 0))
                .count() as u64;
            row.push(count);
        }
        rows.push(row);
    }
    SubadditiveTriangle::new(dim, rows)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TriangleVerdict {
    pub result: Check,
    /// Indices (i, j, k) of a subadditivity violation, or (j, j, j) for
    /// a column-sum violation.
    pub indices: Option<(usize, usize, usize)>,
    pub detail: Option<String>,
}

impl TriangleVerdict {
    pub fn passed(&self) -> bool {
        self.result.passed()
    }
}

/// Checks subadditivity on every triple and strict increase of the
/// column sums.
pub fn validate_triangle(t: &SubadditiveTriangle) -> TriangleVerdict {
    for i in 0..t.dim() {
        for j in (i + 1)..t.dim() {
            for k in (j + 1)..t.dim() {
                let (sij, sjk, sik) = (t.get(i, j), t.get(j, k), t.get(i, k));
                let sum = sij + sjk;
                if sik > sum || sik + 1 < sum {
                    return TriangleVerdict {
                        result: Check::Fail { witness: i },
                        indices: Some((i, j, k)),
                        detail: Some(format!(
                            "s_{i}{j} + s_{j}{k} = {sum} vs s_{i}{k} = {sik}"
                        )),
                    };
                }
            }
        }
    }
    let sums = t.column_sums();
    for w in 1..sums.len() {
        if sums[w] <= sums[w - 1] {
            return TriangleVerdict {
                result: Check::Fail { witness: w + 1 },
                indices: Some((w + 1, w + 1, w + 1)),
                detail: Some(format!(
                    "column sums c_{} = {} and c_{} = {} do not increase",
                    w,
                    sums[w - 1],
                    w + 1,
                    sums[w]
                )),
            };
        }
    }
    TriangleVerdict {
        result: Check::Pass,
        indices: None,
        detail: None,
    }
}

/// Rebuilds the unique subadditive triangle with the given column sums
/// c_1, ..., c_{dim-1} (c_0 = 0 implicitly).
///
/// For each row i and ascending j, exactly one error term in the
/// admissible window makes the reconstruction integral; inputs for
/// which the result is not a valid triangle with these column sums are
/// rejected as unrealizable.
pub fn from_column_sums(sums: &[u64]) -> Result<SubadditiveTriangle> {
    for j in 1..sums.len() {
        if sums[j] <= sums[j - 1] {
            return Err(Error::ColumnSumsNotIncreasing { j: j + 1 });
        }
    }
    let dim = sums.len() + 1;
    // c_0 = 0 prepended so indices line up with the math.
    let c = |idx: usize| -> i128 {
        if idx == 0 {
            0
        } else {
            sums[idx - 1] as i128
        }
    };
    let mut rows: Vec<Vec<u64>> = vec![Vec::new(); dim.saturating_sub(1)];
    for i in 0..dim.saturating_sub(1) {
        let mut partial: i128 = 0; // sum of s_{ip} for i < p < j
        for j in (i + 1)..dim {
            let base = c(j) - c(i) + partial;
            // epsilon ranges over j consecutive integers [-i, j-1-i];
            // exactly one makes base - epsilon divisible by j.
            let j_i = j as i128;
            let lo = -(i as i128);
            let residue = base.rem_euclid(j_i);
            let mut eps = residue;
            while eps < lo {
                eps += j_i;
            }
            while eps > j_i - 1 - (i as i128) {
                eps -= j_i;
            }
            let value = (base - eps) / j_i;
            if value < 0 {
                return Err(Error::UnrealizableColumnSums { i, j });
            }
            let value_u = u64::try_from(value)
                .map_err(|_| Error::Overflow { context: "triangle reconstruction" })?;
            rows[i].push(value_u);
            partial += value;
        }
    }
    let triangle = SubadditiveTriangle::new(dim, rows)?;
    // The derivation assumes a subadditive triangle exists; verify the
    // result instead of trusting the input.
    if triangle.column_sums() != sums {
        return Err(Error::InvalidTriangle(
            "reconstruction does not reproduce the given column sums".into(),
        ));
    }
    let verdict = validate_triangle(&triangle);
    if !verdict.passed() {
        return Err(Error::InvalidTriangle(
            verdict
                .detail
                .unwrap_or_else(|| "reconstruction violates subadditivity".into()),
        ));
    }
    Ok(triangle)
}

/// Rebuilds the fractal sequence a triangle belongs to.
///
/// First instances sit at positions 1 + c_j; every other term copies an
/// earlier one. The triangle determines terms up to its last first
/// instance; asking for more is an error.
pub fn sequence_from_triangle(t: &SubadditiveTriangle, n_terms: usize) -> Result<Vec<u64>> {
    let verdict = validate_triangle(t);
    if !verdict.passed() {
        return Err(Error::InvalidTriangle(
            verdict
                .detail
                .unwrap_or_else(|| "triangle fails validation".into()),
        ));
    }
    let sums = t.column_sums();
    let mut firsts: Vec<usize> = Vec::with_capacity(t.dim());
    firsts.push(0);
    for &cj in &sums {
        let pos = usize::try_from(cj)
            .ok()
            .and_then(|v| v.checked_add(1))
            .ok_or(Error::Overflow { context: "first-instance position" })?;
        firsts.push(pos);
    }
    let determined = firsts.last().copied().unwrap_or(0) + 1;
    if n_terms > determined {
        return Err(Error::InsufficientDim {
            dim: t.dim(),
            determined,
            requested: n_terms,
        });
    }
    let mut seq: Vec<u64> = Vec::with_capacity(n_terms);
    let mut next_first = 0usize; // index into firsts
    let mut current_value: u64 = 0;
    for n in 0..n_terms {
        if next_first < firsts.len() && n == firsts[next_first] {
            seq.push(next_first as u64);
            current_value = next_first as u64;
            next_first += 1;
        } else {
            // Between first instances of k and k+1 the sequence copies
            // itself with the k+1 deleted initial terms restored.
            let k = current_value as usize;
            seq.push(seq[n - k - 1]);
        }
    }
    Ok(seq)
}
