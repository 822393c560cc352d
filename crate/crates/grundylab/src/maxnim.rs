//! Maximum Nim: at most f(m) stones may be removed from a pile of size m
//! (taking exactly f(m) is allowed).
//!
//! `naive_grundy` evaluates the defining mex recurrence and works for any
//! valid rule; it is the oracle everything else is checked against. For
//! weakly increasing rules `fast_grundy` produces identical values in
//! time linear in the window, exploiting the self-similar structure of
//! the sequence.

use crate::error::{Error, Result};
use crate::prefix::{Game, GrundyPrefix, Method};
use crate::rule::{RuleKind, RuleSequence};

/// Grundy values by the direct recurrence g_n = mex{g_{n-i}} for
/// i = 1..f(n). Cost is on the order of the sum of f over the window.
///
/// This is the only correct evaluator for rules that are not weakly
/// increasing.
pub fn naive_grundy(rule: &RuleSequence, n_terms: usize) -> Result<GrundyPrefix> {
    let mut values: Vec<u64> = Vec::with_capacity(n_terms);
    // stamp[v] == n marks value v as seen among the current options.
    let mut stamp: Vec<usize> = vec![usize::MAX; n_terms + 1];
    for n in 0..n_terms {
        let reach = rule.eval(n as u64)? as usize;
        for i in 1..=reach {
            let v = values[n - i];
            if (v as usize) <= reach {
                stamp[v as usize] = n;
            }
        }
        let mut g = 0u64;
        while stamp[g as usize] == n {
            g += 1;
        }
        values.push(g);
    }
    GrundyPrefix::new(values, rule.clone(), Game::Maximum, Method::Naive)
}

/// Grundy values in O(n) via the explicit recurrence for regular rules:
/// g_n = f'(n) where f' increases, otherwise a copy of an earlier term.
///
/// The rule is regularized internally, so any weakly increasing rule is
/// accepted; anything else is rejected with the first decreasing index.
pub fn fast_grundy(rule: &RuleSequence, n_terms: usize) -> Result<GrundyPrefix> {
    let values = fast_grundy_values(rule, n_terms)?;
    GrundyPrefix::new(values, rule.clone(), Game::Maximum, Method::Fast)
}

pub(crate) fn fast_grundy_values(rule: &RuleSequence, n_terms: usize) -> Result<Vec<u64>> {
    if n_terms == 0 {
        return Ok(Vec::new());
    }
    let reg = rule.regularize(n_terms as u64 - 1)?;
    let mut values: Vec<u64> = Vec::with_capacity(n_terms);
    values.push(0);
    let mut prev = reg.eval(0)?;
    for n in 1..n_terms {
        let cur = reg.eval(n as u64)?;
        let g = if cur > prev {
            cur
        } else {
            values[n - cur as usize - 1]
        };
        values.push(g);
        prev = cur;
    }
    Ok(values)
}

/// Closed form for the half rule: write n in binary and truncate at the
/// last one bit. With n = 2^a + ... + 2^y + 2^z (a > ... > y > z), the
/// value is 2^(a-z-1) + ... + 2^(y-z-1).
pub fn closed_half(n: u64) -> Result<u64> {
    if n == 0 {
        return Err(Error::ClosedFormAtZero);
    }
    Ok((n & (n - 1)) >> (n.trailing_zeros() + 1))
}

/// Closed form for the pow2 rule: after the leading one bit comes a
/// (possibly empty) run of ones ended by a zero; deleting that run and
/// the zero gives the value. All-ones inputs map to 0.
pub fn closed_pow2(n: u64) -> Result<u64> {
    if n == 0 {
        return Err(Error::ClosedFormAtZero);
    }
    if n & n.wrapping_add(1) == 0 {
        // n is one less than a power of two.
        return Ok(0);
    }
    let lead = n.ilog2();
    // Highest zero bit below the leading one ends the run of ones.
    let zeros_below = !n & ((1u64 << lead) - 1);
    let p = zeros_below.ilog2();
    Ok((1u64 << p) | (n & ((1u64 << p) - 1)))
}

/// Prefix of closed-form values for the half or pow2 preset.
pub fn closed_prefix(rule: &RuleSequence, n_terms: usize) -> Result<GrundyPrefix> {
    let closed: fn(u64) -> Result<u64> = match rule.kind() {
        RuleKind::Half => closed_half,
        RuleKind::Pow2 => closed_pow2,
        _ => {
            return Err(Error::NoClosedForm {
                rule: rule.to_string(),
            })
        }
    };
    let mut values = Vec::with_capacity(n_terms);
    if n_terms > 0 {
        values.push(0);
        for n in 1..n_terms {
            values.push(closed(n as u64)?);
        }
    }
    GrundyPrefix::new(values, rule.clone(), Game::Maximum, Method::ClosedForm)
}

/// Positions of first instances: entry k is the position of the first k
/// in the sequence. The list stops at the first value with no instance
/// in the window, so for a prefix whose values are exactly 0..D it has
/// length D.
pub fn first_instances(values: &[u64]) -> Vec<u64> {
    let mut firsts: Vec<u64> = Vec::new();
    loop {
        let target = firsts.len() as u64;
        match values.iter().position(|&v| v == target) {
            Some(pos) => firsts.push(pos as u64),
            None => break,
        }
    }
    firsts
}

/// The regular rule f(n) = max of the prefix up to n, which reproduces
/// the prefix as its Maximum-Nim Grundy sequence. Requires first
/// instances to appear in increasing value order.
pub fn canonical_rule(values: &[u64]) -> Result<RuleSequence> {
    check_first_instance_order(values)?;
    let mut table = Vec::with_capacity(values.len());
    let mut max = 0u64;
    for &v in values {
        max = max.max(v);
        table.push(max);
    }
    RuleSequence::from_table(table)
}

/// First-instance values must be 0, 1, 2, ... in order of appearance.
pub(crate) fn check_first_instance_order(values: &[u64]) -> Result<()> {
    let mut next = 0u64;
    for (position, &v) in values.iter().enumerate() {
        if v == next {
            next += 1;
        } else if v > next {
            return Err(Error::F2Violation { position, value: v });
        }
    }
    Ok(())
}

/// A winning move in a sum of Maximum-Nim piles, if one exists.
///
/// Returns the heap index and its new size, or None exactly when the
/// XOR of the single-pile Grundy values is already zero. Ties break to
/// the lowest heap index, then the largest removal.
pub fn sum_position_move(heaps: &[u64], rule: &RuleSequence) -> Result<Option<(usize, u64)>> {
    let mut max_heap = 0u64;
    for (index, &h) in heaps.iter().enumerate() {
        if h > rule.horizon() {
            return Err(Error::HeapBeyondHorizon {
                index,
                n: h,
                horizon: rule.horizon(),
            });
        }
        max_heap = max_heap.max(h);
    }
    let g = naive_grundy(rule, max_heap as usize + 1)?;
    let g = g.values();
    let total = heaps.iter().fold(0u64, |acc, &h| acc ^ g[h as usize]);
    if total == 0 {
        return Ok(None);
    }
    for (index, &h) in heaps.iter().enumerate() {
        let target = total ^ g[h as usize];
        let reach = rule.eval(h)?;
        // Largest removal first.
        for take in (1..=reach).rev() {
            let rest = h - take;
            if g[rest as usize] == target {
                return Ok(Some((index, rest)));
            }
        }
    }
    // The Sprague-Grundy theory guarantees a move to XOR zero whenever
    // the total is nonzero.
    unreachable!("nonzero XOR position must admit a balancing move")
}
