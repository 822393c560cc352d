//! Rule sequences: the function f(n) bounding how many stones may be
//! removed from a pile of size n.
//!
//! Every rule satisfies 0 <= f(n) <= n on its horizon. All sequences are
//! 0-indexed and f(0) = 0 is forced by that bound. The closed-form
//! presets are clamped to 0 at n = 0 for the same reason.

use std::fmt;

use crate::error::{Error, Result};

/// How the rule values are produced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RuleKind {
    /// f(n) = floor((n-1)/2) for n >= 1: take strictly less than half the pile.
    Half,
    /// f(n) = floor(sqrt(n)).
    Sqrt,
    /// f(n) = (largest power of two <= n) - 1 for n >= 1: take strictly less
    /// than the greatest power of two not exceeding the pile.
    Pow2,
    /// Explicit table of values f(0..N-1).
    Table(Vec<u64>),
    /// The pattern 1,2,...,a1,1,2,...,a2,... starting at n = 1, generated
    /// by a row of heaps. Defined up to the sum of the heap sizes.
    Serial(Vec<u64>),
}

/// A rule sequence evaluated on a finite horizon.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RuleSequence {
    kind: RuleKind,
    horizon: u64,
}

impl RuleSequence {
    pub fn half(horizon: u64) -> Self {
        Self {
            kind: RuleKind::Half,
            horizon,
        }
    }

    pub fn sqrt(horizon: u64) -> Self {
        Self {
            kind: RuleKind::Sqrt,
            horizon,
        }
    }

    pub fn pow2(horizon: u64) -> Self {
        Self {
            kind: RuleKind::Pow2,
            horizon,
        }
    }

    /// Explicit table; the horizon is the last index. Every entry must
    /// satisfy 0 <= f(n) <= n.
    pub fn from_table(table: Vec<u64>) -> Result<Self> {
        if table.is_empty() {
            return Err(Error::EmptyTable);
        }
        for (n, &value) in table.iter().enumerate() {
            if value > n as u64 {
                return Err(Error::InvalidRuleEntry { n: n as u64, value });
            }
        }
        let horizon = table.len() as u64 - 1;
        Ok(Self {
            kind: RuleKind::Table(table),
            horizon,
        })
    }

    /// Rule generated by a row of heaps: values 1,2,...,a1,1,2,...,a2,...
    /// placed at n = 1,2,.... The horizon is the sum of the heap sizes.
    pub fn serial(heaps: Vec<u64>) -> Result<Self> {
        if heaps.is_empty() {
            return Err(Error::EmptyHeaps);
        }
        let mut total: u64 = 0;
        for (index, &h) in heaps.iter().enumerate() {
            if h == 0 {
                return Err(Error::ZeroHeap { index });
            }
            total = total
                .checked_add(h)
                .ok_or(Error::Overflow { context: "serial rule horizon" })?;
        }
        Ok(Self {
            kind: RuleKind::Serial(heaps),
            horizon: total,
        })
    }

    /// Parse a rule table from text: one nonnegative decimal integer per
    /// line, line n holding f(n). Lines starting with '#' and blank lines
    /// are ignored; anything else that fails to parse is a hard error.
    pub fn parse_table(text: &str) -> Result<Self> {
        let mut table = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let value: u64 = line.parse().map_err(|_| Error::ParseLine {
                line: lineno + 1,
                content: raw.to_string(),
            })?;
            table.push(value);
        }
        Self::from_table(table)
    }

    pub fn kind(&self) -> &RuleKind {
        &self.kind
    }

    pub fn horizon(&self) -> u64 {
        self.horizon
    }

    /// f(n). Errors past the horizon; never returns a value above n.
    pub fn eval(&self, n: u64) -> Result<u64> {
        if n > self.horizon {
            return Err(Error::OutOfHorizon {
                n,
                horizon: self.horizon,
            });
        }
        Ok(match &self.kind {
            RuleKind::Half => {
                if n == 0 {
                    0
                } else {
                    (n - 1) / 2
                }
            }
            RuleKind::Sqrt => n.isqrt(),
            RuleKind::Pow2 => {
                if n == 0 {
                    0
                } else {
                    (1u64 << n.ilog2()) - 1
                }
            }
            RuleKind::Table(table) => table[n as usize],
            RuleKind::Serial(heaps) => {
                if n == 0 {
                    0
                } else {
                    // Position n sits inside the heap whose cumulative
                    // range covers it; the value is the offset within it.
                    let mut rest = n;
                    let mut value = 0;
                    for &h in heaps {
                        if rest <= h {
                            value = rest;
                            break;
                        }
                        rest -= h;
                    }
                    value
                }
            }
        })
    }

    /// Least n in [1, upto] where f(n) - f(n-1) falls outside [0, 1].
    pub fn first_irregularity(&self, upto: u64) -> Result<Option<u64>> {
        let mut prev = self.eval(0)?;
        for n in 1..=upto {
            let cur = self.eval(n)?;
            if cur < prev || cur - prev > 1 {
                return Ok(Some(n));
            }
            prev = cur;
        }
        Ok(None)
    }

    /// Least n in [1, upto] where f(n) < f(n-1).
    pub fn first_decrease(&self, upto: u64) -> Result<Option<u64>> {
        let mut prev = self.eval(0)?;
        for n in 1..=upto {
            let cur = self.eval(n)?;
            if cur < prev {
                return Ok(Some(n));
            }
            prev = cur;
        }
        Ok(None)
    }

    /// True iff 0 <= f(n) - f(n-1) <= 1 for all 1 <= n <= upto.
    pub fn is_regular(&self, upto: u64) -> Result<bool> {
        Ok(self.first_irregularity(upto)?.is_none())
    }

    /// True iff f(n-1) <= f(n) for all 1 <= n <= upto.
    pub fn is_weakly_increasing(&self, upto: u64) -> Result<bool> {
        Ok(self.first_decrease(upto)?.is_none())
    }

    /// Regularized rule f'(n) = min(f(n), 1 + f'(n-1)) as an explicit
    /// table on [0, upto]. The input must be weakly increasing on that
    /// window; the Grundy sequences of f and f' then coincide.
    pub fn regularize(&self, upto: u64) -> Result<RuleSequence> {
        if let Some(witness) = self.first_decrease(upto)? {
            return Err(Error::NotWeaklyIncreasing { witness });
        }
        let mut table = Vec::with_capacity(upto as usize + 1);
        table.push(self.eval(0)?);
        for n in 1..=upto {
            let capped = table[n as usize - 1] + 1;
            table.push(self.eval(n)?.min(capped));
        }
        RuleSequence::from_table(table)
    }
}

impl fmt::Display for RuleSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            RuleKind::Half => write!(f, "half"),
            RuleKind::Sqrt => write!(f, "sqrt"),
            RuleKind::Pow2 => write!(f, "pow2"),
            RuleKind::Table(t) => write!(f, "table(n={})", t.len()),
            RuleKind::Serial(heaps) => {
                write!(f, "serial:")?;
                for (i, h) in heaps.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{h}")?;
                }
                Ok(())
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn preset_values_match_worked_examples() {
        let sqrt = RuleSequence::sqrt(100);
        assert_eq!(sqrt.eval(9).unwrap(), 3);
        let pow2 = RuleSequence::pow2(100);
        assert_eq!(pow2.eval(4).unwrap(), 3);
        let half = RuleSequence::half(100);
        assert_eq!(half.eval(0).unwrap(), 0);
    }

    #[test]
    fn serial_rule_expands_heap_pattern() {
        let rule = RuleSequence::serial(vec![3, 2]).unwrap();
        let values: Vec<u64> = (0..=5).map(|n| rule.eval(n).unwrap()).collect();
        assert_eq!(values, vec![0, 1, 2, 3, 1, 2]);
        assert_eq!(rule.eval(4).unwrap(), 1);
        assert_eq!(rule.horizon(), 5);
        assert!(rule.eval(6).is_err());
    }

    #[test]
    fn pow2_sixteen_term_table() {
        let pow2 = RuleSequence::pow2(16);
        let values: Vec<u64> = (0..=16).map(|n| pow2.eval(n).unwrap()).collect();
        assert_eq!(
            values,
            vec![0, 0, 1, 1, 3, 3, 3, 3, 7, 7, 7, 7, 7, 7, 7, 7, 15]
        );
    }

    #[test]
    fn regularity_checks() {
        assert!(RuleSequence::half(1000).is_regular(100).unwrap());
        assert!(RuleSequence::sqrt(1000).is_regular(16).unwrap());
        let pow2 = RuleSequence::pow2(1000);
        assert_eq!(pow2.first_irregularity(16).unwrap(), Some(4));
        assert!(pow2.is_weakly_increasing(16).unwrap());
    }

    #[test]
    fn weak_increase_witness() {
        let rule = RuleSequence::from_table(vec![0, 1, 0]).unwrap();
        assert_eq!(rule.first_decrease(2).unwrap(), Some(2));
    }

    #[test]
    fn regularize_pow2_matches_table() {
        let rule = RuleSequence::pow2(16).regularize(16).unwrap();
        let expected = vec![0, 0, 1, 1, 2, 3, 3, 3, 4, 5, 6, 7, 7, 7, 7, 7, 8];
        let values: Vec<u64> = (0..=16).map(|n| rule.eval(n).unwrap()).collect();
        assert_eq!(values, expected);
    }

    #[test]
    fn regularize_fixes_regular_rules() {
        let half = RuleSequence::half(8);
        let reg = half.regularize(8).unwrap();
        for n in 0..=8 {
            assert_eq!(reg.eval(n).unwrap(), half.eval(n).unwrap());
        }
    }

    #[test]
    fn regularize_small_table() {
        let rule = RuleSequence::from_table(vec![0, 0, 2, 2]).unwrap();
        let reg = rule.regularize(3).unwrap();
        let values: Vec<u64> = (0..=3).map(|n| reg.eval(n).unwrap()).collect();
        assert_eq!(values, vec![0, 0, 1, 2]);
    }

    #[test]
    fn regularize_rejects_decreasing_rules() {
        let rule = RuleSequence::from_table(vec![0, 1, 0]).unwrap();
        assert_eq!(
            rule.regularize(2),
            Err(Error::NotWeaklyIncreasing { witness: 2 })
        );
    }

    #[test]
    fn table_entries_bounded_by_index() {
        assert_eq!(
            RuleSequence::from_table(vec![0, 1, 2, 5]),
            Err(Error::InvalidRuleEntry { n: 3, value: 5 })
        );
    }

    #[test]
    fn parse_table_skips_comments_and_rejects_junk() {
        let rule = RuleSequence::parse_table("# rule\n0\n1\n\n1\n").unwrap();
        assert_eq!(rule.horizon(), 2);
        assert_eq!(rule.eval(2).unwrap(), 1);

        let err = RuleSequence::parse_table("0\nfoo\n").unwrap_err();
        assert!(matches!(err, Error::ParseLine { line: 2, .. }));
    }

    #[test]
    fn presets_respect_value_bound() {
        for rule in [
            RuleSequence::half(512),
            RuleSequence::sqrt(512),
            RuleSequence::pow2(512),
        ] {
            for n in 0..=512 {
                let v = rule.eval(n).unwrap();
                assert!(v <= n, "{rule}: f({n}) = {v} > {n}");
            }
        }
    }

    fn weakly_increasing_table() -> impl Strategy<Value = Vec<u64>> {
        prop::collection::vec(0u64..=1, 1..64).prop_map(|steps| {
            let mut table = vec![0u64];
            for (i, s) in steps.into_iter().enumerate() {
                // Occasional jumps of 2 keep some inputs non-regular.
                let jump = if i % 7 == 3 { s * 2 } else { s };
                let next = (table[i] + jump).min(i as u64 + 1);
                table.push(next);
            }
            table
        })
    }

    proptest! {
        #[test]
        fn regularize_is_idempotent(table in weakly_increasing_table()) {
            let rule = RuleSequence::from_table(table).unwrap();
            let upto = rule.horizon();
            let reg = rule.regularize(upto).unwrap();
            prop_assert!(reg.is_regular(upto).unwrap());
            prop_assert_eq!(reg.regularize(upto).unwrap(), reg.clone());
            for n in 0..=upto {
                prop_assert!(reg.eval(n).unwrap() <= rule.eval(n).unwrap());
            }
        }
    }
}
