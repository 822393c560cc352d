//! Finite prefixes of Grundy sequences with their provenance.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::rule::RuleSequence;

/// Which restricted-Nim game produced a sequence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Game {
    /// At most f(m) stones may be removed from a pile of size m.
    Maximum,
    /// Strictly more than f(m) stones must be removed.
    Minimum,
}

/// How a prefix was computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Naive,
    Fast,
    ClosedForm,
    FromTriangle,
}

/// A finite prefix (g_0, ..., g_{N-1}) of a Grundy sequence.
///
/// Always starts with g_0 = 0 (a pile of size 0 has mex of the empty
/// set). Minimum-Nim prefixes are additionally regular: consecutive
/// values differ by 0 or 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrundyPrefix {
    values: Vec<u64>,
    rule: RuleSequence,
    game: Game,
    method: Method,
}

impl GrundyPrefix {
    pub fn new(values: Vec<u64>, rule: RuleSequence, game: Game, method: Method) -> Result<Self> {
        if let Some(&first) = values.first() {
            if first != 0 {
                return Err(Error::NonZeroStart { found: first });
            }
        }
        if game == Game::Minimum {
            for n in 1..values.len() {
                let (prev, cur) = (values[n - 1], values[n]);
                if cur < prev || cur - prev > 1 {
                    return Err(Error::NotRegular { witness: n as u64 });
                }
            }
        }
        Ok(Self {
            values,
            rule,
            game,
            method,
        })
    }

    pub fn values(&self) -> &[u64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<u64> {
        self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn get(&self, n: usize) -> Option<u64> {
        self.values.get(n).copied()
    }

    pub fn rule(&self) -> &RuleSequence {
        &self.rule
    }

    pub fn game(&self) -> Game {
        self.game
    }

    pub fn method(&self) -> Method {
        self.method
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_nonzero_start() {
        let rule = RuleSequence::half(8);
        let err = GrundyPrefix::new(vec![1, 0], rule, Game::Maximum, Method::Naive).unwrap_err();
        assert_eq!(err, Error::NonZeroStart { found: 1 });
    }

    #[test]
    fn minimum_game_prefixes_must_be_regular() {
        let rule = RuleSequence::half(8);
        let err = GrundyPrefix::new(vec![0, 2], rule.clone(), Game::Minimum, Method::Naive)
            .unwrap_err();
        assert_eq!(err, Error::NotRegular { witness: 1 });
        assert!(GrundyPrefix::new(vec![0, 1, 1, 2], rule, Game::Minimum, Method::Naive).is_ok());
    }
}
