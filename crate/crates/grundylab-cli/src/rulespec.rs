//! Parsing of rule specifications from the command line.
//!
//! Grammar: `half` | `sqrt` | `pow2` | `table:<path>` | `serial:<a1,a2,...>`.

use std::fs;

use grundylab::rule::RuleSequence;

use crate::CliError;

/// A rule as written on the command line, resolved lazily so the
/// horizon can depend on the command.
#[derive(Debug, Clone)]
pub enum RuleSpec {
    Half,
    Sqrt,
    Pow2,
    Table(String),
    Serial(Vec<u64>),
}

impl RuleSpec {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        match text {
            "half" => Ok(RuleSpec::Half),
            "sqrt" => Ok(RuleSpec::Sqrt),
            "pow2" => Ok(RuleSpec::Pow2),
            _ => {
                if let Some(path) = text.strip_prefix("table:") {
                    if path.is_empty() {
                        return Err(CliError::usage("table: requires a file path"));
                    }
                    return Ok(RuleSpec::Table(path.to_string()));
                }
                if let Some(list) = text.strip_prefix("serial:") {
                    let heaps = parse_u64_list(list).map_err(|pos| {
                        CliError::usage(format!(
                            "serial: expects comma-separated positive integers (item {pos})"
                        ))
                    })?;
                    return Ok(RuleSpec::Serial(heaps));
                }
                Err(CliError::usage(format!(
                    "unknown rule {text:?}: expected half | sqrt | pow2 | table:<path> | serial:<a1,a2,...>"
                )))
            }
        }
    }

    /// Builds the rule with the given horizon. Table and serial rules
    /// carry their own horizon (table length, sum of heaps).
    pub fn resolve(&self, horizon: u64) -> Result<RuleSequence, CliError> {
        match self {
            RuleSpec::Half => Ok(RuleSequence::half(horizon)),
            RuleSpec::Sqrt => Ok(RuleSequence::sqrt(horizon)),
            RuleSpec::Pow2 => Ok(RuleSequence::pow2(horizon)),
            RuleSpec::Table(path) => {
                let text = fs::read_to_string(path).map_err(|e| {
                    CliError::domain(format!("cannot read rule table {path}: {e}"))
                })?;
                RuleSequence::parse_table(&text)
                    .map_err(|e| CliError::domain(format!("rule table {path}: {e}")))
            }
            RuleSpec::Serial(heaps) => RuleSequence::serial(heaps.clone())
                .map_err(|e| CliError::domain(e.to_string())),
        }
    }
}

/// Parses "3,2,4" into numbers; the error is the 1-based item index.
pub fn parse_u64_list(text: &str) -> Result<Vec<u64>, usize> {
    let mut out = Vec::new();
    for (idx, item) in text.split(',').enumerate() {
        let value: u64 = item.trim().parse().map_err(|_| idx + 1)?;
        out.push(value);
    }
    if out.is_empty() {
        return Err(1);
    }
    Ok(out)
}

/// Default horizon cap for windows the tool chooses on its own, e.g.
/// when growing a window to fill an array. GRUNDYLAB_HORIZON overrides.
pub fn horizon_cap() -> u64 {
    const DEFAULT: u64 = 1 << 22;
    match std::env::var("GRUNDYLAB_HORIZON") {
        Ok(text) => text.parse().unwrap_or(DEFAULT),
        Err(_) => DEFAULT,
    }
}
