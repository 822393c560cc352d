pub mod arrays;
pub mod bench;
pub mod maxcmd;
pub mod mincmd;
pub mod serial;
pub mod triangle;
pub mod verify;

use grundylab::rule::RuleSequence;

use crate::rulespec::RuleSpec;
use crate::{CliError, CommonOpts};

/// Resolves the rule in `common` with a horizon large enough for an
/// n-term window.
pub fn rule_for_window(common: &CommonOpts, n_terms: usize) -> Result<RuleSequence, CliError> {
    let spec = RuleSpec::parse(&common.rule)?;
    spec.resolve(n_terms.saturating_sub(1) as u64)
}
