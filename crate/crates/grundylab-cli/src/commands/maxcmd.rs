use grundylab::maxnim;

use crate::render::{render_prefix, resolve_format};
use crate::{CliError, CommonOpts};

pub fn run(common: &CommonOpts, n: usize, method: &str) -> Result<(), CliError> {
    let rule = super::rule_for_window(common, n)?;
    let prefix = match method {
        "fast" => maxnim::fast_grundy(&rule, n)?,
        "naive" => maxnim::naive_grundy(&rule, n)?,
        "closed" => maxnim::closed_prefix(&rule, n)?,
        other => {
            return Err(CliError::usage(format!(
                "unknown method {other:?}: expected fast | naive | closed"
            )))
        }
    };
    print!("{}", render_prefix(&prefix, resolve_format(common.format)));
    Ok(())
}
