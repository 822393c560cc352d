use std::fs;

use serde_json::json;

use grundylab::minnim::build_arrays;

use crate::render::{resolve_format, Format};
use crate::rulespec::{horizon_cap, RuleSpec};
use crate::{CliError, CommonOpts};

pub fn run(
    common: &CommonOpts,
    rows: usize,
    cols: usize,
    justify: &str,
    out: Option<&str>,
) -> Result<(), CliError> {
    if !matches!(justify, "offset" | "left") {
        return Err(CliError::usage(format!(
            "unknown justification {justify:?}: expected offset | left"
        )));
    }
    let rule = RuleSpec::parse(&common.rule)?.resolve(horizon_cap())?;
    let (prime, left) = build_arrays(&rule, rows, cols)?;
    if let Some(path) = out {
        // Files always carry the offset form; it is unambiguous about
        // the blank lower-left region.
        fs::write(path, serde_json::to_string_pretty(&prime).expect("array serializes"))?;
    }
    match (resolve_format(common.format), justify) {
        (Format::Json, "offset") => println!(
            "{}",
            serde_json::to_string_pretty(&prime).expect("array serializes")
        ),
        (Format::Json, _) => println!(
            "{}",
            json!({ "rule": rule.to_string(), "rows": left.rows() })
        ),
        (Format::Csv, "offset") => {
            println!("value,column,entry");
            for row in &prime.rows {
                for (idx, entry) in row.entries.iter().enumerate() {
                    println!("{},{},{entry}", row.value, row.offset + idx as u64);
                }
            }
        }
        (Format::Csv, _) => {
            println!("value,column,entry");
            for (value, row) in left.rows().iter().enumerate() {
                for (column, entry) in row.iter().enumerate() {
                    println!("{value},{column},{entry}");
                }
            }
        }
        (Format::Table, "offset") => print!("{}", prime.render_text()),
        (Format::Table, _) => {
            let width = left
                .rows()
                .iter()
                .flatten()
                .map(|e| e.to_string().len())
                .max()
                .unwrap_or(1);
            for row in left.rows() {
                let line: Vec<String> = row.iter().map(|e| format!("{e:>width$}")).collect();
                println!("{}", line.join(" "));
            }
        }
    }
    Ok(())
}
