//! Output rendering: aligned tables for terminals, CSV for pipes, JSON
//! on request.

use std::io::IsTerminal;

use clap::ValueEnum;
use serde::Serialize;

use grundylab::prefix::{Game, GrundyPrefix};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Csv,
    Json,
}

/// Explicit --format wins; otherwise tables on a terminal, CSV when
/// redirected.
pub fn resolve_format(requested: Option<Format>) -> Format {
    requested.unwrap_or_else(|| {
        if std::io::stdout().is_terminal() {
            Format::Table
        } else {
            Format::Csv
        }
    })
}

#[derive(Serialize)]
struct SequenceDoc<'a> {
    rule: String,
    game: Game,
    method: grundylab::prefix::Method,
    n: usize,
    values: &'a [u64],
}

pub fn render_prefix(prefix: &GrundyPrefix, format: Format) -> String {
    match format {
        Format::Json => {
            let doc = SequenceDoc {
                rule: prefix.rule().to_string(),
                game: prefix.game(),
                method: prefix.method(),
                n: prefix.len(),
                values: prefix.values(),
            };
            let mut text = serde_json::to_string_pretty(&doc).expect("sequence serializes");
            text.push('\n');
            text
        }
        Format::Csv => {
            let mut out = String::from("n,value\n");
            for (n, &v) in prefix.values().iter().enumerate() {
                out.push_str(&format!("{n},{v}\n"));
            }
            out
        }
        Format::Table => {
            let label = match prefix.game() {
                Game::Maximum => "g",
                Game::Minimum => "h",
            };
            render_value_row(label, prefix.values())
        }
    }
}

/// Two-row blocks of index and value, sixteen columns per block.
pub fn render_value_row(label: &str, values: &[u64]) -> String {
    const PER_BLOCK: usize = 16;
    let mut out = String::new();
    for (block_no, block) in values.chunks(PER_BLOCK).enumerate() {
        let start = block_no * PER_BLOCK;
        let widths: Vec<usize> = block
            .iter()
            .enumerate()
            .map(|(i, v)| (start + i).to_string().len().max(v.to_string().len()))
            .collect();
        if block_no > 0 {
            out.push('\n');
        }
        let mut index_line = format!("{:>5}", "n");
        let mut value_line = format!("{label:>5}");
        for (i, (&v, w)) in block.iter().zip(&widths).enumerate() {
            index_line.push_str(&format!(" {:>w$}", start + i, w = w));
            value_line.push_str(&format!(" {v:>w$}", w = w));
        }
        out.push_str(&index_line);
        out.push('\n');
        out.push_str(&value_line);
        out.push('\n');
    }
    out
}

/// One integer per line: the canonical on-disk sequence format.
pub fn sequence_file_body(values: &[u64]) -> String {
    let mut out = String::new();
    for v in values {
        out.push_str(&v.to_string());
        out.push('\n');
    }
    out
}
