use std::fs;

use grundylab::fractal::{
    from_column_sums, sequence_from_triangle, triangle_of, SubadditiveTriangle,
};
use grundylab::maxnim::{canonical_rule, fast_grundy};
use grundylab::prefix::{Game, GrundyPrefix, Method};

use crate::render::{render_prefix, resolve_format, sequence_file_body, Format};
use crate::rulespec::{horizon_cap, parse_u64_list, RuleSpec};
use crate::{CliError, CommonOpts};

/// `--dim D` asks for D displayed rows: row i holds the counts of i
/// against values i+1 ..= D.
pub fn emit(common: &CommonOpts, dim: usize, out: Option<&str>) -> Result<(), CliError> {
    if dim == 0 {
        return Err(CliError::usage("--dim must be at least 1"));
    }
    let internal_dim = dim + 1;
    let spec = RuleSpec::parse(&common.rule)?;
    let cap = horizon_cap();
    let rule = spec.resolve(cap)?;

    let mut window = 256usize.min(cap as usize + 1);
    let triangle = loop {
        let g = fast_grundy(&rule, window)?;
        let full = triangle_of(g.values())?;
        if full.dim() >= internal_dim {
            break full.truncate(internal_dim)?;
        }
        if window as u64 >= rule.horizon() {
            return Err(CliError::domain(format!(
                "window of {window} terms only reaches dimension {}, need {internal_dim} \
                 (raise GRUNDYLAB_HORIZON)",
                full.dim()
            )));
        }
        window = (window * 2).min(rule.horizon() as usize + 1);
    };
    deliver(&triangle, out, resolve_format(common.format))
}

pub fn reconstruct(
    input: &str,
    n: Option<usize>,
    out: Option<&str>,
    format: Option<Format>,
) -> Result<(), CliError> {
    let text = fs::read_to_string(input)
        .map_err(|e| CliError::domain(format!("cannot read {input}: {e}")))?;
    let triangle = SubadditiveTriangle::from_json(&text)?;
    let n_terms = match n {
        Some(n) => n,
        None => triangle
            .column_sums()
            .last()
            .map_or(1, |&c| c as usize + 2),
    };
    let values = sequence_from_triangle(&triangle, n_terms)?;
    if let Some(path) = out {
        fs::write(path, sequence_file_body(&values))?;
    }
    // The canonical rule gives the reconstruction a rule provenance.
    let rule = canonical_rule(&values)?;
    let prefix = GrundyPrefix::new(values, rule, Game::Maximum, Method::FromTriangle)?;
    print!("{}", render_prefix(&prefix, resolve_format(format)));
    Ok(())
}

pub fn from_colsums(
    colsums: &str,
    out: Option<&str>,
    format: Option<Format>,
) -> Result<(), CliError> {
    let sums = parse_u64_list(colsums).map_err(|pos| {
        CliError::usage(format!(
            "--colsums expects comma-separated integers (item {pos})"
        ))
    })?;
    let triangle = from_column_sums(&sums)?;
    deliver(&triangle, out, resolve_format(format))
}

fn deliver(
    triangle: &SubadditiveTriangle,
    out: Option<&str>,
    format: Format,
) -> Result<(), CliError> {
    if let Some(path) = out {
        fs::write(path, triangle.to_json())?;
    }
    match format {
        Format::Json => println!("{}", triangle.to_json()),
        Format::Csv => {
            println!("i,j,value");
            for i in 0..triangle.dim() {
                for j in (i + 1)..triangle.dim() {
                    println!("{i},{j},{}", triangle.get(i, j));
                }
            }
        }
        Format::Table => print!("{}", render_triangle_text(triangle)),
    }
    Ok(())
}

/// Upper-triangular layout matching the usual display: row i indented
/// to start under column i+1.
pub fn render_triangle_text(triangle: &SubadditiveTriangle) -> String {
    let width = triangle
        .rows()
        .iter()
        .flatten()
        .map(|v| v.to_string().len())
        .max()
        .unwrap_or(1);
    let mut text = String::new();
    for (i, row) in triangle.rows().iter().enumerate() {
        let mut cells: Vec<String> = vec![" ".repeat(width); i];
        cells.extend(row.iter().map(|v| format!("{v:>width$}")));
        text.push_str(cells.join(" ").trim_end());
        text.push('\n');
    }
    text
}
