//! Verification suites over the library's named theorems and checks.
//! Exit code 0 on pass, 1 on fail; verdicts print in human or JSON form.

use serde::Serialize;
use serde_json::{json, Value};

use grundylab::error::Error;
use grundylab::fractal::{
    associated_array, check_fractal, check_interspersion_array, check_interspersion_prefix,
    parse_sequence, sequence_from_triangle, triangle_of, validate_triangle,
};
use grundylab::maxnim::{fast_grundy, naive_grundy};
use grundylab::minnim::{fast_min_grundy, min_from_max, PairTable};
use grundylab::rule::RuleSequence;
use grundylab::serialnim::{serial_grundy, serial_grundy_oracle, SerialPosition};

use crate::render::{resolve_format, Format};
use crate::rulespec::RuleSpec;
use crate::CliError;

#[derive(Serialize)]
struct VerifyDoc {
    check: String,
    source: String,
    window: usize,
    pass: bool,
    witness: Option<Value>,
    notes: Vec<String>,
}

pub fn run(
    what: &str,
    rule: Option<&str>,
    n: Option<usize>,
    seq: Option<&str>,
    kmax: usize,
    size_max: u64,
    format: Option<Format>,
) -> Result<(), CliError> {
    let doc = match what {
        "fractal" => fractal_check(rule, n, seq)?,
        "interspersion" => interspersion_check(rule, n, seq)?,
        "minimax" => minimax_check(rule, n)?,
        "bijection" => bijection_check(rule, n)?,
        "triangle-roundtrip" => triangle_roundtrip_check(rule, n)?,
        "serial-oracle" => serial_oracle_check(kmax, size_max)?,
        other => {
            return Err(CliError::usage(format!(
                "unknown check {other:?}: expected fractal | interspersion | minimax | bijection | triangle-roundtrip | serial-oracle"
            )))
        }
    };
    emit(&doc, resolve_format(format));
    if doc.pass {
        Ok(())
    } else {
        Err(CliError::VerifyFailed)
    }
}

fn emit(doc: &VerifyDoc, format: Format) {
    match format {
        Format::Json => {
            println!(
                "{}",
                serde_json::to_string_pretty(doc).expect("verdict serializes")
            );
        }
        _ => {
            let status = if doc.pass { "PASS" } else { "FAIL" };
            println!(
                "{} {} on {} (window {})",
                status, doc.check, doc.source, doc.window
            );
            if let Some(witness) = &doc.witness {
                println!("  witness: {witness}");
            }
            for note in &doc.notes {
                println!("  note: {note}");
            }
        }
    }
}

/// The sequence to check: an explicit file, or the Grundy sequence of
/// the rule (fast fill when the rule allows it, the mex oracle
/// otherwise).
fn sequence_source(
    rule: Option<&str>,
    n: Option<usize>,
    seq: Option<&str>,
) -> Result<(Vec<u64>, String), CliError> {
    if let Some(path) = seq {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::domain(format!("cannot read {path}: {e}")))?;
        let mut values = parse_sequence(&text)?;
        if let Some(n) = n {
            values.truncate(n);
        }
        return Ok((values, format!("file {path}")));
    }
    let rule_text = rule.ok_or_else(|| CliError::usage("this check needs --rule or --seq"))?;
    let n = n.ok_or_else(|| CliError::usage("this check needs --n"))?;
    let rule = RuleSpec::parse(rule_text)?.resolve(n.saturating_sub(1) as u64)?;
    let values = match fast_grundy(&rule, n) {
        Ok(prefix) => prefix.into_values(),
        Err(Error::NotWeaklyIncreasing { .. }) => naive_grundy(&rule, n)?.into_values(),
        Err(e) => return Err(e.into()),
    };
    Ok((values, rule.to_string()))
}

/// A regular rule for the Minimum-Nim side of the coupled checks,
/// regularizing when necessary (Maximum-Nim values are unchanged by
/// regularization; the Minimum game is only considered for the regular
/// form).
fn regular_rule(
    rule: Option<&str>,
    n: usize,
    notes: &mut Vec<String>,
) -> Result<(RuleSequence, String), CliError> {
    let rule_text = rule.ok_or_else(|| CliError::usage("this check needs --rule"))?;
    let rule = RuleSpec::parse(rule_text)?.resolve(n.saturating_sub(1) as u64)?;
    let source = rule.to_string();
    if rule.is_regular(n.saturating_sub(1) as u64)? {
        Ok((rule, source))
    } else {
        notes.push(format!(
            "rule {source} is not regular; using its regularization"
        ));
        Ok((rule.regularize(n.saturating_sub(1) as u64)?, source))
    }
}

fn fractal_check(
    rule: Option<&str>,
    n: Option<usize>,
    seq: Option<&str>,
) -> Result<VerifyDoc, CliError> {
    let (values, source) = sequence_source(rule, n, seq)?;
    let verdict = check_fractal(&values);
    let witness = if verdict.passed() {
        None
    } else {
        Some(json!({
            "f2": verdict.f2.witness(),
            "f3": verdict.f3.witness(),
        }))
    };
    Ok(VerifyDoc {
        check: "fractal".into(),
        source,
        window: verdict.window,
        pass: verdict.passed(),
        witness,
        notes: vec!["infinitive property is not decidable from a finite window".into()],
    })
}

fn interspersion_check(
    rule: Option<&str>,
    n: Option<usize>,
    seq: Option<&str>,
) -> Result<VerifyDoc, CliError> {
    let (values, source) = sequence_source(rule, n, seq)?;
    let prefix_verdict = check_interspersion_prefix(&values);
    let array_verdict = check_interspersion_array(&associated_array(&values));
    let pass = prefix_verdict.passed() && array_verdict.passed();
    let witness = if pass {
        None
    } else {
        Some(json!({
            "prefix": {
                "position": prefix_verdict.result.witness(),
                "pair": prefix_verdict.pair,
            },
            "array": {
                "position": array_verdict.result.witness(),
                "axiom": array_verdict.axiom,
                "rows": array_verdict.rows,
            },
        }))
    };
    let mut notes = Vec::new();
    if prefix_verdict.passed() != array_verdict.passed() {
        notes.push("prefix and array checkers disagree".into());
    }
    Ok(VerifyDoc {
        check: "interspersion".into(),
        source,
        window: values.len(),
        pass,
        witness,
        notes,
    })
}

fn minimax_check(rule: Option<&str>, n: Option<usize>) -> Result<VerifyDoc, CliError> {
    let n = n.ok_or_else(|| CliError::usage("minimax needs --n"))?;
    let mut notes = Vec::new();
    let (reg, source) = regular_rule(rule, n, &mut notes)?;
    let g = fast_grundy(&reg, n)?;
    let h = fast_min_grundy(&reg, n)?;
    let counted = min_from_max(&g);
    let witness = counted
        .values()
        .iter()
        .zip(h.values())
        .position(|(a, b)| a != b)
        .map(|pos| {
            json!({
                "n": pos,
                "zero_count": counted.values()[pos],
                "min_grundy": h.values()[pos],
            })
        });
    Ok(VerifyDoc {
        check: "minimax".into(),
        source,
        window: n,
        pass: witness.is_none(),
        witness,
        notes,
    })
}

fn bijection_check(rule: Option<&str>, n: Option<usize>) -> Result<VerifyDoc, CliError> {
    let n = n.ok_or_else(|| CliError::usage("bijection needs --n"))?;
    let mut notes = Vec::new();
    let (reg, source) = regular_rule(rule, n, &mut notes)?;
    let table = PairTable::build(&reg, n)?;
    let injective = table.injectivity_witness();
    let surjective = table.surjectivity_witness();
    let pass = injective.is_none() && surjective.is_none();
    let witness = if pass {
        None
    } else {
        Some(json!({
            "colliding_positions": injective,
            "missing_pair": surjective,
        }))
    };
    Ok(VerifyDoc {
        check: "bijection".into(),
        source,
        window: n,
        pass,
        witness,
        notes,
    })
}

fn triangle_roundtrip_check(rule: Option<&str>, n: Option<usize>) -> Result<VerifyDoc, CliError> {
    let n = n.ok_or_else(|| CliError::usage("triangle-roundtrip needs --n"))?;
    let rule_text = rule.ok_or_else(|| CliError::usage("triangle-roundtrip needs --rule"))?;
    let rule = RuleSpec::parse(rule_text)?.resolve(n.saturating_sub(1) as u64)?;
    let source = rule.to_string();
    let g = fast_grundy(&rule, n)?.into_values();
    let triangle = triangle_of(&g)?;

    let mut failures: Vec<Value> = Vec::new();
    let valid = validate_triangle(&triangle);
    if !valid.passed() {
        failures.push(json!({ "validation": valid.detail }));
    }
    let determined = triangle
        .column_sums()
        .last()
        .map_or(1, |&c| c as usize + 2);
    match sequence_from_triangle(&triangle, determined) {
        Ok(rebuilt) => {
            if rebuilt != g[..determined] {
                let pos = rebuilt
                    .iter()
                    .zip(&g[..determined])
                    .position(|(a, b)| a != b);
                failures.push(json!({ "sequence_mismatch_at": pos }));
            } else if triangle_of(&rebuilt)? != triangle {
                failures.push(json!({ "triangle_mismatch": true }));
            }
        }
        Err(e) => failures.push(json!({ "reconstruction_error": e.to_string() })),
    }
    match grundylab::fractal::from_column_sums(&triangle.column_sums()) {
        Ok(back) => {
            if back != triangle {
                failures.push(json!({ "column_sum_mismatch": true }));
            }
        }
        Err(e) => failures.push(json!({ "column_sum_error": e.to_string() })),
    }

    let pass = failures.is_empty();
    Ok(VerifyDoc {
        check: "triangle-roundtrip".into(),
        source,
        window: n,
        pass,
        witness: if pass { None } else { Some(json!(failures)) },
        notes: vec![format!(
            "triangle dimension {}, determines {determined} terms",
            triangle.dim()
        )],
    })
}

fn serial_oracle_check(kmax: usize, size_max: u64) -> Result<VerifyDoc, CliError> {
    let mut checked = 0usize;
    let mut witness = None;
    'outer: for k in 1..=kmax {
        let mut heaps = vec![1u64; k];
        loop {
            let position = SerialPosition::new(heaps.clone())?;
            let closed = serial_grundy(&position);
            let oracle = serial_grundy_oracle(&position)?;
            let in_range = closed == heaps[0] || closed + 1 == heaps[0];
            if closed != oracle || !in_range {
                witness = Some(json!({
                    "heaps": heaps,
                    "closed_form": closed,
                    "oracle": oracle,
                }));
                break 'outer;
            }
            checked += 1;
            let mut idx = 0;
            loop {
                if idx == k {
                    break;
                }
                heaps[idx] += 1;
                if heaps[idx] <= size_max {
                    break;
                }
                heaps[idx] = 1;
                idx += 1;
            }
            if idx == k {
                break;
            }
        }
    }
    Ok(VerifyDoc {
        check: "serial-oracle".into(),
        source: format!("all positions with k <= {kmax}, sizes <= {size_max}"),
        window: checked,
        pass: witness.is_none(),
        witness,
        notes: vec![format!("{checked} positions compared")],
    })
}
