//! Correctness-gated timing: methods are compared for equality first; a
//! fast wrong answer must never produce a report.

use std::time::Instant;

use serde::Serialize;

use grundylab::maxnim::{closed_prefix, fast_grundy, naive_grundy};
use grundylab::prefix::GrundyPrefix;
use grundylab::rule::RuleSequence;

use crate::render::{resolve_format, Format};
use crate::{CliError, CommonOpts};

#[derive(Serialize)]
struct MethodTiming {
    method: String,
    seconds: f64,
    terms_per_sec: f64,
    speedup_vs_slowest: f64,
}

#[derive(Serialize)]
struct BenchDoc {
    rule: String,
    n: usize,
    values_equal: bool,
    results: Vec<MethodTiming>,
}

fn compute(method: &str, rule: &RuleSequence, n: usize) -> Result<GrundyPrefix, CliError> {
    match method {
        "fast" => Ok(fast_grundy(rule, n)?),
        "naive" => Ok(naive_grundy(rule, n)?),
        "closed" => Ok(closed_prefix(rule, n)?),
        other => Err(CliError::usage(format!(
            "unknown method {other:?}: expected fast | naive | closed"
        ))),
    }
}

pub fn run(common: &CommonOpts, n: usize, methods: &str) -> Result<(), CliError> {
    let rule = super::rule_for_window(common, n)?;
    let methods: Vec<&str> = methods.split(',').map(str::trim).collect();
    if methods.len() < 1 {
        return Err(CliError::usage("--methods needs at least one method"));
    }

    // Correctness gate: all methods must produce identical values.
    let mut reference: Option<(String, GrundyPrefix)> = None;
    for &method in &methods {
        let prefix = compute(method, &rule, n)?;
        if let Some((ref_name, ref_prefix)) = &reference {
            if prefix.values() != ref_prefix.values() {
                eprintln!("method {method} disagrees with {ref_name}; no timings reported");
                return Err(CliError::VerifyFailed);
            }
        } else {
            reference = Some((method.to_string(), prefix));
        }
    }

    let mut timings = Vec::new();
    for &method in &methods {
        let start = Instant::now();
        let prefix = compute(method, &rule, n)?;
        let seconds = start.elapsed().as_secs_f64();
        std::hint::black_box(prefix.values());
        timings.push((method.to_string(), seconds));
    }
    let slowest = timings
        .iter()
        .map(|(_, s)| *s)
        .fold(f64::MIN, f64::max)
        .max(f64::MIN_POSITIVE);

    let doc = BenchDoc {
        rule: rule.to_string(),
        n,
        values_equal: true,
        results: timings
            .into_iter()
            .map(|(method, seconds)| MethodTiming {
                method,
                seconds,
                terms_per_sec: n as f64 / seconds.max(f64::MIN_POSITIVE),
                speedup_vs_slowest: slowest / seconds.max(f64::MIN_POSITIVE),
            })
            .collect(),
    };

    match resolve_format(common.format) {
        Format::Json => println!(
            "{}",
            serde_json::to_string_pretty(&doc).expect("report serializes")
        ),
        Format::Csv => {
            println!("method,seconds,terms_per_sec,speedup_vs_slowest");
            for r in &doc.results {
                println!(
                    "{},{:.6},{:.0},{:.2}",
                    r.method, r.seconds, r.terms_per_sec, r.speedup_vs_slowest
                );
            }
        }
        Format::Table => {
            println!("rule {} | {} terms | values verified equal", doc.rule, doc.n);
            println!("{:<8} {:>12} {:>16} {:>10}", "method", "seconds", "terms/sec", "speedup");
            for r in &doc.results {
                println!(
                    "{:<8} {:>12.6} {:>16.0} {:>10.2}",
                    r.method, r.seconds, r.terms_per_sec, r.speedup_vs_slowest
                );
            }
        }
    }
    Ok(())
}
