//! Rendering for the three output formats. Integers are decimal strings in JSON.

use clap::ValueEnum;
use num_bigint::BigInt;
use serde_json::{json, Value};

use permseq::io::{matrix_to_csv, matrix_to_json};
use permseq::{ContractionTrace, Family, Matrix, SequenceKind, VerificationReport};

use crate::BenchRow;

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Plain,
}

fn strings(values: &[BigInt]) -> Vec<String> {
    values.iter().map(ToString::to_string).collect()
}

pub fn sequence(
    format: Format,
    kind: SequenceKind,
    from: u64,
    to: u64,
    terms: &[BigInt],
) -> String {
    match format {
        Format::Csv => strings(terms).join(","),
        Format::Plain => strings(terms).join("\n"),
        Format::Json => json!({
            "kind": kind.name(),
            "from": from,
            "to": to,
            "terms": strings(terms),
        })
        .to_string(),
    }
}

pub fn matrix(format: Format, m: &Matrix) -> String {
    match format {
        Format::Csv => matrix_to_csv(m),
        Format::Plain => m.to_string(),
        Format::Json => matrix_to_json(m),
    }
}

pub fn value(
    format: Format,
    quantity: &str,
    method: &str,
    value: &BigInt,
    trace: Option<&ContractionTrace>,
) -> String {
    match format {
        Format::Json => {
            let mut doc = json!({
                "quantity": quantity,
                "method": method,
                "value": value.to_string(),
            });
            if let Some(t) = trace {
                doc["trace"] = serde_json::to_value(t).expect("trace serializes");
            }
            doc.to_string()
        }
        Format::Csv | Format::Plain => match trace {
            Some(t) => format!("{value}\n{}", t.to_json()),
            None => value.to_string(),
        },
    }
}

pub fn reports(format: Format, reports: &[VerificationReport], single: bool) -> String {
    match format {
        Format::Json => {
            if single {
                reports[0].to_json()
            } else {
                let all: Vec<Value> = reports
                    .iter()
                    .map(|r| serde_json::to_value(r).expect("report serializes"))
                    .collect();
                json!({
                    "passed": reports.iter().all(|r| r.passed),
                    "reports": all,
                })
                .to_string()
            }
        }
        Format::Csv => {
            let mut lines = vec![
                "suite,max_n,effective_max_n,engine,checks_run,passed,failure_n,expected,actual"
                    .to_string(),
            ];
            for r in reports {
                let f = r.first_failure.as_ref();
                lines.push(format!(
                    "{},{},{},{},{},{},{},{},{}",
                    r.suite,
                    r.max_n,
                    r.effective_max_n,
                    r.engine.map(|e| e.to_string()).unwrap_or_default(),
                    r.checks_run,
                    r.passed,
                    f.map(|f| f.n.to_string()).unwrap_or_default(),
                    f.map(|f| f.expected.to_string()).unwrap_or_default(),
                    f.and_then(|f| f.actual.as_ref())
                        .map(ToString::to_string)
                        .unwrap_or_default(),
                ));
            }
            lines.join("\n")
        }
        Format::Plain => reports
            .iter()
            .map(|r| {
                let mut line = format!(
                    "{} {}: max_n={} effective_max_n={} engine={} checks={}",
                    if r.passed { "PASS" } else { "FAIL" },
                    r.suite,
                    r.max_n,
                    r.effective_max_n,
                    r.engine
                        .map(|e| e.to_string())
                        .unwrap_or_else(|| "-".into()),
                    r.checks_run,
                );
                if let Some(f) = &r.first_failure {
                    line.push_str(&format!(
                        " first_failure: n={} engine={} expected={} actual={}",
                        f.n,
                        f.engine,
                        f.expected,
                        f.actual
                            .as_ref()
                            .map(ToString::to_string)
                            .or_else(|| f.error.clone())
                            .unwrap_or_default()
                    ));
                }
                line
            })
            .collect::<Vec<_>>()
            .join("\n"),
    }
}

pub fn bench(format: Format, family: Family, rows: &[BenchRow]) -> String {
    match format {
        Format::Json => {
            let rows: Vec<Value> = rows
                .iter()
                .map(|r| {
                    json!({
                        "method": r.method,
                        "n": r.n,
                        "median_wall_time_ns": r.median.as_nanos() as u64,
                        "value": r.value.to_string(),
                    })
                })
                .collect();
            json!({ "family": family.name(), "rows": rows }).to_string()
        }
        Format::Csv => {
            let mut lines = vec!["method,n,median_wall_time_ns,value".to_string()];
            lines.extend(
                rows.iter()
                    .map(|r| format!("{},{},{},{}", r.method, r.n, r.median.as_nanos(), r.value)),
            );
            lines.join("\n")
        }
        Format::Plain => rows
            .iter()
            .map(|r| {
                format!(
                    "{:<12} n={:<5} median={:>12.3?} value={}",
                    r.method, r.n, r.median, r.value
                )
            })
            .collect::<Vec<_>>()
            .join("\n"),
    }
}
