use std::collections::BTreeMap;
use std::io::Write;

use serde::Serialize;

use crate::methods::{evaluate, CliError, Evaluation, Method, Tolerances};
use hankel_mb::{Example, Params};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Row {
    pub q: f64,
    pub method: Method,
    pub value: Option<f64>,
    pub error: Option<f64>,
    /// `None` when the method failed or there is nothing to compare with.
    pub agree: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub message: Option<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Metadata {
    pub example: String,
    pub formula: &'static str,
    pub params: BTreeMap<&'static str, f64>,
    pub methods: Vec<Method>,
    pub contour_tol: f64,
    pub oracle_tol: f64,
    pub version: &'static str,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunReport {
    pub metadata: Metadata,
    pub rows: Vec<Row>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings_ms: Option<BTreeMap<String, f64>>,
}

pub fn params_map(p: &Params<f64>) -> BTreeMap<&'static str, f64> {
    let mut m = BTreeMap::new();
    if let Some(a) = p.a {
        m.insert("a", a);
    }
    if let Some(c) = p.c {
        m.insert("c", c);
    }
    if let Some(n) = p.n {
        m.insert("n", n as f64);
    }
    m
}

/// Reference for agreement: the closed form when it exists, else the oracle,
/// else the first method that succeeded.
fn reference(results: &[(Method, Result<Evaluation, CliError>)]) -> Option<(Method, Evaluation)> {
    for want in [Method::Closed, Method::Oracle, Method::Contour, Method::Series] {
        for (m, r) in results {
            if *m == want {
                if let Ok(ev) = r {
                    return Some((*m, ev.clone()));
                }
            }
        }
    }
    None
}

/// Runs every applicable method at every `q`. Failures are recorded per row.
pub fn compare(e: Example, p: &Params<f64>, q_grid: &[f64], tol: &Tolerances, timings: bool) -> RunReport {
    let methods: Vec<Method> = Method::ALL.iter().copied().filter(|m| m.applies_to(e)).collect();
    let mut rows = Vec::new();
    let mut times: BTreeMap<String, f64> = BTreeMap::new();
    for &q in q_grid {
        let results: Vec<(Method, Result<Evaluation, CliError>)> = methods
            .iter()
            .map(|&m| {
                let start = std::time::Instant::now();
                let r = evaluate(e, p, q, m, tol);
                *times.entry(m.name().to_string()).or_insert(0.0) += start.elapsed().as_secs_f64() * 1e3;
                (m, r)
            })
            .collect();
        let reference = reference(&results);
        let successes = results.iter().filter(|(_, r)| r.is_ok()).count();
        for (m, r) in results {
            rows.push(match r {
                Ok(ev) => {
                    let agree = match &reference {
                        Some((rm, rv)) if successes > 1 && *rm != m => {
                            Some((ev.value - rv.value).abs() <= ev.error + rv.error)
                        }
                        Some((_, _)) if successes > 1 => Some(true),
                        _ => None,
                    };
                    Row { q, method: m, value: Some(ev.value), error: Some(ev.error), agree, message: None, warnings: ev.warnings }
                }
                Err(err) => Row {
                    q,
                    method: m,
                    value: None,
                    error: None,
                    agree: None,
                    message: Some(err.message().to_string()),
                    warnings: Vec::new(),
                },
            });
        }
    }
    RunReport {
        metadata: Metadata {
            example: e.label().to_string(),
            formula: e.formula(),
            params: params_map(p),
            methods,
            contour_tol: tol.contour,
            oracle_tol: tol.oracle,
            version: env!("CARGO_PKG_VERSION"),
        },
        rows,
        timings_ms: timings.then_some(times),
    }
}

#[derive(Serialize)]
struct CsvRow {
    q: f64,
    method: &'static str,
    value: Option<f64>,
    error: Option<f64>,
    agree: String,
}

/// Header `q,method,value,error,agree`; failed cells carry `error: <message>`
/// in the `agree` column.
pub fn write_csv<W: Write>(report: &RunReport, out: W) -> csv::Result<()> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(out);
    w.write_record(["q", "method", "value", "error", "agree"])?;
    for r in &report.rows {
        let agree = match (&r.message, r.agree) {
            (Some(m), _) => format!("error: {m}"),
            (None, Some(b)) => b.to_string(),
            (None, None) => String::new(),
        };
        w.serialize(CsvRow {
            q: r.q,
            method: r.method.name(),
            value: r.value,
            error: r.error,
            agree,
        })?;
    }
    w.flush()?;
    Ok(())
}
