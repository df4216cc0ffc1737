//! Structured reports. The JSON tree is the primary form; the text form is
//! rendered from it, so both carry the same content.

use std::fmt::Write as _;

use atiyah_core::atiyah::{Certificate, Cocycle, OperatorMatrix, Verdict};
use atiyah_core::clean::{CleanVerdict, NotCleanReason};
use atiyah_core::ring::{Poly, Rational};
use serde_json::{json, Map, Value};

/// How a command's result maps onto the exit status.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    /// Vanishes, Clean, all checks passed.
    Positive,
    /// NonVanishing, NotClean, a failed check.
    Negative,
    Unknown,
}

impl Outcome {
    pub fn exit_code(self) -> i32 {
        match self {
            Outcome::Positive => 0,
            Outcome::Negative => 1,
            Outcome::Unknown => 2,
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub tree: Value,
    pub outcome: Outcome,
}

impl Report {
    pub fn new(command: &str, body: Map<String, Value>, outcome: Outcome) -> Report {
        let mut tree = Map::new();
        tree.insert(
            "engine".into(),
            json!({"name": env!("CARGO_PKG_NAME"), "version": env!("CARGO_PKG_VERSION")}),
        );
        tree.insert("command".into(), command.into());
        tree.extend(body);
        Report {
            tree: Value::Object(tree),
            outcome,
        }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.tree).expect("serializable");
                s.push('\n');
                s
            }
            Format::Text => {
                let mut s = String::new();
                text(&mut s, &self.tree, 0);
                s
            }
        }
    }
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(a) if a.iter().all(|x| scalar(x).is_some() && !x.is_array()) => Some(format!(
            "({})",
            a.iter().map(|x| scalar(x).unwrap()).collect::<Vec<_>>().join(", ")
        )),
        _ => None,
    }
}

fn is_matrix(m: &Map<String, Value>) -> bool {
    ["rows", "cols", "entries"].iter().all(|k| m.contains_key(*k))
}

fn table(out: &mut String, m: &Map<String, Value>, indent: usize) {
    let strings = |v: &Value| -> Vec<String> {
        v.as_array()
            .map(|a| a.iter().map(|x| scalar(x).unwrap_or_default()).collect())
            .unwrap_or_default()
    };
    let rows = strings(&m["rows"]);
    let cols = strings(&m["cols"]);
    let entries: Vec<Vec<String>> = m["entries"]
        .as_array()
        .map(|a| a.iter().map(strings).collect())
        .unwrap_or_default();
    let pad = " ".repeat(indent);
    let _ = writeln!(out, "{pad}{} x {}", rows.len(), cols.len());
    let label_w = rows.iter().map(String::len).max().unwrap_or(0);
    let widths: Vec<usize> = (0..cols.len())
        .map(|c| {
            entries
                .iter()
                .map(|r| r.get(c).map_or(0, String::len))
                .chain([cols[c].len()])
                .max()
                .unwrap_or(0)
        })
        .collect();
    if !cols.is_empty() {
        let _ = write!(out, "{pad}{:label_w$}", "");
        for (c, w) in cols.iter().zip(&widths) {
            let _ = write!(out, "  {c:>w$}");
        }
        out.push('\n');
    }
    for (label, row) in rows.iter().zip(&entries) {
        let _ = write!(out, "{pad}{label:label_w$}");
        for (e, w) in row.iter().zip(&widths) {
            let _ = write!(out, "  {e:>w$}");
        }
        out.push('\n');
    }
}

fn text(out: &mut String, v: &Value, indent: usize) {
    let pad = " ".repeat(indent);
    match v {
        Value::Object(m) => {
            for (k, child) in m {
                match scalar(child) {
                    Some(s) => {
                        let _ = writeln!(out, "{pad}{k}: {s}");
                    }
                    None => {
                        let _ = writeln!(out, "{pad}{k}:");
                        match child {
                            Value::Object(cm) if is_matrix(cm) => table(out, cm, indent + 2),
                            _ => text(out, child, indent + 2),
                        }
                    }
                }
            }
        }
        Value::Array(a) => {
            for item in a {
                match scalar(item) {
                    Some(s) => {
                        let _ = writeln!(out, "{pad}- {s}");
                    }
                    None => {
                        let _ = writeln!(out, "{pad}-");
                        text(out, item, indent + 2);
                    }
                }
            }
        }
        other => {
            let _ = writeln!(out, "{pad}{}", scalar(other).unwrap_or_default());
        }
    }
}

pub fn rational(q: &Rational) -> Value {
    Value::String(q.to_string())
}

pub fn point(p: &[Rational]) -> Value {
    Value::Array(p.iter().map(rational).collect())
}

pub fn poly(p: &Poly, vars: &[String]) -> Value {
    Value::String(p.to_string_with(vars))
}

pub fn certificate(c: &Certificate, vars: &[String], ops: &atiyah_core::atiyah::Operators) -> Value {
    let coefficients: Vec<Value> = c
        .coefficients
        .iter()
        .map(|(at, f)| {
            json!({
                "operator": at.op.name(),
                "column": at.col,
                "label": ops.get(at.op).cols()[at.col].to_string(),
                "coefficient": f.to_string_with(vars),
            })
        })
        .collect();
    json!({"degree": c.degree, "coefficients": coefficients})
}

pub fn verdict(v: &Verdict, vars: &[String], ops: &atiyah_core::atiyah::Operators) -> Value {
    let mut m = Map::new();
    m.insert("kind".into(), v.kind().into());
    match v {
        Verdict::Vanishes { certificate: c } => {
            m.insert("certificate".into(), certificate(c, vars, ops));
        }
        Verdict::NonVanishing {
            witness_point,
            jet_order,
        } => {
            m.insert("witness_point".into(), point(witness_point));
            m.insert("jet_order".into(), (*jet_order).into());
        }
        Verdict::Unknown {
            degree_bound_tried,
            jet_order_tried,
        } => {
            m.insert("degree_bound_tried".into(), (*degree_bound_tried).into());
            m.insert("jet_order_tried".into(), (*jet_order_tried).into());
        }
    }
    Value::Object(m)
}

pub fn clean_verdict(v: &CleanVerdict) -> Value {
    match v {
        CleanVerdict::NotClean {
            witness_point,
            reason,
        } => {
            let reason = match reason {
                NotCleanReason::RankEquation { dim_z, rank_ds, n } => {
                    json!({"kind": "RankEquation", "dim_z": dim_z, "rank_ds": rank_ds, "n": n})
                }
                NotCleanReason::DeclaredSingular {
                    chart_a,
                    chart_b,
                    dims,
                } => json!({
                    "kind": "DeclaredSingular",
                    "charts": [chart_a, chart_b],
                    "dims": [dims.0, dims.1],
                }),
                NotCleanReason::TangentIntersection {
                    claimed_dim,
                    tangent_dim,
                } => json!({
                    "kind": "TangentIntersection",
                    "claimed_dim": claimed_dim,
                    "tangent_dim": tangent_dim,
                }),
                NotCleanReason::DeclaredNonManifold => json!({"kind": "DeclaredNonManifold"}),
            };
            json!({"kind": v.kind(), "witness_point": point(witness_point), "reason": reason})
        }
        _ => json!({"kind": v.kind()}),
    }
}

pub fn cocycle(c: &Cocycle, vars: &[String]) -> Value {
    let entries: Vec<Value> = c
        .labels()
        .iter()
        .zip(c.values())
        .map(|(label, p)| json!({"entry": label.to_string(), "value": p.to_string_with(vars)}))
        .collect();
    json!({
        "zero": c.is_zero(),
        "nonzero_entries": c.values().iter().filter(|p| !p.is_zero()).count(),
        "entries": entries,
    })
}

pub fn matrix(m: &OperatorMatrix, vars: &[String]) -> Value {
    let rows: Vec<String> = m.rows().iter().map(ToString::to_string).collect();
    let cols: Vec<String> = m.cols().iter().map(ToString::to_string).collect();
    let entries: Vec<Vec<String>> = m
        .entries()
        .iter()
        .map(|r| r.iter().map(|p| p.to_string_with(vars)).collect())
        .collect();
    let symbols: Vec<Vec<String>> = m
        .symbols()
        .iter()
        .map(|r| r.iter().map(ToString::to_string).collect())
        .collect();
    json!({
        "name": m.op().name(),
        "shape": [m.nrows(), m.ncols()],
        "symbolic": {"rows": rows, "cols": cols, "entries": symbols},
        "matrix": {"rows": rows, "cols": cols, "entries": entries},
    })
}
