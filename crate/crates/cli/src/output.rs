use std::io;
use std::process::ExitCode;

use serde_json::{json, Map, Value};

use da_geom::cayley_klein::{ConvergenceTable, DistanceProbe};
use da_geom::da_core::{Point, SlopeLine};
use da_geom::scalar::{format_rat, Rat};

use crate::args::Format;
use crate::CliError;

pub type Record = Vec<(&'static str, Value)>;

/// Exact rationals travel as `"p/q"` strings.
pub fn r(x: &Rat) -> Value {
    Value::String(format_rat(x))
}

pub fn point_json(p: &Point<Rat>) -> Value {
    json!({ "x": r(&p.x), "y": r(&p.y) })
}

pub fn line_json(l: &SlopeLine<Rat>) -> Value {
    match l {
        SlopeLine::Sloped { slope, intercept } => json!({ "kind": "sloped", "slope": r(slope), "intercept": r(intercept) }),
        SlopeLine::Singular { x0 } => json!({ "kind": "singular", "x0": r(x0) }),
    }
}

/// 17 significant digits, enough to round-trip any `f64`.
fn f17(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        x.to_string()
    }
}

fn cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::Number(n) => n.as_f64().map(f17).unwrap_or_else(|| n.to_string()),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn write_csv(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> Result<(), CliError> {
    let mut w = csv::Writer::from_writer(io::stdout().lock());
    let io_err = |e: csv::Error| CliError::Usage(format!("cannot write csv: {e}"));
    w.write_record(header).map_err(io_err)?;
    for row in rows {
        w.write_record(&row).map_err(io_err)?;
    }
    w.flush().map_err(|e| CliError::Usage(format!("cannot write csv: {e}")))
}

pub fn emit_record(fmt: Format, record: Record) -> Result<ExitCode, CliError> {
    match fmt {
        Format::Json => {
            let map: Map<String, Value> = record.into_iter().map(|(k, v)| (k.to_string(), v)).collect();
            println!("{}", serde_json::to_string_pretty(&Value::Object(map)).expect("serializable"));
        }
        Format::Csv => {
            let header: Vec<&str> = record.iter().map(|(k, _)| *k).collect();
            write_csv(&header, [record.iter().map(|(_, v)| cell(v)).collect()])?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

/// A convergence table; distance probes add their extra columns.
pub fn emit_table(fmt: Format, table: &ConvergenceTable, probe: Option<&DistanceProbe>) -> Result<ExitCode, CliError> {
    for s in &table.skipped {
        eprintln!("skipped t = {}: {}", f17(s.t), s.reason);
    }
    match fmt {
        Format::Json => {
            let v = match probe {
                Some(p) => serde_json::to_value(p),
                None => serde_json::to_value(table),
            };
            println!("{}", serde_json::to_string_pretty(&v.expect("serializable")).expect("serializable"));
        }
        Format::Csv => {
            let mut header = vec!["t", "value", "error", "ratio"];
            if probe.is_some() {
                header.extend(["d_t", "shifted", "alpha_t", "beta_t", "candidate"]);
            }
            let rows = table.rows.iter().map(|row| {
                let mut cells = vec![
                    f17(row.t),
                    f17(row.value),
                    f17(row.error),
                    row.ratio_to_previous.map(f17).unwrap_or_default(),
                ];
                if let Some(p) = probe {
                    let extra = p.rows.iter().find(|x| x.t == row.t).expect("probe rows share the schedule");
                    cells.extend([extra.d_t, extra.shifted, extra.alpha_t, extra.beta_t, extra.candidate].map(f17));
                }
                cells
            });
            write_csv(&header, rows)?;
        }
    }
    Ok(ExitCode::SUCCESS)
}
