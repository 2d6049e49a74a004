//! CSV writers and readers. Floats are written with fixed precision so that
//! reruns are byte-identical.

use std::path::Path;

use crate::analysis::CurvePoint;
use crate::error::{CliError, Result};
use crate::pipeline::ScanRow;

pub const SCAN_HEADER: &str =
    "geometry_label,coordinate,e_vqe,e_fci,error_mha,n_qubits,n_pauli_terms,n_groups,n_parameters,n_evaluations,converged,error";

fn opt(x: Option<f64>) -> String {
    x.map_or_else(String::new, |v| format!("{v:.6}"))
}

fn quote(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

pub fn scan_csv(rows: &[ScanRow]) -> String {
    let mut out = format!("{SCAN_HEADER}\n");
    for r in rows {
        let line = match &r.outcome {
            Ok(p) => format!(
                "{},{},{:.12},{:.12},{:.6},{},{},{},{},{},{},",
                quote(&p.geometry_label),
                opt(p.coordinate),
                p.e_vqe,
                p.e_fci,
                p.error_mha,
                p.n_qubits,
                p.n_pauli_terms,
                p.n_groups,
                p.n_parameters,
                p.n_evaluations,
                p.converged
            ),
            Err(e) => format!("{},{},,,,,,,,,,{}", quote(&r.label), opt(r.coordinate), quote(e)),
        };
        out.push_str(&line);
        out.push('\n');
    }
    out
}

/// Reads a curve from CSV. The label column is `label` or `geometry_label`;
/// the energy column is `energy_column` if given, else `energy`, else
/// `e_vqe`. Rows with an empty energy are skipped.
pub fn read_curve(path: &Path, energy_column: Option<&str>) -> Result<Vec<CurvePoint>> {
    let mut reader = csv::Reader::from_path(path).map_err(|e| match e.kind() {
        csv::ErrorKind::Io(_) => CliError::Io {
            path: path.to_path_buf(),
            source: std::io::Error::other(e.to_string()),
        },
        _ => CliError::Csv(e),
    })?;
    let headers = reader.headers()?.clone();
    let find = |names: &[&str]| names.iter().find_map(|n| headers.iter().position(|h| h == *n));
    let label = find(&["label", "geometry_label"]).ok_or_else(|| CliError::Usage(format!("{}: no label column", path.display())))?;
    let coordinate = find(&["coordinate"]);
    let energy = match energy_column {
        Some(c) => find(&[c]),
        None => find(&["energy", "e_vqe"]),
    }
    .ok_or_else(|| CliError::Usage(format!("{}: no energy column", path.display())))?;
    let mut points = Vec::new();
    for record in reader.records() {
        let record = record?;
        let e = record.get(energy).unwrap_or("").trim();
        if e.is_empty() {
            continue;
        }
        let parse = |s: &str| s.trim().parse::<f64>().map_err(|_| CliError::Usage(format!("{}: bad number {s:?}", path.display())));
        let coordinate = match coordinate.and_then(|c| record.get(c)).map(str::trim) {
            Some(s) if !s.is_empty() => Some(parse(s)?),
            _ => None,
        };
        points.push(CurvePoint { label: record.get(label).unwrap_or("").to_string(), coordinate, energy: parse(e)? });
    }
    Ok(points)
}

pub fn write_file(path: &Path, contents: &str) -> Result<()> {
    std::fs::write(path, contents).map_err(|source| CliError::Io { path: path.to_path_buf(), source })
}
