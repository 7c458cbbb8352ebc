use std::path::{Path, PathBuf};

use serde::Serialize;
use valcalc_core::positivity::{
    semicontinuity_scan, CertificateKind, FamilyCertificate, Invariant, PointKind, ScanReport,
    ScanRow,
};
use valcalc_core::{format_rational, Extended};

use crate::error::CliError;
use crate::grid::Grid;
use crate::io::{to_json, Q};

pub const HEADER: [&str; 8] = ["w1", "w2", "epsilon", "omega", "dxi_u1", "dxi_u2", "m_used", "certificate"];

fn invariant_name(inv: Invariant) -> &'static str {
    match inv {
        Invariant::Epsilon => "eps",
        Invariant::Omega => "omega",
        Invariant::Dxi(_) => "dxi",
    }
}

fn kind_name(kind: &CertificateKind) -> &'static str {
    match kind {
        CertificateKind::Semicontinuous => "semicontinuous",
        CertificateKind::Counterexample => "counterexample",
        CertificateKind::Inconclusive => "inconclusive",
    }
}

/// The per-row label: the family verdict for rows of a family, otherwise
/// how `ε` was obtained at the point.
fn row_label(row: &ScanRow) -> &'static str {
    match (&row.kind, row.routes_agree) {
        (PointKind::Interior, true) => "routes_agree",
        (PointKind::Interior, false) => "routes_disagree",
        (PointKind::Boundary, _) => "model_only",
        (PointKind::Trivial, _) => "trivial",
    }
}

#[derive(Serialize)]
struct FamilySummary {
    limit: [Q; 2],
    direction: [Q; 2],
    len: usize,
    value_at_limit: String,
    tail_limit: Option<Q>,
    certificate: &'static str,
}

#[derive(Serialize)]
struct Summary<'a> {
    grid: &'a str,
    invariant: &'static str,
    rows: usize,
    routes_disagree: usize,
    families: Vec<FamilySummary>,
}

fn pair(w: &[valcalc_core::Rational; 2]) -> [Q; 2] {
    [Q(w[0].clone()), Q(w[1].clone())]
}

fn family_summary(c: &FamilyCertificate) -> FamilySummary {
    FamilySummary {
        limit: pair(&c.family.limit),
        direction: pair(&c.family.direction),
        len: c.family.len,
        value_at_limit: c.value_at_limit.to_string(),
        tail_limit: c.tail_limit.clone().map(Q),
        certificate: kind_name(&c.kind),
    }
}

pub fn summary_path(out: &Path) -> PathBuf {
    let mut s = out.as_os_str().to_owned();
    s.push(".summary.json");
    PathBuf::from(s)
}

fn ext(e: &Extended) -> String {
    e.to_string()
}

pub fn run(grid: &Grid, spec: &str, invariant: Invariant, out: &Path) -> Result<ScanReport, CliError> {
    let report = semicontinuity_scan(&grid.points, &grid.families, invariant)?;
    let mut labels: Vec<&'static str> = report.rows.iter().map(row_label).collect();
    let mut offset = grid.points.len();
    for cert in &report.certificates {
        for label in &mut labels[offset..=offset + cert.family.len] {
            *label = kind_name(&cert.kind);
        }
        offset += cert.family.len + 1;
    }

    let io_err = |e: &dyn std::fmt::Display| CliError::Io(format!("{}: {e}", out.display()));
    let mut writer = csv::Writer::from_path(out).map_err(|e| io_err(&e))?;
    writer.write_record(HEADER).map_err(|e| io_err(&e))?;
    for (row, label) in report.rows.iter().zip(&labels) {
        writer
            .write_record([
                format_rational(&row.w[0]),
                format_rational(&row.w[1]),
                format_rational(&row.epsilon),
                format_rational(&row.omega),
                ext(&row.dxi_u1),
                ext(&row.dxi_u2),
                format_rational(&row.m_used),
                (*label).to_string(),
            ])
            .map_err(|e| io_err(&e))?;
    }
    writer.flush().map_err(|e| io_err(&e))?;

    let summary = Summary {
        grid: spec,
        invariant: invariant_name(invariant),
        rows: report.rows.len(),
        routes_disagree: report.rows.iter().filter(|r| !r.routes_agree).count(),
        families: report.certificates.iter().map(family_summary).collect(),
    };
    let path = summary_path(out);
    std::fs::write(&path, to_json(&summary))
        .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    Ok(report)
}
