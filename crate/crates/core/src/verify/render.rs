use std::fmt::Write as _;

use super::{ProbeReport, ReportRow};
use crate::error::Result;
use crate::numfmt::{format_sig, round_sig};

fn opt(x: Option<f64>, digits: usize) -> String {
    x.map(|v| format_sig(v, digits)).unwrap_or_default()
}

/// Rows with every number rounded to `digits` significant digits.
fn rounded(rows: &[ReportRow], digits: usize) -> Vec<ReportRow> {
    rows.iter()
        .map(|r| ReportRow {
            alpha: round_sig(r.alpha, digits),
            published: round_sig(r.published, digits),
            computed: r.computed.map(|v| round_sig(v, digits)),
            abs_delta: r.abs_delta.map(|v| round_sig(v, digits)),
            ..r.clone()
        })
        .collect()
}

/// JSON array of report rows, numbers at 12 significant digits.
pub fn render_json(rows: &[ReportRow]) -> String {
    let mut s = serde_json::to_string_pretty(&rounded(rows, 12)).expect("report rows serialize");
    s.push('\n');
    s
}

/// CSV with a header row, numbers at 12 significant digits.
pub fn render_csv(rows: &[ReportRow]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record([
        "table_id",
        "alpha",
        "published",
        "computed",
        "abs_delta",
        "status",
        "note",
    ])
    .expect("writing to memory");
    for r in rows {
        w.write_record([
            r.table_id.name().to_string(),
            format_sig(r.alpha, 12),
            format_sig(r.published, 12),
            opt(r.computed, 12),
            opt(r.abs_delta, 12),
            r.status.name().to_string(),
            r.note.clone(),
        ])
        .expect("writing to memory");
    }
    let bytes = w.into_inner().expect("flushing to memory");
    String::from_utf8(bytes).expect("csv output is utf-8")
}

/// Aligned plain-text table, numbers at 6 significant digits.
pub fn render_text(rows: &[ReportRow]) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{:<7} {:>6} {:>10} {:>10} {:>10}  {:<13} note",
        "table", "alpha", "published", "computed", "delta", "status"
    );
    for r in rows {
        let _ = writeln!(
            out,
            "{:<7} {:>6} {:>10} {:>10} {:>10}  {:<13} {}",
            r.table_id.name(),
            format_sig(r.alpha, 6),
            format_sig(r.published, 6),
            opt(r.computed, 6),
            opt(r.abs_delta, 6),
            r.status.name(),
            r.note
        );
    }
    out
}

/// One line per probe with the extreme ratios at `r₋` and `r₊`.
pub fn render_probes_text(probes: &[Result<ProbeReport>]) -> String {
    let mut out = String::new();
    for p in probes {
        match p {
            Ok(p) => {
                let _ = writeln!(
                    out,
                    "probe {} {} alpha={}: root={} ratio(r-)={} ratio(r+)={}{} {}",
                    p.family,
                    p.variant.name(),
                    format_sig(p.alpha, 6),
                    format_sig(p.root, 6),
                    format_sig(p.max_ratio_below, 6),
                    format_sig(p.max_ratio_above, 6),
                    p.worst_a
                        .map(|a| format!(" at a={}", format_sig(a, 6)))
                        .unwrap_or_default(),
                    if p.passed() { "PASS" } else { "FAIL" }
                );
            }
            Err(e) => {
                let _ = writeln!(out, "probe error: {e}");
            }
        }
    }
    out
}
