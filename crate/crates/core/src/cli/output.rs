use std::fmt::Write as _;
use std::path::PathBuf;

use serde::Serialize;

use super::Format;
use crate::fracseries::ExtremalFamily;
use crate::numfmt::{format_sig, round_sig};
use crate::radius::{CurvePoint, RadiusResult};
use crate::Error;

const MACHINE_DIGITS: usize = 12;
const TEXT_DIGITS: usize = 6;

/// Finite values rounded for machine output; non-finite values become `null`.
fn num(x: f64) -> Option<f64> {
    x.is_finite().then(|| round_sig(x, MACHINE_DIGITS))
}

fn csv_string(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("writing to memory");
    for row in rows {
        w.write_record(row).expect("writing to memory");
    }
    String::from_utf8(w.into_inner().expect("flushing to memory")).expect("csv output is utf-8")
}

fn json_string<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("records serialize");
    s.push('\n');
    s
}

/// Serialized form of a [`RadiusResult`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RadiusRecord {
    pub family: String,
    pub variant: &'static str,
    pub alpha: Option<f64>,
    pub root: Option<f64>,
    pub bracket: [Option<f64>; 2],
    pub residual: Option<f64>,
    pub tail_bound: Option<f64>,
    pub iterations: usize,
    pub depth_used: usize,
    pub notes: Vec<String>,
}

impl From<&RadiusResult> for RadiusRecord {
    fn from(r: &RadiusResult) -> Self {
        Self {
            family: r.problem.family.to_string(),
            variant: r.problem.variant.name(),
            alpha: num(r.problem.alpha),
            root: num(r.root),
            bracket: [num(r.bracket.0), num(r.bracket.1)],
            residual: num(r.residual),
            tail_bound: num(r.tail_bound),
            iterations: r.iterations,
            depth_used: r.depth_used,
            notes: r.notes.clone(),
        }
    }
}

pub(super) fn radius(r: &RadiusResult, format: Format) -> String {
    match format {
        Format::Json => json_string(&RadiusRecord::from(r)),
        Format::Csv => {
            let m = |x: f64| format_sig(x, MACHINE_DIGITS);
            csv_string(
                &[
                    "family",
                    "variant",
                    "alpha",
                    "root",
                    "bracket_lo",
                    "bracket_hi",
                    "residual",
                    "tail_bound",
                    "iterations",
                    "depth_used",
                    "notes",
                ],
                &[vec![
                    r.problem.family.to_string(),
                    r.problem.variant.name().to_string(),
                    m(r.problem.alpha),
                    m(r.root),
                    m(r.bracket.0),
                    m(r.bracket.1),
                    m(r.residual),
                    m(r.tail_bound),
                    r.iterations.to_string(),
                    r.depth_used.to_string(),
                    r.notes.join("; "),
                ]],
            )
        }
        Format::Text => {
            let t = |x: f64| format_sig(x, TEXT_DIGITS);
            let mut s = String::new();
            let _ = writeln!(
                s,
                "family: {} ({})",
                r.problem.family,
                r.problem.variant.name()
            );
            let _ = writeln!(s, "alpha: {}", t(r.problem.alpha));
            let _ = writeln!(s, "root: {}", t(r.root));
            let _ = writeln!(s, "bracket: [{}, {}]", t(r.bracket.0), t(r.bracket.1));
            let _ = writeln!(s, "residual: {}", t(r.residual));
            let _ = writeln!(s, "tail bound: {}", t(r.tail_bound));
            let _ = writeln!(s, "iterations: {}, depth: {}", r.iterations, r.depth_used);
            for n in &r.notes {
                let _ = writeln!(s, "note: {n}");
            }
            s
        }
    }
}

/// One line of a radius curve.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CurveRow {
    pub alpha: Option<f64>,
    pub root: Option<f64>,
    pub residual: Option<f64>,
    pub status: &'static str,
    pub note: String,
}

fn error_status(e: &Error) -> &'static str {
    match e {
        Error::Domain(_) => "domain_error",
        Error::Divergence(_) => "divergence",
        Error::Precision { .. } => "precision_error",
        Error::NoRoot { .. } => "no_root",
        Error::Ambiguous { .. } => "ambiguous",
        Error::Parse { .. } => "parse_error",
    }
}

impl From<&CurvePoint> for CurveRow {
    fn from(p: &CurvePoint) -> Self {
        match &p.result {
            Ok(r) => Self {
                alpha: num(p.alpha),
                root: num(r.root),
                residual: num(r.residual),
                status: "ok",
                note: r.notes.join("; "),
            },
            Err(e) => Self {
                alpha: num(p.alpha),
                root: None,
                residual: None,
                status: error_status(e),
                note: e.to_string(),
            },
        }
    }
}

pub(super) fn curve(points: &[CurvePoint], format: Format) -> String {
    let rows: Vec<CurveRow> = points.iter().map(CurveRow::from).collect();
    let digits = if format == Format::Text {
        TEXT_DIGITS
    } else {
        MACHINE_DIGITS
    };
    let f = |x: Option<f64>| x.map(|v| format_sig(v, digits)).unwrap_or_default();
    match format {
        Format::Json => json_string(&rows),
        Format::Csv => csv_string(
            &["alpha", "root", "residual", "status", "note"],
            &rows
                .iter()
                .zip(points)
                .map(|(r, p)| {
                    let residual = p.result.as_ref().ok().map(|x| x.residual);
                    vec![
                        format_sig(p.alpha, digits),
                        f(p.result.as_ref().ok().map(|x| x.root)),
                        f(residual),
                        r.status.to_string(),
                        r.note.clone(),
                    ]
                })
                .collect::<Vec<_>>(),
        ),
        Format::Text => {
            let mut s = format!("{:>8} {:>10} {:>12}  status\n", "alpha", "root", "residual");
            for (r, p) in rows.iter().zip(points) {
                let res = p.result.as_ref().ok();
                let _ = writeln!(
                    s,
                    "{:>8} {:>10} {:>12}  {}{}",
                    format_sig(p.alpha, digits),
                    f(res.map(|x| x.root)),
                    f(res.map(|x| x.residual)),
                    r.status,
                    if r.note.is_empty() {
                        String::new()
                    } else {
                        format!(" ({})", r.note)
                    }
                );
            }
            s
        }
    }
}

pub(super) enum Source {
    File(PathBuf),
    Preset(String, ExtremalFamily),
}

impl Source {
    pub(super) fn describe(&self) -> String {
        match self {
            Source::File(p) => p.display().to_string(),
            Source::Preset(name, _) => name.clone(),
        }
    }
}

/// Majorant value with its certified tail.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MajorantRecord {
    pub source: String,
    pub direction: &'static str,
    pub alpha: f64,
    pub r: f64,
    pub value: f64,
    pub tail_bound: f64,
    /// Highest coefficient index summed.
    pub depth: usize,
}

pub(super) fn majorant(m: &MajorantRecord, format: Format) -> String {
    match format {
        Format::Json => json_string(&serde_json::json!({
            "source": m.source,
            "direction": m.direction,
            "alpha": num(m.alpha),
            "r": num(m.r),
            "value": num(m.value),
            "tail_bound": num(m.tail_bound),
            "depth": m.depth,
        })),
        Format::Csv => {
            let g = |x: f64| format_sig(x, MACHINE_DIGITS);
            csv_string(
                &[
                    "source",
                    "direction",
                    "alpha",
                    "r",
                    "value",
                    "tail_bound",
                    "depth",
                ],
                &[vec![
                    m.source.clone(),
                    m.direction.to_string(),
                    g(m.alpha),
                    g(m.r),
                    g(m.value),
                    g(m.tail_bound),
                    m.depth.to_string(),
                ]],
            )
        }
        Format::Text => format!(
            "majorant: {}\ntail bound: {}\ndepth: {}\n",
            format_sig(m.value, TEXT_DIGITS),
            format_sig(m.tail_bound, TEXT_DIGITS),
            m.depth
        ),
    }
}
