//! The `bohrfrac` command-line front end.
//!
//! [`run`] takes the argument list, the value of `BOHRFRAC_MAX_TERMS` and two
//! output streams, and returns the process exit code, so the whole surface
//! can be driven from tests without spawning a process.

mod output;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::Error;
use crate::fracseries::{
    bohr_majorant, extremal_coeffs, frac_derivative, frac_integral, ExtremalFamily, ExtremalKind,
    FracPowerSeries,
};
use crate::radius::{
    radius_curve, solve, tail_bound, Family, RadiusProblem, TailWeight, Variant, DEFAULT_MAX_TERMS,
    DEFAULT_TOL, INITIAL_DEPTH, TAIL_TARGET,
};
use crate::verify::{
    gate_passes, render_probes_text, reproduce_tables, standard_probes, DEFAULT_TOLERANCE,
};

pub use output::{CurveRow, MajorantRecord, RadiusRecord};

pub const EXIT_OK: i32 = 0;
pub const EXIT_GATE: i32 = 1;
pub const EXIT_DOMAIN: i32 = 2;
pub const EXIT_NO_ROOT: i32 = 3;
pub const EXIT_USAGE: i32 = 64;
pub const EXIT_PARSE: i32 = 65;
pub const EXIT_IO: i32 = 74;

pub const MAX_TERMS_ENV: &str = "BOHRFRAC_MAX_TERMS";

#[derive(Debug, Parser)]
#[command(
    name = "bohrfrac",
    version,
    about = "Bohr radii for fractional derivatives and integrals"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve for one radius
    Radius(RadiusArgs),
    /// Solve on an evenly spaced grid of orders
    Curve(CurveArgs),
    /// Evaluate the Bohr majorant of a transformed series
    Majorant(MajorantArgs),
    /// Reproduce the published tables and run the sharpness probes
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    Analytic,
    Shifted,
    Squared,
    Univalent,
    Convex,
    Integral,
    Bloch,
}

impl From<FamilyArg> for Family {
    fn from(f: FamilyArg) -> Self {
        match f {
            FamilyArg::Analytic => Family::AnalyticR,
            FamilyArg::Shifted => Family::ShiftedRho,
            FamilyArg::Squared => Family::SquaredN,
            FamilyArg::Univalent => Family::UnivalentK,
            FamilyArg::Convex => Family::ConvexP,
            FamilyArg::Integral => Family::IntegralRint,
            FamilyArg::Bloch => Family::BlochM,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VariantArg {
    Stated,
    Tabulated,
}

impl From<VariantArg> for Variant {
    fn from(v: VariantArg) -> Self {
        match v {
            VariantArg::Stated => Variant::AsStated,
            VariantArg::Tabulated => Variant::AsTabulated,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Direction {
    Derivative,
    Integral,
}

#[derive(Debug, Args)]
pub struct Common {
    /// Output format
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Write output to this file instead of stdout
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Largest truncation depth (overrides BOHRFRAC_MAX_TERMS)
    #[arg(long)]
    pub max_terms: Option<usize>,
}

#[derive(Debug, Args)]
pub struct RadiusArgs {
    #[arg(long, value_enum)]
    pub family: FamilyArg,
    /// Right-hand side convention (analytic family only)
    #[arg(long, value_enum)]
    pub variant: Option<VariantArg>,
    #[arg(long, allow_negative_numbers = true)]
    pub alpha: f64,
    /// Bracket width at which bisection stops
    #[arg(long, default_value_t = DEFAULT_TOL)]
    pub tol: f64,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct CurveArgs {
    #[arg(long, value_enum)]
    pub family: FamilyArg,
    #[arg(long, value_enum)]
    pub variant: Option<VariantArg>,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub alpha_min: f64,
    /// Defaults to 1 for the shifted family and 0.9 otherwise
    #[arg(long, allow_negative_numbers = true)]
    pub alpha_max: Option<f64>,
    /// Number of grid points, endpoints included
    #[arg(long, default_value_t = 10)]
    pub steps: usize,
    #[arg(long, default_value_t = DEFAULT_TOL)]
    pub tol: f64,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct MajorantArgs {
    /// Coefficient file: one coefficient per line, optional `offset <real>` header
    #[arg(long, conflicts_with = "preset")]
    pub coeffs: Option<PathBuf>,
    /// koebe, half_plane, mobius:<a> or shifted_mobius:<a>
    #[arg(long)]
    pub preset: Option<String>,
    #[arg(long, allow_negative_numbers = true)]
    pub alpha: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub r: f64,
    #[arg(long, value_enum, default_value_t = Direction::Derivative)]
    pub direction: Direction,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub common: Common,
}

/// Failure of a command, carrying everything needed to pick an exit code.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error(transparent)]
    Numeric(#[from] Error),
    #[error("cannot access {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("verification gate failed")]
    Gate,
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Numeric(e) => numeric_exit_code(e),
            CliError::Io { .. } => EXIT_IO,
            CliError::Gate => EXIT_GATE,
        }
    }
}

pub fn numeric_exit_code(e: &Error) -> i32 {
    match e {
        Error::Domain(_) | Error::Divergence(_) => EXIT_DOMAIN,
        Error::NoRoot { .. } | Error::Ambiguous { .. } | Error::Precision { .. } => EXIT_NO_ROOT,
        Error::Parse { .. } => EXIT_PARSE,
    }
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

/// Resolves the truncation cap: flag, then environment, then default.
fn max_terms(flag: Option<usize>, env: Option<&str>) -> Result<usize, CliError> {
    if let Some(n) = flag {
        return if n > 0 {
            Ok(n)
        } else {
            Err(usage("--max-terms must be positive"))
        };
    }
    match env {
        None => Ok(DEFAULT_MAX_TERMS),
        Some(v) => match v.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(n),
            _ => Err(usage(format!(
                "{MAX_TERMS_ENV} must be a positive integer, got {v:?}"
            ))),
        },
    }
}

fn resolve_variant(family: Family, variant: Option<VariantArg>) -> Result<Variant, CliError> {
    match variant {
        None => Ok(Variant::AsStated),
        Some(v) if family == Family::AnalyticR => Ok(v.into()),
        Some(_) => Err(usage(format!(
            "--variant applies only to the analytic family, not {family}"
        ))),
    }
}

fn emit(out_path: Option<&Path>, content: &str, stdout: &mut dyn Write) -> Result<(), CliError> {
    match out_path {
        Some(path) => std::fs::write(path, content).map_err(|source| CliError::Io {
            path: path.to_path_buf(),
            source,
        }),
        None => stdout
            .write_all(content.as_bytes())
            .map_err(|source| CliError::Io {
                path: PathBuf::from("<stdout>"),
                source,
            }),
    }
}

fn cmd_radius(args: RadiusArgs, env: Option<&str>, stdout: &mut dyn Write) -> Result<(), CliError> {
    let family = Family::from(args.family);
    let problem = RadiusProblem::new(family, args.alpha)
        .with_variant(resolve_variant(family, args.variant)?)
        .with_tol(args.tol)
        .with_max_terms(max_terms(args.common.max_terms, env)?);
    problem.validate()?;
    let result = solve(&problem)?;
    let text = output::radius(&result, args.common.format.unwrap_or(Format::Text));
    emit(args.common.out.as_deref(), &text, stdout)
}

/// `steps` evenly spaced orders from `lo` to `hi`, endpoints exact.
pub fn alpha_grid(lo: f64, hi: f64, steps: usize) -> Vec<f64> {
    let h = (hi - lo) / (steps - 1) as f64;
    (0..steps)
        .map(|i| {
            if i + 1 == steps {
                hi
            } else {
                lo + h * i as f64
            }
        })
        .collect()
}

fn cmd_curve(args: CurveArgs, env: Option<&str>, stdout: &mut dyn Write) -> Result<(), CliError> {
    let family = Family::from(args.family);
    let variant = resolve_variant(family, args.variant)?;
    let cap = max_terms(args.common.max_terms, env)?;
    if args.steps < 2 {
        return Err(usage(format!(
            "--steps must be at least 2, got {}",
            args.steps
        )));
    }
    let (max, inclusive) = family.max_alpha();
    let alpha_max = args.alpha_max.unwrap_or(if inclusive { max } else { 0.9 });
    if !(args.alpha_min < alpha_max) {
        return Err(usage(format!(
            "--alpha-min ({}) must be below --alpha-max ({alpha_max})",
            args.alpha_min
        )));
    }
    for a in [args.alpha_min, alpha_max] {
        if !family.accepts(a) {
            return Err(Error::Domain(format!("{family} does not accept α = {a}")).into());
        }
    }
    RadiusProblem::new(family, args.alpha_min)
        .with_tol(args.tol)
        .with_max_terms(cap)
        .validate()?;

    let alphas = alpha_grid(args.alpha_min, alpha_max, args.steps);
    let points = radius_curve(family, variant, &alphas, args.tol, cap);
    let text = output::curve(&points, args.common.format.unwrap_or(Format::Csv));
    emit(args.common.out.as_deref(), &text, stdout)
}

fn parse_preset(name: &str) -> Result<ExtremalFamily, CliError> {
    let (kind, param) = match name.split_once(':') {
        Some((k, p)) => (k, Some(p)),
        None => (name, None),
    };
    let number = |p: Option<&str>| -> Result<f64, CliError> {
        let p =
            p.ok_or_else(|| usage(format!("preset {kind} needs a parameter, e.g. {kind}:0.5")))?;
        p.parse()
            .map_err(|_| usage(format!("invalid preset parameter {p:?}")))
    };
    match kind {
        "koebe" if param.is_none() => Ok(ExtremalFamily::koebe()),
        "half_plane" if param.is_none() => Ok(ExtremalFamily::half_plane()),
        "mobius" => Ok(ExtremalFamily::new(ExtremalKind::Mobius, number(param)?)?),
        "shifted_mobius" => Ok(ExtremalFamily::new(
            ExtremalKind::ShiftedMobius,
            number(param)?,
        )?),
        _ => Err(usage(format!(
            "unknown preset {name:?}; expected koebe, half_plane, mobius:<a> or shifted_mobius:<a>"
        ))),
    }
}

fn transform(
    s: &FracPowerSeries,
    alpha: f64,
    direction: Direction,
) -> crate::Result<FracPowerSeries> {
    match direction {
        Direction::Derivative => frac_derivative(s, alpha),
        Direction::Integral => frac_integral(s, alpha),
    }
}

fn check_unit_order(alpha: f64, r: f64) -> Result<(), CliError> {
    if !(0.0..=1.0).contains(&alpha) {
        return Err(Error::Domain(format!("order must lie in [0, 1], got {alpha}")).into());
    }
    if !(r > 0.0 && r < 1.0) {
        return Err(Error::Domain(format!("r must lie in (0, 1), got {r}")).into());
    }
    Ok(())
}

/// Majorant of a preset extremal series, with the depth doubled until the
/// neglected terms are certified below `1e-12 · max(1, value)`.
fn preset_majorant(
    fam: ExtremalFamily,
    alpha: f64,
    r: f64,
    direction: Direction,
    cap: usize,
) -> crate::Result<(f64, f64, usize)> {
    let shift = match direction {
        Direction::Derivative => alpha,
        Direction::Integral => -alpha,
    };
    let weight = match fam.kind {
        ExtremalKind::Koebe => TailWeight::NWeighted,
        _ => TailWeight::Plain,
    };
    let mut depth = INITIAL_DEPTH.min(cap).max(1);
    loop {
        let series = transform(&extremal_coeffs(fam, depth)?, alpha, direction)?;
        let value = bohr_majorant(&series, r)?;
        let tail = tail_bound(shift, r, depth, weight)? * r.powf(-shift);
        if tail <= TAIL_TARGET * value.max(1.0) {
            return Ok((value, tail, depth));
        }
        if depth >= cap {
            return Err(Error::Precision {
                message: format!("majorant not certified within {cap} terms at r = {r}"),
                best_bound: tail,
            });
        }
        depth = (depth * 2).min(cap);
    }
}

fn cmd_majorant(
    args: MajorantArgs,
    env: Option<&str>,
    stdout: &mut dyn Write,
) -> Result<(), CliError> {
    let cap = max_terms(args.common.max_terms, env)?;
    let source = match (&args.coeffs, &args.preset) {
        (Some(p), None) => output::Source::File(p.clone()),
        (None, Some(name)) => output::Source::Preset(name.clone(), parse_preset(name)?),
        _ => return Err(usage("exactly one of --coeffs or --preset is required")),
    };
    check_unit_order(args.alpha, args.r)?;

    let (value, tail, depth) = match &source {
        output::Source::File(path) => {
            let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
                path: path.clone(),
                source,
            })?;
            let series = FracPowerSeries::parse(&text)?;
            let transformed = transform(&series, args.alpha, args.direction)?;
            (bohr_majorant(&transformed, args.r)?, 0.0, series.depth())
        }
        output::Source::Preset(_, fam) => {
            preset_majorant(*fam, args.alpha, args.r, args.direction, cap)?
        }
    };
    let record = MajorantRecord {
        source: source.describe(),
        direction: match args.direction {
            Direction::Derivative => "derivative",
            Direction::Integral => "integral",
        },
        alpha: args.alpha,
        r: args.r,
        value,
        tail_bound: tail,
        depth,
    };
    let text = output::majorant(&record, args.common.format.unwrap_or(Format::Text));
    emit(args.common.out.as_deref(), &text, stdout)
}

fn cmd_verify(
    args: VerifyArgs,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> Result<(), CliError> {
    let rows = reproduce_tables(DEFAULT_TOLERANCE);
    let probes = standard_probes();
    let text = match args.common.format.unwrap_or(Format::Json) {
        Format::Json => crate::verify::render_json(&rows),
        Format::Csv => crate::verify::render_csv(&rows),
        Format::Text => crate::verify::render_text(&rows),
    };
    emit(args.common.out.as_deref(), &text, stdout)?;
    let _ = stderr.write_all(render_probes_text(&probes).as_bytes());
    let probes_ok = probes.iter().all(|p| p.as_ref().is_ok_and(|p| p.passed()));
    if gate_passes(&rows) && probes_ok {
        Ok(())
    } else {
        Err(CliError::Gate)
    }
}

/// Parses `args` (program name first) and runs the selected command.
pub fn run<I, T>(
    args: I,
    env_max_terms: Option<&str>,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let rendered = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = stdout.write_all(rendered.as_bytes());
                    EXIT_OK
                }
                _ => {
                    let _ = stderr.write_all(rendered.as_bytes());
                    EXIT_USAGE
                }
            };
        }
    };
    let result = match cli.command {
        Command::Radius(a) => cmd_radius(a, env_max_terms, stdout),
        Command::Curve(a) => cmd_curve(a, env_max_terms, stdout),
        Command::Majorant(a) => cmd_majorant(a, env_max_terms, stdout),
        Command::Verify(a) => cmd_verify(a, stdout, stderr),
    };
    match result {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(stderr, "bohrfrac: {e}");
            e.exit_code()
        }
    }
}
