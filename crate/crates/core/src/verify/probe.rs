use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fracseries::{
    bohr_majorant, extremal_coeffs, frac_derivative, ExtremalFamily, ExtremalKind,
};
use crate::radius::{
    solve, tail_bound, Family, RadiusProblem, TailWeight, Variant, DEFAULT_MAX_TERMS,
    INITIAL_DEPTH, TAIL_TARGET,
};
use crate::specfun::{boundary_limit_rhs, gamma, BoundaryKind};

/// Distance past the radius, as a fraction of `1 - root`, at which a
/// violation is sought.
pub const DEFAULT_MARGIN: f64 = 0.05;

/// Möbius parameters `0, 0.05, …, 0.95`.
pub const MOBIUS_GRID: [f64; 20] = [
    0.0, 0.05, 0.1, 0.15, 0.2, 0.25, 0.3, 0.35, 0.4, 0.45, 0.5, 0.55, 0.6, 0.65, 0.7, 0.75, 0.8,
    0.85, 0.9, 0.95,
];

/// Extremal majorants evaluated just below and just above a computed radius.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProbeReport {
    pub family: Family,
    pub variant: Variant,
    pub alpha: f64,
    pub root: f64,
    pub r_minus: f64,
    pub r_plus: f64,
    /// Largest certified upper bound of `majorant / bound` over the probe set at `r_minus`.
    pub max_ratio_below: f64,
    /// Largest lower bound of `majorant / bound` at `r_plus`.
    pub max_ratio_above: f64,
    /// Möbius parameter attaining `max_ratio_above`; `None` for fixed extremals.
    pub worst_a: Option<f64>,
    pub holds_below: bool,
    pub violated_above: bool,
    /// Deepest truncation used for any majorant.
    pub depth: usize,
}

impl ProbeReport {
    pub fn passed(&self) -> bool {
        self.holds_below && self.violated_above
    }
}

/// Majorant `Σ |a_n| Γ(n+1)/Γ(n+1-α) r^(n-α)` of one extremal function,
/// returned as `(partial sum, tail bound)`.
fn majorant_enclosure(fam: ExtremalFamily, alpha: f64, r: f64) -> Result<(f64, f64, usize)> {
    // Möbius coefficients are bounded by 1; Koebe's grow like n.
    let weight = match fam.kind {
        ExtremalKind::Koebe => TailWeight::NWeighted,
        _ => TailWeight::Plain,
    };
    let mut depth = INITIAL_DEPTH;
    loop {
        let series = frac_derivative(&extremal_coeffs(fam, depth)?, alpha)?;
        let partial = bohr_majorant(&series, r)?;
        let tail = tail_bound(alpha, r, depth, weight)? * r.powf(-alpha);
        if tail <= TAIL_TARGET * partial.max(1.0) {
            return Ok((partial, tail, depth));
        }
        if depth >= DEFAULT_MAX_TERMS {
            return Err(Error::precision(
                format!(
                    "majorant of {:?} at r = {r} not certified by depth {depth}",
                    fam.kind
                ),
                tail,
            ));
        }
        depth = (depth * 2).min(DEFAULT_MAX_TERMS);
    }
}

/// Right-hand side of the family's majorant inequality at `r`.
fn probe_bound(family: Family, variant: Variant, alpha: f64, r: f64) -> Result<f64> {
    Ok(match (family, variant) {
        (Family::AnalyticR, Variant::AsStated) => r.powf(-alpha) / gamma(1.0 - alpha)?,
        (Family::AnalyticR, Variant::AsTabulated) => r.powf(-alpha),
        (Family::ShiftedRho, _) => r.powf(1.0 - alpha) / gamma(2.0 - alpha)?,
        (Family::UnivalentK, _) if alpha == 0.0 => 0.25,
        (Family::UnivalentK, _) => boundary_limit_rhs(BoundaryKind::Univalent, alpha)?,
        (Family::ConvexP, _) if alpha == 0.0 => 0.5,
        (Family::ConvexP, _) => boundary_limit_rhs(BoundaryKind::Convex, alpha)?,
        _ => return Err(Error::domain(format!("no sharpness probe for {family}"))),
    })
}

fn probe_set(family: Family) -> Result<Vec<ExtremalFamily>> {
    match family {
        Family::AnalyticR | Family::ShiftedRho => {
            let kind = if family == Family::AnalyticR {
                ExtremalKind::Mobius
            } else {
                ExtremalKind::ShiftedMobius
            };
            MOBIUS_GRID
                .iter()
                .map(|&a| ExtremalFamily::new(kind, a))
                .collect()
        }
        Family::UnivalentK => Ok(vec![ExtremalFamily::koebe()]),
        Family::ConvexP => Ok(vec![ExtremalFamily::half_plane()]),
        _ => Err(Error::domain(format!("no sharpness probe for {family}"))),
    }
}

/// Certified enclosure of `majorant / bound` for one extremal function.
fn ratio(
    family: Family,
    variant: Variant,
    fam: ExtremalFamily,
    alpha: f64,
    r: f64,
) -> Result<(f64, f64, usize)> {
    let (mut partial, tail, depth) = majorant_enclosure(fam, alpha, r)?;
    if family == Family::AnalyticR && variant == Variant::AsTabulated {
        // The tabulated convention weighs |a_0| by 1 instead of 1/Γ(1-α).
        let a0 = fam.a * r.powf(-alpha);
        partial += a0 - a0 / gamma(1.0 - alpha)?;
    }
    let bound = probe_bound(family, variant, alpha, r)?;
    Ok((partial / bound, (partial + tail) / bound, depth))
}

/// Checks that the family's extremal functions respect the majorant bound at
/// `root · (1 - 1e-6)` and that at least one of them exceeds it at
/// `root + margin · (1 - root)`.
///
/// Möbius families scan [`MOBIUS_GRID`]; `univalent_K` uses the Koebe
/// function and `convex_P` the half-plane map.
pub fn sharpness_probe(
    family: Family,
    variant: Variant,
    alpha: f64,
    margin: f64,
) -> Result<ProbeReport> {
    let set = probe_set(family)?;
    if !(margin > 0.0 && margin < 1.0) {
        return Err(Error::domain(format!(
            "probe margin must lie in (0, 1), got {margin}"
        )));
    }
    if family != Family::AnalyticR && variant == Variant::AsTabulated {
        return Err(Error::domain(format!(
            "{family} has no as_tabulated variant"
        )));
    }
    let root = solve(&RadiusProblem::new(family, alpha).with_variant(variant))?.root;
    let r_minus = root * (1.0 - 1e-6);
    let r_plus = root + margin * (1.0 - root);

    let mut max_below = f64::NEG_INFINITY;
    let mut max_above = f64::NEG_INFINITY;
    let mut worst_a = None;
    let mut depth = 0;
    for fam in set {
        let (_, upper, d1) = ratio(family, variant, fam, alpha, r_minus)?;
        let (lower, _, d2) = ratio(family, variant, fam, alpha, r_plus)?;
        depth = depth.max(d1).max(d2);
        max_below = max_below.max(upper);
        if lower > max_above {
            max_above = lower;
            worst_a = matches!(fam.kind, ExtremalKind::Mobius | ExtremalKind::ShiftedMobius)
                .then_some(fam.a);
        }
    }
    Ok(ProbeReport {
        family,
        variant,
        alpha,
        root,
        r_minus,
        r_plus,
        max_ratio_below: max_below,
        max_ratio_above: max_above,
        worst_a,
        holds_below: max_below <= 1.0,
        violated_above: max_above > 1.0,
        depth,
    })
}

/// The probe configurations run by the verification report: `analytic_R`
/// under both variants, `shifted_rho`, `univalent_K` and `convex_P`, each at
/// `α ∈ {0.2, 0.5}`.
pub fn standard_probes() -> Vec<Result<ProbeReport>> {
    let configs: Vec<(Family, Variant, f64)> = [
        (Family::AnalyticR, Variant::AsStated),
        (Family::AnalyticR, Variant::AsTabulated),
        (Family::ShiftedRho, Variant::AsStated),
        (Family::UnivalentK, Variant::AsStated),
        (Family::ConvexP, Variant::AsStated),
    ]
    .into_iter()
    .flat_map(|(f, v)| [0.2, 0.5].map(|a| (f, v, a)))
    .collect();
    configs
        .into_par_iter()
        .map(|(f, v, a)| sharpness_probe(f, v, a, DEFAULT_MARGIN))
        .collect()
}
