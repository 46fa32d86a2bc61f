use rayon::prelude::*;
use serde::Serialize;

use super::equations::{evaluate, Sides};
use super::{Family, RadiusProblem, Variant};
use crate::error::{Error, Result};

const SAMPLES: usize = 64;
const SEARCH_LO: f64 = 1e-6;
const SEARCH_HI: f64 = 1.0 - 1e-6;

/// Outcome of a successful radius computation.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RadiusResult {
    pub problem: RadiusProblem,
    /// Midpoint of the final bracket.
    pub root: f64,
    /// Final bracket; `D` has opposite certified signs at its two ends.
    pub bracket: (f64, f64),
    /// `LHS - RHS` at `root`.
    pub residual: f64,
    pub iterations: usize,
    /// Largest truncation depth needed by any evaluation.
    pub depth_used: usize,
    /// Tail bound of the left side at `root`.
    pub tail_bound: f64,
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Sign {
    Neg,
    Pos,
}

/// Sign of `D(r)` decided from the enclosure `[lhs, lhs + tail] - rhs`.
fn certified_sign(s: &Sides) -> Option<Sign> {
    let (lo, hi) = s.difference_bounds();
    if lo > 0.0 {
        Some(Sign::Pos)
    } else if hi < 0.0 {
        Some(Sign::Neg)
    } else {
        None
    }
}

struct Tracker<'a> {
    problem: &'a RadiusProblem,
    depth_used: usize,
    undecided: usize,
}

impl Tracker<'_> {
    fn eval(&mut self, r: f64) -> Result<Sides> {
        let s = evaluate(self.problem, r)?;
        self.depth_used = self.depth_used.max(s.depth);
        Ok(s)
    }

    /// Sign used during bisection. An enclosure straddling zero only happens
    /// when `|D|` is below the tail bound, in which case the enclosure
    /// midpoint decides.
    fn sign(&mut self, r: f64) -> Result<Sign> {
        let s = self.eval(r)?;
        Ok(certified_sign(&s).unwrap_or_else(|| {
            self.undecided += 1;
            let (lo, hi) = s.difference_bounds();
            if 0.5 * (lo + hi) > 0.0 {
                Sign::Pos
            } else {
                Sign::Neg
            }
        }))
    }
}

fn sample_grid() -> Vec<f64> {
    let ratio = (SEARCH_HI / SEARCH_LO).ln() / (SAMPLES - 1) as f64;
    (0..SAMPLES)
        .map(|k| match k {
            0 => SEARCH_LO,
            k if k == SAMPLES - 1 => SEARCH_HI,
            k => SEARCH_LO * (ratio * k as f64).exp(),
        })
        .collect()
}

/// Solves `LHS(r) = RHS(r)` for the radius of `problem` on `(0, 1)`.
///
/// `D = LHS - RHS` is sampled at 64 geometrically spaced points of
/// `[1e-6, 1 - 1e-6]`. Exactly one sign change is required; none gives
/// [`Error::NoRoot`] and several give [`Error::Ambiguous`]. The bracketing
/// cell is then bisected until narrower than `problem.tol`.
pub fn solve(problem: &RadiusProblem) -> Result<RadiusResult> {
    problem.validate()?;
    let mut tracker = Tracker {
        problem,
        depth_used: 0,
        undecided: 0,
    };
    let grid = sample_grid();

    let mut known: Vec<(f64, Sign, f64)> = Vec::with_capacity(SAMPLES);
    for &r in &grid {
        let s = tracker.eval(r)?;
        if let Some(sign) = certified_sign(&s) {
            known.push((r, sign, s.lhs - s.rhs));
        }
    }
    if known.len() < 2 {
        return Err(Error::precision(
            format!(
                "{}: D(r) could not be signed on the search grid",
                problem.family
            ),
            f64::INFINITY,
        ));
    }
    let cells: Vec<(f64, f64)> = known
        .windows(2)
        .filter(|w| w[0].1 != w[1].1)
        .map(|w| (w[0].0, w[1].0))
        .collect();
    match cells.len() {
        0 => {
            return Err(Error::NoRoot {
                d_lo: known[0].2,
                d_hi: known[known.len() - 1].2,
            });
        }
        1 => {}
        _ => return Err(Error::Ambiguous { cells }),
    }

    let mut notes = Vec::new();
    let (mut lo, mut hi) = cells[0];
    let lo_sign = tracker.sign(lo)?;
    if lo_sign == Sign::Pos {
        notes.push("D(r) decreases through the root (LHS > RHS below it)".to_string());
    }

    let mut iterations = 0;
    while hi - lo > problem.tol {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            notes.push(format!(
                "bracket [{lo}, {hi}] cannot be split further in f64"
            ));
            break;
        }
        if tracker.sign(mid)? == lo_sign {
            lo = mid;
        } else {
            hi = mid;
        }
        iterations += 1;
    }

    let root = 0.5 * (lo + hi);
    let at_root = tracker.eval(root)?;
    let residual = at_root.lhs - at_root.rhs;
    let d_lo = tracker.eval(lo)?;
    let d_hi = tracker.eval(hi)?;
    let slope = if hi > lo {
        ((d_hi.lhs - d_hi.rhs) - (d_lo.lhs - d_lo.rhs)).abs() / (hi - lo)
    } else {
        0.0
    };
    if residual.abs() > 10.0 * slope * problem.tol + at_root.tail_bound {
        notes.push(format!(
            "residual {residual:e} exceeds 10 · slope · tol = {:e}",
            10.0 * slope * problem.tol
        ));
    }
    if tracker.undecided > 0 {
        notes.push(format!(
            "{} bisection step(s) fell inside the truncation enclosure",
            tracker.undecided
        ));
    }
    if problem.family == Family::SquaredN && hi < 0.5 {
        notes.push(format!("root {root:.6} lies below 1/2"));
    }

    Ok(RadiusResult {
        problem: *problem,
        root,
        bracket: (lo, hi),
        residual,
        iterations,
        depth_used: tracker.depth_used,
        tail_bound: at_root.tail_bound,
        notes,
    })
}

/// One point of a radius curve.
#[derive(Debug, Clone, PartialEq)]
pub struct CurvePoint {
    pub alpha: f64,
    pub result: Result<RadiusResult>,
}

/// Solves for every order in `alphas` in parallel, preserving order.
pub fn radius_curve(
    family: Family,
    variant: Variant,
    alphas: &[f64],
    tol: f64,
    max_terms: usize,
) -> Vec<CurvePoint> {
    alphas
        .par_iter()
        .map(|&alpha| {
            let problem = RadiusProblem::new(family, alpha)
                .with_variant(variant)
                .with_tol(tol)
                .with_max_terms(max_terms);
            CurvePoint {
                alpha,
                result: solve(&problem),
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::{gamma, hyp2f1_series};

    fn root(family: Family, alpha: f64) -> f64 {
        solve(&RadiusProblem::new(family, alpha)).unwrap().root
    }

    #[test]
    fn classical_limits() {
        let cases = [
            (Family::AnalyticR, 1.0 / 3.0),
            (Family::ShiftedRho, 1.0 / 3.0),
            (Family::SquaredN, 0.5),
            (Family::UnivalentK, 3.0 - 8f64.sqrt()),
            (Family::ConvexP, 1.0 / 3.0),
            (Family::IntegralRint, 1.0 / 3.0),
            (Family::BlochM, 0.553567021571720),
        ];
        for (family, want) in cases {
            let got = root(family, 0.0);
            assert!((got - want).abs() < 1e-9, "{family}: {got} vs {want}");
        }
    }

    #[test]
    fn derivative_radius_at_order_one() {
        assert!((root(Family::ShiftedRho, 1.0) - (1.0 - (2.0f64 / 3.0).sqrt())).abs() < 1e-9);
    }

    #[test]
    fn published_values() {
        let cases = [
            (Family::ShiftedRho, 0.5, 0.26004),
            (Family::SquaredN, 0.2, 0.431574),
            (Family::SquaredN, 0.9, 0.083639),
            (Family::UnivalentK, 0.1, 0.139068),
            (Family::ConvexP, 0.1, 0.295922),
            (Family::BlochM, 0.1, 0.513532),
        ];
        for (family, alpha, want) in cases {
            let got = root(family, alpha);
            assert!(
                (got - want).abs() < 2e-4,
                "{family} α={alpha}: {got} vs {want}"
            );
        }
        let tab =
            solve(&RadiusProblem::new(Family::AnalyticR, 0.2).with_variant(Variant::AsTabulated))
                .unwrap();
        assert!((tab.root - 0.30841).abs() < 2e-4);
        assert!((root(Family::AnalyticR, 0.5) - 0.188782).abs() < 1e-6);
    }

    #[test]
    fn squared_radius_near_order_one() {
        // published estimate N(0.99) ≈ 9.7e-3
        assert!((root(Family::SquaredN, 0.99) - 9.7e-3).abs() < 5e-5);
    }

    #[test]
    fn integral_radius_grows_with_order() {
        let r: Vec<f64> = [0.2, 0.5, 0.8]
            .iter()
            .map(|&a| root(Family::IntegralRint, a))
            .collect();
        assert!((r[0] - 0.3863).abs() < 1e-4);
        assert!((r[1] - 0.4625).abs() < 1e-4);
        assert!((r[2] - 0.5356).abs() < 1e-4);
    }

    #[test]
    fn decreasing_families_decrease() {
        for family in [
            Family::AnalyticR,
            Family::ShiftedRho,
            Family::SquaredN,
            Family::UnivalentK,
            Family::ConvexP,
            Family::BlochM,
        ] {
            let roots: Vec<f64> = [0.0, 0.25, 0.5, 0.75]
                .iter()
                .map(|&a| root(family, a))
                .collect();
            assert!(roots.windows(2).all(|w| w[1] < w[0]), "{family}: {roots:?}");
        }
    }

    #[test]
    fn closed_form_cross_check() {
        // Σ_{n≥0} Γ(n+1)/Γ(n+1∓α) r^n = ₂F₁(1, 1; 1∓α; r) / Γ(1∓α)
        for alpha in [0.3, 0.7] {
            let res = solve(&RadiusProblem::new(Family::AnalyticR, alpha)).unwrap();
            let r = res.root;
            let c = 1.0 - alpha;
            let total = hyp2f1_series(1.0, 1.0, c, r, 1 << 20).value / gamma(c).unwrap();
            let lhs = total - 1.0 / gamma(c).unwrap();
            assert!((lhs - 0.5 / gamma(c).unwrap()).abs() < 1e-8, "α={alpha}");

            let res = solve(&RadiusProblem::new(Family::IntegralRint, alpha)).unwrap();
            let r = res.root;
            let c = 1.0 + alpha;
            let total = hyp2f1_series(1.0, 1.0, c, r, 1 << 20).value / gamma(c).unwrap();
            let lhs = total - 1.0 / gamma(c).unwrap();
            assert!((lhs - 0.5 / gamma(c).unwrap()).abs() < 1e-8, "α={alpha}");
        }
    }

    #[test]
    fn result_metadata() {
        let res = solve(&RadiusProblem::new(Family::SquaredN, 0.5)).unwrap();
        assert!(res.bracket.1 - res.bracket.0 <= 1e-10);
        assert!(res.bracket.0 <= res.root && res.root <= res.bracket.1);
        assert!(res.depth_used >= 256);
        assert!(res.residual.abs() < 1e-8);
        assert!(res.notes.iter().any(|n| n.contains("below 1/2")));
    }

    #[test]
    fn curve_preserves_order() {
        let alphas = [0.7, 0.1, 0.4];
        let curve = radius_curve(Family::ConvexP, Variant::AsStated, &alphas, 1e-10, 8192);
        for (point, &alpha) in curve.iter().zip(&alphas) {
            assert_eq!(point.alpha, alpha);
            assert!(
                (point.result.as_ref().unwrap().root - root(Family::ConvexP, alpha)).abs() < 1e-12
            );
        }
    }

    #[test]
    fn rejects_bad_problems() {
        assert!(matches!(
            solve(&RadiusProblem::new(Family::BlochM, 1.0)),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            solve(&RadiusProblem::new(Family::AnalyticR, -0.1)),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            solve(&RadiusProblem::new(Family::AnalyticR, 0.5).with_tol(0.0)),
            Err(Error::Domain(_))
        ));
    }
}
