use serde::{Deserialize, Serialize};

use super::{Family, RadiusProblem, Variant, INITIAL_DEPTH, TAIL_TARGET};
use crate::error::{Error, Result};
use crate::specfun::{
    boundary_limit_rhs, gamma, hyp2f1_series, ln_gamma_ratio, BoundaryKind, SeriesSum,
};
use crate::sum::KahanSum;

/// Coefficient weight in front of the gamma ratio.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TailWeight {
    /// `w(n) = 1`
    Plain,
    /// `w(n) = n`
    NWeighted,
}

impl TailWeight {
    fn ln_weight(self, n: usize) -> f64 {
        match self {
            TailWeight::Plain => 0.0,
            TailWeight::NWeighted => (n as f64).ln(),
        }
    }

    /// `w(n + 1) / w(n)`
    fn step(self, n: usize) -> f64 {
        match self {
            TailWeight::Plain => 1.0,
            TailWeight::NWeighted => (n as f64 + 1.0) / n as f64,
        }
    }
}

/// `ln(w(n) Γ(n+1)/Γ(n+1-shift) r^n)`
fn ln_term(shift: f64, r: f64, n: usize, weight: TailWeight) -> Result<f64> {
    let top = n as f64 + 1.0;
    Ok(weight.ln_weight(n) + ln_gamma_ratio(top, top - shift)? + n as f64 * r.ln())
}

/// Bound on `Σ_{n > depth} w(n) Γ(n+1)/Γ(n+1-shift) r^n`.
///
/// `shift = α > 0` is the derivative direction and `shift = -α` the integral
/// direction. Successive term ratios are `r (n+1)/(n+1-shift) · w(n+1)/w(n)`;
/// for `shift ≥ 0` they decrease towards `r`, for `shift < 0` the gamma factor
/// stays below one, so
/// `q = r · max(1, (N+2)/(N+2-shift)) · w(N+2)/w(N+1)` bounds all of them and
/// the tail is at most `t_{N+1} / (1 - q)`.
pub fn tail_bound(shift: f64, r: f64, depth: usize, weight: TailWeight) -> Result<f64> {
    if !(-1.0..=1.0).contains(&shift) {
        return Err(Error::domain(format!(
            "tail_bound shift must lie in [-1, 1], got {shift}"
        )));
    }
    if !(r > 0.0 && r < 1.0) {
        return Err(Error::domain(format!(
            "tail_bound radius must lie in (0, 1), got {r}"
        )));
    }
    let m = depth + 1;
    let mf = m as f64;
    let gamma_step = ((mf + 1.0) / (mf + 1.0 - shift)).max(1.0);
    let q = r * gamma_step * weight.step(m);
    if q >= 1.0 {
        return Err(Error::precision(
            format!("tail ratio bound q = {q} ≥ 1 at depth {depth}, r = {r}"),
            f64::INFINITY,
        ));
    }
    let first = ln_term(shift, r, m, weight)?.exp();
    Ok(first / (1.0 - q))
}

/// `Σ_{n=start}^{N} w(n) Γ(n+1)/Γ(n+1-shift) r^n` with `N` escalated
/// (256, 512, … up to `max_terms`) until `scale · tail ≤ 1e-12 · max(1, |scale · S|)`.
///
/// The returned `tail_bound` is already multiplied by `scale`, as is `value`.
/// If the tail cannot be certified within `max_terms` the best bound found is
/// returned (possibly infinite); [`SeriesSum::is_certified`] tells the caller.
pub fn gamma_ratio_sum(
    shift: f64,
    r: f64,
    start: usize,
    weight: TailWeight,
    scale: f64,
    max_terms: usize,
) -> Result<SeriesSum> {
    if !(r > 0.0 && r < 1.0) {
        return Err(Error::domain(format!(
            "series radius must lie in (0, 1), got {r}"
        )));
    }
    let mut checkpoint = INITIAL_DEPTH.min(max_terms).max(start);
    let mut acc = KahanSum::new();
    let mut term = if weight == TailWeight::NWeighted && start == 0 {
        0.0
    } else {
        ln_term(shift, r, start, weight)?.exp()
    };
    let mut n = start;
    loop {
        while n <= checkpoint {
            acc.add(term);
            let nf = n as f64;
            term = if n == 0 && weight == TailWeight::NWeighted {
                ln_term(shift, r, 1, weight)?.exp()
            } else {
                term * r * (nf + 1.0) / (nf + 1.0 - shift) * weight.step(n)
            };
            n += 1;
        }
        let value = scale * acc.value();
        let tail = tail_bound(shift, r, checkpoint, weight)
            .map(|t| scale * t)
            .unwrap_or(f64::INFINITY);
        let done = tail <= TAIL_TARGET * value.abs().max(1.0);
        if done || checkpoint >= max_terms {
            return Ok(SeriesSum {
                value,
                tail_bound: tail,
                terms: checkpoint + 1,
            });
        }
        checkpoint = (checkpoint * 2).min(max_terms);
    }
}

/// Both sides of a radius equation at `r`.
///
/// The left side is a sum of positive terms, so `lhs` (the truncated sum) is
/// a lower bound and `lhs + tail_bound` an upper bound for the exact value.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Sides {
    pub lhs: f64,
    pub rhs: f64,
    pub tail_bound: f64,
    /// Truncation depth used for the left side (0 for closed forms).
    pub depth: usize,
}

impl Sides {
    pub fn is_certified(&self) -> bool {
        self.tail_bound <= TAIL_TARGET * self.lhs.abs().max(1.0)
    }

    /// Lower and upper bound on `LHS - RHS`.
    pub fn difference_bounds(&self) -> (f64, f64) {
        (self.lhs - self.rhs, self.lhs + self.tail_bound - self.rhs)
    }
}

fn series_sides(
    p: &RadiusProblem,
    r: f64,
    shift: f64,
    start: usize,
    weight: TailWeight,
    power: f64,
    rhs: f64,
) -> Result<Sides> {
    let s = gamma_ratio_sum(shift, r, start, weight, r.powf(power), p.max_terms)?;
    Ok(Sides {
        lhs: s.value,
        rhs,
        tail_bound: s.tail_bound,
        depth: s.terms - 1,
    })
}

/// Evaluates both sides without insisting on a certified tail.
pub(crate) fn evaluate(p: &RadiusProblem, r: f64) -> Result<Sides> {
    if !(r > 0.0 && r < 1.0) {
        return Err(Error::domain(format!("radius must lie in (0, 1), got {r}")));
    }
    let alpha = p.alpha;
    match p.family {
        Family::AnalyticR => {
            let rhs = match p.variant {
                Variant::AsStated => 0.5 / gamma(1.0 - alpha)?,
                Variant::AsTabulated => 0.5,
            };
            series_sides(p, r, alpha, 1, TailWeight::Plain, 0.0, rhs)
        }
        Family::ShiftedRho => {
            let rhs = r / (2.0 * gamma(2.0 - alpha)?);
            series_sides(p, r, alpha, 2, TailWeight::Plain, 0.0, rhs)
        }
        Family::SquaredN => {
            let g = gamma(1.0 - alpha)?;
            series_sides(p, r, alpha, 1, TailWeight::Plain, alpha, 1.0 / (g * g))
        }
        Family::UnivalentK => {
            let rhs = if alpha == 0.0 {
                0.25
            } else {
                boundary_limit_rhs(BoundaryKind::Univalent, alpha)?
            };
            series_sides(p, r, alpha, 1, TailWeight::NWeighted, -alpha, rhs)
        }
        Family::ConvexP => {
            let rhs = if alpha == 0.0 {
                0.5
            } else {
                boundary_limit_rhs(BoundaryKind::Convex, alpha)?
            };
            series_sides(p, r, alpha, 1, TailWeight::Plain, -alpha, rhs)
        }
        Family::IntegralRint => {
            let rhs = 0.5 / gamma(1.0 + alpha)?;
            series_sides(p, r, -alpha, 1, TailWeight::Plain, 0.0, rhs)
        }
        Family::BlochM => {
            let rhs = (1.0 - alpha) * (1.0 - alpha) / (r * r);
            if alpha == 0.0 {
                // ₂F₁(1,1;2;r) = -ln(1-r)/r and ₂F₁(2,1;2;r) = 1/(1-r)
                let lhs = -(-r).ln_1p() / (r * (1.0 - r));
                return Ok(Sides {
                    lhs,
                    rhs,
                    tail_bound: 0.0,
                    depth: 0,
                });
            }
            let c = 2.0 - alpha;
            let f1 = hyp2f1_series(1.0, 1.0, c, r, p.max_terms);
            let f2 = hyp2f1_series(2.0, 1.0, c, r, p.max_terms);
            let lhs = f1.value * f2.value;
            let tail =
                f1.value * f2.tail_bound + f2.value * f1.tail_bound + f1.tail_bound * f2.tail_bound;
            Ok(Sides {
                lhs,
                rhs,
                tail_bound: tail,
                depth: f1.terms.max(f2.terms) - 1,
            })
        }
    }
}

/// Both sides of the radius equation of `problem` at `r`, with the left side's
/// truncation certified to `1e-12` (relative to `max(1, LHS)`).
pub fn lhs_rhs(problem: &RadiusProblem, r: f64) -> Result<Sides> {
    problem.validate()?;
    let sides = evaluate(problem, r)?;
    if !sides.is_certified() {
        return Err(Error::precision(
            format!(
                "{} at r = {r}: tail not certified within {} terms",
                problem.family, problem.max_terms
            ),
            sides.tail_bound,
        ));
    }
    Ok(sides)
}
