//! Real-argument Gauss hypergeometric function ₂F₁(a, b; c; z) on [-1, 1].
//!
//! Evaluation strategy:
//!
//! * `|z| ≤ 1/2`: the defining series, summed with a certified tail bound.
//! * `-1 ≤ z < -1/2`: Pfaff's transformation
//!   `₂F₁(a, b; c; z) = (1 - z)^(-a) ₂F₁(a, c - b; c; z / (z - 1))`,
//!   whose argument lands in `(1/3, 1/2]`. This also gives the analytic
//!   continuation at `z = -1` when the defining series diverges there.
//! * `1/2 < z < 1`: the defining series, which still converges geometrically
//!   with ratio `→ z`; the certified tail bound decides when to stop.
//! * `z = 1`: Gauss's summation theorem, only when `c - a - b > 0`.

use serde::{Deserialize, Serialize};

use super::gamma::{gamma, recip_gamma};
use crate::error::{Error, Result};
use crate::sum::KahanSum;

/// Target for the certified tail, relative to `max(1, |partial sum|)`.
const TAIL_TARGET: f64 = 1e-12;

/// A term counts as negligible once it is this small relative to the sum.
const TERM_EPS: f64 = 1e-16;

/// Term cap used by [`hyp2f1`] before reporting a precision error.
pub const DEFAULT_MAX_TERMS: usize = 1 << 22;

/// Parameters of ₂F₁(a, b; c; z), validated on construction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Hyp2F1Params {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub z: f64,
}

impl Hyp2F1Params {
    pub fn new(a: f64, b: f64, c: f64, z: f64) -> Result<Self> {
        if !(a.is_finite() && b.is_finite() && c.is_finite() && z.is_finite()) {
            return Err(Error::domain("hyp2f1 parameters must be finite"));
        }
        if c <= 0.0 && c == c.floor() {
            return Err(Error::domain(format!(
                "hyp2f1 lower parameter c = {c} is a nonpositive integer"
            )));
        }
        if !(-1.0..=1.0).contains(&z) {
            return Err(Error::domain(format!(
                "hyp2f1 argument z = {z} outside [-1, 1]"
            )));
        }
        Ok(Self { a, b, c, z })
    }

    /// `c - a - b`, the exponent that controls behaviour at `z = 1`.
    pub fn excess(&self) -> f64 {
        self.c - self.a - self.b
    }
}

/// A truncated series together with a bound on everything it dropped.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SeriesSum {
    pub value: f64,
    /// Bound on `|Σ_{dropped} term|`; `f64::INFINITY` if none could be certified.
    pub tail_bound: f64,
    /// Number of terms summed.
    pub terms: usize,
}

impl SeriesSum {
    pub fn is_certified(&self) -> bool {
        self.tail_bound <= TAIL_TARGET * self.value.abs().max(1.0)
    }
}

/// Bound on `|t_{m+1} / t_m|` for every `m ≥ m0`, or `None` if `m0` is too
/// small for the bound to be valid.
///
/// The term ratio is `z (m + a)(m + b) / ((m + c)(m + 1))`. Writing it as
/// `z (1 + ((a + b - c - 1) m + ab - c) / ((m + c)(m + 1)))` and bounding the
/// numerator by absolute values gives a function that is decreasing in `m`
/// once `m0 ≥ 4 + 2(|a| + |b| + |c|)`, so its value at `m0` bounds all later
/// ratios.
fn ratio_bound(a: f64, b: f64, c: f64, z: f64, m0: usize) -> Option<f64> {
    let m = m0 as f64;
    if m < 4.0 + 2.0 * (a.abs() + b.abs() + c.abs()) {
        return None;
    }
    let lin = (a + b - c - 1.0).abs();
    let cst = (a * b - c).abs();
    Some(z.abs() * (1.0 + (lin * m + cst) / ((m + c) * (m + 1.0))))
}

/// Sums the defining series of ₂F₁ for `|z| < 1` with a certified tail.
///
/// Stops once three consecutive terms are below `1e-16 |S|` and the tail
/// bound is below `1e-12 max(1, |S|)`, or after `max_terms` terms. In the
/// latter case the returned tail bound is whatever could be certified
/// (possibly infinite); callers decide whether that is acceptable.
pub fn hyp2f1_series(a: f64, b: f64, c: f64, z: f64, max_terms: usize) -> SeriesSum {
    let mut acc = KahanSum::new();
    let mut term = 1.0;
    let mut small_run = 0;
    let mut n = 0usize;
    loop {
        acc.add(term);
        let nf = n as f64;
        let factor = (a + nf) * (b + nf);
        if factor == 0.0 {
            // Polynomial case: every later term vanishes.
            return SeriesSum {
                value: acc.value(),
                tail_bound: 0.0,
                terms: n + 1,
            };
        }
        let next = term * factor / ((c + nf) * (nf + 1.0)) * z;
        n += 1;
        let sum = acc.value();
        if next.abs() <= TERM_EPS * sum.abs() {
            small_run += 1;
        } else {
            small_run = 0;
        }
        let tail = match ratio_bound(a, b, c, z, n) {
            Some(q) if q < 1.0 => next.abs() / (1.0 - q),
            _ => f64::INFINITY,
        };
        let done = small_run >= 3 && tail <= TAIL_TARGET * sum.abs().max(1.0);
        if done || next == 0.0 && tail == 0.0 || n >= max_terms {
            return SeriesSum {
                value: sum,
                tail_bound: tail,
                terms: n,
            };
        }
        term = next;
    }
}

fn certified(s: SeriesSum, p: &Hyp2F1Params) -> Result<f64> {
    if s.is_certified() {
        Ok(s.value)
    } else {
        Err(Error::precision(
            format!(
                "₂F₁({}, {}; {}; {}) not certified after {} terms",
                p.a, p.b, p.c, p.z, s.terms
            ),
            s.tail_bound,
        ))
    }
}

/// Direct summation of the defining series; requires `|z| < 1`.
pub fn hyp2f1_direct(p: &Hyp2F1Params) -> Result<f64> {
    if p.z.abs() >= 1.0 {
        return Err(Error::domain(format!(
            "direct ₂F₁ series requires |z| < 1, got {}",
            p.z
        )));
    }
    certified(hyp2f1_series(p.a, p.b, p.c, p.z, DEFAULT_MAX_TERMS), p)
}

/// Evaluation through Pfaff's transformation; requires `z < 1/2` so that the
/// transformed argument `z / (z - 1)` has modulus below one.
pub fn hyp2f1_pfaff(p: &Hyp2F1Params) -> Result<f64> {
    if !(p.z < 0.5) {
        return Err(Error::domain(format!(
            "Pfaff-transformed ₂F₁ requires z < 1/2, got {}",
            p.z
        )));
    }
    let w = p.z / (p.z - 1.0);
    let inner = hyp2f1_series(p.a, p.c - p.b, p.c, w, DEFAULT_MAX_TERMS);
    let inner = certified(inner, p)?;
    Ok((1.0 - p.z).powf(-p.a) * inner)
}

/// Gauss's summation theorem `₂F₁(a, b; c; 1) = Γ(c)Γ(c-a-b) / (Γ(c-a)Γ(c-b))`.
pub fn hyp2f1_at_one(a: f64, b: f64, c: f64) -> Result<f64> {
    let excess = c - a - b;
    if !(excess > 0.0) {
        return Err(Error::Divergence(format!(
            "₂F₁({a}, {b}; {c}; 1) diverges: c - a - b = {excess} ≤ 0"
        )));
    }
    Ok(gamma(c)? * gamma(excess)? * recip_gamma(c - a)? * recip_gamma(c - b)?)
}

/// ₂F₁(a, b; c; z) for real `z ∈ [-1, 1]` (see the module docs for dispatch).
pub fn hyp2f1(p: &Hyp2F1Params) -> Result<f64> {
    if p.z == 0.0 {
        Ok(1.0)
    } else if p.z == 1.0 {
        hyp2f1_at_one(p.a, p.b, p.c)
    } else if p.z < -0.5 {
        hyp2f1_pfaff(p)
    } else {
        hyp2f1_direct(p)
    }
}

/// Which lower bound of the growth theorem the boundary value belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundaryKind {
    /// `|z| / (1 + |z|)^2`, i.e. `₂F₁(2, 2; 2 - α; -z)` after differentiation.
    Univalent,
    /// `|z| / (1 + |z|)`, i.e. `₂F₁(1, 2; 2 - α; -z)` after differentiation.
    Convex,
}

/// Limit as `|z| → 1` of `|z^(1-α) / Γ(2-α) · ₂F₁(a, 2; 2 - α; -z)|`, with
/// `a = 2` for univalent and `a = 1` for convex functions.
///
/// The argument `-1` is handled through Pfaff's transformation: for the
/// univalent kind `c - a - b = -2 - α`, so the defining series diverges
/// there even though the continuation is finite.
pub fn boundary_limit_rhs(kind: BoundaryKind, alpha: f64) -> Result<f64> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::domain(format!(
            "boundary limit requires 0 < α < 1, got {alpha}"
        )));
    }
    let a = match kind {
        BoundaryKind::Univalent => 2.0,
        BoundaryKind::Convex => 1.0,
    };
    let c = 2.0 - alpha;
    let f = hyp2f1(&Hyp2F1Params::new(a, 2.0, c, -1.0)?)?;
    Ok(f.abs() * recip_gamma(c)?)
}
