//! Power series with a real exponent offset and the Riemann–Liouville
//! transforms acting on them.
//!
//! A [`FracPowerSeries`] stores `Σ_{n=0}^{N} c_n z^(n + β)`. Both fractional
//! transforms act on each monomial by the generalized power rule
//!
//! ```text
//! D^α z^μ = Γ(μ + 1) / Γ(μ + 1 - α) · z^(μ - α)
//! I^α z^μ = Γ(μ + 1) / Γ(μ + 1 + α) · z^(μ + α)
//! ```
//!
//! so they rescale coefficients and shift the common offset by `∓α`.

mod extremal;
mod quotient;

use serde::{Deserialize, Serialize};

pub use extremal::{extremal_coeffs, ExtremalFamily, ExtremalKind};
pub use quotient::{binomial_quotient_derivative, binomial_quotient_series_oracle, OracleValue};

use crate::error::{Error, Result};
use crate::specfun::ln_gamma_ratio;
use crate::sum::KahanSum;

/// Certified bound on the part of a series beyond its stored depth, valid at
/// radius `radius` (and every smaller one).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TailHint {
    pub radius: f64,
    pub bound: f64,
}

/// Truncated series `Σ_{n=0}^{depth} c_n z^(n + offset)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FracPowerSeries {
    coeffs: Vec<f64>,
    offset: f64,
    tail_hint: Option<TailHint>,
}

impl FracPowerSeries {
    pub fn new(coeffs: Vec<f64>, offset: f64) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::domain("a series needs at least one coefficient"));
        }
        if !offset.is_finite() {
            return Err(Error::domain(format!(
                "series offset must be finite, got {offset}"
            )));
        }
        if let Some(n) = coeffs.iter().position(|c| !c.is_finite()) {
            return Err(Error::domain(format!("coefficient {n} is not finite")));
        }
        Ok(Self {
            coeffs,
            offset,
            tail_hint: None,
        })
    }

    /// Ordinary power series `Σ c_n z^n`.
    pub fn from_coeffs(coeffs: Vec<f64>) -> Result<Self> {
        Self::new(coeffs, 0.0)
    }

    pub fn with_tail_hint(mut self, hint: TailHint) -> Self {
        self.tail_hint = Some(hint);
        self
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn offset(&self) -> f64 {
        self.offset
    }

    /// Index of the last stored coefficient.
    pub fn depth(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn tail_hint(&self) -> Option<TailHint> {
        self.tail_hint
    }

    /// Exponent `n + offset` carried by coefficient `n`.
    pub fn exponent(&self, n: usize) -> f64 {
        n as f64 + self.offset
    }

    /// Parses the plain-text coefficient format: one real per line, with an
    /// optional first line `offset <real>`. Blank lines are ignored.
    pub fn parse(text: &str) -> Result<Self> {
        let mut coeffs = Vec::new();
        let mut offset = 0.0;
        let mut seen_data = false;
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.trim();
            if line.is_empty() {
                continue;
            }
            if let Some(rest) = line.strip_prefix("offset") {
                if seen_data {
                    return Err(Error::Parse {
                        line: line_no,
                        message: "offset header must precede the coefficients".into(),
                    });
                }
                offset = parse_real(rest.trim(), line_no)?;
                seen_data = true;
                continue;
            }
            seen_data = true;
            coeffs.push(parse_real(line, line_no)?);
        }
        if coeffs.is_empty() {
            return Err(Error::Parse {
                line: text.lines().count().max(1),
                message: "no coefficients found".into(),
            });
        }
        Self::new(coeffs, offset)
    }
}

fn parse_real(token: &str, line: usize) -> Result<f64> {
    let v: f64 = token.parse().map_err(|_| Error::Parse {
        line,
        message: format!("expected a real number, found {token:?}"),
    })?;
    if !v.is_finite() {
        return Err(Error::Parse {
            line,
            message: format!("non-finite value {token:?}"),
        });
    }
    Ok(v)
}

fn check_order(alpha: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&alpha) {
        return Err(Error::domain(format!(
            "fractional order must lie in [0, 1], got {alpha}"
        )));
    }
    Ok(())
}

/// Applies `μ ↦ Γ(μ+1)/Γ(μ+1-shift)` to every coefficient, shifting the
/// offset by `-shift`.
fn power_rule(s: &FracPowerSeries, shift: f64) -> Result<FracPowerSeries> {
    let mut coeffs = Vec::with_capacity(s.coeffs.len());
    for (n, &c) in s.coeffs.iter().enumerate() {
        let mu = s.exponent(n);
        if !(mu + 1.0 > 0.0 && mu + 1.0 - shift > 0.0) {
            return Err(Error::domain(format!(
                "power rule with shift {shift} undefined for exponent {mu} (coefficient {n})"
            )));
        }
        coeffs.push(c * ln_gamma_ratio(mu + 1.0, mu + 1.0 - shift)?.exp());
    }
    Ok(FracPowerSeries {
        coeffs,
        offset: s.offset - shift,
        tail_hint: None,
    })
}

/// Riemann–Liouville fractional derivative of order `alpha ∈ [0, 1]`.
///
/// `alpha = 0` is the identity and `alpha = 1` the classical derivative
/// (`c_n ↦ (n + β) c_n`, offset `β - 1`).
pub fn frac_derivative(s: &FracPowerSeries, alpha: f64) -> Result<FracPowerSeries> {
    check_order(alpha)?;
    if alpha == 0.0 {
        return Ok(s.clone());
    }
    if alpha == 1.0 {
        let mut coeffs = Vec::with_capacity(s.coeffs.len());
        for (n, &c) in s.coeffs.iter().enumerate() {
            let mu = s.exponent(n);
            if !(mu + 1.0 > 0.0) {
                return Err(Error::domain(format!(
                    "classical derivative undefined for exponent {mu} (coefficient {n})"
                )));
            }
            coeffs.push(c * mu);
        }
        return Ok(FracPowerSeries {
            coeffs,
            offset: s.offset - 1.0,
            tail_hint: None,
        });
    }
    power_rule(s, alpha)
}

/// Riemann–Liouville fractional integral of order `alpha ∈ [0, 1]`.
pub fn frac_integral(s: &FracPowerSeries, alpha: f64) -> Result<FracPowerSeries> {
    check_order(alpha)?;
    if alpha == 0.0 {
        return Ok(s.clone());
    }
    power_rule(s, -alpha)
}

/// Bohr majorant `Σ |c_n| r^(n + offset)` at real radius `r ∈ (0, 1)`.
///
/// The coefficients are expected to be already transformed; this only sums
/// moduli. No tail beyond the stored depth is included.
pub fn bohr_majorant(s: &FracPowerSeries, r: f64) -> Result<f64> {
    if !(r > 0.0 && r < 1.0) {
        return Err(Error::domain(format!(
            "majorant radius must lie in (0, 1), got {r}"
        )));
    }
    let mut acc = KahanSum::new();
    let mut power = 1.0;
    for &c in &s.coeffs {
        acc.add(c.abs() * power);
        power *= r;
    }
    Ok(acc.value() * r.powf(s.offset))
}
