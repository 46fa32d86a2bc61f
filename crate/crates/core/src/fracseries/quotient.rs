//! Fractional derivative of `z^a / (1 + z)^b` for positive integers `a`, `b`.
//!
//! Closed form:
//!
//! ```text
//! D^α z^a/(1+z)^b = z^(a-α) Γ(a+1)/Γ(a+1-α) · ₂F₁(b, a+1; a+1-α; -z)
//! ```
//!
//! The oracle expands `(1+z)^(-b) = Σ C(b-1+n, n) (-z)^n`, differentiates each
//! monomial `z^(a+n)` by the power rule and sums, touching neither ₂F₁ nor
//! the log-gamma difference routine used by the closed form.
//!
//! For `z < 0` the factor `z^(a-α)` is taken as `|z|^(a-α)` in both routes.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::specfun::{hyp2f1, ln_gamma_ratio, log_gamma, Hyp2F1Params};
use crate::sum::KahanSum;

const ORACLE_TAIL_TARGET: f64 = 1e-12;

fn check_args(a: u32, b: u32, alpha: f64, z: f64) -> Result<()> {
    if a == 0 || b == 0 {
        return Err(Error::domain("exponents a and b must be positive integers"));
    }
    if !(0.0..1.0).contains(&alpha) {
        return Err(Error::domain(format!(
            "order must lie in [0, 1), got {alpha}"
        )));
    }
    if !(z > -1.0 && z < 1.0) {
        return Err(Error::domain(format!("z must lie in (-1, 1), got {z}")));
    }
    Ok(())
}

/// Closed-form value of `D^α [z^a / (1 + z)^b]` at real `z ∈ (-1, 1)`.
pub fn binomial_quotient_derivative(a: u32, b: u32, alpha: f64, z: f64) -> Result<f64> {
    check_args(a, b, alpha, z)?;
    let af = a as f64;
    let lower = af + 1.0 - alpha;
    let prefactor = z.abs().powf(af - alpha) * ln_gamma_ratio(af + 1.0, lower)?.exp();
    if prefactor == 0.0 {
        return Ok(0.0);
    }
    let f = hyp2f1(&Hyp2F1Params::new(b as f64, af + 1.0, lower, -z)?)?;
    Ok(prefactor * f)
}

/// Result of the term-by-term oracle.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OracleValue {
    pub value: f64,
    /// Bound on the neglected terms `n > depth`.
    pub tail_bound: f64,
    pub depth: usize,
}

/// `ln |t_n|` without the `|z|^n` factor:
/// `ln C(b-1+n, n) + ln Γ(a+n+1) - ln Γ(a+n+1-α)`.
fn log_weight(a: f64, b: f64, alpha: f64, n: usize) -> Result<f64> {
    let nf = n as f64;
    let binom = log_gamma(b + nf)? - log_gamma(b)? - log_gamma(nf + 1.0)?;
    let power_rule = log_gamma(a + nf + 1.0)? - log_gamma(a + nf + 1.0 - alpha)?;
    Ok(binom + power_rule)
}

/// Term-by-term evaluation of `D^α [z^a / (1 + z)^b]` through depth `depth`.
///
/// Errors with a precision error when the certified tail after `depth`
/// terms exceeds `1e-12`.
pub fn binomial_quotient_series_oracle(
    a: u32,
    b: u32,
    alpha: f64,
    z: f64,
    depth: usize,
) -> Result<OracleValue> {
    check_args(a, b, alpha, z)?;
    let (af, bf) = (a as f64, b as f64);
    let scale = z.abs().powf(af - alpha);
    if scale == 0.0 {
        return Ok(OracleValue {
            value: 0.0,
            tail_bound: 0.0,
            depth,
        });
    }
    let ln_abs_z = z.abs().ln();
    let mut acc = KahanSum::new();
    for n in 0..=depth {
        let magnitude = (log_weight(af, bf, alpha, n)? + n as f64 * ln_abs_z).exp();
        // (-1)^n from the binomial series times sign(z)^n from z^n.
        let negative = n % 2 == 1 && z > 0.0;
        acc.add(if negative { -magnitude } else { magnitude });
    }
    // |t_{n+1}/t_n| = (b+n)/(n+1) · (a+n+1)/(a+n+1-α) · |z| decreases in n.
    let first_dropped = depth + 1;
    let m = first_dropped as f64;
    let q = (bf + m) / (m + 1.0) * (af + m + 1.0) / (af + m + 1.0 - alpha) * z.abs();
    let t_next = (log_weight(af, bf, alpha, first_dropped)? + m * ln_abs_z).exp();
    let tail = if q < 1.0 {
        scale * t_next / (1.0 - q)
    } else {
        f64::INFINITY
    };
    if !(tail <= ORACLE_TAIL_TARGET) {
        return Err(Error::precision(
            format!("oracle depth {depth} too small at z = {z}"),
            tail,
        ));
    }
    Ok(OracleValue {
        value: scale * acc.value(),
        tail_bound: tail,
        depth,
    })
}
