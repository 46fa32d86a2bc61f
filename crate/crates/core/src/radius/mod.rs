//! The seven Bohr-radius equations and their certified bisection solver.
//!
//! Each family is written as `LHS(r) = RHS(r)` with a left side that is a
//! sum of positive terms. Truncated sums are therefore lower bounds, and the
//! certified tail turns them into enclosures; the solver only ever needs the
//! sign of `D(r) = LHS(r) - RHS(r)`, which an enclosure decides as soon as it
//! excludes zero.

mod equations;
mod solver;

use serde::{Deserialize, Serialize};

pub use equations::{gamma_ratio_sum, lhs_rhs, tail_bound, Sides, TailWeight};
pub use solver::{radius_curve, solve, CurvePoint, RadiusResult};

use crate::error::{Error, Result};

/// Bracket width used when none is given.
pub const DEFAULT_TOL: f64 = 1e-10;
/// Largest truncation depth tried before giving up on certifying a tail.
pub const DEFAULT_MAX_TERMS: usize = 8192;
/// First truncation depth; doubled until the tail is certified.
pub const INITIAL_DEPTH: usize = 256;
/// Certified tails must be below `TAIL_TARGET · max(1, |LHS|)`.
pub const TAIL_TARGET: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    /// Bounded analytic functions, `Σ_{n≥1} Γ(n+1)/Γ(n+1-α) r^n = 1/(2Γ(1-α))`.
    #[serde(rename = "analytic_R")]
    AnalyticR,
    /// Bounded analytic functions with `f(0) = 0`,
    /// `Σ_{n≥2} Γ(n+1)/Γ(n+1-α) r^n = r/(2Γ(2-α))`.
    #[serde(rename = "shifted_rho")]
    ShiftedRho,
    /// `|a_0|` replaced by `|a_0|^2`, `Σ_{n≥1} Γ(n+1)/Γ(n+1-α) r^(n+α) = 1/Γ(1-α)^2`.
    #[serde(rename = "squared_N")]
    SquaredN,
    /// Univalent functions, `Σ_{n≥1} n Γ(n+1)/Γ(n+1-α) r^(n-α)` against the
    /// boundary limit of the differentiated Koebe lower bound.
    #[serde(rename = "univalent_K")]
    UnivalentK,
    /// Convex functions, `Σ_{n≥1} Γ(n+1)/Γ(n+1-α) r^(n-α)` against the boundary
    /// limit of the differentiated half-plane lower bound.
    #[serde(rename = "convex_P")]
    ConvexP,
    /// Fractional integral, `Σ_{n≥1} Γ(n+1)/Γ(n+1+α) r^n = 1/(2Γ(1+α))`.
    #[serde(rename = "integral_Rint")]
    IntegralRint,
    /// Bloch functions, `₂F₁(1,1;2-α;r) ₂F₁(2,1;2-α;r) = (1-α)^2 / r^2`.
    #[serde(rename = "bloch_M")]
    BlochM,
}

impl Family {
    pub const ALL: [Family; 7] = [
        Family::AnalyticR,
        Family::ShiftedRho,
        Family::SquaredN,
        Family::UnivalentK,
        Family::ConvexP,
        Family::IntegralRint,
        Family::BlochM,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::AnalyticR => "analytic_R",
            Family::ShiftedRho => "shifted_rho",
            Family::SquaredN => "squared_N",
            Family::UnivalentK => "univalent_K",
            Family::ConvexP => "convex_P",
            Family::IntegralRint => "integral_Rint",
            Family::BlochM => "bloch_M",
        }
    }

    /// Whether `alpha` is an admissible order for this family.
    ///
    /// Every family accepts `[0, 1)`, with `α = 0` the classical limit;
    /// `shifted_rho` also accepts `α = 1`, where it becomes the radius for `f'`.
    pub fn accepts(self, alpha: f64) -> bool {
        match self {
            Family::ShiftedRho => (0.0..=1.0).contains(&alpha),
            _ => (0.0..1.0).contains(&alpha),
        }
    }

    /// Supremum of the admissible orders, and whether it is attained.
    pub fn max_alpha(self) -> (f64, bool) {
        (1.0, self == Family::ShiftedRho)
    }
}

impl std::fmt::Display for Family {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// Right-hand-side convention for the bounded-analytic radius.
///
/// `AsStated` uses `1/(2Γ(1-α))`; `AsTabulated` uses `1/2`, which is the
/// equation the published table of this radius actually satisfies. Other
/// families ignore the flag.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Variant {
    #[default]
    AsStated,
    AsTabulated,
}

impl Variant {
    pub fn name(self) -> &'static str {
        match self {
            Variant::AsStated => "as_stated",
            Variant::AsTabulated => "as_tabulated",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RadiusProblem {
    pub family: Family,
    pub alpha: f64,
    pub variant: Variant,
    pub tol: f64,
    pub max_terms: usize,
}

impl RadiusProblem {
    pub fn new(family: Family, alpha: f64) -> Self {
        Self {
            family,
            alpha,
            variant: Variant::AsStated,
            tol: DEFAULT_TOL,
            max_terms: DEFAULT_MAX_TERMS,
        }
    }

    pub fn with_variant(mut self, variant: Variant) -> Self {
        self.variant = variant;
        self
    }

    pub fn with_tol(mut self, tol: f64) -> Self {
        self.tol = tol;
        self
    }

    pub fn with_max_terms(mut self, max_terms: usize) -> Self {
        self.max_terms = max_terms;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !self.alpha.is_finite() || !self.family.accepts(self.alpha) {
            let range = if self.family.max_alpha().1 {
                "[0, 1]"
            } else {
                "[0, 1)"
            };
            return Err(Error::domain(format!(
                "{} requires α in {range}, got {}",
                self.family, self.alpha
            )));
        }
        if !(self.tol > 0.0 && self.tol <= 1e-4) {
            return Err(Error::domain(format!(
                "tolerance must lie in (0, 1e-4], got {}",
                self.tol
            )));
        }
        if self.max_terms == 0 {
            return Err(Error::domain("max_terms must be positive"));
        }
        Ok(())
    }
}
