//! Bohr radii for Riemann–Liouville fractional derivatives and integrals of
//! analytic functions on the unit disk.
//!
//! * [`specfun`]: log-gamma, gamma ratios and real ₂F₁.
//! * [`fracseries`]: power series with a real exponent offset, the fractional
//!   transforms acting on them, Bohr majorants and extremal functions.
//! * [`radius`]: the seven radius equations and a certified bisection solver.
//! * [`verify`]: published-table fixtures, the reproduction report and
//!   sharpness probes.
//! * [`cli`]: the `bohrfrac` command-line front end.

pub mod cli;
pub mod error;
pub mod fracseries;
pub mod numfmt;
pub mod radius;
pub mod specfun;
pub mod sum;
pub mod verify;

pub use error::{Error, Result};
