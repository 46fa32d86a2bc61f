//! Scalar special functions used by the radius equations.

mod gamma;
mod hypergeometric;

pub use gamma::{gamma, gamma_ratio, ln_gamma_ratio, log_gamma, pochhammer, recip_gamma};
pub use hypergeometric::{
    boundary_limit_rhs, hyp2f1, hyp2f1_at_one, hyp2f1_direct, hyp2f1_pfaff, hyp2f1_series,
    BoundaryKind, Hyp2F1Params, SeriesSum, DEFAULT_MAX_TERMS,
};
