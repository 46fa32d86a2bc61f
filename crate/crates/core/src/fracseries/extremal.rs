use serde::{Deserialize, Serialize};

use super::FracPowerSeries;
use crate::error::{Error, Result};

/// Functions that attain equality in the classical Bohr-type bounds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExtremalKind {
    /// `(a - z) / (1 - a z)`
    Mobius,
    /// `z (a - z) / (1 - a z)`
    ShiftedMobius,
    /// `z / (1 - z)^2`
    Koebe,
    /// `z / (1 - z)`
    HalfPlane,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExtremalFamily {
    pub kind: ExtremalKind,
    /// Möbius parameter in `[0, 1)`; ignored by the Koebe and half-plane maps.
    pub a: f64,
}

impl ExtremalFamily {
    pub fn new(kind: ExtremalKind, a: f64) -> Result<Self> {
        if !(0.0..1.0).contains(&a) {
            return Err(Error::domain(format!(
                "Möbius parameter must lie in [0, 1), got {a}"
            )));
        }
        Ok(Self { kind, a })
    }

    pub fn koebe() -> Self {
        Self {
            kind: ExtremalKind::Koebe,
            a: 0.0,
        }
    }

    pub fn half_plane() -> Self {
        Self {
            kind: ExtremalKind::HalfPlane,
            a: 0.0,
        }
    }
}

/// Taylor coefficients `a_0 … a_depth` of the extremal function.
pub fn extremal_coeffs(fam: ExtremalFamily, depth: usize) -> Result<FracPowerSeries> {
    if depth < 1 {
        return Err(Error::domain("extremal series need depth ≥ 1"));
    }
    let a = fam.a;
    let mobius = |n: usize| -> f64 {
        if n == 0 {
            a
        } else {
            -(1.0 - a * a) * a.powi(n as i32 - 1)
        }
    };
    let coeffs: Vec<f64> = (0..=depth)
        .map(|n| match fam.kind {
            ExtremalKind::Mobius => mobius(n),
            ExtremalKind::ShiftedMobius => {
                if n == 0 {
                    0.0
                } else {
                    mobius(n - 1)
                }
            }
            ExtremalKind::Koebe => n as f64,
            ExtremalKind::HalfPlane => {
                if n == 0 {
                    0.0
                } else {
                    1.0
                }
            }
        })
        .collect();
    FracPowerSeries::from_coeffs(coeffs)
}
