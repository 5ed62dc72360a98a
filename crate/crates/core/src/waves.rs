//! Collisionless cold-plasma wave parameters.
//!
//! Below the plasma frequency a wave cannot propagate and its field decays
//! over a skin depth. At the oven frequency and glow-discharge densities that
//! depth is a few millimetres, which is why the discharge forms a thin sheath
//! against the vessel wall.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::physical::constants::{
    ELECTRON_MASS, ELEMENTARY_CHARGE, SPEED_OF_LIGHT, VACUUM_PERMITTIVITY,
};

/// Nominal glow-discharge electron density used by the CLI default [m⁻³].
pub const NOMINAL_ELECTRON_DENSITY: f64 = 1e18;

/// ω_p = √(n_e e² / (m_e ε₀)) [rad/s].
pub fn plasma_frequency(electron_density: f64) -> Result<f64> {
    if !(electron_density >= 0.0) || !electron_density.is_finite() {
        return Err(Error::invalid(
            "electron_density",
            electron_density,
            "must be non-negative and finite",
        ));
    }
    Ok((electron_density * ELEMENTARY_CHARGE * ELEMENTARY_CHARGE
        / (ELECTRON_MASS * VACUUM_PERMITTIVITY))
        .sqrt())
}

/// How a wave of angular frequency ω behaves in the plasma.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DecayProfile {
    /// ω ≥ ω_p. The cutoff ω = ω_p lands here with `refractive_index = 0`.
    Propagating { refractive_index: f64 },
    /// ω < ω_p: amplitude ∝ exp(−α x).
    Evanescent {
        decay_constant: f64,
        skin_depth: f64,
    },
}

impl DecayProfile {
    pub fn is_propagating(&self) -> bool {
        matches!(self, DecayProfile::Propagating { .. })
    }
}

pub fn decay_profile(electron_density: f64, angular_frequency: f64) -> Result<DecayProfile> {
    if !(angular_frequency > 0.0) || !angular_frequency.is_finite() {
        return Err(Error::invalid(
            "angular_frequency",
            angular_frequency,
            "must be positive and finite",
        ));
    }
    let wp = plasma_frequency(electron_density)?;
    let x = wp / angular_frequency;
    let x2 = x * x;
    if angular_frequency >= wp {
        Ok(DecayProfile::Propagating {
            refractive_index: (1.0 - x2).max(0.0).sqrt(),
        })
    } else {
        let alpha = angular_frequency / SPEED_OF_LIGHT * (x2 - 1.0).sqrt();
        Ok(DecayProfile::Evanescent {
            decay_constant: alpha,
            skin_depth: 1.0 / alpha,
        })
    }
}

/// Everything the `waves` report prints.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PlasmaWaveParameters {
    pub electron_density: f64,
    pub angular_frequency: f64,
    pub plasma_frequency: f64,
    /// n² = 1 − (ω_p/ω)²; negative when evanescent.
    pub refractive_index_squared: f64,
    pub profile: DecayProfile,
}

impl PlasmaWaveParameters {
    pub fn evaluate(electron_density: f64, angular_frequency: f64) -> Result<Self> {
        let profile = decay_profile(electron_density, angular_frequency)?;
        let wp = plasma_frequency(electron_density)?;
        let x = wp / angular_frequency;
        Ok(PlasmaWaveParameters {
            electron_density,
            angular_frequency,
            plasma_frequency: wp,
            refractive_index_squared: 1.0 - x * x,
            profile,
        })
    }

    pub fn skin_depth(&self) -> Option<f64> {
        match self.profile {
            DecayProfile::Evanescent { skin_depth, .. } => Some(skin_depth),
            DecayProfile::Propagating { .. } => None,
        }
    }
}
