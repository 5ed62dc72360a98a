use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A working gas as seen by a single electron: how much energy it takes to
/// ionize an atom and how large the atom looks to an electron.
///
/// Cross sections are energy independent. Gas mixtures are not modelled; air
/// bled into an argon chamber only contributes to the pressure.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GasSpecies {
    pub name: String,
    /// eV
    pub ionization_energy: f64,
    /// m²
    pub collision_cross_section: f64,
}

impl GasSpecies {
    pub fn new(
        name: impl Into<String>,
        ionization_energy: f64,
        collision_cross_section: f64,
    ) -> Result<Self> {
        if !(ionization_energy > 0.0) || !ionization_energy.is_finite() {
            return Err(Error::invalid(
                "ionization_energy",
                ionization_energy,
                "must be positive and finite",
            ));
        }
        if !(collision_cross_section > 0.0) || !collision_cross_section.is_finite() {
            return Err(Error::invalid(
                "collision_cross_section",
                collision_cross_section,
                "must be positive and finite",
            ));
        }
        Ok(GasSpecies {
            name: name.into(),
            ionization_energy,
            collision_cross_section,
        })
    }

    /// Argon: U_i = 15.76 eV (NIST), σ = 1.1e-19 m² for e–Ar collisions.
    pub fn argon() -> Self {
        GasSpecies {
            name: "argon".to_owned(),
            ionization_energy: 15.76,
            collision_cross_section: 1.1e-19,
        }
    }

    /// Looks a species up in the built-in registry (case-insensitive).
    pub fn by_name(name: &str) -> Result<Self> {
        match name.to_ascii_lowercase().as_str() {
            "argon" | "ar" => Ok(Self::argon()),
            _ => Err(Error::UnknownGas(name.to_owned())),
        }
    }

    pub fn registry() -> Vec<GasSpecies> {
        vec![Self::argon()]
    }
}
