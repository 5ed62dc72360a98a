use serde::{Deserialize, Serialize};

use super::units::{angular_frequency_from_ghz, convert_pressure, PressureUnit};
use crate::error::{Error, Result};

/// Operating point of the chamber, stored in SI.
///
/// Electrons and neutrals share the single temperature `temperature`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PlasmaConditions {
    /// E, V/m (amplitude)
    pub field_amplitude: f64,
    /// ω, rad/s
    pub angular_frequency: f64,
    /// P, Pa
    pub pressure: f64,
    /// T, K
    pub temperature: f64,
}

/// Magnetron frequency of a domestic microwave oven, 2.45 GHz.
pub const OVEN_FREQUENCY_GHZ: f64 = 2.45;

impl PlasmaConditions {
    pub fn new(
        field_amplitude: f64,
        angular_frequency: f64,
        pressure: f64,
        temperature: f64,
    ) -> Result<Self> {
        check(
            field_amplitude >= 0.0,
            "field_amplitude",
            field_amplitude,
            "must be >= 0",
        )?;
        check(
            angular_frequency >= 0.0,
            "angular_frequency",
            angular_frequency,
            "must be >= 0",
        )?;
        check(pressure > 0.0, "pressure", pressure, "must be > 0")?;
        check(temperature > 0.0, "temperature", temperature, "must be > 0")?;
        Ok(PlasmaConditions {
            field_amplitude,
            angular_frequency,
            pressure,
            temperature,
        })
    }

    /// Lab units: pressure in mbar, frequency in GHz.
    pub fn from_lab_units(
        field_amplitude: f64,
        frequency_ghz: f64,
        pressure_mbar: f64,
        temperature: f64,
    ) -> Result<Self> {
        let pressure = convert_pressure(pressure_mbar, PressureUnit::Mbar)?;
        Self::new(
            field_amplitude,
            angular_frequency_from_ghz(frequency_ghz),
            pressure,
            temperature,
        )
    }

    /// 2.45 GHz oven at the given field, pressure [Pa] and temperature.
    pub fn oven(field_amplitude: f64, pressure: f64, temperature: f64) -> Result<Self> {
        Self::new(
            field_amplitude,
            angular_frequency_from_ghz(OVEN_FREQUENCY_GHZ),
            pressure,
            temperature,
        )
    }

    pub fn with_field(self, field_amplitude: f64) -> Result<Self> {
        Self::new(
            field_amplitude,
            self.angular_frequency,
            self.pressure,
            self.temperature,
        )
    }

    pub fn with_pressure(self, pressure: f64) -> Result<Self> {
        Self::new(
            self.field_amplitude,
            self.angular_frequency,
            pressure,
            self.temperature,
        )
    }
}

fn check(ok: bool, field: &'static str, value: f64, reason: &'static str) -> Result<()> {
    if ok && value.is_finite() {
        Ok(())
    } else {
        Err(Error::invalid(field, value, reason))
    }
}
