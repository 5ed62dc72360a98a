//! Unit handling at the I/O boundary. Everything past this module is SI.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const PA_PER_MBAR: f64 = 100.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PressureUnit {
    Mbar,
    Pa,
}

/// Converts a positive pressure to pascal. Millibar is exactly 100 Pa.
pub fn convert_pressure(value: f64, unit: PressureUnit) -> Result<f64> {
    if !(value > 0.0) || !value.is_finite() {
        return Err(Error::invalid(
            "pressure",
            value,
            "must be positive and finite",
        ));
    }
    Ok(match unit {
        PressureUnit::Mbar => value * PA_PER_MBAR,
        PressureUnit::Pa => value,
    })
}

/// Inverse of [`convert_pressure`].
pub fn pressure_from_pa(pa: f64, unit: PressureUnit) -> f64 {
    match unit {
        PressureUnit::Mbar => pa / PA_PER_MBAR,
        PressureUnit::Pa => pa,
    }
}

/// Angular frequency [rad/s] of a linear frequency given in GHz.
pub fn angular_frequency_from_ghz(ghz: f64) -> f64 {
    2.0 * std::f64::consts::PI * ghz * 1e9
}

/// What kind of quantity a suffixed string denotes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QuantityKind {
    /// SI result in Pa.
    Pressure,
    /// SI result in Hz (linear, not angular).
    Frequency,
    /// SI result in m.
    Length,
    /// SI result in s.
    Time,
    /// Bare numbers only (V/m, K, m⁻³ ...); an explicit SI suffix is accepted.
    Plain(&'static str),
}

impl QuantityKind {
    fn suffixes(self) -> &'static [(&'static str, f64)] {
        match self {
            QuantityKind::Pressure => &[("mbar", 100.0), ("kPa", 1e3), ("Pa", 1.0)],
            QuantityKind::Frequency => &[("GHz", 1e9), ("MHz", 1e6), ("kHz", 1e3), ("Hz", 1.0)],
            QuantityKind::Length => &[
                ("mm", 1e-3),
                ("cm", 1e-2),
                ("um", 1e-6),
                ("nm", 1e-9),
                ("m", 1.0),
            ],
            QuantityKind::Time => &[("min", 60.0), ("ms", 1e-3), ("us", 1e-6), ("s", 1.0)],
            QuantityKind::Plain(_) => &[],
        }
    }
}

/// Parses `"1mbar"`, `"2.45GHz"`, `"23 cm"` or a bare SI number.
///
/// Suffixes are case-sensitive so `mbar` and `Mbar` can never be confused.
pub fn parse_quantity(text: &str, kind: QuantityKind) -> Result<f64> {
    let t = text.trim();
    let mut number = t;
    let mut factor = 1.0;
    if let QuantityKind::Plain(unit) = kind {
        if let Some(stripped) = t.strip_suffix(unit) {
            number = stripped;
        }
    } else {
        for &(suffix, f) in kind.suffixes() {
            if let Some(stripped) = t.strip_suffix(suffix) {
                number = stripped;
                factor = f;
                break;
            }
        }
    }
    let number = number.trim();
    let value: f64 = number
        .parse()
        .map_err(|_| Error::config(text, "not a number with a recognised unit suffix"))?;
    Ok(value * factor)
}
