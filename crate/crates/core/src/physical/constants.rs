use serde::{Deserialize, Serialize};

/// Fundamental constants (CODATA 2018). `e` and `k_B` are exact by SI definition.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhysicalConstants {
    /// kg
    pub electron_mass: f64,
    /// C
    pub elementary_charge: f64,
    /// J/K
    pub boltzmann: f64,
    /// F/m
    pub vacuum_permittivity: f64,
    /// m/s
    pub speed_of_light: f64,
}

pub const CODATA_2018: PhysicalConstants = PhysicalConstants {
    electron_mass: 9.109_383_701_5e-31,
    elementary_charge: 1.602_176_634e-19,
    boltzmann: 1.380_649e-23,
    vacuum_permittivity: 8.854_187_812_8e-12,
    speed_of_light: 299_792_458.0,
};

pub const ELECTRON_MASS: f64 = CODATA_2018.electron_mass;
pub const ELEMENTARY_CHARGE: f64 = CODATA_2018.elementary_charge;
pub const BOLTZMANN: f64 = CODATA_2018.boltzmann;
pub const VACUUM_PERMITTIVITY: f64 = CODATA_2018.vacuum_permittivity;
pub const SPEED_OF_LIGHT: f64 = CODATA_2018.speed_of_light;

impl Default for PhysicalConstants {
    fn default() -> Self {
        CODATA_2018
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_positive() {
        let c = CODATA_2018;
        for v in [
            c.electron_mass,
            c.elementary_charge,
            c.boltzmann,
            c.vacuum_permittivity,
            c.speed_of_light,
        ] {
            assert!(v > 0.0);
        }
    }

    #[test]
    fn json_round_trip_is_bit_identical() {
        let text = serde_json::to_string(&CODATA_2018).unwrap();
        let back: PhysicalConstants = serde_json::from_str(&text).unwrap();
        assert_eq!(
            back.electron_mass.to_bits(),
            CODATA_2018.electron_mass.to_bits()
        );
        assert_eq!(
            back.elementary_charge.to_bits(),
            CODATA_2018.elementary_charge.to_bits()
        );
        assert_eq!(back.boltzmann.to_bits(), CODATA_2018.boltzmann.to_bits());
        assert_eq!(
            back.vacuum_permittivity.to_bits(),
            CODATA_2018.vacuum_permittivity.to_bits()
        );
        assert_eq!(
            back.speed_of_light.to_bits(),
            CODATA_2018.speed_of_light.to_bits()
        );
    }
}
