//! Kinetic theory of a single electron in a neutral gas under an oscillating field.
//!
//! The mean free path and collision frequency are tied together by the
//! Maxwell–Boltzmann *mean* speed: `l · ν_c = √(8 k_B T / (π m_e))`. Energy
//! gained from the field is the ensemble average per collision, in eV.

use std::f64::consts::{PI, SQRT_2};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::physical::constants::{BOLTZMANN, ELECTRON_MASS, ELEMENTARY_CHARGE};
use crate::physical::{GasSpecies, PlasmaConditions};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KineticState {
    /// l, m
    pub mean_free_path: f64,
    /// ν_c, 1/s
    pub collision_frequency: f64,
    /// τ = 1/ν_c, s
    pub mean_free_time: f64,
    /// E_eff, V/m
    pub effective_field: f64,
    /// Δu, eV
    pub energy_gain_per_collision: f64,
}

impl KineticState {
    pub fn evaluate(gas: &GasSpecies, conditions: &PlasmaConditions) -> Result<Self> {
        let l = mean_free_path(gas, conditions);
        let nu = collision_frequency(gas, conditions);
        Ok(KineticState {
            mean_free_path: l,
            collision_frequency: nu,
            mean_free_time: 1.0 / nu,
            effective_field: effective_field(conditions, nu),
            energy_gain_per_collision: energy_gain_per_collision(conditions, nu)?,
        })
    }
}

/// l = k_B T / (√2 P σ)
pub fn mean_free_path(gas: &GasSpecies, conditions: &PlasmaConditions) -> f64 {
    BOLTZMANN * conditions.temperature
        / (SQRT_2 * conditions.pressure * gas.collision_cross_section)
}

/// ν_c = 4 P σ / √(π m_e k_B T)
pub fn collision_frequency(gas: &GasSpecies, conditions: &PlasmaConditions) -> f64 {
    4.0 * conditions.pressure * gas.collision_cross_section
        / (ELECTRON_MASS * PI * BOLTZMANN * conditions.temperature).sqrt()
}

/// Maxwell–Boltzmann mean speed √(8 k_B T / (π m_e)) [m/s].
pub fn mean_thermal_speed(temperature: f64) -> f64 {
    (8.0 * BOLTZMANN * temperature / (PI * ELECTRON_MASS)).sqrt()
}

/// E_eff = E ν_c / √(ν_c² + ω²). Reduces to E in the DC limit ω = 0.
pub fn effective_field(conditions: &PlasmaConditions, collision_frequency: f64) -> f64 {
    let e = conditions.field_amplitude;
    let w = conditions.angular_frequency;
    if w == 0.0 {
        return e;
    }
    e * collision_frequency / collision_frequency.hypot(w)
}

/// Δu = e E² / (m_e (ν_c² + ω²)), in eV.
pub fn energy_gain_per_collision(
    conditions: &PlasmaConditions,
    collision_frequency: f64,
) -> Result<f64> {
    let nu = collision_frequency;
    let w = conditions.angular_frequency;
    if !(nu >= 0.0) {
        return Err(Error::invalid(
            "collision_frequency",
            nu,
            "must be non-negative",
        ));
    }
    let denom = nu * nu + w * w;
    if denom == 0.0 {
        return Err(Error::NoEnergyTransfer);
    }
    let e = conditions.field_amplitude;
    Ok(ELEMENTARY_CHARGE * e * e / (ELECTRON_MASS * denom))
}

/// The same energy gain written through the effective field: e E_eff² / (m_e ν_c²).
pub fn energy_gain_from_effective_field(
    effective_field: f64,
    collision_frequency: f64,
) -> Result<f64> {
    if !(collision_frequency > 0.0) {
        return Err(Error::NoEnergyTransfer);
    }
    let ratio = effective_field / collision_frequency;
    Ok(ELEMENTARY_CHARGE * ratio * ratio / ELECTRON_MASS)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::physical::units::angular_frequency_from_ghz;

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    fn cond(e: f64, w: f64, p: f64, t: f64) -> PlasmaConditions {
        PlasmaConditions::new(e, w, p, t).unwrap()
    }

    #[test]
    fn mean_free_path_scaling() {
        let ar = GasSpecies::argon();
        let w = angular_frequency_from_ghz(2.45);
        let base = mean_free_path(&ar, &cond(3000.0, w, 100.0, 300.0));
        assert!(rel(base, 2.662_544_373_650_252e-4) < 1e-12);
        let double_p = mean_free_path(&ar, &cond(3000.0, w, 200.0, 300.0));
        assert!(rel(double_p, base / 2.0) < 1e-15);
        let double_t = mean_free_path(&ar, &cond(3000.0, w, 100.0, 600.0));
        assert!(rel(double_t, base * 2.0) < 1e-15);
    }

    #[test]
    fn collision_frequency_values() {
        let ar = GasSpecies::argon();
        let w = angular_frequency_from_ghz(2.45);
        let nu = collision_frequency(&ar, &cond(3000.0, w, 100.0, 300.0));
        assert!(rel(nu, 4.041_391_964_566_850e8) < 1e-12);
        let nu2 = collision_frequency(&ar, &cond(3000.0, w, 200.0, 300.0));
        assert!(rel(nu2, 2.0 * nu) < 1e-15);
        assert!(rel(nu / w, 0.026_253_367_678_884_90) < 1e-12);
    }

    #[test]
    fn effective_field_cases() {
        let dc = cond(3000.0, 0.0, 100.0, 300.0);
        assert_eq!(effective_field(&dc, 4e8), 3000.0);
        let sym = cond(3000.0, 1e9, 100.0, 300.0);
        assert!(rel(effective_field(&sym, 1e9), 3000.0 / SQRT_2) < 1e-15);
        let hf = cond(3000.0, 1.539e10, 100.0, 300.0);
        assert!(rel(effective_field(&hf, 4.0e8), 77.946_386_550_164_80) < 1e-12);
        assert!(effective_field(&hf, 4.0e8) < 3000.0);
    }

    #[test]
    fn energy_gain_cases() {
        let ar = GasSpecies::argon();
        let w = angular_frequency_from_ghz(2.45);
        let c = cond(3000.0, w, 100.0, 300.0);
        let nu = collision_frequency(&ar, &c);
        let du = energy_gain_per_collision(&c, nu).unwrap();
        assert!(rel(du, 6.675_330_493_986_229e-3) < 1e-12);

        let c2 = cond(6000.0, w, 100.0, 300.0);
        assert!(rel(energy_gain_per_collision(&c2, nu).unwrap(), 4.0 * du) < 1e-15);

        let unit = cond(1.0, 0.0, 100.0, 300.0);
        let got = energy_gain_per_collision(&unit, 1.0).unwrap();
        assert_eq!(got, ELEMENTARY_CHARGE / ELECTRON_MASS);
    }

    #[test]
    fn no_transfer_mechanism_rejected() {
        let c = cond(3000.0, 0.0, 100.0, 300.0);
        assert!(matches!(
            energy_gain_per_collision(&c, 0.0),
            Err(Error::NoEnergyTransfer)
        ));
    }

    #[test]
    fn kinetic_state_tau() {
        let ar = GasSpecies::argon();
        let c = PlasmaConditions::oven(3000.0, 100.0, 300.0).unwrap();
        let k = KineticState::evaluate(&ar, &c).unwrap();
        assert_eq!(k.mean_free_time, 1.0 / k.collision_frequency);
        assert!(k.effective_field >= 0.0 && k.effective_field <= c.field_amplitude);
    }

    proptest::proptest! {
        #[test]
        fn two_energy_routes_agree(
            e in 1.0f64..1e5, p in 1e-2f64..1e4, t in 50.0f64..3000.0, ghz in 0.0f64..100.0,
        ) {
            let ar = GasSpecies::argon();
            let c = cond(e, angular_frequency_from_ghz(ghz), p, t);
            let nu = collision_frequency(&ar, &c);
            let direct = energy_gain_per_collision(&c, nu).unwrap();
            let via = energy_gain_from_effective_field(effective_field(&c, nu), nu).unwrap();
            proptest::prop_assert!(rel(via, direct) < 1e-12);
        }

        #[test]
        fn mean_speed_identity(p in 1e-3f64..1e5, t in 10.0f64..1e4) {
            let ar = GasSpecies::argon();
            let c = cond(0.0, 0.0, p, t);
            let product = mean_free_path(&ar, &c) * collision_frequency(&ar, &c);
            proptest::prop_assert!(rel(product, mean_thermal_speed(t)) < 1e-12);
        }

        #[test]
        fn effective_field_monotone(
            nu1 in 1e6f64..1e11, nu2 in 1e6f64..1e11, w1 in 1e8f64..1e11, w2 in 1e8f64..1e11,
        ) {
            let (lo_nu, hi_nu) = if nu1 < nu2 { (nu1, nu2) } else { (nu2, nu1) };
            let c = cond(1000.0, w1, 100.0, 300.0);
            proptest::prop_assert!(effective_field(&c, lo_nu) <= effective_field(&c, hi_nu));
            let (lo_w, hi_w) = if w1 < w2 { (w1, w2) } else { (w2, w1) };
            let a = effective_field(&cond(1000.0, lo_w, 100.0, 300.0), nu1);
            let b = effective_field(&cond(1000.0, hi_w, 100.0, 300.0), nu1);
            proptest::prop_assert!(a >= b);
            proptest::prop_assert!(a <= 1000.0 && b >= 0.0);
        }
    }
}
