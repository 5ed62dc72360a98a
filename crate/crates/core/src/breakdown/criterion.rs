use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kinetics::KineticState;
use crate::physical::constants::{BOLTZMANN, ELECTRON_MASS, ELEMENTARY_CHARGE};
use crate::physical::{diffusion_length, ChamberGeometry, GasSpecies, PlasmaConditions};

/// 10 mbar, the highest pressure at which a glow was observed to ignite.
/// Empirical; not derived from any avalanche model.
pub const DEFAULT_ARC_THRESHOLD_PA: f64 = 1000.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Regime {
    NoIgnition,
    GlowDischarge,
    ArcingRisk,
}

impl Regime {
    pub fn as_str(self) -> &'static str {
        match self {
            Regime::NoIgnition => "NoIgnition",
            Regime::GlowDischarge => "GlowDischarge",
            Regime::ArcingRisk => "ArcingRisk",
        }
    }
}

impl std::fmt::Display for Regime {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BreakdownSettings {
    /// Pressure [Pa] at and above which an ignited discharge is flagged as arcing.
    pub arc_threshold: f64,
}

impl Default for BreakdownSettings {
    fn default() -> Self {
        BreakdownSettings {
            arc_threshold: DEFAULT_ARC_THRESHOLD_PA,
        }
    }
}

/// Breakdown at `ratio <= 1` (inclusive). NaN never ignites.
pub fn classify_regime(ratio: f64, pressure: f64, arc_threshold: f64) -> Regime {
    if ratio <= 1.0 {
        if pressure >= arc_threshold {
            Regime::ArcingRisk
        } else {
            Regime::GlowDischarge
        }
    } else {
        Regime::NoIgnition
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BreakdownReport {
    pub conditions: PlasmaConditions,
    /// N_i; +∞ when the field is zero.
    pub collisions_to_ionize: f64,
    /// N_d
    pub collisions_to_wall: f64,
    /// N_i / N_d
    pub ratio: f64,
    pub log10_ratio: f64,
    pub regime: Regime,
    pub kinetic: KineticState,
    /// Λ, m
    pub diffusion_length: f64,
}

impl BreakdownReport {
    pub fn breaks_down(&self) -> bool {
        self.ratio <= 1.0
    }
}

/// N_i = U_i / Δu, left continuous.
pub fn collisions_to_ionize(gas: &GasSpecies, kinetic: &KineticState) -> Result<f64> {
    let du = kinetic.energy_gain_per_collision;
    if !(du > 0.0) {
        return Err(Error::ZeroEnergyGain);
    }
    Ok(gas.ionization_energy / du)
}

/// N_d = 2Λ² / (3l²)
pub fn collisions_to_wall(kinetic: &KineticState, diffusion_length: f64) -> f64 {
    let r = diffusion_length / kinetic.mean_free_path;
    2.0 * r * r / 3.0
}

pub fn breakdown_ratio(
    gas: &GasSpecies,
    conditions: &PlasmaConditions,
    geometry: &ChamberGeometry,
) -> Result<BreakdownReport> {
    breakdown_ratio_with(gas, conditions, geometry, &BreakdownSettings::default())
}

/// Evaluates the criterion. A zero field is not an error: it reports
/// `ratio = +∞` and [`Regime::NoIgnition`] so sweeps can cross `E = 0`.
pub fn breakdown_ratio_with(
    gas: &GasSpecies,
    conditions: &PlasmaConditions,
    geometry: &ChamberGeometry,
    settings: &BreakdownSettings,
) -> Result<BreakdownReport> {
    let lambda = diffusion_length(geometry)?;
    let kinetic = KineticState::evaluate(gas, conditions)?;
    let n_d = collisions_to_wall(&kinetic, lambda);
    let n_i = if kinetic.energy_gain_per_collision > 0.0 {
        collisions_to_ionize(gas, &kinetic)?
    } else {
        f64::INFINITY
    };
    let ratio = n_i / n_d;
    Ok(BreakdownReport {
        conditions: *conditions,
        collisions_to_ionize: n_i,
        collisions_to_wall: n_d,
        ratio,
        log10_ratio: ratio.log10(),
        regime: classify_regime(ratio, conditions.pressure, settings.arc_threshold),
        kinetic,
        diffusion_length: lambda,
    })
}

/// The published closed form, with its printed constants and P in Pa:
/// `2.6e-17 T/E² + 20800 T²/(E² P²)`.
pub fn printed_approximation(conditions: &PlasmaConditions) -> f64 {
    let (a, b) = printed_approximation_terms(conditions);
    a + b
}

/// The two terms of [`printed_approximation`] separately.
pub fn printed_approximation_terms(conditions: &PlasmaConditions) -> (f64, f64) {
    let t = conditions.temperature;
    let e2 = conditions.field_amplitude * conditions.field_amplitude;
    let p2 = conditions.pressure * conditions.pressure;
    (2.6e-17 * t / e2, 20800.0 * t * t / (e2 * p2))
}

/// Coefficients of the criterion rewritten as `A·T/E² + B·T²/(E²P²)`.
///
/// `A` comes from the collision-frequency part of `ν_c² + ω²` and `B` from
/// the field-frequency part; neither depends on P, T or E.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ClosedFormCoefficients {
    pub a: f64,
    pub b: f64,
}

impl ClosedFormCoefficients {
    pub fn ratio(&self, conditions: &PlasmaConditions) -> f64 {
        let t = conditions.temperature;
        let e2 = conditions.field_amplitude * conditions.field_amplitude;
        let p2 = conditions.pressure * conditions.pressure;
        self.a * t / e2 + self.b * t * t / (e2 * p2)
    }
}

pub fn closed_form_coefficients(
    gas: &GasSpecies,
    geometry: &ChamberGeometry,
    angular_frequency: f64,
) -> Result<ClosedFormCoefficients> {
    let lambda = diffusion_length(geometry)?;
    let u = gas.ionization_energy;
    let sigma = gas.collision_cross_section;
    let l2 = lambda * lambda;
    let a = 12.0 * BOLTZMANN * u / (PI * ELEMENTARY_CHARGE * l2);
    let b = 3.0 * BOLTZMANN * BOLTZMANN * ELECTRON_MASS * u * angular_frequency * angular_frequency
        / (4.0 * sigma * sigma * ELEMENTARY_CHARGE * l2);
    Ok(ClosedFormCoefficients { a, b })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::physical::units::angular_frequency_from_ghz;

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    fn headline() -> (GasSpecies, PlasmaConditions, ChamberGeometry) {
        (
            GasSpecies::argon(),
            PlasmaConditions::from_lab_units(3000.0, 2.45, 1.0, 300.0).unwrap(),
            ChamberGeometry::paper_hemisphere(0.23).unwrap(),
        )
    }

    #[test]
    fn headline_point() {
        let (gas, c, g) = headline();
        let r = breakdown_ratio(&gas, &c, &g).unwrap();
        assert!(rel(r.collisions_to_ionize, 2_360.931_794_193_277) < 1e-11);
        assert!(rel(r.collisions_to_wall, 50_404.691_241_423_90) < 1e-11);
        assert!(rel(r.ratio, 0.046_839_524_973_679_46) < 1e-11);
        assert_eq!(r.ratio, r.collisions_to_ionize / r.collisions_to_wall);
        assert_eq!(r.regime, Regime::GlowDischarge);
    }

    #[test]
    fn ionize_count_scaling() {
        let (gas, c, _) = headline();
        let k = KineticState::evaluate(&gas, &c).unwrap();
        let n = collisions_to_ionize(&gas, &k).unwrap();
        let heavy = GasSpecies::new(
            "x",
            2.0 * gas.ionization_energy,
            gas.collision_cross_section,
        )
        .unwrap();
        assert!(rel(collisions_to_ionize(&heavy, &k).unwrap(), 2.0 * n) < 1e-15);
        let k2 = KineticState::evaluate(&gas, &c.with_field(6000.0).unwrap()).unwrap();
        assert!(rel(collisions_to_ionize(&gas, &k2).unwrap(), n / 4.0) < 1e-15);

        let k0 = KineticState::evaluate(&gas, &c.with_field(0.0).unwrap()).unwrap();
        assert!(matches!(
            collisions_to_ionize(&gas, &k0),
            Err(Error::ZeroEnergyGain)
        ));
    }

    #[test]
    fn wall_count_cases() {
        let (gas, c, _) = headline();
        let k = KineticState::evaluate(&gas, &c).unwrap();
        assert!(rel(collisions_to_wall(&k, k.mean_free_path), 2.0 / 3.0) < 1e-15);
        let n = collisions_to_wall(&k, 0.0732);
        assert!(rel(collisions_to_wall(&k, 0.1464), 4.0 * n) < 1e-15);
    }

    #[test]
    fn zero_field_is_infinite_sentinel() {
        let (gas, c, g) = headline();
        let r = breakdown_ratio(&gas, &c.with_field(0.0).unwrap(), &g).unwrap();
        assert_eq!(r.ratio, f64::INFINITY);
        assert_eq!(r.regime, Regime::NoIgnition);
    }

    #[test]
    fn low_limits_do_not_ignite() {
        let (gas, c, g) = headline();
        let tiny_e = breakdown_ratio(&gas, &c.with_field(1e-3).unwrap(), &g).unwrap();
        assert!(tiny_e.ratio > 1e6);
        assert_eq!(tiny_e.regime, Regime::NoIgnition);
        // 5e-3 mbar = 0.5 Pa
        let low_p = breakdown_ratio(&gas, &c.with_pressure(0.5).unwrap(), &g).unwrap();
        assert!(low_p.ratio > 1.0);
        let lower = breakdown_ratio(&gas, &c.with_pressure(0.05).unwrap(), &g).unwrap();
        assert!(lower.ratio > low_p.ratio * 50.0);
    }

    #[test]
    fn printed_form() {
        let (_, c, _) = headline();
        assert!(rel(printed_approximation(&c), 0.0208) < 1e-12);
        let (first, _) = printed_approximation_terms(&c);
        assert!(rel(first, 8.666_666_666_666_667e-22) < 1e-12);
        let c2 = c.with_field(6000.0).unwrap();
        assert!(rel(printed_approximation(&c2), printed_approximation(&c) / 4.0) < 1e-15);
    }

    #[test]
    fn regime_boundaries() {
        assert_eq!(classify_regime(1.0, 10.0, 1000.0), Regime::GlowDischarge);
        assert_eq!(
            classify_regime(1.0 + 1e-12, 10.0, 1000.0),
            Regime::NoIgnition
        );
        assert_eq!(classify_regime(0.5, 1000.0, 1000.0), Regime::ArcingRisk);
        assert_eq!(classify_regime(0.5, 999.9, 1000.0), Regime::GlowDischarge);
        assert_eq!(classify_regime(f64::NAN, 10.0, 1000.0), Regime::NoIgnition);
        assert_eq!(
            classify_regime(f64::INFINITY, 1e4, 1000.0),
            Regime::NoIgnition
        );
    }

    #[test]
    fn arc_threshold_knob() {
        let (gas, c, g) = headline();
        let s = BreakdownSettings {
            arc_threshold: 50.0,
        };
        let r = breakdown_ratio_with(&gas, &c, &g, &s).unwrap();
        assert_eq!(r.regime, Regime::ArcingRisk);
    }

    #[test]
    fn dc_limit_drops_field_frequency_term() {
        let (gas, _, g) = headline();
        let dc = PlasmaConditions::new(3000.0, 0.0, 100.0, 300.0).unwrap();
        let r = breakdown_ratio(&gas, &dc, &g).unwrap();
        let coeffs = closed_form_coefficients(&gas, &g, 0.0).unwrap();
        assert_eq!(coeffs.b, 0.0);
        assert!(rel(r.ratio, coeffs.a * 300.0 / 9e6) < 1e-12);
        assert_eq!(r.kinetic.effective_field, 3000.0);
    }

    #[test]
    fn rederived_coefficients() {
        let (gas, _, g) = headline();
        let coeffs = closed_form_coefficients(&gas, &g, angular_frequency_from_ghz(2.45)).unwrap();
        assert!(rel(coeffs.a, 0.967_842_187_620_726_9) < 1e-12);
        assert!(rel(coeffs.b, 46_807.263_567_425_44) < 1e-12);
    }
}
