use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::Exp1;
use serde::{Deserialize, Serialize};

use super::domain::{Vec3, WalkDomain};
use crate::error::{Error, Result};
use crate::kinetics::KineticState;
use crate::physical::{ChamberGeometry, GasSpecies, PlasmaConditions};

/// Identifies the generator and how per-walk streams are derived.
pub const PRNG_ID: &str = "rand_chacha-0.9/ChaCha8Rng seed_from_u64(seed) set_stream(walk_index)";

/// Walks that reach this many collisions abort with a diagnostic.
pub const COLLISION_CAP: u64 = 1_000_000_000;

/// Independent generator for walk `walk_index` of a run seeded with `seed`.
pub fn walk_rng(seed: u64, walk_index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(walk_index);
    rng
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ElectronState {
    /// m
    pub position: Vec3,
    pub direction: Vec3,
    /// eV
    pub accumulated_energy: f64,
    pub collision_count: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Terminal {
    Ionized,
    LostToWall,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WalkOutcome {
    pub terminal: Terminal,
    /// Free flights taken. Every flight ends in a collision, either with a
    /// gas atom or, for the last flight of a lost electron, with the wall.
    pub collisions: u64,
    /// Squared displacement from the launch point at the end of the last
    /// flight (past the wall for lost electrons) [m²].
    pub final_r2: f64,
}

/// Everything a walk needs, precomputed from the physics.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WalkParams {
    /// l, m
    pub mean_free_path: f64,
    /// Δu, eV
    pub energy_gain: f64,
    /// U_i, eV; +∞ turns ionization off.
    pub ionization_energy: f64,
    pub domain: WalkDomain,
}

impl WalkParams {
    pub fn new(
        gas: &GasSpecies,
        conditions: &PlasmaConditions,
        geometry: &ChamberGeometry,
    ) -> Result<Self> {
        let k = KineticState::evaluate(gas, conditions)?;
        Ok(WalkParams {
            mean_free_path: k.mean_free_path,
            energy_gain: k.energy_gain_per_collision,
            ionization_energy: gas.ionization_energy,
            domain: WalkDomain::from_geometry(geometry)?,
        })
    }

    pub fn without_ionization(self) -> Self {
        WalkParams {
            ionization_energy: f64::INFINITY,
            ..self
        }
    }
}

/// Isotropic unit vector (Marsaglia 1972). Both disc coordinates come from
/// one 64-bit draw, 32 bits each.
#[inline]
pub fn isotropic_direction<R: Rng + ?Sized>(rng: &mut R) -> Vec3 {
    const SCALE: f64 = 1.0 / (1u64 << 31) as f64;
    loop {
        let u = rng.next_u64();
        let a = ((u >> 32) as f64 + 0.5) * SCALE - 1.0;
        let b = ((u & 0xffff_ffff) as f64 + 0.5) * SCALE - 1.0;
        let s = a * a + b * b;
        if s < 1.0 {
            let f = 2.0 * (1.0 - s).sqrt();
            return [a * f, b * f, 1.0 - 2.0 * s];
        }
    }
}

/// Follows one electron from the domain's launch point until it ionizes an
/// atom or leaves through a wall.
///
/// Flight lengths are exponential with mean l; after each gas collision the
/// direction is redrawn isotropically and the energy grows by exactly Δu.
/// The random stream consumed does not depend on Δu, so for a fixed stream a
/// larger field can only ionize earlier.
pub fn walk_electron<R: Rng + ?Sized>(params: &WalkParams, rng: &mut R) -> Result<WalkOutcome> {
    walk_indexed(params, rng, 0)
}

pub(crate) fn walk_indexed<R: Rng + ?Sized>(
    params: &WalkParams,
    rng: &mut R,
    walk_index: u64,
) -> Result<WalkOutcome> {
    let start = params.domain.start();
    let l = params.mean_free_path;
    let mut e = ElectronState {
        position: start,
        direction: isotropic_direction(rng),
        accumulated_energy: 0.0,
        collision_count: 0,
    };
    loop {
        if e.collision_count >= COLLISION_CAP {
            return Err(Error::CollisionCapExceeded {
                walk: walk_index,
                cap: COLLISION_CAP,
            });
        }
        let s: f64 = l * rng.sample::<f64, _>(Exp1);
        for (p, d) in e.position.iter_mut().zip(e.direction) {
            *p += s * d;
        }
        e.collision_count += 1;
        if !params.domain.contains(&e.position) {
            return Ok(outcome(Terminal::LostToWall, &e, &start));
        }
        e.accumulated_energy += params.energy_gain;
        if e.accumulated_energy >= params.ionization_energy {
            return Ok(outcome(Terminal::Ionized, &e, &start));
        }
        e.direction = isotropic_direction(rng);
    }
}

fn outcome(terminal: Terminal, e: &ElectronState, start: &Vec3) -> WalkOutcome {
    let r2 = e
        .position
        .iter()
        .zip(start)
        .map(|(p, s)| (p - s) * (p - s))
        .sum();
    WalkOutcome {
        terminal,
        collisions: e.collision_count,
        final_r2: r2,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::physical::DiffusionMode;

    #[test]
    fn directions_are_unit() {
        let mut rng = walk_rng(1, 0);
        for _ in 0..10_000 {
            let d = isotropic_direction(&mut rng);
            let n = (d[0] * d[0] + d[1] * d[1] + d[2] * d[2]).sqrt();
            assert!((n - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn direction_moments_are_isotropic() {
        let mut rng = walk_rng(2, 0);
        let n = 200_000;
        let mut m = [0.0; 3];
        let mut m2 = [0.0; 3];
        for _ in 0..n {
            let d = isotropic_direction(&mut rng);
            for k in 0..3 {
                m[k] += d[k];
                m2[k] += d[k] * d[k];
            }
        }
        for k in 0..3 {
            // mean 0 with sd 1/sqrt(3n); second moment 1/3 with sd sqrt(4/45/n)
            assert!((m[k] / n as f64).abs() < 4.0 / (3.0 * n as f64).sqrt());
            assert!((m2[k] / n as f64 - 1.0 / 3.0).abs() < 4.0 * (4.0 / 45.0 / n as f64).sqrt());
        }
    }

    fn cyl_params(l: f64, du: f64) -> WalkParams {
        WalkParams {
            mean_free_path: l,
            energy_gain: du,
            ionization_energy: 15.76,
            domain: WalkDomain::from_geometry(
                &ChamberGeometry::cylinder(0.1, 0.1, DiffusionMode::PaperApproximation).unwrap(),
            )
            .unwrap(),
        }
    }

    #[test]
    fn no_field_never_ionizes() {
        let p = cyl_params(5e-3, 0.0);
        for i in 0..200 {
            let out = walk_electron(&p, &mut walk_rng(7, i)).unwrap();
            assert_eq!(out.terminal, Terminal::LostToWall);
            assert!(out.collisions >= 1);
        }
    }

    #[test]
    fn ballistic_limit_escapes_immediately() {
        // l = 200 Λ with Λ = 0.2/π
        let p = cyl_params(200.0 * 0.2 / std::f64::consts::PI, 1.0);
        let first_flight = (0..1000)
            .filter(|&i| {
                let o = walk_electron(&p, &mut walk_rng(3, i)).unwrap();
                o.terminal == Terminal::LostToWall && o.collisions == 1
            })
            .count();
        assert!(first_flight >= 950, "{first_flight}");
    }

    #[test]
    fn large_gain_ionizes_on_first_collision() {
        let p = cyl_params(1e-5, 100.0);
        let o = walk_electron(&p, &mut walk_rng(0, 0)).unwrap();
        assert_eq!(o.terminal, Terminal::Ionized);
        assert_eq!(o.collisions, 1);
        assert!(o.final_r2 >= 0.0);
    }

    #[test]
    fn streams_differ_and_repeat() {
        let p = cyl_params(5e-3, 0.0);
        let a = walk_electron(&p, &mut walk_rng(11, 5)).unwrap();
        let b = walk_electron(&p, &mut walk_rng(11, 5)).unwrap();
        let c = walk_electron(&p, &mut walk_rng(11, 6)).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
    }
}
