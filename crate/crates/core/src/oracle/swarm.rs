use std::ops::Range;

use rand::Rng;
use rand_distr::Exp1;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::walk::{
    isotropic_direction, walk_indexed, walk_rng, Terminal, WalkOutcome, WalkParams, PRNG_ID,
};
use crate::breakdown::collisions_to_wall;
use crate::error::{Error, Result};
use crate::kinetics::KineticState;
use crate::physical::{diffusion_length, ChamberGeometry, GasSpecies, PlasmaConditions};

pub const MIN_WALKS: usize = 100;

/// Random-walk coefficients `c` in ⟨R²⟩ = c·l²·N that the measurement is
/// tested against: the per-axis value 2/3 and the full 3-D value 2 for
/// exponentially distributed flights.
pub const PRINTED_COEFFICIENT: f64 = 2.0 / 3.0;
pub const STANDARD_COEFFICIENT: f64 = 2.0;

/// |z| at or below this counts as statistically consistent.
pub const CONSISTENCY_Z: f64 = 3.0;

/// Measured ⟨R²⟩/(l² N) against the two candidate coefficients.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CoefficientVerdict {
    pub measured: f64,
    pub standard_error: f64,
    pub z_vs_printed: f64,
    pub z_vs_standard: f64,
    pub consistent_with_printed: bool,
    pub consistent_with_standard: bool,
}

impl CoefficientVerdict {
    pub fn new(measured: f64, standard_error: f64) -> Self {
        let z_p = (measured - PRINTED_COEFFICIENT) / standard_error;
        let z_s = (measured - STANDARD_COEFFICIENT) / standard_error;
        CoefficientVerdict {
            measured,
            standard_error,
            z_vs_printed: z_p,
            z_vs_standard: z_s,
            consistent_with_printed: z_p.abs() <= CONSISTENCY_Z,
            consistent_with_standard: z_s.abs() <= CONSISTENCY_Z,
        }
    }

    pub fn summary(&self) -> String {
        let which = match (self.consistent_with_printed, self.consistent_with_standard) {
            (true, true) => "consistent with both 2/3 and 2 (inconclusive)",
            (true, false) => "consistent with 2/3, rejects 2",
            (false, true) => "consistent with 2, rejects 2/3",
            (false, false) => "consistent with neither 2/3 nor 2",
        };
        format!(
            "<R^2>/(l^2 N) = {:.4} +/- {:.4}: z(2/3) = {:.1}, z(2) = {:.2}; {which}",
            self.measured, self.standard_error, self.z_vs_printed, self.z_vs_standard
        )
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SwarmStatistics {
    pub n_walks: usize,
    pub seed: u64,
    pub prng: String,
    /// l, m
    pub mean_free_path: f64,
    /// Λ from the geometry's diffusion mode, m
    pub diffusion_length: f64,
    /// 2Λ²/(3l²)
    pub analytic_collisions_to_wall: f64,
    /// Mean flights of the walks that ended at a wall; `None` if none did.
    pub mean_collisions_to_wall: Option<f64>,
    pub collisions_to_wall_std_error: Option<f64>,
    /// Σ R² / Σ N over all walks, each stopped at the wall or at ionization [m²].
    pub mean_r2_per_collision: Option<f64>,
    pub r2_per_collision_std_error: Option<f64>,
    pub coefficient: Option<CoefficientVerdict>,
    pub ionization_fraction: f64,
}

fn check_walks(n_walks: usize) -> Result<()> {
    if n_walks < MIN_WALKS {
        Err(Error::TooFewWalks(n_walks))
    } else {
        Ok(())
    }
}

/// Runs `n_walks` independent walks. Walk `i` draws from stream `i`, so the
/// outcomes are the same for any thread count or scheduling.
pub fn run_walks(params: &WalkParams, n_walks: usize, seed: u64) -> Result<Vec<WalkOutcome>> {
    run_walk_range(params, 0..n_walks as u64, seed)
}

/// Walks with indices in `range`, in index order.
pub fn run_walk_range(
    params: &WalkParams,
    range: Range<u64>,
    seed: u64,
) -> Result<Vec<WalkOutcome>> {
    range
        .into_par_iter()
        .map(|i| walk_indexed(params, &mut walk_rng(seed, i), i))
        .collect()
}

/// Grows a run of `outcomes.len()` walks to `n_walks`, simulating only the new
/// indices. The result equals `run_walks(params, n_walks, seed)`.
pub fn extend_walks(
    params: &WalkParams,
    outcomes: &mut Vec<WalkOutcome>,
    n_walks: usize,
    seed: u64,
) -> Result<()> {
    if n_walks > outcomes.len() {
        let more = run_walk_range(params, outcomes.len() as u64..n_walks as u64, seed)?;
        outcomes.extend(more);
    }
    Ok(())
}

/// Aggregates outcomes in index order.
pub fn summarize(
    outcomes: &[WalkOutcome],
    params: &WalkParams,
    diffusion_length: f64,
    seed: u64,
) -> SwarmStatistics {
    let l = params.mean_free_path;
    let lost: Vec<&WalkOutcome> = outcomes
        .iter()
        .filter(|o| o.terminal == Terminal::LostToWall)
        .collect();
    let ionized = outcomes.len() - lost.len();
    let n = lost.len();

    let (mut mean_n, mut se_n, mut slope, mut se_slope, mut verdict) =
        (None, None, None, None, None);
    if n >= 2 {
        let total_n: u128 = lost.iter().map(|o| o.collisions as u128).sum();
        let mean = total_n as f64 / n as f64;
        let var = lost
            .iter()
            .map(|o| {
                let d = o.collisions as f64 - mean;
                d * d
            })
            .sum::<f64>()
            / (n - 1) as f64;
        mean_n = Some(mean);
        se_n = Some((var / n as f64).sqrt());
    }
    // Every walk stops at the wall or at ionization, and R² − 2l²N is a
    // martingale, so the slope uses all walks, not only the lost ones.
    let all = outcomes.len();
    if all >= 2 {
        let total_n: u128 = outcomes.iter().map(|o| o.collisions as u128).sum();
        let mean = total_n as f64 / all as f64;
        let total_r2: f64 = outcomes.iter().map(|o| o.final_r2).sum();
        let r = total_r2 / total_n as f64;
        let resid2: f64 = outcomes
            .iter()
            .map(|o| {
                let e = o.final_r2 - r * o.collisions as f64;
                e * e
            })
            .sum();
        let se = (resid2 / (all as f64 * (all - 1) as f64)).sqrt() / mean;
        slope = Some(r);
        se_slope = Some(se);
        verdict = Some(CoefficientVerdict::new(r / (l * l), se / (l * l)));
    }

    let ratio = diffusion_length / l;
    SwarmStatistics {
        n_walks: outcomes.len(),
        seed,
        prng: PRNG_ID.to_owned(),
        mean_free_path: l,
        diffusion_length,
        analytic_collisions_to_wall: 2.0 * ratio * ratio / 3.0,
        mean_collisions_to_wall: mean_n,
        collisions_to_wall_std_error: se_n,
        mean_r2_per_collision: slope,
        r2_per_collision_std_error: se_slope,
        coefficient: verdict,
        ionization_fraction: ionized as f64 / outcomes.len() as f64,
    }
}

/// Diffusion-only swarm: ionization is switched off so every walk ends at a
/// wall. Measures the mean number of collisions to the wall and ⟨R²⟩/N.
pub fn estimate_collisions_to_wall(
    gas: &GasSpecies,
    conditions: &PlasmaConditions,
    geometry: &ChamberGeometry,
    n_walks: usize,
    seed: u64,
) -> Result<SwarmStatistics> {
    check_walks(n_walks)?;
    let params = WalkParams::new(gas, conditions, geometry)?.without_ionization();
    let lambda = diffusion_length(geometry)?;
    let outcomes = run_walks(&params, n_walks, seed)?;
    let stats = summarize(&outcomes, &params, lambda, seed);
    debug_assert_eq!(
        stats.analytic_collisions_to_wall,
        collisions_to_wall(&KineticState::evaluate(gas, conditions)?, lambda)
    );
    Ok(stats)
}

/// Full swarm with ionization on.
pub fn breakdown_statistics(
    gas: &GasSpecies,
    conditions: &PlasmaConditions,
    geometry: &ChamberGeometry,
    n_walks: usize,
    seed: u64,
) -> Result<SwarmStatistics> {
    check_walks(n_walks)?;
    let params = WalkParams::new(gas, conditions, geometry)?;
    let lambda = diffusion_length(geometry)?;
    let outcomes = run_walks(&params, n_walks, seed)?;
    Ok(summarize(&outcomes, &params, lambda, seed))
}

/// Fraction of electrons that ionize an atom before reaching a wall.
pub fn breakdown_probability(
    gas: &GasSpecies,
    conditions: &PlasmaConditions,
    geometry: &ChamberGeometry,
    n_walks: usize,
    seed: u64,
) -> Result<f64> {
    check_walks(n_walks)?;
    let params = WalkParams::new(gas, conditions, geometry)?;
    let outcomes = run_walks(&params, n_walks, seed)?;
    let ionized = outcomes
        .iter()
        .filter(|o| o.terminal == Terminal::Ionized)
        .count();
    Ok(ionized as f64 / n_walks as f64)
}

/// Displacement moments of wall-free walks after exactly `n` flights.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FreeWalkMoments {
    pub flights: u64,
    /// ⟨R²⟩, m²
    pub mean_r2: f64,
    pub r2_std_error: f64,
    /// ⟨x²⟩ along one Cartesian axis, m²
    pub mean_x2: f64,
    pub x2_std_error: f64,
}

/// Unbounded walks with exponential flights of mean `mean_free_path`,
/// sampled after each count in `checkpoints`.
pub fn free_walk_moments(
    mean_free_path: f64,
    checkpoints: &[u64],
    n_walks: usize,
    seed: u64,
) -> Result<Vec<FreeWalkMoments>> {
    check_walks(n_walks)?;
    if !(mean_free_path > 0.0) {
        return Err(Error::invalid(
            "mean_free_path",
            mean_free_path,
            "must be positive",
        ));
    }
    let mut sorted = checkpoints.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    let last = *sorted
        .last()
        .ok_or_else(|| Error::config("checkpoints", "at least one checkpoint is required"))?;
    let per_walk: Vec<Vec<(f64, f64)>> = (0..n_walks as u64)
        .into_par_iter()
        .map(|i| {
            let mut rng = walk_rng(seed, i);
            let mut pos = [0.0f64; 3];
            let mut marks = Vec::with_capacity(sorted.len());
            let mut next = 0;
            for step in 1..=last {
                let dir = isotropic_direction(&mut rng);
                let s: f64 = mean_free_path * rng.sample::<f64, _>(Exp1);
                for k in 0..3 {
                    pos[k] += s * dir[k];
                }
                if step == sorted[next] {
                    let r2 = pos[0] * pos[0] + pos[1] * pos[1] + pos[2] * pos[2];
                    marks.push((r2, pos[0] * pos[0]));
                    next += 1;
                }
            }
            marks
        })
        .collect();

    let n = n_walks as f64;
    Ok(sorted
        .iter()
        .enumerate()
        .map(|(c, &flights)| {
            let (m_r, se_r) = mean_and_se(per_walk.iter().map(|w| w[c].0), n);
            let (m_x, se_x) = mean_and_se(per_walk.iter().map(|w| w[c].1), n);
            FreeWalkMoments {
                flights,
                mean_r2: m_r,
                r2_std_error: se_r,
                mean_x2: m_x,
                x2_std_error: se_x,
            }
        })
        .collect())
}

fn mean_and_se(values: impl Iterator<Item = f64> + Clone, n: f64) -> (f64, f64) {
    let mean = values.clone().sum::<f64>() / n;
    let var = values.map(|v| (v - mean) * (v - mean)).sum::<f64>() / (n - 1.0);
    (mean, (var / n).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::physical::DiffusionMode;

    #[test]
    fn too_few_walks() {
        let gas = GasSpecies::argon();
        let c = PlasmaConditions::oven(3000.0, 100.0, 300.0).unwrap();
        let g = ChamberGeometry::paper_hemisphere(0.23).unwrap();
        assert!(matches!(
            breakdown_probability(&gas, &c, &g, 99, 0),
            Err(Error::TooFewWalks(99))
        ));
        assert!(matches!(
            estimate_collisions_to_wall(&gas, &c, &g, 10, 0),
            Err(Error::TooFewWalks(10))
        ));
    }

    #[test]
    fn zero_field_never_breaks_down() {
        let gas = GasSpecies::argon();
        let c = PlasmaConditions::oven(0.0, 20.0, 300.0).unwrap();
        let g = ChamberGeometry::paper_hemisphere(0.23).unwrap();
        assert_eq!(breakdown_probability(&gas, &c, &g, 200, 1).unwrap(), 0.0);
    }

    #[test]
    fn verdict_logic() {
        let v = CoefficientVerdict::new(2.01, 0.01);
        assert!(v.consistent_with_standard);
        assert!(!v.consistent_with_printed);
        assert!(v.summary().contains("rejects 2/3"));
    }

    #[test]
    fn same_seed_same_statistics() {
        let gas = GasSpecies::argon();
        let c = PlasmaConditions::oven(0.0, 30.0, 300.0).unwrap();
        let g = ChamberGeometry::cylinder(0.03, 0.03, DiffusionMode::LowestDiffusionMode).unwrap();
        let a = estimate_collisions_to_wall(&gas, &c, &g, 300, 9).unwrap();
        let b = estimate_collisions_to_wall(&gas, &c, &g, 300, 9).unwrap();
        assert_eq!(
            serde_json::to_string(&a).unwrap(),
            serde_json::to_string(&b).unwrap()
        );
        assert_eq!(a.ionization_fraction, 0.0);
    }
}
