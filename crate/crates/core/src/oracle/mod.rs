//! Seeded Monte Carlo random walks of single electrons.
//!
//! This is a brute-force check on the analytic criterion, not a plasma
//! simulation: no field-resolved trajectories, no space charge, no secondary
//! electrons. Each walk owns a ChaCha8 stream derived from `(seed, walk_index)`,
//! so results are bit-identical for any degree of parallelism.

mod domain;
mod swarm;
mod walk;

pub use domain::{Vec3, WalkDomain};
pub use swarm::{
    breakdown_probability, breakdown_statistics, estimate_collisions_to_wall, extend_walks,
    free_walk_moments, run_walk_range, run_walks, summarize, CoefficientVerdict, FreeWalkMoments,
    SwarmStatistics, CONSISTENCY_Z, MIN_WALKS, PRINTED_COEFFICIENT, STANDARD_COEFFICIENT,
};
pub use walk::{
    isotropic_direction, walk_electron, walk_rng, ElectronState, Terminal, WalkOutcome, WalkParams,
    COLLISION_CAP, PRNG_ID,
};
