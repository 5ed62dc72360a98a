//! Predicts whether a microwave field ignites a glow discharge in a low-pressure
//! gas, and cross-checks the prediction with a Monte Carlo electron random walk.
//!
//! The library is organised bottom-up:
//!
//! - [`physical`]: constants, gas species, operating conditions, chamber geometry.
//! - [`kinetics`]: mean free path, collision frequency, effective field, energy gain.
//! - [`breakdown`]: the ignition criterion, the published closed form, regime
//!   classification and (E, P) sweeps.
//! - [`waves`]: plasma frequency, refractive index and skin depth.
//! - [`oracle`]: seeded random-walk simulator.
//! - [`lab`]: cavity finesse from photodiode traces and surface removal rates.
//! - [`cli`]: configuration and artifact writing behind the `plasma-ignition` binary.
//!
//! ```
//! use plasma_ignition::breakdown::{breakdown_ratio, Regime};
//! use plasma_ignition::physical::{ChamberGeometry, GasSpecies, PlasmaConditions};
//!
//! let conditions = PlasmaConditions::from_lab_units(3000.0, 2.45, 1.0, 300.0)?;
//! let bowl = ChamberGeometry::paper_hemisphere(0.23)?;
//! let report = breakdown_ratio(&GasSpecies::argon(), &conditions, &bowl)?;
//! assert!(report.ratio < 0.05);
//! assert_eq!(report.regime, Regime::GlowDischarge);
//! # Ok::<(), plasma_ignition::Error>(())
//! ```

pub mod breakdown;
pub mod cli;
mod error;
pub mod kinetics;
pub mod lab;
pub mod oracle;
pub mod physical;
pub mod waves;

pub use error::{Error, Result};

/// The guide in `book/src` is compiled here so its snippets run as doctests.
#[cfg(doctest)]
pub mod book {
    #[doc = include_str!("../../../README.md")]
    pub mod readme {}
    #[doc = include_str!("../../../book/src/introduction.md")]
    pub mod introduction {}
    #[doc = include_str!("../../../book/src/criterion.md")]
    pub mod criterion {}
    #[doc = include_str!("../../../book/src/sweeps.md")]
    pub mod sweeps {}
    #[doc = include_str!("../../../book/src/waves.md")]
    pub mod waves {}
    #[doc = include_str!("../../../book/src/random_walk.md")]
    pub mod random_walk {}
    #[doc = include_str!("../../../book/src/lab_analysis.md")]
    pub mod lab_analysis {}
    #[doc = include_str!("../../../book/src/cli.md")]
    pub mod cli {}
}
