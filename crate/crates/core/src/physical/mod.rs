//! Constants, gas data, operating conditions and chamber geometry.
//!
//! All quantities are SI once they are inside one of these types. Millibar,
//! GHz and suffixed strings are only accepted through [`units`] and the
//! `from_lab_units` style constructors.

pub mod conditions;
pub mod constants;
pub mod gas;
pub mod geometry;
pub mod units;

pub use conditions::PlasmaConditions;
pub use constants::PhysicalConstants;
pub use gas::GasSpecies;
pub use geometry::{diffusion_length, ChamberGeometry, ChamberShape, DiffusionMode};
pub use units::{convert_pressure, PressureUnit};
