//! Ignition criterion: collisions needed to ionize versus collisions before
//! an electron diffuses to the wall.
//!
//! [`breakdown_ratio`] evaluates the full criterion and is the canonical
//! answer. [`printed_approximation`] evaluates the published two-term
//! closed form with its printed constants. The two differ by a roughly
//! constant factor (≈2.3 at the oven operating point); both are kept.

mod criterion;
mod sweep;

pub use criterion::{
    breakdown_ratio, breakdown_ratio_with, classify_regime, closed_form_coefficients,
    collisions_to_ionize, collisions_to_wall, printed_approximation, printed_approximation_terms,
    BreakdownReport, BreakdownSettings, ClosedFormCoefficients, Regime, DEFAULT_ARC_THRESHOLD_PA,
};
pub use sweep::{sweep, write_sweep_csv, AxisScale, AxisSpec, SweepGrid, SWEEP_CSV_COLUMNS};
