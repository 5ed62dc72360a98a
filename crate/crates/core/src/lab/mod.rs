//! Analysis of the two bench measurements: cavity finesse from photodiode
//! traces and gold removal rates from thickness/exposure tables.

mod finesse;
mod fit;
mod removal;
mod trace;

pub use finesse::{extract_finesse, FinesseResult, FittedPeak, PeakConfig, SpectralUnits};
pub use fit::{fit_lorentzian, LorentzianFit};
pub use removal::{
    compute_removal_rates, decimal_places, read_removal_table, read_removal_table_path,
    washer_rate_estimate, ExactDecimal, MissingRow, PartialRemovalRecord, RemovalRecord,
    RemovalTable, REMOVAL_CSV_COLUMNS,
};
pub use trace::{lorentzian, CavityTrace, SyntheticTrace};
