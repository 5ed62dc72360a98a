use std::io::Write;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::criterion::{breakdown_ratio_with, BreakdownReport, BreakdownSettings};
use crate::error::{Error, Result};
use crate::physical::{ChamberGeometry, GasSpecies, PlasmaConditions};

/// Column order of the sweep CSV. Part of the output contract.
pub const SWEEP_CSV_COLUMNS: [&str; 11] = [
    "E",
    "P",
    "T",
    "l",
    "nu_c",
    "E_eff",
    "N_i",
    "N_d",
    "ratio",
    "log10_ratio",
    "regime",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AxisScale {
    Linear,
    Log,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AxisSpec {
    pub min: f64,
    pub max: f64,
    pub count: usize,
    pub scale: AxisScale,
}

impl AxisSpec {
    pub fn values(&self, axis: &'static str) -> Result<Vec<f64>> {
        if self.count == 0 {
            return Err(Error::InvalidAxis {
                axis,
                index: 0,
                reason: "count must be at least 1",
            });
        }
        if !self.min.is_finite() || !self.max.is_finite() {
            return Err(Error::InvalidAxis {
                axis,
                index: 0,
                reason: "bounds must be finite",
            });
        }
        if self.scale == AxisScale::Log && !(self.min > 0.0 && self.max > 0.0) {
            return Err(Error::InvalidAxis {
                axis,
                index: 0,
                reason: "log axes need positive bounds",
            });
        }
        if self.count == 1 {
            return Ok(vec![self.min]);
        }
        let n = self.count - 1;
        let values = (0..=n)
            .map(|i| {
                if i == n {
                    return self.max;
                }
                let f = i as f64 / n as f64;
                match self.scale {
                    AxisScale::Linear => self.min + f * (self.max - self.min),
                    AxisScale::Log => self.min * (self.max / self.min).powf(f),
                }
            })
            .collect::<Vec<_>>();
        validate_axis(axis, &values)?;
        Ok(values)
    }
}

/// Breakdown reports over an (E, P) grid at fixed temperature.
///
/// `cells[i][j]` is the report at pressure `pressure_axis[i]` and field `field_axis[j]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepGrid {
    pub field_axis: Vec<f64>,
    pub pressure_axis: Vec<f64>,
    pub temperature: f64,
    pub angular_frequency: f64,
    pub cells: Vec<Vec<BreakdownReport>>,
}

impl SweepGrid {
    pub fn cell(&self, pressure_index: usize, field_index: usize) -> &BreakdownReport {
        &self.cells[pressure_index][field_index]
    }

    pub fn iter(&self) -> impl Iterator<Item = &BreakdownReport> {
        self.cells.iter().flatten()
    }
}

fn validate_axis(axis: &'static str, values: &[f64]) -> Result<()> {
    if values.is_empty() {
        return Err(Error::InvalidAxis {
            axis,
            index: 0,
            reason: "axis is empty",
        });
    }
    for (i, v) in values.iter().enumerate() {
        if !v.is_finite() {
            return Err(Error::InvalidAxis {
                axis,
                index: i,
                reason: "value is not finite",
            });
        }
        if i > 0 && !(values[i - 1] < *v) {
            return Err(Error::InvalidAxis {
                axis,
                index: i,
                reason: "axis must be strictly increasing",
            });
        }
    }
    Ok(())
}

/// Evaluates the criterion at every (E, P) cell. Cells are independent and
/// computed in parallel; the result does not depend on scheduling.
pub fn sweep(
    gas: &GasSpecies,
    geometry: &ChamberGeometry,
    field_axis: &[f64],
    pressure_axis: &[f64],
    temperature: f64,
    angular_frequency: f64,
    settings: &BreakdownSettings,
) -> Result<SweepGrid> {
    validate_axis("E", field_axis)?;
    validate_axis("P", pressure_axis)?;
    if let Some(i) = field_axis.iter().position(|&e| e < 0.0) {
        return Err(Error::InvalidAxis {
            axis: "E",
            index: i,
            reason: "field must be non-negative",
        });
    }
    if let Some(i) = pressure_axis.iter().position(|&p| p <= 0.0) {
        return Err(Error::InvalidAxis {
            axis: "P",
            index: i,
            reason: "pressure must be positive",
        });
    }
    let ne = field_axis.len();
    let flat = (0..ne * pressure_axis.len())
        .into_par_iter()
        .map(|k| {
            let (i, j) = (k / ne, k % ne);
            let c = PlasmaConditions::new(
                field_axis[j],
                angular_frequency,
                pressure_axis[i],
                temperature,
            )?;
            breakdown_ratio_with(gas, &c, geometry, settings)
        })
        .collect::<Result<Vec<_>>>()?;
    let cells = flat.chunks(ne).map(<[_]>::to_vec).collect();
    Ok(SweepGrid {
        field_axis: field_axis.to_vec(),
        pressure_axis: pressure_axis.to_vec(),
        temperature,
        angular_frequency,
        cells,
    })
}

/// Writes one row per cell, pressure-major, in [`SWEEP_CSV_COLUMNS`] order.
///
/// Floats use Rust's shortest round-trip exponent form; infinities print as `inf`.
pub fn write_sweep_csv<W: Write>(grid: &SweepGrid, out: W) -> std::io::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(SWEEP_CSV_COLUMNS)?;
    for r in grid.iter() {
        let k = &r.kinetic;
        let row = [
            r.conditions.field_amplitude,
            r.conditions.pressure,
            r.conditions.temperature,
            k.mean_free_path,
            k.collision_frequency,
            k.effective_field,
            r.collisions_to_ionize,
            r.collisions_to_wall,
            r.ratio,
            r.log10_ratio,
        ];
        let mut fields: Vec<String> = row.iter().map(|v| format!("{v:e}")).collect();
        fields.push(r.regime.as_str().to_owned());
        w.write_record(&fields)?;
    }
    w.flush()
}
