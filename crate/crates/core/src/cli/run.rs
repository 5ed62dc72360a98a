use serde::Serialize;
use serde_json::{json, Value};

use super::config::{
    OracleMode, OutputFormat, RunConfig, Subcommand, CSV_CONFIG_PREFIX, SCHEMA_VERSION,
};
use crate::breakdown::{
    breakdown_ratio_with, printed_approximation, printed_approximation_terms, sweep,
    write_sweep_csv, BreakdownSettings,
};
use crate::error::{Error, Result};
use crate::lab::{
    compute_removal_rates, extract_finesse, read_removal_table_path, washer_rate_estimate,
    CavityTrace,
};
use crate::oracle::{breakdown_statistics, estimate_collisions_to_wall};
use crate::physical::{GasSpecies, PlasmaConditions};
use crate::waves::PlasmaWaveParameters;

/// Result of a run: the file body plus a one-line summary for the terminal.
#[derive(Debug, Clone, PartialEq)]
pub struct Artifact {
    pub summary: String,
    pub body: Vec<u8>,
}

enum Payload {
    Json(Value),
    /// Header row and data rows, written after the config preamble.
    Csv(Vec<u8>),
}

/// Runs the library call the config asks for and renders the artifact.
pub fn execute(config: &RunConfig) -> Result<Artifact> {
    let (summary, payload) = match config.subcommand {
        Subcommand::Point => point(config)?,
        Subcommand::Sweep => run_sweep(config)?,
        Subcommand::Oracle => oracle(config)?,
        Subcommand::Waves => waves(config)?,
        Subcommand::Finesse => finesse(config)?,
        Subcommand::Removal => removal(config)?,
    };
    let config_text = config.to_text();
    let body = match payload {
        Payload::Json(result) => {
            let doc = json!({
                "schema_version": SCHEMA_VERSION,
                "subcommand": config.subcommand,
                "config": config_text,
                "result": result,
            });
            let mut s = serde_json::to_string_pretty(&doc)?;
            s.push('\n');
            s.into_bytes()
        }
        Payload::Csv(rows) => {
            let mut out = format!("# schema_version = {SCHEMA_VERSION}\n");
            for line in config_text.lines() {
                out.push_str(CSV_CONFIG_PREFIX);
                out.push_str(line);
                out.push('\n');
            }
            let mut out = out.into_bytes();
            out.extend_from_slice(&rows);
            out
        }
    };
    Ok(Artifact { summary, body })
}

fn to_json<T: Serialize>(v: &T) -> Result<Value> {
    Ok(serde_json::to_value(v)?)
}

fn csv_error(e: impl std::fmt::Display) -> Error {
    Error::config("output", e.to_string())
}

fn conditions(c: &RunConfig) -> Result<PlasmaConditions> {
    PlasmaConditions::new(c.field, c.angular_frequency(), c.pressure, c.temperature)
}

fn point(c: &RunConfig) -> Result<(String, Payload)> {
    let gas = GasSpecies::by_name(&c.gas)?;
    let cond = conditions(c)?;
    let settings = BreakdownSettings {
        arc_threshold: c.arc_threshold,
    };
    let report = breakdown_ratio_with(&gas, &cond, &c.geometry, &settings)?;
    let printed = printed_approximation(&cond);
    let (t1, t2) = printed_approximation_terms(&cond);
    let summary = format!(
        "ratio={} printed_approximation={} regime={}",
        report.ratio, printed, report.regime
    );
    let payload = match c.format {
        OutputFormat::Json => Payload::Json(json!({
            "report": to_json(&report)?,
            "printed_approximation": printed,
            "printed_approximation_terms": [t1, t2],
        })),
        OutputFormat::Csv => {
            let grid = sweep(
                &gas,
                &c.geometry,
                &[c.field],
                &[c.pressure],
                c.temperature,
                c.angular_frequency(),
                &settings,
            )?;
            let mut rows = Vec::new();
            write_sweep_csv(&grid, &mut rows).map_err(csv_error)?;
            Payload::Csv(rows)
        }
    };
    Ok((summary, payload))
}

fn run_sweep(c: &RunConfig) -> Result<(String, Payload)> {
    let gas = GasSpecies::by_name(&c.gas)?;
    let field = c.field_axis.values("E")?;
    let pressure = c.pressure_axis.values("P")?;
    let settings = BreakdownSettings {
        arc_threshold: c.arc_threshold,
    };
    let grid = sweep(
        &gas,
        &c.geometry,
        &field,
        &pressure,
        c.temperature,
        c.angular_frequency(),
        &settings,
    )?;
    let ignite = grid.iter().filter(|r| r.breaks_down()).count();
    let summary = format!(
        "{}x{} grid (P x E), {} of {} cells satisfy the criterion",
        pressure.len(),
        field.len(),
        ignite,
        pressure.len() * field.len()
    );
    let payload = match c.format {
        OutputFormat::Csv => {
            let mut rows = Vec::new();
            write_sweep_csv(&grid, &mut rows).map_err(csv_error)?;
            Payload::Csv(rows)
        }
        OutputFormat::Json => Payload::Json(to_json(&grid)?),
    };
    Ok((summary, payload))
}

fn oracle(c: &RunConfig) -> Result<(String, Payload)> {
    let gas = GasSpecies::by_name(&c.gas)?;
    let cond = conditions(c)?;
    let stats = match c.oracle_mode {
        OracleMode::Diffusion => {
            estimate_collisions_to_wall(&gas, &cond, &c.geometry, c.walks, c.seed)?
        }
        OracleMode::Breakdown => breakdown_statistics(&gas, &cond, &c.geometry, c.walks, c.seed)?,
    };
    let mut summary = format!(
        "walks={} ionized_fraction={}",
        stats.n_walks, stats.ionization_fraction
    );
    if let Some(n) = stats.mean_collisions_to_wall {
        summary.push_str(&format!(
            " mean_collisions_to_wall={n} analytic={}",
            stats.analytic_collisions_to_wall
        ));
    }
    if let Some(v) = &stats.coefficient {
        summary.push_str(&format!(" | {}", v.summary()));
    }
    Ok((summary, Payload::Json(to_json(&stats)?)))
}

fn waves(c: &RunConfig) -> Result<(String, Payload)> {
    let w = PlasmaWaveParameters::evaluate(c.electron_density, c.angular_frequency())?;
    let fp = w.plasma_frequency / (2.0 * std::f64::consts::PI);
    let summary = match w.skin_depth() {
        Some(d) => format!("plasma_frequency={fp} Hz evanescent skin_depth={d} m"),
        None => format!("plasma_frequency={fp} Hz propagating"),
    };
    Ok((summary, Payload::Json(to_json(&w)?)))
}

fn finesse(c: &RunConfig) -> Result<(String, Payload)> {
    let path = c.trace.as_ref().expect("validated");
    let mut trace = CavityTrace::from_csv_path(path)?;
    if let Some(r) = c.sweep_rate {
        trace = trace.with_sweep_rate(r);
    }
    let r = extract_finesse(&trace, &c.peak)?;
    let summary = format!(
        "finesse={} uncertainty={} peaks={}",
        r.finesse, r.uncertainty, r.n_peaks_used
    );
    let payload = match c.format {
        OutputFormat::Json => Payload::Json(to_json(&r)?),
        OutputFormat::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record([
                "center",
                "center_std_error",
                "fwhm",
                "fwhm_std_error",
                "amplitude",
            ])
            .map_err(csv_error)?;
            for p in &r.peaks {
                w.write_record(
                    [
                        p.center,
                        p.center_std_error,
                        p.fwhm,
                        p.fwhm_std_error,
                        p.amplitude,
                    ]
                    .map(|v| format!("{v:e}")),
                )
                .map_err(csv_error)?;
            }
            Payload::Csv(w.into_inner().map_err(csv_error)?)
        }
    };
    Ok((summary, payload))
}

fn removal(c: &RunConfig) -> Result<(String, Payload)> {
    let path = c.table.as_ref().expect("validated");
    let table = read_removal_table_path(path)?;
    let records = compute_removal_rates(&table.records)?;
    let washer = match c.washer_bounds_min {
        Some(bounds) => {
            let (lo, hi) = washer_rate_estimate(c.washer_thickness_nm, bounds)?;
            Some(json!({
                "layer_thickness_nm": c.washer_thickness_nm,
                "t_low_min": bounds.0,
                "t_high_min": bounds.1,
                "rate_low_nm_per_min": lo,
                "rate_high_nm_per_min": hi,
            }))
        }
        None => None,
    };
    let mut summary = format!(
        "{} rates computed, {} incomplete rows skipped",
        records.len(),
        table.missing.len()
    );
    if let Some(w) = &washer {
        summary.push_str(&format!(
            " | washer rate in [{}, {}] nm/min",
            w["rate_low_nm_per_min"], w["rate_high_nm_per_min"]
        ));
    }
    let payload = match c.format {
        OutputFormat::Json => Payload::Json(json!({
            "records": to_json(&records)?,
            "missing": to_json(&table.missing)?,
            "washer": washer,
        })),
        OutputFormat::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record([
                "label",
                "thickness_nm",
                "exposure_min",
                "pressure_pa",
                "argon_scfh",
                "air_scfh",
                "removal_rate_nm_per_min",
                "removal_rate_2dp",
                "status",
            ])
            .map_err(csv_error)?;
            let opt =
                |v: Option<crate::lab::ExactDecimal>| v.map(|d| d.to_string()).unwrap_or_default();
            for r in &records {
                w.write_record([
                    r.label.clone(),
                    r.thickness_removed.to_string(),
                    r.exposure_time.to_string(),
                    opt(r.pressure),
                    opt(r.argon_flow),
                    opt(r.air_flow),
                    format!("{:e}", r.removal_rate.to_f64()),
                    r.removal_rate.to_fixed(2),
                    "ok".into(),
                ])
                .map_err(csv_error)?;
            }
            for m in &table.missing {
                let mut row = vec![m.label.clone()];
                row.extend(std::iter::repeat_n(String::new(), 7));
                row.push(format!("missing {}", m.missing.join("+")));
                w.write_record(&row).map_err(csv_error)?;
            }
            Payload::Csv(w.into_inner().map_err(csv_error)?)
        }
    };
    Ok((summary, payload))
}
