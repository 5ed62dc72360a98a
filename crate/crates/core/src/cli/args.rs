use std::path::PathBuf;

use clap::{Args, Parser};

use super::config::{Settings, Subcommand};
use crate::error::Result;

#[derive(Debug, Parser)]
#[command(
    name = "plasma-ignition",
    version,
    about = "Microwave breakdown criterion, wave parameters, random-walk oracle and lab analysis"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, clap::Subcommand)]
pub enum Command {
    /// Evaluate the criterion over an (E, P) grid.
    Sweep(SweepArgs),
    /// Evaluate the criterion at one operating point.
    Point(PointArgs),
    /// Run the Monte Carlo random-walk oracle.
    Oracle(OracleArgs),
    /// Plasma frequency, refractive index and skin depth.
    Waves(WavesArgs),
    /// Cavity finesse from a photodiode trace.
    Finesse(FinesseArgs),
    /// Removal rates from a thickness/exposure table.
    Removal(RemovalArgs),
}

#[derive(Debug, Clone, Default, Args)]
pub struct RunArgs {
    /// Config file, or a previous JSON/CSV artifact to re-run.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Output file. Defaults to `<subcommand>.<format>` in $PLASMA_IGNITION_OUT_DIR or the working directory.
    #[arg(long, short)]
    pub output: Option<PathBuf>,
    /// Worker threads; results do not depend on it.
    #[arg(long)]
    pub threads: Option<usize>,
    /// csv or json.
    #[arg(long)]
    pub format: Option<String>,
}

#[derive(Debug, Clone, Default, Args)]
pub struct ChamberArgs {
    #[arg(long)]
    pub gas: Option<String>,
    /// hemisphere or cylinder.
    #[arg(long)]
    pub geometry: Option<String>,
    /// Hemisphere diameter, e.g. 0.23 or 23cm.
    #[arg(long = "d")]
    pub d: Option<String>,
    #[arg(long)]
    pub radius: Option<String>,
    #[arg(long)]
    pub height: Option<String>,
    /// d_over_pi (Λ = d/π) or lowest (cylinder fundamental mode).
    #[arg(long = "diffusion_mode")]
    pub diffusion_mode: Option<String>,
    /// Gas temperature [K].
    #[arg(long = "T")]
    pub temperature: Option<String>,
    /// Field frequency, e.g. 2.45GHz.
    #[arg(long = "f")]
    pub frequency: Option<String>,
}

#[derive(Debug, Clone, Args)]
pub struct PointArgs {
    #[command(flatten)]
    pub run: RunArgs,
    #[command(flatten)]
    pub chamber: ChamberArgs,
    /// Field amplitude [V/m].
    #[arg(long = "E")]
    pub field: Option<String>,
    /// Pressure, e.g. 1mbar or 100.
    #[arg(long = "P")]
    pub pressure: Option<String>,
    #[arg(long = "arc_threshold")]
    pub arc_threshold: Option<String>,
}

#[derive(Debug, Clone, Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub run: RunArgs,
    #[command(flatten)]
    pub chamber: ChamberArgs,
    #[arg(long = "E_min")]
    pub e_min: Option<String>,
    #[arg(long = "E_max")]
    pub e_max: Option<String>,
    #[arg(long = "E_count")]
    pub e_count: Option<String>,
    /// linear or log.
    #[arg(long = "E_scale")]
    pub e_scale: Option<String>,
    #[arg(long = "P_min")]
    pub p_min: Option<String>,
    #[arg(long = "P_max")]
    pub p_max: Option<String>,
    #[arg(long = "P_count")]
    pub p_count: Option<String>,
    #[arg(long = "P_scale")]
    pub p_scale: Option<String>,
    #[arg(long = "arc_threshold")]
    pub arc_threshold: Option<String>,
}

#[derive(Debug, Clone, Args)]
pub struct OracleArgs {
    #[command(flatten)]
    pub run: RunArgs,
    #[command(flatten)]
    pub chamber: ChamberArgs,
    #[arg(long = "E")]
    pub field: Option<String>,
    #[arg(long = "P")]
    pub pressure: Option<String>,
    /// diffusion (ionization off) or breakdown.
    #[arg(long)]
    pub mode: Option<String>,
    #[arg(long)]
    pub walks: Option<String>,
    #[arg(long)]
    pub seed: Option<String>,
}

#[derive(Debug, Clone, Args)]
pub struct WavesArgs {
    #[command(flatten)]
    pub run: RunArgs,
    /// Electron density [m⁻³].
    #[arg(long = "n_e")]
    pub density: Option<String>,
    #[arg(long = "f")]
    pub frequency: Option<String>,
}

#[derive(Debug, Clone, Args)]
pub struct FinesseArgs {
    #[command(flatten)]
    pub run: RunArgs,
    /// Two-column CSV: time [s], voltage [V].
    #[arg(long)]
    pub trace: Option<String>,
    /// Detection threshold as a fraction of the peak height.
    #[arg(long)]
    pub threshold: Option<String>,
    #[arg(long = "min_separation")]
    pub min_separation: Option<String>,
    /// Fit window half width in HWHMs.
    #[arg(long = "fit_window")]
    pub fit_window: Option<String>,
    /// Trace time to frequency conversion [Hz/s].
    #[arg(long = "sweep_rate")]
    pub sweep_rate: Option<String>,
}

#[derive(Debug, Clone, Args)]
pub struct RemovalArgs {
    #[command(flatten)]
    pub run: RunArgs,
    /// CSV with label,thickness_nm,exposure_min[,pressure_mbar,argon_scfh,air_scfh].
    #[arg(long)]
    pub table: Option<String>,
    #[arg(long = "washer_thickness_nm")]
    pub washer_thickness_nm: Option<String>,
    #[arg(long = "washer_t_low_min")]
    pub washer_t_low_min: Option<String>,
    #[arg(long = "washer_t_high_min")]
    pub washer_t_high_min: Option<String>,
}

fn apply(s: &mut Settings, pairs: &[(&str, &Option<String>)]) -> Result<()> {
    for (k, v) in pairs {
        if let Some(v) = v {
            s.set(k, v.clone())?;
        }
    }
    Ok(())
}

impl ChamberArgs {
    fn apply(&self, s: &mut Settings) -> Result<()> {
        apply(
            s,
            &[
                ("gas", &self.gas),
                ("geometry", &self.geometry),
                ("d", &self.d),
                ("radius", &self.radius),
                ("height", &self.height),
                ("diffusion_mode", &self.diffusion_mode),
                ("T", &self.temperature),
                ("f", &self.frequency),
            ],
        )
    }
}

impl Command {
    pub fn subcommand(&self) -> Subcommand {
        match self {
            Command::Sweep(_) => Subcommand::Sweep,
            Command::Point(_) => Subcommand::Point,
            Command::Oracle(_) => Subcommand::Oracle,
            Command::Waves(_) => Subcommand::Waves,
            Command::Finesse(_) => Subcommand::Finesse,
            Command::Removal(_) => Subcommand::Removal,
        }
    }

    pub fn run_args(&self) -> &RunArgs {
        match self {
            Command::Sweep(a) => &a.run,
            Command::Point(a) => &a.run,
            Command::Oracle(a) => &a.run,
            Command::Waves(a) => &a.run,
            Command::Finesse(a) => &a.run,
            Command::Removal(a) => &a.run,
        }
    }

    /// Layers the command-line flags over `s`.
    pub fn apply_flags(&self, s: &mut Settings) -> Result<()> {
        apply(s, &[("format", &self.run_args().format)])?;
        match self {
            Command::Point(a) => {
                a.chamber.apply(s)?;
                apply(
                    s,
                    &[
                        ("E", &a.field),
                        ("P", &a.pressure),
                        ("arc_threshold", &a.arc_threshold),
                    ],
                )
            }
            Command::Sweep(a) => {
                a.chamber.apply(s)?;
                apply(
                    s,
                    &[
                        ("E_min", &a.e_min),
                        ("E_max", &a.e_max),
                        ("E_count", &a.e_count),
                        ("E_scale", &a.e_scale),
                        ("P_min", &a.p_min),
                        ("P_max", &a.p_max),
                        ("P_count", &a.p_count),
                        ("P_scale", &a.p_scale),
                        ("arc_threshold", &a.arc_threshold),
                    ],
                )
            }
            Command::Oracle(a) => {
                a.chamber.apply(s)?;
                apply(
                    s,
                    &[
                        ("E", &a.field),
                        ("P", &a.pressure),
                        ("mode", &a.mode),
                        ("walks", &a.walks),
                        ("seed", &a.seed),
                    ],
                )
            }
            Command::Waves(a) => apply(s, &[("n_e", &a.density), ("f", &a.frequency)]),
            Command::Finesse(a) => apply(
                s,
                &[
                    ("trace", &a.trace),
                    ("threshold", &a.threshold),
                    ("min_separation", &a.min_separation),
                    ("fit_window", &a.fit_window),
                    ("sweep_rate", &a.sweep_rate),
                ],
            ),
            Command::Removal(a) => apply(
                s,
                &[
                    ("table", &a.table),
                    ("washer_thickness_nm", &a.washer_thickness_nm),
                    ("washer_t_low_min", &a.washer_t_low_min),
                    ("washer_t_high_min", &a.washer_t_high_min),
                ],
            ),
        }
    }
}
