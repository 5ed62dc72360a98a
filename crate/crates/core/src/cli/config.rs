//! Flat `key = value` configuration with one section per subcommand.
//!
//! ```text
//! gas = "argon"          # applies to every subcommand that uses it
//!
//! [point]
//! E = 3000
//! P = "1mbar"
//! ```
//!
//! The syntax is TOML restricted to one level of sections. Quantities may be
//! bare SI numbers or strings with a unit suffix. Keys are checked against a
//! fixed table and anything unrecognised is rejected.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::breakdown::{AxisScale, AxisSpec, DEFAULT_ARC_THRESHOLD_PA};
use crate::error::{Error, Result};
use crate::lab::PeakConfig;
use crate::oracle::MIN_WALKS;
use crate::physical::conditions::OVEN_FREQUENCY_GHZ;
use crate::physical::units::{parse_quantity, QuantityKind};
use crate::physical::{ChamberGeometry, DiffusionMode, GasSpecies};
use crate::waves::NOMINAL_ELECTRON_DENSITY;

/// Version stamped into every artifact.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Subcommand {
    Sweep,
    Point,
    Oracle,
    Waves,
    Finesse,
    Removal,
}

impl Subcommand {
    pub const ALL: [Subcommand; 6] = [
        Subcommand::Sweep,
        Subcommand::Point,
        Subcommand::Oracle,
        Subcommand::Waves,
        Subcommand::Finesse,
        Subcommand::Removal,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Subcommand::Sweep => "sweep",
            Subcommand::Point => "point",
            Subcommand::Oracle => "oracle",
            Subcommand::Waves => "waves",
            Subcommand::Finesse => "finesse",
            Subcommand::Removal => "removal",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|s| s.name() == name)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Csv,
    Json,
}

impl OutputFormat {
    pub fn extension(self) -> &'static str {
        match self {
            OutputFormat::Csv => "csv",
            OutputFormat::Json => "json",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OracleMode {
    /// Ionization off; measures collisions to the wall.
    Diffusion,
    /// Ionization on; measures the breakdown probability.
    Breakdown,
}

#[derive(Clone, Copy)]
enum Kind {
    Quantity(QuantityKind),
    Count,
    Seed,
    Word(&'static [&'static str]),
    Text,
}

use Subcommand::*;

const GEOMETRY: &[Subcommand] = &[Sweep, Point, Oracle];
const CONDITIONS: &[Subcommand] = &[Point, Oracle];

struct KeySpec {
    name: &'static str,
    scope: &'static [Subcommand],
    kind: Kind,
}

const fn key(name: &'static str, scope: &'static [Subcommand], kind: Kind) -> KeySpec {
    KeySpec { name, scope, kind }
}

const KEYS: &[KeySpec] = &[
    key("format", &Subcommand::ALL, Kind::Word(&["csv", "json"])),
    key("gas", GEOMETRY, Kind::Text),
    key(
        "geometry",
        GEOMETRY,
        Kind::Word(&["hemisphere", "cylinder"]),
    ),
    key("d", GEOMETRY, Kind::Quantity(QuantityKind::Length)),
    key("radius", GEOMETRY, Kind::Quantity(QuantityKind::Length)),
    key("height", GEOMETRY, Kind::Quantity(QuantityKind::Length)),
    key(
        "diffusion_mode",
        GEOMETRY,
        Kind::Word(&["d_over_pi", "lowest"]),
    ),
    key("T", GEOMETRY, Kind::Quantity(QuantityKind::Plain("K"))),
    key(
        "f",
        &[Sweep, Point, Oracle, Waves],
        Kind::Quantity(QuantityKind::Frequency),
    ),
    key(
        "arc_threshold",
        &[Sweep, Point],
        Kind::Quantity(QuantityKind::Pressure),
    ),
    key("E", CONDITIONS, Kind::Quantity(QuantityKind::Plain("V/m"))),
    key("P", CONDITIONS, Kind::Quantity(QuantityKind::Pressure)),
    key(
        "E_min",
        &[Sweep],
        Kind::Quantity(QuantityKind::Plain("V/m")),
    ),
    key(
        "E_max",
        &[Sweep],
        Kind::Quantity(QuantityKind::Plain("V/m")),
    ),
    key("E_count", &[Sweep], Kind::Count),
    key("E_scale", &[Sweep], Kind::Word(&["linear", "log"])),
    key("P_min", &[Sweep], Kind::Quantity(QuantityKind::Pressure)),
    key("P_max", &[Sweep], Kind::Quantity(QuantityKind::Pressure)),
    key("P_count", &[Sweep], Kind::Count),
    key("P_scale", &[Sweep], Kind::Word(&["linear", "log"])),
    key("mode", &[Oracle], Kind::Word(&["diffusion", "breakdown"])),
    key("walks", &[Oracle], Kind::Count),
    key("seed", &[Oracle], Kind::Seed),
    key("n_e", &[Waves], Kind::Quantity(QuantityKind::Plain("m^-3"))),
    key("trace", &[Finesse], Kind::Text),
    key(
        "threshold",
        &[Finesse],
        Kind::Quantity(QuantityKind::Plain("")),
    ),
    key(
        "min_separation",
        &[Finesse],
        Kind::Quantity(QuantityKind::Time),
    ),
    key(
        "fit_window",
        &[Finesse],
        Kind::Quantity(QuantityKind::Plain("")),
    ),
    key(
        "sweep_rate",
        &[Finesse],
        Kind::Quantity(QuantityKind::Plain("Hz/s")),
    ),
    key("table", &[Removal], Kind::Text),
    key(
        "washer_thickness_nm",
        &[Removal],
        Kind::Quantity(QuantityKind::Plain("nm")),
    ),
    key(
        "washer_t_low_min",
        &[Removal],
        Kind::Quantity(QuantityKind::Plain("min")),
    ),
    key(
        "washer_t_high_min",
        &[Removal],
        Kind::Quantity(QuantityKind::Plain("min")),
    ),
];

fn spec(name: &str) -> Option<&'static KeySpec> {
    KEYS.iter().find(|k| k.name == name)
}

/// Raw `key -> value` text gathered from the config file and flags, later layers winning.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Settings {
    subcommand: Option<Subcommand>,
    values: BTreeMap<&'static str, String>,
}

impl Settings {
    pub fn new(subcommand: Subcommand) -> Self {
        Settings {
            subcommand: Some(subcommand),
            values: BTreeMap::new(),
        }
    }

    fn sub(&self) -> Subcommand {
        self.subcommand
            .expect("settings are created for a subcommand")
    }

    /// Sets `name`, checking that the key exists and applies to this subcommand.
    pub fn set(&mut self, name: &str, value: impl Into<String>) -> Result<()> {
        let sub = self.sub();
        let spec = spec(name).ok_or_else(|| Error::config(name, "unknown key"))?;
        if !spec.scope.contains(&sub) {
            return Err(Error::config(
                name,
                format!("does not apply to the {} subcommand", sub.name()),
            ));
        }
        self.values.insert(spec.name, value.into());
        Ok(())
    }

    /// Merges config text: top-level keys and the `[common]` and `[<subcommand>]`
    /// sections apply; other subcommand sections are checked and skipped.
    pub fn merge_text(&mut self, text: &str) -> Result<()> {
        let sub = self.sub();
        let table: toml::Table = text
            .parse()
            .map_err(|e: toml::de::Error| Error::config("config", e.message().to_string()))?;
        let mut deferred = Vec::new();
        for (name, value) in &table {
            match value {
                toml::Value::Table(section) => {
                    let target =
                        if name == "common" {
                            None
                        } else {
                            Some(Subcommand::from_name(name).ok_or_else(|| {
                                Error::config(format!("[{name}]"), "unknown section")
                            })?)
                        };
                    for (k, v) in section {
                        let field = format!("{name}.{k}");
                        let spec = spec(k).ok_or_else(|| Error::config(&field, "unknown key"))?;
                        if let Some(t) = target {
                            if !spec.scope.contains(&t) {
                                return Err(Error::config(
                                    field,
                                    format!("does not apply to the {name} subcommand"),
                                ));
                            }
                        }
                        let text = scalar_text(&field, v)?;
                        if target.is_none_or(|t| t == sub) {
                            // Section values override top-level values regardless of order.
                            deferred.push((spec, text, target.is_some()));
                        }
                    }
                }
                other => {
                    let spec = spec(name).ok_or_else(|| Error::config(name, "unknown key"))?;
                    deferred.push((spec, scalar_text(name, other)?, false));
                }
            }
        }
        deferred.sort_by_key(|d| d.2);
        for (spec, text, _) in deferred {
            if spec.scope.contains(&sub) {
                self.values.insert(spec.name, text);
            }
        }
        Ok(())
    }

    fn get(&self, name: &str) -> Option<&str> {
        self.values.get(name).map(String::as_str)
    }

    fn quantity(&self, name: &'static str, default: f64) -> Result<f64> {
        Ok(self.optional_quantity(name)?.unwrap_or(default))
    }

    fn optional_quantity(&self, name: &'static str) -> Result<Option<f64>> {
        let Some(text) = self.get(name) else {
            return Ok(None);
        };
        let Kind::Quantity(kind) = spec(name).expect("known key").kind else {
            unreachable!("{name} is not a quantity")
        };
        let v = parse_quantity(text, kind).map_err(|_| {
            Error::config(
                name,
                format!("{text:?} is not a number with a recognised unit"),
            )
        })?;
        if !v.is_finite() {
            return Err(Error::config(name, "must be finite"));
        }
        Ok(Some(v))
    }

    fn count(&self, name: &'static str, default: usize) -> Result<usize> {
        match self.get(name) {
            None => Ok(default),
            Some(t) => t
                .trim()
                .parse()
                .map_err(|_| Error::config(name, format!("{t:?} is not a non-negative integer"))),
        }
    }

    fn word(&self, name: &'static str, default: &'static str) -> Result<&'static str> {
        let Kind::Word(words) = spec(name).expect("known key").kind else {
            unreachable!("{name} is not a word")
        };
        let Some(text) = self.get(name) else {
            return Ok(default);
        };
        words
            .iter()
            .find(|w| **w == text.trim())
            .copied()
            .ok_or_else(|| Error::config(name, format!("{text:?} is not one of {words:?}")))
    }

    /// Validates and converts to a typed [`RunConfig`].
    pub fn resolve(&self) -> Result<RunConfig> {
        let sub = self.sub();
        let gas = self.get("gas").unwrap_or("argon").trim().to_string();
        if GEOMETRY.contains(&sub) {
            GasSpecies::by_name(&gas)
                .map_err(|_| Error::config("gas", format!("unknown gas {gas:?}")))?;
        }

        let geometry = match self.word("geometry", "hemisphere")? {
            "hemisphere" => {
                for k in ["radius", "height"] {
                    if self.get(k).is_some() {
                        return Err(Error::config(k, "only applies to geometry = \"cylinder\""));
                    }
                }
                if self.word("diffusion_mode", "d_over_pi")? != "d_over_pi" {
                    return Err(Error::config(
                        "diffusion_mode",
                        "the hemisphere supports only Λ = d/π",
                    ));
                }
                let d = self.quantity("d", 0.23)?;
                ChamberGeometry::paper_hemisphere(d)
                    .map_err(|e| Error::config("d", e.to_string()))?
            }
            _ => {
                if self.get("d").is_some() {
                    return Err(Error::config(
                        "d",
                        "only applies to geometry = \"hemisphere\"",
                    ));
                }
                let r = self
                    .optional_quantity("radius")?
                    .ok_or_else(|| Error::config("radius", "required for a cylinder"))?;
                let h = self
                    .optional_quantity("height")?
                    .ok_or_else(|| Error::config("height", "required for a cylinder"))?;
                let mode = match self.word("diffusion_mode", "d_over_pi")? {
                    "d_over_pi" => DiffusionMode::PaperApproximation,
                    _ => DiffusionMode::LowestDiffusionMode,
                };
                ChamberGeometry::cylinder(r, h, mode)
                    .map_err(|e| Error::config("radius", e.to_string()))?
            }
        };

        let axis = |prefix: &'static str,
                    min: (&'static str, f64),
                    max: (&'static str, f64),
                    count: &'static str,
                    scale: &'static str|
         -> Result<AxisSpec> {
            let spec = AxisSpec {
                min: self.quantity(min.0, min.1)?,
                max: self.quantity(max.0, max.1)?,
                count: self.count(count, 50)?,
                scale: match self.word(scale, "log")? {
                    "log" => AxisScale::Log,
                    _ => AxisScale::Linear,
                },
            };
            if sub == Sweep {
                if spec.count == 0 {
                    return Err(Error::config(count, "axis count must be at least 1"));
                }
                if spec.scale == AxisScale::Log && !(spec.min > 0.0 && spec.max > 0.0) {
                    return Err(Error::config(min.0, "log axes require positive bounds"));
                }
                spec.values(prefix)
                    .map_err(|e| Error::config(min.0, e.to_string()))?;
            }
            Ok(spec)
        };
        let field_axis = axis("E", ("E_min", 1e2), ("E_max", 1e4), "E_count", "E_scale")?;
        let pressure_axis = axis("P", ("P_min", 1e-1), ("P_max", 1e3), "P_count", "P_scale")?;

        let walks = self.count("walks", 1000)?;
        if sub == Oracle && walks < MIN_WALKS {
            return Err(Error::config(
                "walks",
                format!("must be at least {MIN_WALKS}"),
            ));
        }
        let seed = match self.get("seed") {
            None => 0,
            Some(t) => t.trim().parse().map_err(|_| {
                Error::config("seed", format!("{t:?} is not an unsigned 64-bit integer"))
            })?,
        };

        let peak = PeakConfig {
            threshold_fraction: self
                .quantity("threshold", PeakConfig::default().threshold_fraction)?,
            min_separation: self.optional_quantity("min_separation")?,
            fit_window_hwhm: self.quantity("fit_window", PeakConfig::default().fit_window_hwhm)?,
        };

        let washer_bounds = match (
            self.optional_quantity("washer_t_low_min")?,
            self.optional_quantity("washer_t_high_min")?,
        ) {
            (Some(lo), Some(hi)) => Some((lo, hi)),
            (None, None) => None,
            (Some(_), None) => {
                return Err(Error::config(
                    "washer_t_high_min",
                    "required with washer_t_low_min",
                ))
            }
            (None, Some(_)) => {
                return Err(Error::config(
                    "washer_t_low_min",
                    "required with washer_t_high_min",
                ))
            }
        };

        let default_format = if matches!(sub, Sweep | Removal) {
            "csv"
        } else {
            "json"
        };
        let format = match self.word("format", default_format)? {
            "csv" => OutputFormat::Csv,
            _ => OutputFormat::Json,
        };
        if format == OutputFormat::Csv && matches!(sub, Oracle | Waves) {
            return Err(Error::config(
                "format",
                format!("{} writes JSON only", sub.name()),
            ));
        }

        let path = |name: &'static str| -> Result<Option<PathBuf>> {
            Ok(self.get(name).map(PathBuf::from))
        };
        let config = RunConfig {
            subcommand: sub,
            gas,
            geometry,
            temperature: self.quantity("T", 300.0)?,
            frequency: self.quantity("f", OVEN_FREQUENCY_GHZ * 1e9)?,
            arc_threshold: self.quantity("arc_threshold", DEFAULT_ARC_THRESHOLD_PA)?,
            field: self.quantity("E", 3000.0)?,
            pressure: self.quantity("P", 100.0)?,
            field_axis,
            pressure_axis,
            oracle_mode: match self.word("mode", "diffusion")? {
                "diffusion" => OracleMode::Diffusion,
                _ => OracleMode::Breakdown,
            },
            walks,
            seed,
            electron_density: self.quantity("n_e", NOMINAL_ELECTRON_DENSITY)?,
            trace: path("trace")?,
            peak,
            sweep_rate: self.optional_quantity("sweep_rate")?,
            table: path("table")?,
            washer_thickness_nm: self.quantity("washer_thickness_nm", 76.0)?,
            washer_bounds_min: washer_bounds,
            format,
        };
        if sub == Finesse && config.trace.is_none() {
            return Err(Error::config("trace", "required"));
        }
        if sub == Removal && config.table.is_none() {
            return Err(Error::config("table", "required"));
        }
        Ok(config)
    }
}

fn scalar_text(field: &str, v: &toml::Value) -> Result<String> {
    match v {
        toml::Value::String(s) => Ok(s.clone()),
        toml::Value::Integer(i) => Ok(i.to_string()),
        toml::Value::Float(f) => Ok(format!("{f:?}")),
        _ => Err(Error::config(field, "expected a string or a number")),
    }
}

/// Fully resolved configuration. Every default is filled in.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunConfig {
    pub subcommand: Subcommand,
    pub gas: String,
    pub geometry: ChamberGeometry,
    /// K
    pub temperature: f64,
    /// Hz, linear
    pub frequency: f64,
    /// Pa
    pub arc_threshold: f64,
    /// V/m
    pub field: f64,
    /// Pa
    pub pressure: f64,
    pub field_axis: AxisSpec,
    pub pressure_axis: AxisSpec,
    pub oracle_mode: OracleMode,
    pub walks: usize,
    pub seed: u64,
    /// m⁻³
    pub electron_density: f64,
    pub trace: Option<PathBuf>,
    pub peak: PeakConfig,
    pub sweep_rate: Option<f64>,
    pub table: Option<PathBuf>,
    pub washer_thickness_nm: f64,
    pub washer_bounds_min: Option<(f64, f64)>,
    pub format: OutputFormat,
}

impl RunConfig {
    pub fn angular_frequency(&self) -> f64 {
        2.0 * std::f64::consts::PI * self.frequency
    }

    /// Canonical config text: one `[subcommand]` section holding every key that
    /// applies, in SI units. Parsing it back gives an identical `RunConfig`.
    pub fn to_text(&self) -> String {
        use crate::physical::ChamberShape;
        use toml::Value::{Float, Integer, String as Str};

        let sub = self.subcommand;
        let mut t = toml::Table::new();
        let mut put = |k: &str, v: toml::Value| {
            if spec(k).expect("known key").scope.contains(&sub) {
                t.insert(k.to_string(), v);
            }
        };
        let scale = |s: AxisScale| Str(if s == AxisScale::Log { "log" } else { "linear" }.into());

        put("format", Str(self.format.extension().into()));
        put("gas", Str(self.gas.clone()));
        match self.geometry.shape {
            ChamberShape::PaperHemisphere { diameter } => {
                put("geometry", Str("hemisphere".into()));
                put("d", Float(diameter));
            }
            ChamberShape::Cylinder { radius, height } => {
                put("geometry", Str("cylinder".into()));
                put("radius", Float(radius));
                put("height", Float(height));
            }
        }
        let mode = match self.geometry.diffusion_mode {
            DiffusionMode::PaperApproximation => "d_over_pi",
            DiffusionMode::LowestDiffusionMode => "lowest",
        };
        put("diffusion_mode", Str(mode.into()));
        put("T", Float(self.temperature));
        put("f", Float(self.frequency));
        put("arc_threshold", Float(self.arc_threshold));
        put("E", Float(self.field));
        put("P", Float(self.pressure));
        put("E_min", Float(self.field_axis.min));
        put("E_max", Float(self.field_axis.max));
        put("E_count", Integer(self.field_axis.count as i64));
        put("E_scale", scale(self.field_axis.scale));
        put("P_min", Float(self.pressure_axis.min));
        put("P_max", Float(self.pressure_axis.max));
        put("P_count", Integer(self.pressure_axis.count as i64));
        put("P_scale", scale(self.pressure_axis.scale));
        let mode = match self.oracle_mode {
            OracleMode::Diffusion => "diffusion",
            OracleMode::Breakdown => "breakdown",
        };
        put("mode", Str(mode.into()));
        put("walks", Integer(self.walks as i64));
        // u64 seeds above i64::MAX do not fit a TOML integer.
        put("seed", Str(self.seed.to_string()));
        put("n_e", Float(self.electron_density));
        if let Some(p) = &self.trace {
            put("trace", Str(p.display().to_string()));
        }
        put("threshold", Float(self.peak.threshold_fraction));
        if let Some(s) = self.peak.min_separation {
            put("min_separation", Float(s));
        }
        put("fit_window", Float(self.peak.fit_window_hwhm));
        if let Some(r) = self.sweep_rate {
            put("sweep_rate", Float(r));
        }
        if let Some(p) = &self.table {
            put("table", Str(p.display().to_string()));
        }
        put("washer_thickness_nm", Float(self.washer_thickness_nm));
        if let Some((lo, hi)) = self.washer_bounds_min {
            put("washer_t_low_min", Float(lo));
            put("washer_t_high_min", Float(hi));
        }

        let mut root = toml::Table::new();
        root.insert(sub.name().to_string(), toml::Value::Table(t));
        toml::to_string(&root).expect("config values are finite")
    }
}

/// Prefix of CSV preamble lines carrying the embedded config.
pub const CSV_CONFIG_PREFIX: &str = "#! ";

/// Reads config text from a config file or from a previously written artifact
/// (the `config` field of a JSON artifact, or the `#! ` lines of a CSV one).
pub fn load_config_source(path: &Path) -> Result<String> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    if text.trim_start().starts_with('{') {
        let v: serde_json::Value = serde_json::from_str(&text)?;
        return v
            .get("config")
            .and_then(|c| c.as_str())
            .map(str::to_owned)
            .ok_or_else(|| {
                Error::config(
                    "config",
                    format!("{} has no embedded config", path.display()),
                )
            });
    }
    let embedded: Vec<&str> = text
        .lines()
        .filter_map(|l| l.strip_prefix(CSV_CONFIG_PREFIX))
        .collect();
    if !embedded.is_empty() {
        let mut out = embedded.join("\n");
        out.push('\n');
        return Ok(out);
    }
    Ok(text)
}
