use std::fmt;
use std::io::Read;
use std::path::Path;
use std::str::FromStr;

use num_rational::Ratio;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::physical::units::PA_PER_MBAR;

/// A decimal number held as an exact rational, so `16.7 / 18` is computed without rounding.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExactDecimal(pub Ratio<i64>);

impl ExactDecimal {
    pub fn from_integer(n: i64) -> Self {
        ExactDecimal(Ratio::from_integer(n))
    }

    pub fn to_f64(self) -> f64 {
        *self.0.numer() as f64 / *self.0.denom() as f64
    }

    pub fn is_zero(self) -> bool {
        *self.0.numer() == 0
    }

    pub fn is_positive(self) -> bool {
        *self.0.numer() > 0
    }

    /// Rounds half away from zero to `places` decimal places.
    pub fn round_to(self, places: u32) -> Self {
        let s = Ratio::from_integer(10i64.pow(places));
        ExactDecimal((self.0 * s).round() / s)
    }

    /// Fixed-point text with `places` decimals, e.g. `-0.09`.
    pub fn to_fixed(self, places: u32) -> String {
        let r = self.round_to(places).0;
        let s = 10i64.pow(places);
        let scaled = *(r * Ratio::from_integer(s)).numer();
        let sign = if scaled < 0 { "-" } else { "" };
        let a = scaled.unsigned_abs();
        if places == 0 {
            format!("{sign}{a}")
        } else {
            format!(
                "{sign}{}.{:0width$}",
                a / s as u64,
                a % s as u64,
                width = places as usize
            )
        }
    }

    pub fn checked_div(self, rhs: Self) -> Option<Self> {
        if rhs.is_zero() {
            return None;
        }
        Some(ExactDecimal(self.0 / rhs.0))
    }

    pub fn checked_mul(self, rhs: Self) -> Option<Self> {
        let n = self.0.numer().checked_mul(*rhs.0.numer())?;
        let d = self.0.denom().checked_mul(*rhs.0.denom())?;
        Some(ExactDecimal(Ratio::new(n, d)))
    }
}

/// Number of digits after the decimal point in `text`.
pub fn decimal_places(text: &str) -> u32 {
    text.trim()
        .split_once('.')
        .map(|(_, frac)| frac.len() as u32)
        .unwrap_or(0)
}

impl FromStr for ExactDecimal {
    type Err = String;

    fn from_str(text: &str) -> std::result::Result<Self, String> {
        let t = text.trim();
        let (neg, body) = match t.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, t.strip_prefix('+').unwrap_or(t)),
        };
        let (int, frac) = body.split_once('.').unwrap_or((body, ""));
        if int.is_empty() && frac.is_empty()
            || !int.bytes().all(|b| b.is_ascii_digit())
            || !frac.bytes().all(|b| b.is_ascii_digit())
        {
            return Err(format!("{text:?} is not a decimal number"));
        }
        let digits = format!("{int}{frac}");
        let numer: i64 = if digits.is_empty() {
            0
        } else {
            digits
                .parse()
                .map_err(|_| format!("{text:?} has too many digits"))?
        };
        let denom = 10i64
            .checked_pow(frac.len() as u32)
            .ok_or_else(|| format!("{text:?} has too many decimals"))?;
        let numer = if neg { -numer } else { numer };
        Ok(ExactDecimal(Ratio::new(numer, denom)))
    }
}

impl fmt::Display for ExactDecimal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut d = *self.0.denom();
        let mut places = 0;
        while d % 10 == 0 {
            d /= 10;
            places += 1;
        }
        while d % 2 == 0 || d % 5 == 0 {
            d /= if d % 2 == 0 { 2 } else { 5 };
            places += 1;
        }
        if d == 1 {
            f.write_str(&self.to_fixed(places))
        } else {
            write!(f, "{}", self.to_f64())
        }
    }
}

impl Serialize for ExactDecimal {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_f64(self.to_f64())
    }
}

/// A table row before the rate is computed. Any column may be missing.
#[derive(Debug, Clone, PartialEq, Default, Serialize)]
pub struct PartialRemovalRecord {
    pub label: String,
    /// nm
    pub thickness_removed: Option<ExactDecimal>,
    /// min
    pub exposure_time: Option<ExactDecimal>,
    /// mbar, as tabulated
    pub pressure_mbar: Option<ExactDecimal>,
    /// SCFH, metadata only
    pub argon_flow: Option<ExactDecimal>,
    pub air_flow: Option<ExactDecimal>,
}

impl PartialRemovalRecord {
    pub fn new(label: impl Into<String>, thickness_nm: &str, exposure_min: &str) -> Result<Self> {
        let label = label.into();
        let parse = |field: &str, v: &str| {
            v.parse::<ExactDecimal>()
                .map_err(|reason| Error::InvalidRecord {
                    label: label.clone(),
                    reason: format!("{field}: {reason}"),
                })
        };
        Ok(PartialRemovalRecord {
            thickness_removed: Some(parse("thickness_nm", thickness_nm)?),
            exposure_time: Some(parse("exposure_min", exposure_min)?),
            label,
            ..Default::default()
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RemovalRecord {
    pub label: String,
    /// nm; negative values (net redeposition) are kept.
    pub thickness_removed: ExactDecimal,
    /// min
    pub exposure_time: ExactDecimal,
    /// Pa
    pub pressure: Option<ExactDecimal>,
    pub argon_flow: Option<ExactDecimal>,
    pub air_flow: Option<ExactDecimal>,
    /// nm/min, exactly thickness_removed / exposure_time.
    pub removal_rate: ExactDecimal,
}

impl RemovalRecord {
    /// Whether the rate rounds to `printed` at the precision `printed` is written with.
    pub fn matches_printed(&self, printed: &str) -> Result<bool> {
        let want: ExactDecimal = printed.parse().map_err(|reason| Error::InvalidRecord {
            label: self.label.clone(),
            reason,
        })?;
        Ok(self.removal_rate.round_to(decimal_places(printed)) == want)
    }
}

/// Fills in `removal_rate = thickness_removed / exposure_time`, preserving sign.
pub fn compute_removal_rates(records: &[PartialRemovalRecord]) -> Result<Vec<RemovalRecord>> {
    let pa_per_mbar = ExactDecimal::from_integer(PA_PER_MBAR as i64);
    records
        .iter()
        .map(|r| {
            let bad = |reason: &str| Error::InvalidRecord {
                label: r.label.clone(),
                reason: reason.to_string(),
            };
            let thickness = r
                .thickness_removed
                .ok_or_else(|| bad("missing thickness_removed"))?;
            let time = r
                .exposure_time
                .ok_or_else(|| bad("missing exposure_time"))?;
            if !time.is_positive() {
                return Err(bad("exposure_time must be positive"));
            }
            let pressure = match r.pressure_mbar {
                Some(p) => Some(
                    p.checked_mul(pa_per_mbar)
                        .ok_or_else(|| bad("pressure overflows"))?,
                ),
                None => None,
            };
            Ok(RemovalRecord {
                label: r.label.clone(),
                thickness_removed: thickness,
                exposure_time: time,
                pressure,
                argon_flow: r.argon_flow,
                air_flow: r.air_flow,
                removal_rate: thickness.checked_div(time).expect("time is positive"),
            })
        })
        .collect()
}

/// Column order of removal tables.
pub const REMOVAL_CSV_COLUMNS: [&str; 6] = [
    "label",
    "thickness_nm",
    "exposure_min",
    "pressure_mbar",
    "argon_scfh",
    "air_scfh",
];

/// A row that lacks thickness or exposure time. Kept for reporting, never interpolated.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MissingRow {
    /// 1-based line number in the source file.
    pub line: u64,
    pub label: String,
    pub missing: Vec<&'static str>,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize)]
pub struct RemovalTable {
    pub records: Vec<PartialRemovalRecord>,
    pub missing: Vec<MissingRow>,
}

/// Reads a removal table with a header row naming [`REMOVAL_CSV_COLUMNS`].
/// Trailing columns may be absent. A blank label continues the previous group,
/// and rows without thickness or exposure time are listed in `missing`.
pub fn read_removal_table<R: Read>(reader: R) -> Result<RemovalTable> {
    let mut rdr = csv::ReaderBuilder::new()
        .flexible(true)
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .from_reader(reader);
    let headers = rdr
        .headers()
        .map_err(|e| Error::InvalidRecord {
            label: String::new(),
            reason: e.to_string(),
        })?
        .clone();
    let mut index = [None; 6];
    for (i, h) in headers.iter().enumerate() {
        match REMOVAL_CSV_COLUMNS.iter().position(|c| *c == h) {
            Some(k) => index[k] = Some(i),
            None => {
                return Err(Error::InvalidRecord {
                    label: String::new(),
                    reason: format!("unknown column {h:?}"),
                })
            }
        }
    }
    for (k, col) in REMOVAL_CSV_COLUMNS.iter().enumerate().take(3) {
        if index[k].is_none() {
            return Err(Error::InvalidRecord {
                label: String::new(),
                reason: format!("missing column {col:?}"),
            });
        }
    }

    let mut table = RemovalTable::default();
    let mut label = String::new();
    for rec in rdr.records() {
        let rec = rec.map_err(|e| Error::InvalidRecord {
            label: label.clone(),
            reason: e.to_string(),
        })?;
        let line = rec.position().map(|p| p.line()).unwrap_or(0);
        let cell = |k: usize| index[k].and_then(|i| rec.get(i)).filter(|s| !s.is_empty());
        if let Some(l) = cell(0) {
            label = l.to_string();
        }
        let mut values = [None; 5];
        for (k, v) in values.iter_mut().enumerate() {
            if let Some(text) = cell(k + 1) {
                *v = Some(
                    text.parse::<ExactDecimal>()
                        .map_err(|reason| Error::InvalidRecord {
                            label: label.clone(),
                            reason: format!(
                                "line {line}, {}: {reason}",
                                REMOVAL_CSV_COLUMNS[k + 1]
                            ),
                        })?,
                );
            }
        }
        let mut missing = Vec::new();
        if values[0].is_none() {
            missing.push("thickness_nm");
        }
        if values[1].is_none() {
            missing.push("exposure_min");
        }
        if missing.is_empty() {
            table.records.push(PartialRemovalRecord {
                label: label.clone(),
                thickness_removed: values[0],
                exposure_time: values[1],
                pressure_mbar: values[2],
                argon_flow: values[3],
                air_flow: values[4],
            });
        } else {
            table.missing.push(MissingRow {
                line,
                label: label.clone(),
                missing,
            });
        }
    }
    Ok(table)
}

pub fn read_removal_table_path(path: &Path) -> Result<RemovalTable> {
    let f = std::fs::File::open(path).map_err(|e| Error::io(path, e))?;
    read_removal_table(std::io::BufReader::new(f))
}

/// Bounds on the removal rate when a layer of `layer_thickness` nm was found
/// cleared somewhere between `t_low` and `t_high` minutes.
pub fn washer_rate_estimate(
    layer_thickness: f64,
    clean_time_bounds: (f64, f64),
) -> Result<(f64, f64)> {
    let (t_low, t_high) = clean_time_bounds;
    if !(layer_thickness > 0.0 && layer_thickness.is_finite()) {
        return Err(Error::invalid(
            "layer_thickness",
            layer_thickness,
            "must be positive",
        ));
    }
    if !(t_low > 0.0 && t_low.is_finite()) {
        return Err(Error::invalid("t_low", t_low, "must be positive"));
    }
    if !(t_high >= t_low && t_high.is_finite()) {
        return Err(Error::invalid(
            "t_high",
            t_high,
            "must be finite and >= t_low",
        ));
    }
    Ok((layer_thickness / t_high, layer_thickness / t_low))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(s: &str) -> ExactDecimal {
        s.parse().unwrap()
    }

    #[test]
    fn parse_decimals() {
        assert_eq!(d("16.7").0, Ratio::new(167, 10));
        assert_eq!(d("-3.3").0, Ratio::new(-33, 10));
        assert_eq!(d("0").0, Ratio::from_integer(0));
        assert_eq!(d(".5").0, Ratio::new(1, 2));
        assert_eq!(d("+2.").0, Ratio::from_integer(2));
        assert!("".parse::<ExactDecimal>().is_err());
        assert!("1e3".parse::<ExactDecimal>().is_err());
        assert!("1.2.3".parse::<ExactDecimal>().is_err());
        assert!("-".parse::<ExactDecimal>().is_err());
    }

    #[test]
    fn rounding_and_display() {
        assert_eq!(d("0.125").round_to(2), d("0.13"));
        assert_eq!(d("-0.125").round_to(2), d("-0.13"));
        assert_eq!(d("-0.0917").to_fixed(2), "-0.09");
        assert_eq!(d("5").to_fixed(1), "5.0");
        assert_eq!(d("-3.30").to_string(), "-3.3");
        assert_eq!(ExactDecimal(Ratio::new(1, 8)).to_string(), "0.125");
        assert_eq!(decimal_places("0.93"), 2);
        assert_eq!(decimal_places("54"), 0);
    }

    #[test]
    fn spec_examples() {
        let rows = [
            PartialRemovalRecord::new("a", "16.7", "18").unwrap(),
            PartialRemovalRecord::new("b", "-3.3", "36").unwrap(),
            PartialRemovalRecord::new("c", "0", "54").unwrap(),
        ];
        let out = compute_removal_rates(&rows).unwrap();
        assert!(out[0].matches_printed("0.93").unwrap());
        assert!(out[1].matches_printed("-0.09").unwrap());
        assert_eq!(out[1].removal_rate.0, Ratio::new(-33, 360));
        assert!(out[2].removal_rate.is_zero());
    }

    #[test]
    fn rejects_bad_time() {
        for t in ["0", "-1"] {
            let r = PartialRemovalRecord::new("x", "1", t).unwrap();
            assert!(matches!(
                compute_removal_rates(&[r]),
                Err(Error::InvalidRecord { .. })
            ));
        }
        let missing = PartialRemovalRecord {
            label: "y".into(),
            thickness_removed: Some(d("1")),
            ..Default::default()
        };
        assert!(compute_removal_rates(&[missing]).is_err());
    }

    #[test]
    fn ragged_table() {
        let text = "label,thickness_nm,exposure_min,pressure_mbar,argon_scfh,air_scfh\n\
                    A,16.7,18,0.17,0.2,0\n\
                    ,10.0,36\n\
                    B,26.7,18,4.5,0.5,0.5\n\
                    ,,,,,\n";
        let t = read_removal_table(text.as_bytes()).unwrap();
        assert_eq!(t.records.len(), 3);
        assert_eq!(t.records[1].label, "A");
        assert_eq!(t.records[1].pressure_mbar, None);
        assert_eq!(t.missing.len(), 1);
        assert_eq!(t.missing[0].label, "B");
        assert_eq!(t.missing[0].line, 5);
        let rates = compute_removal_rates(&t.records).unwrap();
        assert_eq!(rates[0].pressure, Some(d("17")));
    }

    #[test]
    fn unknown_column() {
        let text = "label,thickness_nm,exposure_min,colour\nA,1,2,red\n";
        assert!(read_removal_table(text.as_bytes()).is_err());
    }

    #[test]
    fn washer_intervals() {
        let (lo, hi) = washer_rate_estimate(76.0, (7.5, 8.0)).unwrap();
        assert_eq!(lo, 9.5);
        assert!((hi - 10.133333333333333).abs() < 1e-12);
        assert_eq!(
            washer_rate_estimate(76.0, (4.0, 4.0)).unwrap(),
            (19.0, 19.0)
        );
        assert!(washer_rate_estimate(76.0, (0.0, 1.0)).is_err());
        assert!(washer_rate_estimate(76.0, (2.0, 1.0)).is_err());
        assert!(washer_rate_estimate(-1.0, (1.0, 2.0)).is_err());
    }
}
