use std::io::Read;
use std::path::Path;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Photodiode voltage sampled against oscilloscope time.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CavityTrace {
    /// (time [s], voltage [V]), strictly increasing in time.
    samples: Vec<(f64, f64)>,
    /// Optional conversion from trace time to optical frequency [Hz/s].
    pub sweep_rate: Option<f64>,
}

impl CavityTrace {
    pub fn new(samples: Vec<(f64, f64)>) -> Result<Self> {
        if samples.len() < 3 {
            return Err(Error::InvalidTrace(format!(
                "need at least 3 samples, got {}",
                samples.len()
            )));
        }
        for (i, &(t, v)) in samples.iter().enumerate() {
            if !t.is_finite() || !v.is_finite() {
                return Err(Error::InvalidTrace(format!("sample {i} is not finite")));
            }
            if i > 0 && !(samples[i - 1].0 < t) {
                return Err(Error::InvalidTrace(format!(
                    "time is not strictly increasing at sample {i}"
                )));
            }
        }
        Ok(CavityTrace {
            samples,
            sweep_rate: None,
        })
    }

    pub fn with_sweep_rate(mut self, rate: f64) -> Self {
        self.sweep_rate = Some(rate);
        self
    }

    pub fn samples(&self) -> &[(f64, f64)] {
        &self.samples
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    /// Applies `t -> scale * t + offset` (scale > 0) to the time axis.
    pub fn map_time(&self, scale: f64, offset: f64) -> Result<Self> {
        let mut t = CavityTrace::new(
            self.samples
                .iter()
                .map(|&(t, v)| (scale * t + offset, v))
                .collect(),
        )?;
        t.sweep_rate = self.sweep_rate;
        Ok(t)
    }

    pub fn map_voltage(&self, scale: f64) -> Result<Self> {
        let mut t = CavityTrace::new(self.samples.iter().map(|&(t, v)| (t, scale * v)).collect())?;
        t.sweep_rate = self.sweep_rate;
        Ok(t)
    }

    /// Two-column CSV (time, voltage). A non-numeric first row is taken as a
    /// header; lines starting with `#` are skipped.
    pub fn from_csv_reader<R: Read>(reader: R) -> Result<Self> {
        let mut rdr = csv::ReaderBuilder::new()
            .has_headers(false)
            .comment(Some(b'#'))
            .trim(csv::Trim::All)
            .from_reader(reader);
        let mut samples = Vec::new();
        for (row, rec) in rdr.records().enumerate() {
            let rec = rec.map_err(|e| Error::InvalidTrace(e.to_string()))?;
            if rec.len() < 2 {
                return Err(Error::InvalidTrace(format!(
                    "row {} has {} column(s), expected 2",
                    row + 1,
                    rec.len()
                )));
            }
            let parsed = (rec[0].parse::<f64>(), rec[1].parse::<f64>());
            match parsed {
                (Ok(t), Ok(v)) => samples.push((t, v)),
                _ if row == 0 => continue,
                _ => {
                    return Err(Error::InvalidTrace(format!(
                        "row {} is not numeric: {:?}",
                        row + 1,
                        rec
                    )))
                }
            }
        }
        CavityTrace::new(samples)
    }

    pub fn from_csv_path(path: &Path) -> Result<Self> {
        let f = std::fs::File::open(path).map_err(|e| Error::io(path, e))?;
        Self::from_csv_reader(std::io::BufReader::new(f))
    }
}

/// Lorentzian line shape with peak height `amplitude` and full width at half
/// maximum `fwhm`, centred on `center`.
pub fn lorentzian(t: f64, center: f64, fwhm: f64, amplitude: f64) -> f64 {
    let u = 2.0 * (t - center) / fwhm;
    amplitude / (1.0 + u * u)
}

/// Recipe for a synthetic transmission trace made of identical Lorentzian resonances.
#[derive(Debug, Clone, PartialEq)]
pub struct SyntheticTrace {
    pub centers: Vec<f64>,
    pub fwhm: f64,
    pub amplitude: f64,
    pub baseline: f64,
    pub t_start: f64,
    pub t_end: f64,
    pub n_samples: usize,
    /// Gaussian noise standard deviation as a fraction of `amplitude`.
    pub noise_fraction: f64,
    pub seed: u64,
}

impl SyntheticTrace {
    /// Resonances spaced `spacing` apart with the given width, sampled densely
    /// enough that each FWHM spans at least 10 samples.
    pub fn resonances(n_peaks: usize, spacing: f64, fwhm: f64) -> Self {
        let t_end = spacing * n_peaks as f64;
        let needed = (10.0 * t_end / fwhm).ceil() as usize + 1;
        SyntheticTrace {
            centers: (0..n_peaks).map(|i| spacing * (i as f64 + 0.5)).collect(),
            fwhm,
            amplitude: 1.0,
            baseline: 0.0,
            t_start: 0.0,
            t_end,
            n_samples: needed.max(1001),
            noise_fraction: 0.0,
            seed: 0,
        }
    }

    pub fn with_noise(mut self, fraction: f64, seed: u64) -> Self {
        self.noise_fraction = fraction;
        self.seed = seed;
        self
    }

    pub fn build(&self) -> Result<CavityTrace> {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        let noise = Normal::new(0.0, self.noise_fraction * self.amplitude)
            .map_err(|e| Error::InvalidTrace(e.to_string()))?;
        let n = self.n_samples;
        let dt = (self.t_end - self.t_start) / (n - 1) as f64;
        let samples = (0..n)
            .map(|i| {
                let t = self.t_start + dt * i as f64;
                let clean: f64 = self
                    .centers
                    .iter()
                    .map(|&c| lorentzian(t, c, self.fwhm, self.amplitude))
                    .sum();
                let v = self.baseline
                    + clean
                    + if self.noise_fraction > 0.0 {
                        noise.sample(&mut rng)
                    } else {
                        0.0
                    };
                (t, v)
            })
            .collect();
        CavityTrace::new(samples)
    }
}
