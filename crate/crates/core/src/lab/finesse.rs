use serde::{Deserialize, Serialize};

use super::fit::fit_lorentzian;
use super::trace::CavityTrace;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PeakConfig {
    /// Detection threshold as a fraction of (max - baseline).
    pub threshold_fraction: f64,
    /// Peaks closer than this (trace units) are merged. `None` means 1% of the trace span.
    pub min_separation: Option<f64>,
    /// Half width of each fit window, in multiples of the estimated HWHM.
    pub fit_window_hwhm: f64,
}

impl Default for PeakConfig {
    fn default() -> Self {
        PeakConfig {
            threshold_fraction: 0.5,
            min_separation: None,
            fit_window_hwhm: 12.0,
        }
    }
}

impl PeakConfig {
    fn validate(&self) -> Result<()> {
        if !(self.threshold_fraction > 0.0 && self.threshold_fraction < 1.0) {
            return Err(Error::invalid(
                "threshold_fraction",
                self.threshold_fraction,
                "must lie in (0, 1)",
            ));
        }
        if let Some(s) = self.min_separation {
            if !(s >= 0.0 && s.is_finite()) {
                return Err(Error::invalid(
                    "min_separation",
                    s,
                    "must be finite and >= 0",
                ));
            }
        }
        if !(self.fit_window_hwhm >= 2.0 && self.fit_window_hwhm.is_finite()) {
            return Err(Error::invalid(
                "fit_window_hwhm",
                self.fit_window_hwhm,
                "must be at least 2",
            ));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SpectralUnits {
    /// Raw oscilloscope time.
    TraceTime,
    /// Time scaled by the trace's sweep rate.
    Frequency,
}

/// One fitted resonance.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FittedPeak {
    pub center: f64,
    pub center_std_error: f64,
    pub fwhm: f64,
    pub fwhm_std_error: f64,
    pub amplitude: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FinesseResult {
    /// δν, mean adjacent-peak spacing.
    pub peak_separation: f64,
    /// Δν, mean fitted FWHM.
    pub mean_peak_width: f64,
    /// δν/Δν.
    pub finesse: f64,
    /// 1σ uncertainty on the finesse.
    pub uncertainty: f64,
    pub n_peaks_used: usize,
    pub units: SpectralUnits,
    pub peaks: Vec<FittedPeak>,
}

fn median(values: &mut [f64]) -> f64 {
    values.sort_by(f64::total_cmp);
    let n = values.len();
    if n % 2 == 1 {
        values[n / 2]
    } else {
        0.5 * (values[n / 2 - 1] + values[n / 2])
    }
}

/// Sample indices of local maxima of runs above `threshold`, merged when closer than `min_sep`.
fn detect_peaks(samples: &[(f64, f64)], threshold: f64, min_sep: f64) -> Vec<usize> {
    let mut peaks: Vec<usize> = Vec::new();
    let mut i = 0;
    while i < samples.len() {
        if samples[i].1 <= threshold {
            i += 1;
            continue;
        }
        let mut best = i;
        while i < samples.len() && samples[i].1 > threshold {
            if samples[i].1 > samples[best].1 {
                best = i;
            }
            i += 1;
        }
        match peaks.last_mut() {
            Some(last) if samples[best].0 - samples[*last].0 < min_sep => {
                if samples[best].1 > samples[*last].1 {
                    *last = best;
                }
            }
            _ => peaks.push(best),
        }
    }
    peaks
}

/// Linear interpolation of where the trace crosses `level` walking from `peak` in `dir`.
fn half_crossing(samples: &[(f64, f64)], peak: usize, level: f64, dir: isize) -> Option<f64> {
    let mut j = peak as isize;
    loop {
        let k = j + dir;
        if k < 0 || k as usize >= samples.len() {
            return None;
        }
        let (t0, v0) = samples[j as usize];
        let (t1, v1) = samples[k as usize];
        if v1 <= level {
            return Some(t0 + (level - v0) * (t1 - t0) / (v1 - v0));
        }
        j = k;
    }
}

/// Detects resonances, fits each one to a Lorentzian, and returns the finesse δν/Δν.
///
/// The result is unchanged by affine rescaling of the time axis and positive
/// rescaling of the voltage, so an uncalibrated scope trace is enough.
pub fn extract_finesse(trace: &CavityTrace, config: &PeakConfig) -> Result<FinesseResult> {
    config.validate()?;
    let samples = trace.samples();
    let mut voltages: Vec<f64> = samples.iter().map(|s| s.1).collect();
    let baseline = median(&mut voltages);
    let max = *voltages.last().unwrap();
    if !(max > baseline) {
        return Err(Error::InsufficientPeaks { found: 0 });
    }
    let span = samples[samples.len() - 1].0 - samples[0].0;
    let min_sep = config.min_separation.unwrap_or(0.01 * span);
    let threshold = baseline + config.threshold_fraction * (max - baseline);
    let peaks = detect_peaks(samples, threshold, min_sep);
    if peaks.len() < 2 {
        return Err(Error::InsufficientPeaks { found: peaks.len() });
    }

    let mut fitted = Vec::with_capacity(peaks.len());
    for (k, &p) in peaks.iter().enumerate() {
        let (tp, vp) = samples[p];
        let height = vp - baseline;
        let half = baseline + 0.5 * height;
        let left = half_crossing(samples, p, half, -1);
        let right = half_crossing(samples, p, half, 1);
        let gamma0 = match (left, right) {
            (Some(l), Some(r)) => 0.5 * (r - l),
            (Some(l), None) => tp - l,
            (None, Some(r)) => r - tp,
            (None, None) => {
                return Err(Error::FitDiverged {
                    peak: k,
                    reason: "no half-maximum crossing".into(),
                })
            }
        };

        let mut lo = tp - config.fit_window_hwhm * gamma0;
        let mut hi = tp + config.fit_window_hwhm * gamma0;
        if k > 0 {
            lo = lo.max(0.5 * (tp + samples[peaks[k - 1]].0));
        }
        if k + 1 < peaks.len() {
            hi = hi.min(0.5 * (tp + samples[peaks[k + 1]].0));
        }
        // Fit in coordinates normalised to the peak so scaling the trace cannot change the fit.
        let window: Vec<(f64, f64)> = samples
            .iter()
            .filter(|s| s.0 >= lo && s.0 <= hi)
            .map(|&(t, v)| ((t - tp) / gamma0, (v - baseline) / height))
            .collect();
        if window.len() < 6 {
            return Err(Error::FitDiverged {
                peak: k,
                reason: format!("only {} samples in the fit window", window.len()),
            });
        }
        let fit = fit_lorentzian(&window, [0.0, 1.0, 0.0, 1.0])
            .map_err(|reason| Error::FitDiverged { peak: k, reason })?;
        fitted.push(FittedPeak {
            center: tp + fit.center * gamma0,
            center_std_error: fit.std_errors[2] * gamma0,
            fwhm: fit.fwhm() * gamma0,
            fwhm_std_error: fit.fwhm_std_error() * gamma0,
            amplitude: fit.amplitude * height,
        });
    }

    let (scale, units) = match trace.sweep_rate {
        Some(rate) => (rate.abs(), SpectralUnits::Frequency),
        None => (1.0, SpectralUnits::TraceTime),
    };
    for p in &mut fitted {
        p.center *= scale;
        p.center_std_error *= scale;
        p.fwhm *= scale;
        p.fwhm_std_error *= scale;
    }
    Ok(summarize(fitted, units))
}

fn summarize(peaks: Vec<FittedPeak>, units: SpectralUnits) -> FinesseResult {
    let n = peaks.len();
    let gaps: Vec<f64> = peaks
        .windows(2)
        .map(|w| w[1].center - w[0].center)
        .collect();
    let sep = gaps.iter().sum::<f64>() / gaps.len() as f64;
    let width = peaks.iter().map(|p| p.fwhm).sum::<f64>() / n as f64;

    let scatter_err = |xs: &[f64], mean: f64| {
        if xs.len() < 2 {
            return 0.0;
        }
        let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (xs.len() - 1) as f64;
        (var / xs.len() as f64).sqrt()
    };
    // The mean gap telescopes to (last - first)/(n - 1).
    let sep_fit_err = (peaks[0].center_std_error.powi(2) + peaks[n - 1].center_std_error.powi(2))
        .sqrt()
        / (n - 1) as f64;
    let width_fit_err = peaks
        .iter()
        .map(|p| p.fwhm_std_error.powi(2))
        .sum::<f64>()
        .sqrt()
        / n as f64;
    let widths: Vec<f64> = peaks.iter().map(|p| p.fwhm).collect();
    let sep_err = scatter_err(&gaps, sep).hypot(sep_fit_err);
    let width_err = scatter_err(&widths, width).hypot(width_fit_err);

    let finesse = sep / width;
    let uncertainty = finesse * (sep_err / sep).hypot(width_err / width);
    FinesseResult {
        peak_separation: sep,
        mean_peak_width: width,
        finesse,
        uncertainty,
        n_peaks_used: n,
        units,
        peaks,
    }
}
