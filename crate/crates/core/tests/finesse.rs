use plasma_ignition::lab::{extract_finesse, PeakConfig, SyntheticTrace};
use proptest::prelude::*;

fn recovered(n_peaks: usize, finesse: f64, noise: f64, seed: u64) -> f64 {
    let mut recipe = SyntheticTrace::resonances(n_peaks, 1.0, 1.0 / finesse);
    if noise > 0.0 {
        recipe = recipe.with_noise(noise, seed);
    }
    let trace = recipe.build().unwrap();
    extract_finesse(&trace, &PeakConfig::default())
        .unwrap()
        .finesse
}

#[test]
fn two_lorentzians_at_30_and_30000() {
    for f in [30.0, 30_000.0] {
        let got = recovered(2, f, 0.0, 0);
        assert!((got / f - 1.0).abs() < 1e-3, "F = {f}: got {got}");
    }
}

#[test]
fn one_percent_noise() {
    for f in [30.0, 30_000.0] {
        for seed in 0..5 {
            let got = recovered(2, f, 0.01, seed);
            assert!(
                (got / f - 1.0).abs() < 2e-2,
                "F = {f}, seed {seed}: got {got}"
            );
        }
    }
}

#[test]
fn time_scaled_by_seven() {
    let trace = SyntheticTrace::resonances(3, 1.0, 1.0 / 30.0)
        .with_noise(0.01, 11)
        .build()
        .unwrap();
    let a = extract_finesse(&trace, &PeakConfig::default()).unwrap();
    let b = extract_finesse(&trace.map_time(7.0, 0.0).unwrap(), &PeakConfig::default()).unwrap();
    assert!((a.finesse / b.finesse - 1.0).abs() < 1e-9);
    assert!((b.peak_separation / a.peak_separation - 7.0).abs() < 1e-9);
}

#[test]
fn uncertainty_reflects_noise() {
    let clean = SyntheticTrace::resonances(4, 1.0, 0.02).build().unwrap();
    let noisy = SyntheticTrace::resonances(4, 1.0, 0.02)
        .with_noise(0.02, 5)
        .build()
        .unwrap();
    let a = extract_finesse(&clean, &PeakConfig::default()).unwrap();
    let b = extract_finesse(&noisy, &PeakConfig::default()).unwrap();
    assert!(a.uncertainty < 1e-3 * a.finesse);
    assert!(b.uncertainty > a.uncertainty);
    assert!((b.finesse - 50.0).abs() < 4.0 * b.uncertainty + 0.5);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn affine_time_and_voltage_scaling(
        scale in 1e-6f64..1e6,
        offset in -1e3f64..1e3,
        gain in 1e-3f64..1e3,
        seed in 0u64..1000,
    ) {
        let trace = SyntheticTrace::resonances(3, 1.0, 0.05)
            .with_noise(0.005, seed)
            .build()
            .unwrap();
        let base = extract_finesse(&trace, &PeakConfig::default()).unwrap();
        let moved = trace
            .map_time(scale, offset * scale)
            .unwrap()
            .map_voltage(gain)
            .unwrap();
        let got = extract_finesse(&moved, &PeakConfig::default()).unwrap();
        prop_assert!((got.finesse / base.finesse - 1.0).abs() < 1e-6);
        prop_assert_eq!(got.n_peaks_used, 3);
    }

    #[test]
    fn round_trip_noise_free(finesse in 5.0f64..5000.0, n_peaks in 2usize..5) {
        let got = recovered(n_peaks, finesse, 0.0, 0);
        prop_assert!((got / finesse - 1.0).abs() < 1e-3, "{} vs {}", got, finesse);
    }

    #[test]
    fn round_trip_one_percent_noise(finesse in 10.0f64..3000.0, seed in 0u64..10_000) {
        let got = recovered(3, finesse, 0.01, seed);
        prop_assert!((got / finesse - 1.0).abs() < 2e-2, "{} vs {}", got, finesse);
    }
}
