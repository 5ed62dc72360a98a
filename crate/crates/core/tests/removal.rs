use num_rational::Ratio;
use plasma_ignition::lab::{
    compute_removal_rates, read_removal_table, washer_rate_estimate, ExactDecimal,
    PartialRemovalRecord,
};
use proptest::prelude::*;

fn dec(s: &str) -> ExactDecimal {
    s.parse().unwrap()
}

/// Decimal text with up to `places` fractional digits.
fn decimal_text(units: i64, places: u32) -> String {
    let scale = 10i64.pow(places);
    let sign = if units < 0 { "-" } else { "" };
    let a = units.unsigned_abs();
    if places == 0 {
        format!("{sign}{a}")
    } else {
        format!(
            "{sign}{}.{:0width$}",
            a / scale as u64,
            a % scale as u64,
            width = places as usize
        )
    }
}

#[test]
fn rates_match_two_decimal_values() {
    let csv = "\
label,thickness_nm,exposure_min
a,16.7,18
b,10.0,36
c,3.3,54
d,-3.3,36
e,26.7,18
";
    let table = read_removal_table(csv.as_bytes()).unwrap();
    let rates = compute_removal_rates(&table.records).unwrap();
    let printed = ["0.93", "0.28", "0.06", "-0.09", "1.48"];
    for (r, p) in rates.iter().zip(printed) {
        assert!(r.matches_printed(p).unwrap(), "{} vs {p}", r.removal_rate);
    }
}

#[test]
fn thirds_stay_exact() {
    let r = compute_removal_rates(&[PartialRemovalRecord::new("x", "10", "3").unwrap()]).unwrap();
    assert_eq!(r[0].removal_rate.0, Ratio::new(10, 3));
    assert_eq!(r[0].removal_rate.to_fixed(3), "3.333");
}

#[test]
fn washer_band() {
    let (lo, hi) = washer_rate_estimate(76.0, (5.1, 15.2)).unwrap();
    assert_eq!(format!("{lo:.2}"), "5.00");
    assert_eq!(format!("{hi:.2}"), "14.90");
    assert!(washer_rate_estimate(76.0, (15.2, 5.1)).is_err());
}

proptest! {
    #[test]
    fn rate_times_time_is_the_thickness(
        t_units in -100_000i64..100_000,
        t_places in 0u32..4,
        m_units in 1i64..100_000,
        m_places in 0u32..3,
    ) {
        let thick = decimal_text(t_units, t_places);
        let time = decimal_text(m_units, m_places);
        let rec = PartialRemovalRecord::new("p", &thick, &time).unwrap();
        let r = &compute_removal_rates(&[rec]).unwrap()[0];
        prop_assert_eq!(r.removal_rate.0 * dec(&time).0, dec(&thick).0);
    }

    #[test]
    fn decimal_text_round_trips(units in -10_000_000i64..10_000_000, places in 0u32..6) {
        let text = decimal_text(units, places);
        let d = dec(&text);
        prop_assert_eq!(d.0, Ratio::new(units, 10i64.pow(places)));
        prop_assert_eq!(dec(&d.to_string()), d);
        prop_assert_eq!(d.to_fixed(places), text);
    }

    #[test]
    fn rounding_is_half_away_from_zero(units in -1_000_000i64..1_000_000) {
        // units / 1000 rounded to two places
        let d = ExactDecimal(Ratio::new(units, 1000));
        let a = units.abs();
        let q = a / 10 + if a % 10 >= 5 { 1 } else { 0 };
        let want = Ratio::new(units.signum() * q, 100);
        prop_assert_eq!(d.round_to(2).0, want);
    }

    #[test]
    fn rates_scale_with_thickness(k in 1i64..50, t in 1i64..10_000, m in 1i64..500) {
        let one = PartialRemovalRecord::new("a", &t.to_string(), &m.to_string()).unwrap();
        let many = PartialRemovalRecord::new("b", &(k * t).to_string(), &m.to_string()).unwrap();
        let r = compute_removal_rates(&[one, many]).unwrap();
        prop_assert_eq!(r[1].removal_rate.0, r[0].removal_rate.0 * k);
    }
}
