//! Randomized properties of the series boundary transforms.

use proptest::prelude::*;
use ubp_forge::series::{
    accelerate_convergent, decelerate_divergent, q3_divergence_certificate, SeriesSpec,
};

proptest! {
    /// The blow-up transform keeps every partial sum under 2 sqrt(r_0) for
    /// random geometric ratios and random explicit lists.
    #[test]
    fn accelerated_partials_stay_bounded_geometric(ratio in 0.05f64..0.95, horizon in 1u64..200) {
        let x = SeriesSpec::geometric(ratio).unwrap();
        let report = accelerate_convergent(&x, horizon).unwrap();
        for &p in &report.transformed_partials {
            prop_assert!(p <= report.global_bound * (1.0 + 1e-12));
        }
        prop_assert!(report.telescoped_bound <= report.global_bound);
        prop_assert!(report.y.windows(2).all(|w| w[1] >= w[0]));
        prop_assert!(report.to_certificate("prop".into()).all_pass());
    }

    #[test]
    fn accelerated_partials_stay_bounded_explicit(terms in prop::collection::vec(1e-6f64..1e3, 1..60)) {
        let x = SeriesSpec::explicit(terms).unwrap();
        let report = accelerate_convergent(&x, 1_000).unwrap();
        for &p in &report.transformed_partials {
            prop_assert!(p <= report.global_bound * (1.0 + 1e-9));
        }
        prop_assert!(report.to_certificate("prop".into()).all_pass());
    }

    /// Damped divergent scans make monotone progress and their certificates
    /// re-verify from stored numbers.
    #[test]
    fn decelerated_scan_is_monotone(value in 0.1f64..10.0, target in 0.5f64..6.0) {
        let x = SeriesSpec::constant(value).unwrap();
        let (y, cert) = decelerate_divergent(&x, target, 10_000_000).unwrap();
        prop_assert!(cert.partial_sum >= target);
        prop_assert!(y.windows(2).all(|w| w[1] <= w[0]), "damping must decrease");
        prop_assert!(cert.verify_decelerated(&x));
        // One step earlier the target was not yet reached (minimality).
        if cert.index > 1 {
            let mut s = 0.0;
            let mut acc = 0.0;
            for n in 1..cert.index {
                let t = x.term(n).unwrap();
                s += t;
                acc += t / s;
            }
            prop_assert!(acc < target);
        }
    }

    /// Scaling an accepted square-dominating sequence keeps it accepted with
    /// a suitably scaled constant, and every bar is eventually passed.
    /// (The scan cost is exp(target/scale^2); ranges keep it modest.)
    #[test]
    fn square_scan_accepts_scaled_inverse_sqrt(scale in 0.7f64..3.0, target in 0.1f64..3.0) {
        let c = scale * scale * (1.0 - 1e-9);
        let cert = q3_divergence_certificate(
            move |n| scale / (n as f64).sqrt(),
            c,
            1,
            target,
            1_000_000,
        ).unwrap();
        prop_assert!(cert.partial_sum >= target);
        prop_assert!(cert.verify_square_scan(move |n| scale / (n as f64).sqrt()));
    }
}

/// A sequence accepted by the square scan at one bar is accepted at every
/// bar (divergence, demonstrated bar by bar).
#[test]
fn square_scan_passes_every_bar() {
    let y = |n: u64| 1.0 / (n as f64).sqrt();
    let mut last_index = 0;
    for target in [1.0, 2.0, 5.0, 10.0, 12.0] {
        let cert = q3_divergence_certificate(y, 1.0, 1, target, 10_000_000).unwrap();
        assert!(cert.index >= last_index);
        assert!(cert.partial_sum >= target);
        last_index = cert.index;
    }
}

/// The first harmonic crossing of 10 sits at 12367; both damped-constant and
/// square-of-inverse-sqrt scans are that same scan.
#[test]
fn harmonic_crossing_is_shared_between_scans() {
    // Independent oracle: backward compensated summation over candidates.
    let crossing = (12_300..12_400)
        .find(|&n| {
            let h: f64 = (1..=n).rev().map(|k| 1.0 / k as f64).sum();
            h >= 10.0
        })
        .unwrap();
    assert_eq!(crossing, 12367);

    let x = SeriesSpec::constant(1.0).unwrap();
    let (_, decel) = decelerate_divergent(&x, 10.0, 100_000).unwrap();
    assert_eq!(decel.index, crossing as u64);

    let q3 = q3_divergence_certificate(|n| 1.0 / (n as f64).sqrt(), 1.0, 1, 10.0, 100_000).unwrap();
    assert_eq!(q3.index, crossing as u64);
}
