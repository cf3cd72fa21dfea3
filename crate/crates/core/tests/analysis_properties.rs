use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Poisson};
use timebin_core::analysis::{fit_counts, fit_fringe, subtract_accidentals, visibility};
use timebin_core::events::CountRecord;

fn grid(n: usize, span: f64) -> Vec<f64> {
    (0..n).map(|i| span * i as f64 / (n - 1) as f64).collect()
}

fn fringe(c0: f64, v: f64, omega: f64, x0: f64, x: f64) -> f64 {
    c0 * (1.0 + v * (omega * (x - x0)).cos())
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 256, failure_persistence: None, ..Default::default() })]

    #[test]
    fn visibility_is_scale_invariant(lo in 0.0..1e6f64, extra in 0.0..1e6f64, k in 1e-3..1e3f64) {
        let hi = lo + extra;
        prop_assume!(hi > 0.0);
        let a = visibility(hi, lo).unwrap();
        let b = visibility(k * hi, k * lo).unwrap();
        prop_assert!((a - b).abs() <= 1e-12);
        prop_assert!((0.0..=1.0).contains(&a));
    }

    #[test]
    fn fit_ignores_count_scale_and_phase_offset(
        v in 0.1..0.95f64,
        x0 in -3.0..3.0f64,
        scale in 0.5..20.0f64,
    ) {
        let x = grid(50, 4.0 * std::f64::consts::PI);
        let base: Vec<f64> = x.iter().map(|&xi| fringe(1000.0, v, 1.0, 0.0, xi)).collect();
        let shifted: Vec<f64> = x.iter().map(|&xi| scale * fringe(1000.0, v, 1.0, x0, xi)).collect();
        let a = fit_counts(&x, &base, 0.0).unwrap();
        let b = fit_counts(&x, &shifted, 0.0).unwrap();
        prop_assert!((a.visibility - v).abs() < 1e-6, "{a:?}");
        prop_assert!((b.visibility - a.visibility).abs() < 1e-6, "{b:?}");
    }
}

#[test]
fn offset_dilution_identity() {
    let (c0, v, acc) = (3727.0, 0.949, 1601.7);
    let x = grid(60, 4.0 * std::f64::consts::PI);
    let raw: Vec<f64> = x.iter().map(|&xi| fringe(c0, v, 1.0, 0.4, xi) + acc).collect();
    let corr: Vec<f64> = x.iter().map(|&xi| fringe(c0, v, 1.0, 0.4, xi)).collect();
    let fr = fit_counts(&x, &raw, 0.0).unwrap();
    let fc = fit_counts(&x, &corr, 0.0).unwrap();
    assert!((fr.visibility * (c0 + acc) / c0 - fc.visibility).abs() < 1e-9);
    assert!((fr.visibility - 0.949 * 3727.0 / (3727.0 + 1601.7)).abs() < 1e-9);
}

fn poisson(rng: &mut ChaCha8Rng, mean: f64) -> u64 {
    if mean <= 0.0 {
        0
    } else {
        Poisson::new(mean).unwrap().sample(rng) as u64
    }
}

#[test]
fn fit_uncertainty_covers_truth() {
    let (c0, v) = (3727.0, 0.949);
    let x = grid(50, 4.0 * std::f64::consts::PI);
    let mut covered = 0;
    for seed in 0..100 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let recs: Vec<CountRecord<f64>> = x
            .iter()
            .map(|&xi| CountRecord::new(xi, 1.0, 0, 0, poisson(&mut rng, fringe(c0, v, 1.0, 0.0, xi))))
            .collect();
        let fit = fit_fringe(&recs, 0.0).unwrap();
        if (fit.visibility - v).abs() <= 3.0 * fit.sigma_visibility {
            covered += 1;
        }
    }
    assert!(covered >= 99, "covered {covered}/100");
}

#[test]
fn subtraction_then_fit_recovers_true_visibility() {
    let (c0, v, singles, window) = (3727.0, 0.949, 1.93e5, 21.5e-9);
    let x = grid(50, 4.0 * std::f64::consts::PI);
    let mut covered = 0;
    for seed in 0..100 {
        let mut rng = ChaCha8Rng::seed_from_u64(500 + seed);
        let recs: Vec<CountRecord<f64>> = x
            .iter()
            .map(|&xi| {
                let sa = poisson(&mut rng, singles);
                let sb = poisson(&mut rng, singles);
                let acc = 2.0 * singles * singles * window;
                let raw = poisson(&mut rng, fringe(c0, v, 1.0, 0.0, xi) + acc);
                CountRecord::new(xi, 1.0, sa, sb, raw)
            })
            .collect();
        let corrected = subtract_accidentals(&recs, window).unwrap();
        let fit = fit_fringe(&corrected, 0.0).unwrap();
        if (fit.visibility - v).abs() <= 3.0 * fit.sigma_visibility {
            covered += 1;
        }
    }
    assert!(covered >= 99, "covered {covered}/100");
}
