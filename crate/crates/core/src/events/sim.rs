//! Seeded Monte Carlo of pair emission, interferometer routing and detection.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Exp};
use rayon::prelude::*;

use super::record::CountRecord;
use super::stream::{count_coincidences, count_coincidences_shifted, EventStream};
use crate::error::{Error, Result};
use crate::num::Scalar;
use crate::optics::{optical_outcomes, DelayClass, InterferometerConfig, Mode, Side};

/// Streams and tallies from one simulated acquisition.
#[derive(Debug, Clone, PartialEq)]
pub struct PointSimulation<F> {
    pub stream_a: EventStream<F>,
    pub stream_b: EventStream<F>,
    pub record: CountRecord<F>,
}

const GOLDEN_GAMMA: u64 = 0x9e37_79b9_7f4a_7c15;

fn splitmix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Seed for scan point `index` of a scan seeded with `seed`:
/// `splitmix64(seed + (index + 1) * 0x9e3779b97f4a7c15)` (wrapping).
///
/// This is element `index + 1` of the SplitMix64 sequence started at
/// `seed`, so points are decorrelated and independent of evaluation order.
pub fn point_seed(seed: u64, index: usize) -> u64 {
    splitmix64(seed.wrapping_add(GOLDEN_GAMMA.wrapping_mul(index as u64 + 1)))
}

/// Arrival times of a homogeneous Poisson process on `[0, duration]`.
fn poisson_arrivals(rng: &mut ChaCha8Rng, rate: f64, duration: f64) -> Vec<f64> {
    if !(rate > 0.0) {
        return Vec::new();
    }
    let gaps = Exp::new(rate).expect("positive rate");
    let mut times = Vec::with_capacity((rate * duration * 1.05) as usize + 16);
    let mut t = gaps.sample(rng);
    while t <= duration {
        times.push(t);
        t += gaps.sample(rng);
    }
    times
}

/// Simulates one acquisition of `duration` seconds at total two-photon
/// phase `total_phase`.
///
/// Pairs arrive as a Poisson process at `pair_rate`. Each pair draws one
/// optical outcome; every photon reaching a detector is then kept with that
/// detector's efficiency. Prompt photons share the emission timestamp; in a
/// delayed class the long-arm photon trails by `dx/c`. Two photons kept at
/// the same detector are both stamped at the emission time. Background
/// singles are independent Poisson processes per detector. Events past
/// `duration` are dropped.
///
/// The random stream is consumed in a fixed order (pairs, background A,
/// background B), so identical inputs give identical output.
pub fn simulate_point<F: Scalar>(
    config: &InterferometerConfig<F>,
    total_phase: F,
    duration: F,
    seed: u64,
) -> Result<PointSimulation<F>> {
    if !(duration > F::zero()) || !duration.is_finite() {
        return Err(Error::Argument(format!(
            "duration must be positive and finite, got {duration}"
        )));
    }
    let outcomes = optical_outcomes(config, total_phase)?;
    let duration_f = duration.as_f64();
    let delay = config.imbalance_delay().as_f64();
    let eff_a = config.detection_efficiency_a.as_f64();
    let eff_b = config.detection_efficiency_b.as_f64();

    let mut cumulative = Vec::with_capacity(outcomes.len());
    let mut acc = 0.0;
    for o in &outcomes {
        acc += o.probability.as_f64();
        cumulative.push(acc);
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut ts_a: Vec<f64> = Vec::new();
    let mut ts_b: Vec<f64> = Vec::new();

    for t in poisson_arrivals(&mut rng, config.pair_rate.as_f64(), duration_f) {
        let u: f64 = rng.random::<f64>() * acc;
        let idx = cumulative.partition_point(|&c| c <= u).min(outcomes.len() - 1);
        let outcome = &outcomes[idx];

        // Photon 0 is the A-side photon, photon 1 the B-side one.
        let offsets = match outcome.class {
            DelayClass::Prompt => [0.0, 0.0],
            DelayClass::BLate => [0.0, delay],
            DelayClass::BEarly => [delay, 0.0],
        };
        let mut kept: [Option<(Side, f64)>; 2] = [None, None];
        for (slot, (mode, offset)) in outcome.modes.iter().zip(offsets).enumerate() {
            if let Mode::Detector(side) = mode {
                let eff = if *side == Side::A { eff_a } else { eff_b };
                if rng.random::<f64>() < eff {
                    kept[slot] = Some((*side, t + offset));
                }
            }
        }
        if let [Some((x, _)), Some((y, _))] = kept {
            if x == y {
                kept = [Some((x, t)), Some((y, t))];
            }
        }
        for (side, ts) in kept.into_iter().flatten() {
            if ts <= duration_f {
                match side {
                    Side::A => ts_a.push(ts),
                    Side::B => ts_b.push(ts),
                }
            }
        }
    }

    ts_a.extend(poisson_arrivals(
        &mut rng,
        config.background_singles_a.as_f64(),
        duration_f,
    ));
    ts_b.extend(poisson_arrivals(
        &mut rng,
        config.background_singles_b.as_f64(),
        duration_f,
    ));

    let convert = |v: Vec<f64>| -> Vec<F> { v.into_iter().map(F::lit).collect() };
    let stream_a = EventStream::new(Side::A, duration, convert(ts_a))?;
    let stream_b = EventStream::new(Side::B, duration, convert(ts_b))?;
    let coincidences = count_coincidences(
        stream_a.timestamps(),
        stream_b.timestamps(),
        config.coincidence_window,
    )?;
    let record = CountRecord::new(
        total_phase,
        duration,
        stream_a.len() as u64,
        stream_b.len() as u64,
        coincidences,
    );
    Ok(PointSimulation {
        stream_a,
        stream_b,
        record,
    })
}

fn check_scan<F: Scalar>(values: &[F], duration: F) -> Result<()> {
    if values.is_empty() {
        return Err(Error::Argument("scan values must be nonempty".into()));
    }
    if let Some(v) = values.iter().find(|v| !v.is_finite()) {
        return Err(Error::Argument(format!("scan value {v} is not finite")));
    }
    if !(duration > F::zero()) || !duration.is_finite() {
        return Err(Error::Argument(format!(
            "duration per point must be positive and finite, got {duration}"
        )));
    }
    Ok(())
}

/// Piezo scan: point `i` runs at phase `piezo_gain * voltages[i]` with
/// seed [`point_seed`]`(seed, i)`. Points run in parallel; results are in
/// scan order and do not depend on the thread count.
pub fn scan_phase<F: Scalar>(
    config: &InterferometerConfig<F>,
    voltages: &[F],
    duration_per_point: F,
    seed: u64,
) -> Result<Vec<CountRecord<F>>> {
    check_scan(voltages, duration_per_point)?;
    config.validate()?;
    voltages
        .par_iter()
        .enumerate()
        .map(|(i, &v)| {
            let phase = config.piezo_gain * v;
            let mut sim = simulate_point(config, phase, duration_per_point, point_seed(seed, i))?;
            sim.record.scan_value = v;
            Ok(sim.record)
        })
        .collect()
}

/// Delay scan at zero piezo phase: each point is an independent acquisition
/// whose B stream is shifted by `delays[i]` before counting.
pub fn delay_scan<F: Scalar>(
    config: &InterferometerConfig<F>,
    delays: &[F],
    duration_per_point: F,
    seed: u64,
) -> Result<Vec<CountRecord<F>>> {
    check_scan(delays, duration_per_point)?;
    config.validate()?;
    delays
        .par_iter()
        .enumerate()
        .map(|(i, &delay)| {
            let sim = simulate_point(config, F::zero(), duration_per_point, point_seed(seed, i))?;
            let coincidences = count_coincidences_shifted(
                sim.stream_a.timestamps(),
                sim.stream_b.timestamps(),
                delay,
                config.coincidence_window,
            )?;
            Ok(CountRecord::new(
                delay,
                duration_per_point,
                sim.record.singles_a,
                sim.record.singles_b,
                coincidences,
            ))
        })
        .collect()
}
