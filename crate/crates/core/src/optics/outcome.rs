//! Per-pair detection outcomes for each interferometer layout.
//!
//! Amplitude conventions: beam splitter transmission `sqrt(T)`, reflection
//! `i sqrt(R)`. The short arm is the first-pass transmission, the long arm
//! the first-pass reflection. On the second passage a short-arm photon
//! leaves the detection port by reflection, a long-arm photon by
//! transmission; the complementary port is lost.

use num_complex::Complex;

use super::config::{Geometry, InterferometerConfig};
use super::state::{prepare_state, Arm, PathPair, TwoPhotonPathState};
use crate::error::Result;
use crate::num::Scalar;

/// Which photon of the pair: the one entering on the A side or the B side.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    A,
    B,
}

impl Side {
    fn other(self) -> Side {
        match self {
            Side::A => Side::B,
            Side::B => Side::A,
        }
    }
}

/// Second-passage output port.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Port {
    /// Towards the detectors.
    Detect,
    /// Unmonitored port.
    Lost,
}

/// Final spatial mode of one photon.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Mode {
    Detector(Side),
    Unmonitored(Side),
}

/// Arrival-time class of a two-photon outcome: photon B relative to photon A.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DelayClass {
    /// Both photons in step (short-short or long-long).
    Prompt,
    /// Photon B trails photon A by `dx/c`.
    BLate,
    /// Photon B leads photon A by `dx/c`.
    BEarly,
}

impl DelayClass {
    fn of(pair: PathPair, geometry: Geometry) -> Self {
        if !geometry.time_resolved() {
            return DelayClass::Prompt;
        }
        match pair.relative_delay() {
            0 => DelayClass::Prompt,
            1 => DelayClass::BLate,
            _ => DelayClass::BEarly,
        }
    }
}

/// Where a photon that took `arm` and left through `port` ends up.
pub fn route(geometry: Geometry, side: Side, arm: Arm, port: Port) -> Mode {
    let mode_side = match (geometry, arm) {
        (Geometry::MichelsonSwap, Arm::Long) => side.other(),
        _ => side,
    };
    match port {
        Port::Detect => Mode::Detector(mode_side),
        Port::Lost => Mode::Unmonitored(mode_side),
    }
}

/// One distinguishable two-photon outcome with its probability per
/// generated pair, before detector efficiencies.
///
/// `modes` lists the A-side photon's final mode first. For prompt outcomes
/// the photons are simultaneous and the pair is stored sorted.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OpticalOutcome<F> {
    pub class: DelayClass,
    pub modes: [Mode; 2],
    pub probability: F,
}

/// Per-pair outcome probabilities including detector efficiencies.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct PairOutcomeDistribution<F> {
    /// One photon at each detector, no relative delay.
    pub coincidence_central: F,
    /// One photon at each detector, photon B leading by `dx/c`.
    pub satellite_early: F,
    /// One photon at each detector, photon B trailing by `dx/c`.
    pub satellite_late: F,
    /// Both photons detected at the same detector.
    pub same_detector: F,
    /// At least one photon undetected.
    pub lost: F,
}

impl<F: Scalar> PairOutcomeDistribution<F> {
    pub fn total(&self) -> F {
        self.coincidence_central
            + self.satellite_early
            + self.satellite_late
            + self.same_detector
            + self.lost
    }
}

fn port_amplitude<F: Scalar>(arm: Arm, port: Port, phase: F) -> Complex<F> {
    // Includes the first-passage phase `i` of the long arm; magnitudes of
    // the first passage live in the path state populations.
    let i = Complex::new(F::zero(), F::one());
    let e = Complex::from_polar(F::one(), phase);
    match (arm, port) {
        (Arm::Short, Port::Detect) => i,
        (Arm::Short, Port::Lost) => Complex::new(F::one(), F::zero()),
        (Arm::Long, Port::Detect) => i * e,
        (Arm::Long, Port::Lost) => -e,
    }
}

/// Second-passage amplitude magnitude for a given arm and port.
fn port_magnitude<F: Scalar>(config: &InterferometerConfig<F>, arm: Arm, port: Port) -> F {
    let (t, r) = (config.bs_transmissivity(), config.bs_reflectivity);
    match (arm, port) {
        (Arm::Short, Port::Detect) | (Arm::Long, Port::Lost) => r.sqrt(),
        (Arm::Short, Port::Lost) | (Arm::Long, Port::Detect) => t.sqrt(),
    }
}

fn canonical(class: DelayClass, modes: [Mode; 2]) -> [Mode; 2] {
    let mut modes = modes;
    if class == DelayClass::Prompt && modes[0] > modes[1] {
        modes.swap(0, 1);
    }
    modes
}

/// Path state seen by the detection stage: the prepared state with the
/// mode-overlap factor applied, `sqrt(m)` per photon whose arm differs
/// between the two alternatives.
pub fn effective_state<F: Scalar>(config: &InterferometerConfig<F>) -> Result<TwoPhotonPathState<F>> {
    let mut state = prepare_state(config)?;
    let overlap = config.mode_match_visibility.sqrt();
    state.scale_coherences(|j, k| {
        let differing = j
            .arms()
            .iter()
            .zip(k.arms())
            .filter(|(a, b)| **a != *b)
            .count();
        overlap.powi(differing as i32)
    });
    Ok(state)
}

/// Enumerates every distinguishable outcome of one pair at total
/// two-photon phase `total_phase`. The scan phase rides on the A-side
/// long path on top of `phase_a`, so the long-long alternative picks up
/// `total_phase + phase_a + phase_b`.
///
/// Each probability is `<v| rho |v>` where `v` collects, over the path
/// alternatives of the outcome's delay class, the second-passage amplitudes
/// leading to that outcome.
pub fn optical_outcomes<F: Scalar>(
    config: &InterferometerConfig<F>,
    total_phase: F,
) -> Result<Vec<OpticalOutcome<F>>> {
    let state = effective_state(config)?;
    let phase = |side: Side| match side {
        Side::A => config.phase_a + total_phase,
        Side::B => config.phase_b,
    };
    let geometry = config.geometry;
    let ports = [Port::Detect, Port::Lost];

    let mut outcomes: Vec<(DelayClass, [Mode; 2], [Complex<F>; 4])> = Vec::new();
    for pair in PathPair::ALL {
        let class = DelayClass::of(pair, geometry);
        let [arm_a, arm_b] = pair.arms();
        for port_a in ports {
            for port_b in ports {
                let modes = canonical(
                    class,
                    [
                        route(geometry, Side::A, arm_a, port_a),
                        route(geometry, Side::B, arm_b, port_b),
                    ],
                );
                let amp = port_amplitude(arm_a, port_a, phase(Side::A))
                    * port_magnitude(config, arm_a, port_a)
                    * port_amplitude(arm_b, port_b, phase(Side::B))
                    * port_magnitude(config, arm_b, port_b);
                let slot = match outcomes.iter().position(|o| o.0 == class && o.1 == modes) {
                    Some(i) => i,
                    None => {
                        outcomes.push((class, modes, [Complex::new(F::zero(), F::zero()); 4]));
                        outcomes.len() - 1
                    }
                };
                let amps = &mut outcomes[slot].2;
                amps[pair.index()] = amps[pair.index()] + amp;
            }
        }
    }

    Ok(outcomes
        .into_iter()
        .map(|(class, modes, amps)| {
            let v = amps.map(|a| a.conj());
            OpticalOutcome {
                class,
                modes,
                probability: state.expectation(&v).max(F::zero()),
            }
        })
        .collect())
}

/// Folds detector efficiencies into the optical outcomes.
pub fn pair_outcome_distribution<F: Scalar>(
    config: &InterferometerConfig<F>,
    total_phase: F,
) -> Result<PairOutcomeDistribution<F>> {
    if !total_phase.is_finite() {
        return Err(crate::Error::Argument(format!(
            "total phase must be finite, got {total_phase}"
        )));
    }
    let outcomes = optical_outcomes(config, total_phase)?;
    let eff = |side: Side| match side {
        Side::A => config.detection_efficiency_a,
        Side::B => config.detection_efficiency_b,
    };

    let mut dist = PairOutcomeDistribution::<F>::default();
    for o in outcomes {
        let p = o.probability;
        let detected = match o.modes {
            [Mode::Detector(x), Mode::Detector(y)] => {
                let both = p * eff(x) * eff(y);
                if x == y {
                    dist.same_detector = dist.same_detector + both;
                } else {
                    match o.class {
                        DelayClass::Prompt => {
                            dist.coincidence_central = dist.coincidence_central + both
                        }
                        DelayClass::BLate => dist.satellite_late = dist.satellite_late + both,
                        DelayClass::BEarly => dist.satellite_early = dist.satellite_early + both,
                    }
                }
                both
            }
            _ => F::zero(),
        };
        dist.lost = dist.lost + (p - detected);
    }
    Ok(dist)
}

/// Mean true coincidence rate (no accidentals), counts per second.
///
/// For the Franson layout the satellites are added when
/// `window_includes_satellites` is set; the Michelson layouts have none.
pub fn coincidence_rate_analytic<F: Scalar>(
    config: &InterferometerConfig<F>,
    total_phase: F,
    window_includes_satellites: bool,
) -> Result<F> {
    let d = pair_outcome_distribution(config, total_phase)?;
    let mut p = d.coincidence_central;
    if config.geometry == Geometry::FransonDual && window_includes_satellites {
        p = p + d.satellite_early + d.satellite_late;
    }
    Ok(config.pair_rate * p)
}

/// Fringe visibility of [`coincidence_rate_analytic`] over the total phase,
/// evaluated at the fringe extremes `0` and `pi` relative to the fixed
/// phases.
pub fn analytic_visibility<F: Scalar>(
    config: &InterferometerConfig<F>,
    window_includes_satellites: bool,
) -> Result<F> {
    let offset = config.phase_a + config.phase_b;
    let hi = coincidence_rate_analytic(config, -offset, window_includes_satellites)?;
    let lo = coincidence_rate_analytic(config, F::PI() - offset, window_includes_satellites)?;
    let (c_max, c_min) = if hi >= lo { (hi, lo) } else { (lo, hi) };
    crate::analysis::visibility(c_max, c_min)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn cfg(geometry: Geometry) -> InterferometerConfig<f64> {
        InterferometerConfig {
            pump_coherence_time: f64::INFINITY,
            ..Default::default()
        }
        .with_geometry(geometry)
        .with_imbalance(1.2)
    }

    #[test]
    fn franson_ideal_in_phase() {
        let d = pair_outcome_distribution(&cfg(Geometry::FransonDual), 0.0).unwrap();
        assert!((d.coincidence_central - 0.25).abs() < 1e-15);
        assert!((d.satellite_early - 1.0 / 16.0).abs() < 1e-15);
        assert!((d.satellite_late - 1.0 / 16.0).abs() < 1e-15);
        assert_eq!(d.same_detector, 0.0);
        assert!((d.total() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn franson_ideal_out_of_phase() {
        let d = pair_outcome_distribution(&cfg(Geometry::FransonDual), PI).unwrap();
        assert!(d.coincidence_central.abs() < 1e-15);
        assert!((d.satellite_early - 1.0 / 16.0).abs() < 1e-15);
    }

    #[test]
    fn swap_routes_mixed_paths_to_one_detector() {
        for phi in [0.0, 0.7, PI, 4.0] {
            let d = pair_outcome_distribution(&cfg(Geometry::MichelsonSwap), phi).unwrap();
            assert_eq!(d.satellite_early, 0.0);
            assert_eq!(d.satellite_late, 0.0);
            assert!((d.same_detector - 1.0 / 8.0).abs() < 1e-15);
            let central = (1.0 + phi.cos()) / 8.0;
            assert!((d.coincidence_central - central).abs() < 1e-15);
        }
    }

    #[test]
    fn balanced_follows_product_law() {
        let base = InterferometerConfig::<f64> {
            geometry: Geometry::MichelsonBalanced,
            ..Default::default()
        }
        .with_imbalance(0.0);
        for (pa, pb) in [(0.0, 0.0), (0.5, 1.3), (PI, 0.2), (2.0, PI)] {
            let c = InterferometerConfig { phase_a: pa, phase_b: pb, ..base.clone() };
            let d = pair_outcome_distribution(&c, 0.0).unwrap();
            let expected = (pa / 2.0).cos().powi(2) * (pb / 2.0).cos().powi(2);
            assert!((d.coincidence_central - expected).abs() < 1e-14);
            assert_eq!(d.same_detector, 0.0);
        }
    }

    #[test]
    fn efficiencies_move_mass_to_lost() {
        let c = InterferometerConfig {
            detection_efficiency_a: 0.6,
            detection_efficiency_b: 0.5,
            ..cfg(Geometry::MichelsonSwap)
        };
        let d = pair_outcome_distribution(&c, 0.0).unwrap();
        assert!((d.coincidence_central - 0.3 / 4.0).abs() < 1e-15);
        assert!((d.same_detector - (0.36 + 0.25) / 16.0).abs() < 1e-15);
        assert!((d.total() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn franson_visibility_with_and_without_satellites() {
        let c = InterferometerConfig { pair_rate: 1.0, ..cfg(Geometry::FransonDual) };
        assert!((analytic_visibility(&c, true).unwrap() - 0.5).abs() < 1e-12);
        assert!((analytic_visibility(&c, false).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn swap_visibility_equals_mode_match() {
        let c = InterferometerConfig {
            mode_match_visibility: 0.949,
            ..cfg(Geometry::MichelsonSwap)
        };
        for window in [1.5e-9, 21.5e-9] {
            let c = InterferometerConfig { coincidence_window: window, ..c.clone() };
            let v = analytic_visibility(&c, c.window_includes_satellites()).unwrap();
            assert!((v - 0.949).abs() < 1e-12);
        }
    }

    #[test]
    fn non_finite_phase_is_rejected() {
        assert!(pair_outcome_distribution(&cfg(Geometry::FransonDual), f64::NAN).is_err());
    }
}
