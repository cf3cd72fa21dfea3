use crate::error::{Error, Result};
use crate::num::{speed_of_light, Scalar};

/// Interferometer layout.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Geometry {
    /// Two unbalanced Mach-Zehnder interferometers, one per photon.
    FransonDual,
    /// Single Michelson shared by both photons, with the mode-swapping lens
    /// in the long arm.
    MichelsonSwap,
    /// Michelson without the swap lens; single-photon interference regime.
    MichelsonBalanced,
}

impl Geometry {
    pub const ALL: [Geometry; 3] = [
        Geometry::FransonDual,
        Geometry::MichelsonSwap,
        Geometry::MichelsonBalanced,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Geometry::FransonDual => "franson_dual",
            Geometry::MichelsonSwap => "michelson_swap",
            Geometry::MichelsonBalanced => "michelson_balanced",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|g| g.name() == name)
    }

    /// Round-trip multiplier between arm length difference and optical
    /// path imbalance.
    pub fn passes(self) -> u32 {
        match self {
            Geometry::FransonDual => 1,
            Geometry::MichelsonSwap | Geometry::MichelsonBalanced => 2,
        }
    }

    /// Whether arrival-time classes are resolved by the detectors, so that
    /// path alternatives with different delays never interfere.
    pub fn time_resolved(self) -> bool {
        !matches!(self, Geometry::MichelsonBalanced)
    }
}

/// Complete description of one simulated experiment.
///
/// Lengths in meters, times in seconds, rates in counts per second, phases
/// in radians.
#[derive(Debug, Clone, PartialEq)]
pub struct InterferometerConfig<F> {
    pub geometry: Geometry,
    pub arm_short: F,
    pub arm_long: F,
    /// Beam splitter intensity reflectivity; transmissivity is `1 - R`.
    pub bs_reflectivity: F,
    /// Extra phase on the long path of the A-side photon.
    pub phase_a: F,
    /// Extra phase on the long path of the B-side photon.
    pub phase_b: F,
    /// Two-photon phase per piezo volt, rad/V.
    pub piezo_gain: F,
    pub pump_coherence_time: F,
    pub single_photon_coherence_time: F,
    pub coincidence_window: F,
    pub pair_rate: F,
    pub background_singles_a: F,
    pub background_singles_b: F,
    pub detection_efficiency_a: F,
    pub detection_efficiency_b: F,
    /// Residual two-photon visibility from imperfect spatial mode overlap.
    pub mode_match_visibility: F,
}

impl<F: Scalar> Default for InterferometerConfig<F> {
    fn default() -> Self {
        Self {
            geometry: Geometry::MichelsonSwap,
            arm_short: F::lit(0.3),
            arm_long: F::lit(0.9),
            bs_reflectivity: F::lit(0.5),
            phase_a: F::zero(),
            phase_b: F::zero(),
            piezo_gain: F::one(),
            pump_coherence_time: F::lit(1e-7),
            single_photon_coherence_time: F::lit(1e-13),
            coincidence_window: F::lit(1.5e-9),
            pair_rate: F::lit(1e4),
            background_singles_a: F::zero(),
            background_singles_b: F::zero(),
            detection_efficiency_a: F::one(),
            detection_efficiency_b: F::one(),
            mode_match_visibility: F::one(),
        }
    }
}

impl<F: Scalar> InterferometerConfig<F> {
    /// Sets the arm lengths so that the optical imbalance equals `dx`,
    /// keeping the short arm fixed.
    pub fn with_imbalance(mut self, dx: F) -> Self {
        let passes = F::from_u32(self.geometry.passes()).unwrap();
        self.arm_long = self.arm_short + dx / passes;
        self
    }

    pub fn with_geometry(mut self, geometry: Geometry) -> Self {
        let dx = self.imbalance();
        self.geometry = geometry;
        self.with_imbalance(dx)
    }

    /// Optical path imbalance: `l - s` for the Franson layout and
    /// `2 (l - s)` for the Michelson layouts (double passage of each arm).
    pub fn imbalance(&self) -> F {
        F::from_u32(self.geometry.passes()).unwrap() * (self.arm_long - self.arm_short)
    }

    pub fn bs_transmissivity(&self) -> F {
        F::one() - self.bs_reflectivity
    }

    /// Imbalance expressed as a delay, seconds.
    pub fn imbalance_delay(&self) -> F {
        self.imbalance() / speed_of_light::<F>()
    }

    /// Pump-induced coherence between the short-short and long-long
    /// alternatives: `exp(-dx / (c tau_pump))` (Lorentzian pump line).
    pub fn pump_coherence(&self) -> F {
        pump_envelope(self.imbalance(), self.pump_coherence_time)
    }

    /// Single-photon coherence for a one-arm path difference:
    /// `exp(-(dx / (c tau_c))^2 / 2)` (Gaussian filter).
    pub fn single_photon_coherence(&self) -> F {
        filter_envelope(self.imbalance(), self.single_photon_coherence_time)
    }

    /// Net two-photon fringe visibility available to the interfering
    /// alternatives: mode match times pump coherence.
    pub fn two_photon_coherence(&self) -> F {
        self.mode_match_visibility * self.pump_coherence()
    }

    /// Whether the coincidence window reaches the satellite peaks at
    /// `+-dx/c`. Only meaningful for the Franson layout.
    pub fn window_includes_satellites(&self) -> bool {
        self.imbalance() <= speed_of_light::<F>() * self.coincidence_window
    }

    pub fn validate(&self) -> Result<()> {
        let finite_nonneg = |field: &'static str, v: F| -> Result<()> {
            if v.is_nan() || v < F::zero() {
                Err(Error::config(field, format!("must be >= 0, got {v}")))
            } else {
                Ok(())
            }
        };
        let unit = |field: &'static str, v: F| -> Result<()> {
            if v.is_nan() || v < F::zero() || v > F::one() {
                Err(Error::config(field, format!("must lie in [0, 1], got {v}")))
            } else {
                Ok(())
            }
        };
        let finite = |field: &'static str, v: F| -> Result<()> {
            if v.is_finite() {
                Ok(())
            } else {
                Err(Error::config(field, format!("must be finite, got {v}")))
            }
        };

        finite("arm_short_s", self.arm_short)?;
        finite("arm_long_l", self.arm_long)?;
        finite_nonneg("arm_short_s", self.arm_short)?;
        if self.arm_long < self.arm_short {
            return Err(Error::config(
                "arm_long_l",
                format!(
                    "must be >= arm_short_s ({}), got {}",
                    self.arm_short, self.arm_long
                ),
            ));
        }
        unit("bs_reflectivity_R", self.bs_reflectivity)?;
        finite("phase_A", self.phase_a)?;
        finite("phase_B", self.phase_b)?;
        finite("piezo_gain", self.piezo_gain)?;
        // Coherence times may be infinite (ideal source / unfiltered).
        finite_nonneg("pump_coherence_time", self.pump_coherence_time)?;
        finite_nonneg(
            "single_photon_coherence_time",
            self.single_photon_coherence_time,
        )?;
        finite("coincidence_window", self.coincidence_window)?;
        finite_nonneg("coincidence_window", self.coincidence_window)?;
        for (field, v) in [
            ("pair_rate", self.pair_rate),
            ("background_singles_A", self.background_singles_a),
            ("background_singles_B", self.background_singles_b),
        ] {
            finite(field, v)?;
            finite_nonneg(field, v)?;
        }
        unit("detection_efficiency_A", self.detection_efficiency_a)?;
        unit("detection_efficiency_B", self.detection_efficiency_b)?;
        unit("mode_match_visibility", self.mode_match_visibility)?;
        Ok(())
    }
}

/// `exp(-|delay_length| / (c tau))`, with `0/0` read as full coherence.
pub(crate) fn pump_envelope<F: Scalar>(delay_length: F, tau: F) -> F {
    let delay_length = delay_length.abs();
    if delay_length == F::zero() {
        return F::one();
    }
    (-(delay_length / (speed_of_light::<F>() * tau))).exp()
}

/// `exp(-(delay_length / (c tau))^2 / 2)`, with `0/0` read as full coherence.
pub(crate) fn filter_envelope<F: Scalar>(delay_length: F, tau: F) -> F {
    if delay_length == F::zero() {
        return F::one();
    }
    let x = delay_length / (speed_of_light::<F>() * tau);
    (-(x * x) / F::lit(2.0)).exp()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn michelson_imbalance_counts_both_passes() {
        let cfg = InterferometerConfig::<f64> {
            geometry: Geometry::MichelsonSwap,
            arm_short: 0.2,
            arm_long: 0.8,
            ..Default::default()
        };
        assert!((cfg.imbalance() - 1.2).abs() < 1e-15);
        let franson = InterferometerConfig { geometry: Geometry::FransonDual, ..cfg };
        assert!((franson.imbalance() - 0.6).abs() < 1e-15);
    }

    #[test]
    fn with_imbalance_inverts_imbalance() {
        for g in Geometry::ALL {
            let cfg = InterferometerConfig::<f64>::default()
                .with_geometry(g)
                .with_imbalance(1.2);
            assert!((cfg.imbalance() - 1.2).abs() < 1e-12, "{g:?}");
        }
    }

    #[test]
    fn pump_coherence_at_1p2_m_imbalance() {
        let cfg = InterferometerConfig::<f64>::default().with_imbalance(1.2);
        // exp(-1.2 / (c * 1e-7))
        let expected = (-1.2_f64 / 29.979_245_8).exp();
        assert!((cfg.pump_coherence() - expected).abs() < 1e-12);
        assert!((cfg.pump_coherence() - 0.9608).abs() < 5e-5);
    }

    #[test]
    fn infinite_pump_coherence_is_ideal() {
        let cfg = InterferometerConfig::<f64> {
            pump_coherence_time: f64::INFINITY,
            ..Default::default()
        };
        assert_eq!(cfg.pump_coherence(), 1.0);
        cfg.validate().unwrap();
    }

    #[test]
    fn validation_names_the_field() {
        let cfg = InterferometerConfig::<f64> {
            bs_reflectivity: 1.2,
            ..Default::default()
        };
        match cfg.validate() {
            Err(Error::Config { field, .. }) => assert_eq!(field, "bs_reflectivity_R"),
            other => panic!("unexpected {other:?}"),
        }

        let cfg = InterferometerConfig::<f64> {
            detection_efficiency_b: 1.5,
            ..Default::default()
        };
        assert!(matches!(
            cfg.validate(),
            Err(Error::Config { field: "detection_efficiency_B", .. })
        ));

        let cfg = InterferometerConfig::<f64> {
            pair_rate: -1.0,
            ..Default::default()
        };
        assert!(matches!(
            cfg.validate(),
            Err(Error::Config { field: "pair_rate", .. })
        ));

        let cfg = InterferometerConfig::<f64> {
            arm_long: 0.1,
            ..Default::default()
        };
        assert!(matches!(
            cfg.validate(),
            Err(Error::Config { field: "arm_long_l", .. })
        ));
    }

    #[test]
    fn transmissivity_complements_reflectivity() {
        let cfg = InterferometerConfig::<f64> {
            bs_reflectivity: 0.53,
            ..Default::default()
        };
        assert_eq!(cfg.bs_transmissivity(), 1.0 - 0.53);
    }
}
