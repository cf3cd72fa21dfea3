use crate::num::Scalar;

/// Accidental-subtracted coincidences attached to a record.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Corrected<F> {
    pub coincidences: F,
    /// The subtraction went negative and was clamped to zero.
    pub clamped: bool,
}

/// Counts collected at one scan point.
#[derive(Debug, Clone, PartialEq)]
pub struct CountRecord<F> {
    /// Piezo voltage for phase scans, imposed delay (s) for delay scans.
    pub scan_value: F,
    pub duration: F,
    pub singles_a: u64,
    pub singles_b: u64,
    pub coincidences_raw: u64,
    pub corrected: Option<Corrected<F>>,
}

impl<F: Scalar> CountRecord<F> {
    pub fn new(scan_value: F, duration: F, singles_a: u64, singles_b: u64, coincidences_raw: u64) -> Self {
        Self {
            scan_value,
            duration,
            singles_a,
            singles_b,
            coincidences_raw,
            corrected: None,
        }
    }

    /// Coincidences used downstream: the corrected value when present.
    pub fn coincidences(&self) -> F {
        match self.corrected {
            Some(c) => c.coincidences,
            None => F::from_count(self.coincidences_raw),
        }
    }

    pub fn coincidence_rate(&self) -> F {
        self.coincidences() / self.duration
    }

    /// Accidental count already subtracted, `raw - corrected`; zero for raw
    /// records. Underestimates the subtraction for clamped points.
    pub fn accidental_estimate(&self) -> F {
        match self.corrected {
            None => F::zero(),
            Some(c) => F::from_count(self.coincidences_raw) - c.coincidences,
        }
    }

    /// `1/S_A + 1/S_B`: relative variance of an accidental estimate built
    /// from these singles.
    pub fn singles_relative_variance(&self) -> F {
        [self.singles_a, self.singles_b]
            .into_iter()
            .filter(|&s| s > 0)
            .fold(F::zero(), |acc, s| acc + F::one() / F::from_count(s))
    }

    /// Statistical variance of [`Self::coincidences`]: Poisson variance of
    /// the raw counts plus, for corrected records, the variance of the
    /// subtracted accidental estimate.
    pub fn variance(&self) -> F {
        let acc = self.accidental_estimate();
        F::from_count(self.coincidences_raw) + acc * acc * self.singles_relative_variance()
    }
}
