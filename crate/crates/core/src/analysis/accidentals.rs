use crate::error::{Error, Result};
use crate::events::{Corrected, CountRecord};
use crate::num::Scalar;

/// Expected accidental coincidences for a record: `2 S_A S_B w / T` with
/// singles counts `S` over duration `T`.
pub fn accidental_count<F: Scalar>(record: &CountRecord<F>, window: F) -> F {
    let sa = F::from_count(record.singles_a);
    let sb = F::from_count(record.singles_b);
    F::lit(2.0) * sa * sb * window / record.duration
}

/// Subtracts the accidental estimate from every record. Negative results
/// are clamped to zero and flagged.
pub fn subtract_accidentals<F: Scalar>(
    records: &[CountRecord<F>],
    window: F,
) -> Result<Vec<CountRecord<F>>> {
    if window.is_nan() || window < F::zero() {
        return Err(Error::Argument(format!("window must be >= 0, got {window}")));
    }
    records
        .iter()
        .map(|r| {
            if !(r.duration > F::zero()) {
                return Err(Error::Argument(format!(
                    "record at scan value {} has nonpositive duration",
                    r.scan_value
                )));
            }
            let raw = F::from_count(r.coincidences_raw);
            let corrected = raw - accidental_count(r, window);
            let clamped = corrected < F::zero();
            Ok(CountRecord {
                corrected: Some(Corrected {
                    coincidences: corrected.max(F::zero()),
                    clamped,
                }),
                ..r.clone()
            })
        })
        .collect()
}
