use crate::error::{Error, Result};
use crate::num::Scalar;

/// Fringe contrast `(c_max - c_min) / (c_max + c_min)`.
pub fn visibility<F: Scalar>(c_max: F, c_min: F) -> Result<F> {
    if c_max.is_nan() || c_min.is_nan() || c_min < F::zero() {
        return Err(Error::Argument(format!(
            "counts must be >= 0, got c_max={c_max}, c_min={c_min}"
        )));
    }
    if c_min > c_max {
        return Err(Error::Argument(format!("c_min ({c_min}) exceeds c_max ({c_max})")));
    }
    let sum = c_max + c_min;
    if sum == F::zero() {
        return Err(Error::UndefinedVisibility);
    }
    Ok((c_max - c_min) / sum)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn extremes() {
        assert_eq!(visibility(100.0, 0.0).unwrap(), 1.0);
        assert_eq!(visibility(100.0, 100.0).unwrap(), 0.0);
    }

    #[test]
    fn ideal_fringe_extremes() {
        let (c0, v) = (3727.0_f64, 0.916);
        let got = visibility(c0 * (1.0 + v), c0 * (1.0 - v)).unwrap();
        assert!((got - v).abs() < 1e-12);
    }

    #[test]
    fn errors() {
        assert!(matches!(visibility(0.0, 0.0), Err(Error::UndefinedVisibility)));
        assert!(matches!(visibility(1.0, 2.0), Err(Error::Argument(_))));
        assert!(matches!(visibility(1.0, -1.0), Err(Error::Argument(_))));
    }
}
