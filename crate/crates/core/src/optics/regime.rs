use super::config::InterferometerConfig;
use crate::error::Result;
use crate::num::{speed_of_light, Scalar};

/// Which timing conditions for time-bin entanglement a configuration meets.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RegimeReport {
    /// `dx > c tau_c`: no single-photon interference.
    pub cond_single_ok: bool,
    /// `dx < c tau_pump`: short-short and long-long stay coherent.
    pub cond_pump_ok: bool,
    /// `dx > c dT_c`: satellites fall outside the coincidence window.
    pub cond_window_ok: bool,
    /// `tau_pump > dT_c`.
    pub cond_tau_gt_window: bool,
    pub franson_entanglement_feasible: bool,
    /// The swap layout rejects mixed-path events by position, so only the
    /// pump coherence condition remains.
    pub swap_entanglement_feasible: bool,
}

/// Evaluates the timing inequalities (all strict) for the configured
/// imbalance.
pub fn classify_regimes<F: Scalar>(config: &InterferometerConfig<F>) -> Result<RegimeReport> {
    config.validate()?;
    let c = speed_of_light::<F>();
    let dx = config.imbalance();
    let cond_single_ok = dx > c * config.single_photon_coherence_time;
    let cond_pump_ok = dx < c * config.pump_coherence_time;
    let cond_window_ok = dx > c * config.coincidence_window;
    let cond_tau_gt_window = config.pump_coherence_time > config.coincidence_window;
    Ok(RegimeReport {
        cond_single_ok,
        cond_pump_ok,
        cond_window_ok,
        cond_tau_gt_window,
        franson_entanglement_feasible: cond_single_ok && cond_pump_ok && cond_window_ok,
        swap_entanglement_feasible: cond_pump_ok,
    })
}

/// Smallest imbalance that still separates the satellites from a
/// coincidence window of `window` seconds (strict bound, no margin).
pub fn min_postselection_imbalance<F: Scalar>(window: F) -> F {
    speed_of_light::<F>() * window
}

impl RegimeReport {
    /// Key-value rendering, one condition per line.
    pub fn to_text(&self) -> String {
        format!(
            "cond_single_ok = {}\ncond_pump_ok = {}\ncond_window_ok = {}\n\
             cond_tau_gt_window = {}\nfranson_entanglement_feasible = {}\n\
             swap_entanglement_feasible = {}\n",
            self.cond_single_ok,
            self.cond_pump_ok,
            self.cond_window_ok,
            self.cond_tau_gt_window,
            self.franson_entanglement_feasible,
            self.swap_entanglement_feasible
        )
    }
}
