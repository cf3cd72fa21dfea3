//! Analytic two-photon path model: configuration, path state, per-pair
//! outcome probabilities and the timing-regime classifier.

mod config;
mod outcome;
mod regime;
mod state;

pub use config::{Geometry, InterferometerConfig};
pub use outcome::{
    analytic_visibility, coincidence_rate_analytic, effective_state, optical_outcomes,
    pair_outcome_distribution, route, DelayClass, Mode, OpticalOutcome, PairOutcomeDistribution,
    Port, Side,
};
pub use regime::{classify_regimes, min_postselection_imbalance, RegimeReport};
pub use state::{prepare_state, Arm, Matrix4, PathPair, TwoPhotonPathState};
