//! Simulation and analysis of two-photon time-bin interference.
//!
//! Three layers:
//!
//! * [`optics`]: path-state model of a photon pair in a Franson pair of
//!   interferometers or a single Michelson with or without the mode-swapping
//!   lens, per-pair outcome probabilities, timing-regime checks.
//! * [`events`]: seeded Monte Carlo of detection timestamps and all-pairs
//!   coincidence counting.
//! * [`analysis`]: fringe fitting, accidental subtraction and window
//!   estimation on scan records.
//!
//! Everything numeric is generic over [`Scalar`] (`f32` or `f64`). The
//! aliases below fix the scalar to `f64`, which is what timestamp-level
//! simulation needs: nanosecond windows over second-long acquisitions are
//! below `f32` resolution.

pub mod analysis;
pub mod error;
pub mod events;
mod linalg;
pub mod num;
pub mod optics;

pub use error::{Error, Result};
pub use num::{Scalar, SPEED_OF_LIGHT};

pub type Config = optics::InterferometerConfig<f64>;
pub type PathState = optics::TwoPhotonPathState<f64>;
pub type OutcomeDistribution = optics::PairOutcomeDistribution<f64>;
pub type Record = events::CountRecord<f64>;
pub type Stream = events::EventStream<f64>;
pub type Fit = analysis::FitResult<f64>;
pub type Window = analysis::WindowEstimate<f64>;

pub type ConfigF32 = optics::InterferometerConfig<f32>;
pub type PathStateF32 = optics::TwoPhotonPathState<f32>;
pub type FitF32 = analysis::FitResult<f32>;
