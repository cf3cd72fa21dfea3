//! Spec files, scan orchestration and on-disk artifacts for the `timebin`
//! command-line tool.

pub mod artifacts;
pub mod error;
pub mod records_csv;
pub mod reproduce;
pub mod run;
pub mod spec;

pub use error::{CliError, SpecError};
pub use reproduce::{reproduce, Report};
pub use run::{execute, run, RunOutput};
pub use spec::{load_spec, parse_spec, ExperimentSpec, ScanKind};
