//! Fringe fitting, visibility, accidental subtraction and coincidence
//! window estimation.

mod accidentals;
mod fit;
mod visibility;
mod window;

pub use accidentals::{accidental_count, subtract_accidentals};
pub use fit::{fit_counts, fit_fringe, FitResult};
pub use visibility::visibility;
pub use window::{estimate_window, WindowEstimate};
