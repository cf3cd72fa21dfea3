//! Timestamp-level detection events, coincidence counting and the seeded
//! Monte Carlo that produces them.

mod record;
mod sim;
mod stream;

pub use record::{CountRecord, Corrected};
pub use sim::{delay_scan, point_seed, scan_phase, simulate_point, PointSimulation};
pub use stream::{
    count_coincidences, count_coincidences_shifted, export_events, parse_events, DetectionEvent,
    Detector, EventStream,
};
