use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::num::Scalar;
use crate::optics::Side;

/// Detector label; `A` and `B` follow the photon sides.
pub type Detector = Side;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DetectionEvent<F> {
    pub detector: Detector,
    pub timestamp: F,
}

/// Time-ordered detections at one detector over `[0, duration]`.
#[derive(Debug, Clone, PartialEq)]
pub struct EventStream<F> {
    pub detector: Detector,
    pub duration: F,
    timestamps: Vec<F>,
}

impl<F: Scalar> EventStream<F> {
    /// Builds a stream from timestamps, sorting them.
    pub fn new(detector: Detector, duration: F, mut timestamps: Vec<F>) -> Result<Self> {
        if let Some(t) = timestamps
            .iter()
            .find(|t| t.is_nan() || **t < F::zero() || **t > duration)
        {
            return Err(Error::Argument(format!(
                "timestamp {t} outside [0, {duration}]"
            )));
        }
        timestamps.sort_by(|a, b| a.partial_cmp(b).unwrap());
        Ok(Self {
            detector,
            duration,
            timestamps,
        })
    }

    pub fn empty(detector: Detector, duration: F) -> Self {
        Self {
            detector,
            duration,
            timestamps: Vec::new(),
        }
    }

    pub fn timestamps(&self) -> &[F] {
        &self.timestamps
    }

    pub fn len(&self) -> usize {
        self.timestamps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.timestamps.is_empty()
    }

    pub fn events(&self) -> impl Iterator<Item = DetectionEvent<F>> + '_ {
        self.timestamps.iter().map(move |&timestamp| DetectionEvent {
            detector: self.detector,
            timestamp,
        })
    }
}

fn check_sorted<F: Scalar>(name: &str, ts: &[F]) -> Result<()> {
    match ts.windows(2).position(|w| !(w[0] <= w[1])) {
        None => Ok(()),
        Some(i) => Err(Error::Argument(format!(
            "stream {name} not sorted at index {}: {} > {}",
            i + 1,
            ts[i],
            ts[i + 1]
        ))),
    }
}

/// Counts all pairs `(a, b)` with `|t_a - t_b| <= window`.
///
/// Every qualifying pair counts, so one event may take part in several
/// coincidences. With this convention the accidental rate of independent
/// Poisson streams is exactly `2 S_A S_B window`.
pub fn count_coincidences<F: Scalar>(stream_a: &[F], stream_b: &[F], window: F) -> Result<u64> {
    count_coincidences_shifted(stream_a, stream_b, F::zero(), window)
}

/// As [`count_coincidences`], with every B timestamp delayed by `shift`.
pub fn count_coincidences_shifted<F: Scalar>(
    stream_a: &[F],
    stream_b: &[F],
    shift: F,
    window: F,
) -> Result<u64> {
    if window.is_nan() || window < F::zero() {
        return Err(Error::Argument(format!("window must be >= 0, got {window}")));
    }
    if !shift.is_finite() {
        return Err(Error::Argument(format!("shift must be finite, got {shift}")));
    }
    check_sorted("A", stream_a)?;
    check_sorted("B", stream_b)?;

    // Sliding [lo, hi) over B: entries within the window of the current A.
    let (mut lo, mut hi) = (0usize, 0usize);
    let mut total = 0u64;
    for &ta in stream_a {
        while lo < stream_b.len() && ta - (stream_b[lo] + shift) > window {
            lo += 1;
        }
        hi = hi.max(lo);
        while hi < stream_b.len() && (stream_b[hi] + shift) - ta <= window {
            hi += 1;
        }
        total += (hi - lo) as u64;
    }
    Ok(total)
}

/// Two-column text export: detector id and timestamp (12 significant
/// digits), merged over both streams in time order.
pub fn export_events<F: Scalar>(streams: &[&EventStream<F>]) -> String {
    let mut merged: Vec<DetectionEvent<F>> = streams.iter().flat_map(|s| s.events()).collect();
    merged.sort_by(|a, b| {
        a.timestamp
            .partial_cmp(&b.timestamp)
            .unwrap()
            .then(a.detector.cmp(&b.detector))
    });
    let mut out = String::from("# detector_id timestamp_seconds\n");
    for e in merged {
        let id = match e.detector {
            Side::A => 'A',
            Side::B => 'B',
        };
        writeln!(out, "{id} {:.11e}", e.timestamp.as_f64()).unwrap();
    }
    out
}

/// Parses the text written by [`export_events`].
pub fn parse_events(text: &str) -> Result<Vec<DetectionEvent<f64>>> {
    let mut events = Vec::new();
    for (n, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut cols = line.split_whitespace();
        let bad = || Error::Argument(format!("line {}: expected `<A|B> <seconds>`", n + 1));
        let detector = match cols.next() {
            Some("A") => Side::A,
            Some("B") => Side::B,
            _ => return Err(bad()),
        };
        let timestamp: f64 = cols.next().and_then(|t| t.parse().ok()).ok_or_else(bad)?;
        if cols.next().is_some() {
            return Err(bad());
        }
        events.push(DetectionEvent {
            detector,
            timestamp,
        });
    }
    Ok(events)
}
