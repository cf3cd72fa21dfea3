use crate::error::{Error, Result};
use crate::events::CountRecord;
use crate::num::Scalar;

/// Coincidence window recovered from a delay scan.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WindowEstimate<F> {
    /// Plateau half-width, seconds.
    pub window: F,
    /// Coincidence rate outside the plateau, counts/s.
    pub baseline: F,
    /// Coincidence rate on the plateau, counts/s.
    pub plateau_rate: F,
    /// Half the gap between the outermost plateau point and the innermost
    /// baseline point.
    pub sigma_window: F,
    pub sigma_baseline: F,
    pub sigma_plateau_rate: F,
}

/// Fits a symmetric top hat on a constant baseline to coincidence rate
/// versus imposed delay.
///
/// For each candidate half-width taken from the scanned `|delay|` values,
/// plateau and baseline levels are profiled out as group means and the
/// residual sum of squares is compared. The returned window sits halfway
/// between the last delay inside the plateau and the first one outside.
pub fn estimate_window<F: Scalar>(records: &[CountRecord<F>]) -> Result<WindowEstimate<F>> {
    if records.len() < 3 {
        return Err(Error::InsufficientData { got: records.len(), need: 3 });
    }
    let points: Vec<(F, F, F, F)> = records
        .iter()
        .map(|r| (r.scan_value.abs(), r.coincidence_rate(), r.coincidences(), r.duration))
        .collect();
    let mut edges: Vec<F> = points.iter().map(|p| p.0).collect();
    edges.sort_by(|a, b| a.partial_cmp(b).unwrap());
    edges.dedup();
    if edges.len() < 2 {
        return Err(Error::Unidentifiable(
            "delay scan needs at least two distinct |delay| values".into(),
        ));
    }

    let mut best: Option<(F, usize)> = None;
    for (k, &h) in edges[..edges.len() - 1].iter().enumerate() {
        let (inside, outside): (Vec<_>, Vec<_>) = points.iter().partition(|p| p.0 <= h);
        let mean = |g: &[&(F, F, F, F)]| {
            g.iter().fold(F::zero(), |a, p| a + p.1) / F::from_usize(g.len()).unwrap()
        };
        let (mi, mo) = (mean(&inside), mean(&outside));
        let sse = inside.iter().fold(F::zero(), |a, p| a + (p.1 - mi) * (p.1 - mi))
            + outside.iter().fold(F::zero(), |a, p| a + (p.1 - mo) * (p.1 - mo));
        if best.map_or(true, |(b, _)| sse < b) {
            best = Some((sse, k));
        }
    }
    let (_, k) = best.expect("at least one candidate");
    let (h_in, h_out) = (edges[k], edges[k + 1]);

    // Poisson rate estimates per group.
    let group = |inside: bool| {
        let (counts, time) = points
            .iter()
            .filter(|p| (p.0 <= h_in) == inside)
            .fold((F::zero(), F::zero()), |(c, t), p| (c + p.2, t + p.3));
        (counts / time, counts.max(F::zero()).sqrt() / time)
    };
    let (plateau_rate, sigma_plateau_rate) = group(true);
    let (baseline, sigma_baseline) = group(false);

    let excess = plateau_rate - baseline;
    let noise = (sigma_plateau_rate * sigma_plateau_rate + sigma_baseline * sigma_baseline).sqrt();
    if !(excess > F::lit(5.0) * noise) || !(excess > F::zero()) {
        return Err(Error::Unidentifiable(format!(
            "no significant plateau: plateau {plateau_rate}/s vs baseline {baseline}/s; \
             scan may lie entirely inside or outside the window"
        )));
    }

    let half = F::lit(0.5);
    Ok(WindowEstimate {
        window: (h_in + h_out) * half,
        baseline,
        plateau_rate,
        sigma_window: (h_out - h_in) * half,
        sigma_baseline,
        sigma_plateau_rate,
    })
}
