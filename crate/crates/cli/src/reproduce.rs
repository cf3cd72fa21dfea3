//! The bundled reference scenarios and their tolerance checks.

use std::fmt::Write as _;
use std::path::Path;

use crate::artifacts::Artifacts;
use crate::error::CliError;
use crate::run::{execute, RunOutput};
use crate::spec::{parse_spec, ExperimentSpec};

pub struct Bundled {
    pub name: &'static str,
    pub text: &'static str,
}

pub const SHORT_WINDOW: Bundled = Bundled {
    name: "swap_short_window",
    text: include_str!("../specs/swap_short_window.spec"),
};
pub const LONG_WINDOW: Bundled = Bundled {
    name: "swap_long_window",
    text: include_str!("../specs/swap_long_window.spec"),
};
pub const DELAY_SCAN: Bundled = Bundled {
    name: "window_delay_scan",
    text: include_str!("../specs/window_delay_scan.spec"),
};
pub const BUNDLE: [Bundled; 3] = [SHORT_WINDOW, LONG_WINDOW, DELAY_SCAN];

impl Bundled {
    pub fn spec(&self) -> ExperimentSpec {
        parse_spec(self.text).unwrap_or_else(|e| panic!("bundled spec {}: {e}", self.name))
    }
}

/// One compared quantity.
#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub scenario: &'static str,
    pub quantity: &'static str,
    pub reference: f64,
    /// Quoted uncertainty of the reference value, if any.
    pub reference_sigma: Option<f64>,
    pub measured: f64,
    pub measured_sigma: f64,
    pub tolerance: f64,
}

impl Check {
    pub fn pass(&self) -> bool {
        (self.measured - self.reference).abs() <= self.tolerance
    }
}

#[derive(Debug, Clone, Default)]
pub struct Report {
    pub checks: Vec<Check>,
    /// Scenarios that failed to run, with the error text.
    pub failures: Vec<(&'static str, String)>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.checks.iter().all(Check::pass)
    }

    pub fn to_text(&self) -> String {
        let mut s = format!(
            "{:<20} {:<12} {:>22} {:>26} {:>12}  status\n",
            "scenario", "quantity", "reference", "measured", "tolerance"
        );
        for c in &self.checks {
            let reference = match c.reference_sigma {
                Some(sd) => format!("{} ± {}", sig(c.reference), sig(sd)),
                None => sig(c.reference),
            };
            writeln!(
                s,
                "{:<20} {:<12} {:>22} {:>26} {:>12}  {}",
                c.scenario,
                c.quantity,
                reference,
                format!("{} ± {}", sig(c.measured), sig(c.measured_sigma)),
                format!("±{}", sig(c.tolerance)),
                if c.pass() { "PASS" } else { "FAIL" }
            )
            .unwrap();
        }
        for (name, err) in &self.failures {
            writeln!(s, "{name:<20} ERROR: {err}").unwrap();
        }
        s
    }
}

fn sig(x: f64) -> String {
    if x != 0.0 && (x.abs() < 1e-3 || x.abs() >= 1e5) {
        format!("{x:.4e}")
    } else {
        format!("{}", (x * 1e4).round() / 1e4)
    }
}

fn checks_for(name: &'static str, out: &RunOutput) -> Vec<Check> {
    let check = |quantity, reference, reference_sigma, measured, measured_sigma, tolerance| Check {
        scenario: name,
        quantity,
        reference,
        reference_sigma,
        measured,
        measured_sigma,
        tolerance,
    };
    match name {
        "swap_short_window" => out
            .fit
            .iter()
            .map(|f| check("V_corrected", 0.916, Some(0.027), f.visibility, f.sigma_visibility, 0.03))
            .collect(),
        "swap_long_window" => {
            let mut v = Vec::new();
            if let Some(f) = &out.raw_fit {
                v.push(check("V_raw", 0.664, Some(0.008), f.visibility, f.sigma_visibility, 0.02));
            }
            if let Some(f) = &out.fit {
                v.push(check("V_corrected", 0.949, Some(0.005), f.visibility, f.sigma_visibility, 0.02));
            }
            v
        }
        "window_delay_scan" => out
            .window
            .iter()
            .flat_map(|w| {
                [
                    check("baseline", 1600.0, None, w.baseline, w.sigma_baseline, 3.0 * 1600f64.sqrt()),
                    check("window_s", 21.5e-9, None, w.window, w.sigma_window, 1e-9),
                ]
            })
            .collect(),
        _ => Vec::new(),
    }
}

/// Runs the bundled scenarios. `seed` overrides the bundled seeds. With
/// `out`, each scenario's artifacts go to `out/<scenario>/` and the table
/// to `out/report.txt`.
pub fn reproduce(out: Option<&Path>, seed: Option<u64>) -> Result<Report, CliError> {
    let mut report = Report::default();
    let mut artifacts = Artifacts::new();
    for b in BUNDLE {
        let mut spec = b.spec();
        if let Some(s) = seed {
            spec.scan.seed = s;
        }
        match execute(&spec) {
            Ok(output) => {
                report.checks.extend(checks_for(b.name, &output));
                let files = output.artifacts();
                for name in files.names() {
                    artifacts.add(format!("{}/{name}", b.name), files.get(name).unwrap());
                }
            }
            Err(e) => report.failures.push((b.name, e.to_string())),
        }
    }
    if let Some(dir) = out {
        artifacts.add("report.txt", report.to_text());
        artifacts.commit(dir)?;
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_specs_load() {
        for b in BUNDLE {
            b.spec();
        }
        let s = SHORT_WINDOW.spec();
        assert!((s.config.imbalance() - 1.2).abs() < 1e-12);
        assert_eq!(s.config.coincidence_window, 1.5e-9);
        assert_eq!(LONG_WINDOW.spec().config.coincidence_window, 21.5e-9);
        let d = DELAY_SCAN.spec();
        assert_eq!(d.scan.values.len(), 81);
        assert!((d.scan.values[1] - d.scan.values[0] - 1e-9).abs() < 1e-18);
    }
}
