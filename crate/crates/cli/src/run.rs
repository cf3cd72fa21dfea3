//! Spec execution: simulate, correct, fit, and render the output files.

use std::fmt::Write as _;
use std::path::Path;

use sha2::{Digest, Sha256};
use timebin_core::analysis::{estimate_window, fit_fringe, subtract_accidentals};
use timebin_core::events::{count_coincidences_shifted, delay_scan, export_events, point_seed, scan_phase, simulate_point};
use timebin_core::optics::{classify_regimes, RegimeReport};
use timebin_core::{Fit, Record, Window};

use crate::artifacts::Artifacts;
use crate::error::CliError;
use crate::records_csv::{quantize_record, write_records};
use crate::spec::{fmt_num, ExperimentSpec, ScanKind};

pub const TOOL_VERSION: &str = concat!("timebin ", env!("CARGO_PKG_VERSION"));

/// Everything computed for one spec.
#[derive(Debug, Clone)]
pub struct RunOutput {
    pub spec: ExperimentSpec,
    /// Records as written to `records.csv` (corrected when subtraction is on).
    pub records: Vec<Record>,
    pub fit: Option<Fit>,
    /// Fit of the uncorrected counts, only when subtraction is on.
    pub raw_fit: Option<Fit>,
    pub window: Option<Window>,
    pub regimes: RegimeReport,
}

/// Runs the scan and analysis described by `spec` without touching disk.
pub fn execute(spec: &ExperimentSpec) -> Result<RunOutput, CliError> {
    let cfg = &spec.config;
    let scan = &spec.scan;
    let regimes = classify_regimes(cfg)?;
    let mut out = RunOutput {
        spec: spec.clone(),
        records: Vec::new(),
        fit: None,
        raw_fit: None,
        window: None,
        regimes,
    };
    match scan.kind {
        ScanKind::Phase => {
            let mut raw = scan_phase(cfg, &scan.values, scan.duration_per_point, scan.seed)?;
            raw.iter_mut().for_each(quantize_record);
            out.records = if spec.analysis.subtract {
                let mut corrected = subtract_accidentals(&raw, cfg.coincidence_window)?;
                corrected.iter_mut().for_each(quantize_record);
                corrected
            } else {
                raw.clone()
            };
            if spec.analysis.fit {
                out.fit = Some(fit_fringe(&out.records, spec.analysis.piezo_sigma)?);
                if spec.analysis.subtract {
                    out.raw_fit = Some(fit_fringe(&raw, spec.analysis.piezo_sigma)?);
                }
            }
        }
        ScanKind::Delay => {
            let mut recs = delay_scan(cfg, &scan.values, scan.duration_per_point, scan.seed)?;
            recs.iter_mut().for_each(quantize_record);
            if spec.analysis.fit {
                out.window = Some(estimate_window(&recs)?);
            }
            out.records = recs;
        }
    }
    Ok(out)
}

impl RunOutput {
    pub fn artifacts(&self) -> Artifacts {
        let mut a = Artifacts::new();
        a.add("records.csv", write_records(&self.records));
        if let Some(fit) = &self.fit {
            a.add("fit.txt", fit_text(fit));
            a.add("fit.json", json(&fit.fields()));
        }
        if let Some(fit) = &self.raw_fit {
            a.add("fit_raw.txt", fit_text(fit));
            a.add("fit_raw.json", json(&fit.fields()));
        }
        if let Some(w) = &self.window {
            a.add("window.txt", key_values(&window_fields(w)));
            a.add("window.json", json(&window_fields(w)));
        }
        a.add("regimes.txt", self.regimes.to_text());
        a.add("manifest.spec", manifest(&self.spec));
        a
    }
}

/// Executes `spec` and writes its artifacts into `out`.
pub fn run(spec: &ExperimentSpec, out: &Path) -> Result<RunOutput, CliError> {
    let output = execute(spec)?;
    output.artifacts().commit(out)?;
    Ok(output)
}

/// One acquisition at the first scan point, with the raw event streams.
pub fn simulate_once(spec: &ExperimentSpec) -> Result<Artifacts, CliError> {
    let cfg = &spec.config;
    let v0 = spec.scan.values[0];
    let phase = match spec.scan.kind {
        ScanKind::Phase => cfg.piezo_gain * v0,
        ScanKind::Delay => 0.0,
    };
    let sim = simulate_point(cfg, phase, spec.scan.duration_per_point, point_seed(spec.scan.seed, 0))?;
    let mut record = sim.record.clone();
    record.scan_value = v0;
    if spec.scan.kind == ScanKind::Delay {
        record.coincidences_raw = count_coincidences_shifted(
            sim.stream_a.timestamps(),
            sim.stream_b.timestamps(),
            v0,
            cfg.coincidence_window,
        )?;
    }
    quantize_record(&mut record);
    let mut a = Artifacts::new();
    a.add("events.txt", export_events(&[&sim.stream_a, &sim.stream_b]));
    a.add("records.csv", write_records(&[record]));
    a.add("manifest.spec", manifest(spec));
    Ok(a)
}

/// Normalized spec plus provenance. Loadable as a spec.
pub fn manifest(spec: &ExperimentSpec) -> String {
    let body = spec.to_text();
    let hash = Sha256::digest(body.as_bytes());
    let mut s = String::from("# run manifest; reload with --spec to reproduce this run\n");
    s.push_str(&body);
    write!(s, "manifest.config_hash = sha256:").unwrap();
    for b in hash {
        write!(s, "{b:02x}").unwrap();
    }
    writeln!(s).unwrap();
    writeln!(s, "manifest.seed = {}", spec.scan.seed).unwrap();
    writeln!(s, "manifest.tool_version = {TOOL_VERSION}").unwrap();
    s
}

pub fn window_fields(w: &Window) -> [(&'static str, f64); 6] {
    [
        ("window", w.window),
        ("baseline", w.baseline),
        ("plateau_rate", w.plateau_rate),
        ("sigma_window", w.sigma_window),
        ("sigma_baseline", w.sigma_baseline),
        ("sigma_plateau_rate", w.sigma_plateau_rate),
    ]
}

fn value_text(v: f64) -> String {
    if v.is_finite() {
        fmt_num(v)
    } else {
        "null".into()
    }
}

pub fn fit_text(fit: &Fit) -> String {
    format!(
        "# C(x) = c0 (1 + V cos(omega (x - x0)))\n{}",
        key_values(&fit.fields())
    )
}

pub fn key_values(fields: &[(&str, f64)]) -> String {
    fields
        .iter()
        .map(|(k, v)| format!("{k} = {}\n", value_text(*v)))
        .collect()
}

pub fn json(fields: &[(&str, f64)]) -> String {
    let body: Vec<String> = fields
        .iter()
        .map(|(k, v)| format!("  \"{k}\": {}", value_text(*v)))
        .collect();
    format!("{{\n{}\n}}\n", body.join(",\n"))
}
