use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use timebin_cli::records_csv::{quantize_record, read_records, write_records};
use timebin_cli::{execute, parse_spec};
use timebin_core::events::Corrected;
use timebin_core::Record;

fn timebin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_timebin"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn write_spec(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

const SMALL_SCAN: &str = "\
config.pair_rate = 4000
config.background_singles_A = 2e4
config.background_singles_B = 2e4
config.coincidence_window = 5 ns
scan.values = linspace(0, 6.283185307179586, 24)
scan.duration_per_point = 0.5 s
analysis.subtract = true
";

#[test]
fn records_csv_round_trips() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..200 {
        let mut records: Vec<Record> = (0..rng.random_range(1..20))
            .map(|_| {
                let mut r = Record::new(
                    rng.random_range(-1e3..1e3),
                    rng.random_range(1e-3..1e3),
                    rng.random(),
                    rng.random(),
                    rng.random_range(0..u64::MAX),
                );
                if rng.random_bool(0.5) {
                    r.corrected = Some(Corrected {
                        coincidences: rng.random_range(0.0..1e9),
                        clamped: rng.random_bool(0.1),
                    });
                }
                quantize_record(&mut r);
                r
            })
            .collect();
        if records.iter().any(|r| r.corrected.is_some()) {
            // Rows without a correction are written with coinc_corr = raw.
            for r in records.iter_mut().filter(|r| r.corrected.is_none()) {
                r.corrected = Some(Corrected { coincidences: r.coincidences_raw as f64, clamped: false });
                quantize_record(r);
            }
        }
        let text = write_records(&records);
        assert_eq!(read_records(&text).unwrap(), records);
    }
}

#[test]
fn run_records_parse_back_identically() {
    let spec = parse_spec(SMALL_SCAN).unwrap();
    let out = execute(&spec).unwrap();
    let text = out.artifacts().get("records.csv").unwrap().to_string();
    assert_eq!(read_records(&text).unwrap(), out.records);
    assert_eq!(out.records.len(), 24);
}

#[test]
fn scan_writes_all_artifacts_and_reruns_identically() {
    let tmp = tempfile::tempdir().unwrap();
    let spec = write_spec(tmp.path(), "s.spec", SMALL_SCAN);
    let (a, b, c) = (tmp.path().join("a"), tmp.path().join("b"), tmp.path().join("c"));

    for dir in [&a, &b] {
        let o = timebin(&["scan", "--spec", &spec, "--out", dir.to_str().unwrap(), "--seed", "9"]);
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    }
    let names = ["records.csv", "fit.txt", "fit.json", "fit_raw.txt", "fit_raw.json", "regimes.txt", "manifest.spec"];
    for name in names {
        assert_eq!(fs::read(a.join(name)).unwrap(), fs::read(b.join(name)).unwrap(), "{name}");
    }
    let csv = fs::read_to_string(a.join("records.csv")).unwrap();
    assert!(csv.starts_with("scan_value,duration_s,singles_A,singles_B,coinc_raw,coinc_corr,corr_flag\n"));
    assert_eq!(csv.lines().count(), 1 + 24);

    let manifest = fs::read_to_string(a.join("manifest.spec")).unwrap();
    assert!(manifest.contains("manifest.config_hash = sha256:"));
    assert!(manifest.contains("manifest.seed = 9"));
    assert!(manifest.contains("manifest.tool_version = timebin "));

    // The manifest alone reproduces the run.
    let o = timebin(&["scan", "--spec", a.join("manifest.spec").to_str().unwrap(), "--out", c.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    for name in names {
        assert_eq!(fs::read(a.join(name)).unwrap(), fs::read(c.join(name)).unwrap(), "{name}");
    }

    let json = fs::read_to_string(a.join("fit.json")).unwrap();
    for key in ["\"c0\"", "\"V\"", "\"sigma_V\"", "\"chi2_reduced\""] {
        assert!(json.contains(key), "{json}");
    }
}

#[test]
fn fit_and_correct_commands_match_scan() {
    let tmp = tempfile::tempdir().unwrap();
    let spec_text = SMALL_SCAN.replace("analysis.subtract = true", "analysis.subtract = false");
    let spec = write_spec(tmp.path(), "s.spec", &spec_text);
    let raw_dir = tmp.path().join("raw");
    assert!(timebin(&["scan", "--spec", &spec, "--out", raw_dir.to_str().unwrap()]).status.success());
    let records = raw_dir.join("records.csv");

    let corr_dir = tmp.path().join("corr");
    let o = timebin(&["correct", "--records", records.to_str().unwrap(), "--window", "5e-9", "--out", corr_dir.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));

    // Same as running the scan with subtraction on.
    let sub_spec = write_spec(tmp.path(), "sub.spec", SMALL_SCAN);
    let sub_dir = tmp.path().join("sub");
    assert!(timebin(&["scan", "--spec", &sub_spec, "--out", sub_dir.to_str().unwrap()]).status.success());
    assert_eq!(
        fs::read(corr_dir.join("records.csv")).unwrap(),
        fs::read(sub_dir.join("records.csv")).unwrap()
    );

    let fit_dir = tmp.path().join("fit");
    let o = timebin(&["fit", "--records", corr_dir.join("records.csv").to_str().unwrap(), "--out", fit_dir.to_str().unwrap()]);
    assert!(o.status.success());
    assert_eq!(fs::read(fit_dir.join("fit.txt")).unwrap(), fs::read(sub_dir.join("fit.txt")).unwrap());
    assert_eq!(String::from_utf8(o.stdout).unwrap(), fs::read_to_string(sub_dir.join("fit.txt")).unwrap());
}

#[test]
fn simulate_exports_events() {
    let tmp = tempfile::tempdir().unwrap();
    let spec = write_spec(tmp.path(), "s.spec", SMALL_SCAN);
    let out = tmp.path().join("o");
    let o = timebin(&["simulate", "--spec", &spec, "--out", out.to_str().unwrap()]);
    assert!(o.status.success());
    let events = fs::read_to_string(out.join("events.txt")).unwrap();
    let parsed = timebin_core::events::parse_events(&events).unwrap();
    let recs = read_records(&fs::read_to_string(out.join("records.csv")).unwrap()).unwrap();
    assert_eq!(recs.len(), 1);
    assert_eq!(parsed.len() as u64, recs[0].singles_a + recs[0].singles_b);
    let line = events.lines().nth(1).unwrap();
    let mantissa = line.split_whitespace().nth(1).unwrap().split('e').next().unwrap();
    assert_eq!(mantissa.replace(['.', '-'], "").len(), 12);
}

#[test]
fn exit_codes() {
    let tmp = tempfile::tempdir().unwrap();
    let out = tmp.path().join("o");
    let out = out.to_str().unwrap();

    // usage
    assert_eq!(timebin(&["scan"]).status.code(), Some(1));
    assert_eq!(timebin(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(timebin(&["scan", "--spec", "x", "--format", "json"]).status.code(), Some(1));
    assert_eq!(timebin(&["--help"]).status.code(), Some(0));

    // configuration
    let bad = write_spec(tmp.path(), "bad.spec", "scan.values = [0, 1]\nconfig.bs_reflectivity_R = 1.2\n");
    let o = timebin(&["scan", "--spec", &bad, "--out", out]);
    assert_eq!(o.status.code(), Some(1));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("bs_reflectivity_R") && err.contains("line 2"), "{err}");
    assert_eq!(timebin(&["scan", "--spec", "/nonexistent.spec", "--out", out]).status.code(), Some(1));
    let delay = write_spec(tmp.path(), "d.spec", "scan.kind = delay\nscan.values = [0, 1 ns]\n");
    assert_eq!(timebin(&["scan", "--spec", &delay, "--out", out]).status.code(), Some(1));

    // runtime: too few points to fit; nothing may be left behind
    let short = write_spec(tmp.path(), "short.spec", "scan.values = [0, 1, 2]\nscan.duration_per_point = 0.01\n");
    let o = timebin(&["scan", "--spec", &short, "--out", out]);
    assert_eq!(o.status.code(), Some(2), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(!Path::new(out).join("records.csv").exists());
    assert!(!Path::new(out).exists() || fs::read_dir(out).unwrap().next().is_none());

    let o = timebin(&["regimes", "--spec", &short]);
    assert_eq!(o.status.code(), Some(0));
    assert!(String::from_utf8(o.stdout).unwrap().contains("swap_entanglement_feasible = true"));
}
