use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use timebin_cli::artifacts::Artifacts;
use timebin_cli::records_csv::{quantize_record, read_records, write_records};
use timebin_cli::run::{fit_text, json, key_values, simulate_once, window_fields};
use timebin_cli::{load_spec, reproduce, run, CliError, ExperimentSpec, ScanKind};
use timebin_core::analysis::{fit_fringe, subtract_accidentals};
use timebin_core::optics::classify_regimes;
use timebin_core::Record;

/// Two-photon time-bin interferometry simulator.
#[derive(Parser)]
#[command(name = "timebin", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
}

#[derive(Args)]
struct SpecArgs {
    /// Experiment spec file.
    #[arg(long)]
    spec: PathBuf,
    /// Output directory.
    #[arg(long, default_value = "out")]
    out: PathBuf,
    /// Overrides `scan.seed`.
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
}

#[derive(Subcommand)]
enum Command {
    /// One acquisition at the first scan point; writes the event streams.
    Simulate(SpecArgs),
    /// Phase scan, optional accidental subtraction and fringe fit.
    Scan(SpecArgs),
    /// Delay scan and coincidence-window estimate.
    DelayScan(SpecArgs),
    /// Fits the fringe in an existing records file.
    Fit {
        #[arg(long)]
        records: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Piezo voltage jitter, volts.
        #[arg(long, default_value_t = 0.0)]
        piezo_sigma: f64,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
    },
    /// Subtracts accidental coincidences from a records file.
    Correct {
        #[arg(long)]
        records: PathBuf,
        /// Coincidence window, seconds.
        #[arg(long, required_unless_present = "spec", conflicts_with = "spec")]
        window: Option<f64>,
        /// Takes the window from this spec instead.
        #[arg(long)]
        spec: Option<PathBuf>,
        #[arg(long, default_value = "out")]
        out: PathBuf,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
    },
    /// Prints which interference regimes a configuration supports.
    Regimes {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Runs the bundled reference scenarios and compares against reference values.
    Reproduce {
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        seed: Option<u64>,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(1),
            };
        }
    };
    match dispatch(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn load(args: &SpecArgs, kind: ScanKind) -> Result<ExperimentSpec, CliError> {
    let mut spec = load_spec(&args.spec)?;
    if spec.scan.kind != kind {
        return Err(CliError::Usage(format!(
            "{}: scan.kind is {}, this command needs {}",
            args.spec.display(),
            spec.scan.kind.name(),
            kind.name()
        )));
    }
    if let Some(seed) = args.seed {
        spec.scan.seed = seed;
    }
    Ok(spec)
}

fn read_records_file(path: &Path) -> Result<Vec<Record>, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Input {
        path: path.to_path_buf(),
        message: format!("cannot read: {e}"),
    })?;
    read_records(&text).map_err(|message| CliError::Input {
        path: path.to_path_buf(),
        message,
    })
}

fn report_written(dir: &Path, artifacts: &Artifacts) {
    for name in artifacts.names() {
        eprintln!("wrote {}", dir.join(name).display());
    }
}

fn dispatch(command: Command) -> Result<(), CliError> {
    match command {
        Command::Simulate(args) => {
            let mut spec = load_spec(&args.spec)?;
            if let Some(seed) = args.seed {
                spec.scan.seed = seed;
            }
            let artifacts = simulate_once(&spec)?;
            artifacts.commit(&args.out)?;
            print!("{}", artifacts.get("records.csv").unwrap());
            report_written(&args.out, &artifacts);
        }
        Command::Scan(args) => {
            let spec = load(&args, ScanKind::Phase)?;
            let output = run(&spec, &args.out)?;
            if let Some(fit) = &output.raw_fit {
                println!("# raw counts\n{}", fit_text(fit));
            }
            if let Some(fit) = &output.fit {
                print!("{}", fit_text(fit));
            }
            report_written(&args.out, &output.artifacts());
        }
        Command::DelayScan(args) => {
            let spec = load(&args, ScanKind::Delay)?;
            let output = run(&spec, &args.out)?;
            if let Some(w) = &output.window {
                print!("{}", key_values(&window_fields(w)));
            }
            report_written(&args.out, &output.artifacts());
        }
        Command::Fit {
            records,
            out,
            piezo_sigma,
            format: _,
        } => {
            if !(piezo_sigma >= 0.0) || !piezo_sigma.is_finite() {
                return Err(CliError::Usage(format!("--piezo-sigma must be >= 0, got {piezo_sigma}")));
            }
            let recs = read_records_file(&records)?;
            let fit = fit_fringe(&recs, piezo_sigma)?;
            print!("{}", fit_text(&fit));
            if let Some(dir) = out {
                let mut a = Artifacts::new();
                a.add("fit.txt", fit_text(&fit));
                a.add("fit.json", json(&fit.fields()));
                a.commit(&dir)?;
                report_written(&dir, &a);
            }
        }
        Command::Correct {
            records,
            window,
            spec,
            out,
            format: _,
        } => {
            let window = match (window, spec) {
                (Some(w), _) => w,
                (None, Some(path)) => load_spec(&path)?.config.coincidence_window,
                (None, None) => unreachable!("clap requires one of --window, --spec"),
            };
            let recs = read_records_file(&records)?;
            let mut corrected = subtract_accidentals(&recs, window)?;
            corrected.iter_mut().for_each(quantize_record);
            let mut a = Artifacts::new();
            a.add("records.csv", write_records(&corrected));
            a.commit(&out)?;
            report_written(&out, &a);
        }
        Command::Regimes { spec, out } => {
            let spec = load_spec(&spec)?;
            let text = classify_regimes(&spec.config)?.to_text();
            print!("{text}");
            if let Some(dir) = out {
                let mut a = Artifacts::new();
                a.add("regimes.txt", text);
                a.commit(&dir)?;
            }
        }
        Command::Reproduce { out, seed } => {
            let report = reproduce(out.as_deref(), seed)?;
            print!("{}", report.to_text());
            if !report.passed() {
                return Err(CliError::Check("one or more scenarios failed".into()));
            }
        }
    }
    Ok(())
}
