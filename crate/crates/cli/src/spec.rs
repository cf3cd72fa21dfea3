//! Experiment spec files: flat `namespace.key = value` lines.
//!
//! Numbers are SI by default and may carry a unit suffix of the key's
//! dimension (`1.5 ns`, `20 kHz`). `#` starts a comment. Scan values are a
//! list `[a, b, ...]`, a single number, or `linspace(start, stop, n)`.
//! Keys under `manifest.` are informational and skipped.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::path::Path;

use timebin_core::optics::Geometry;
use timebin_core::Config;

use crate::error::{CliError, SpecError};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScanKind {
    /// Piezo voltage scan at a fixed delay.
    Phase,
    /// Relative delay of detector B at zero piezo phase.
    Delay,
}

impl ScanKind {
    pub fn name(self) -> &'static str {
        match self {
            ScanKind::Phase => "phase",
            ScanKind::Delay => "delay",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScanSpec {
    pub kind: ScanKind,
    /// Volts for phase scans, seconds for delay scans.
    pub values: Vec<f64>,
    pub duration_per_point: f64,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AnalysisSpec {
    pub fit: bool,
    pub subtract: bool,
    /// Piezo voltage jitter entering the fit as an x uncertainty, volts.
    pub piezo_sigma: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentSpec {
    pub config: Config,
    pub scan: ScanSpec,
    pub analysis: AnalysisSpec,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Dim {
    Length,
    Time,
    Rate,
    Phase,
    PhaseGain,
    Voltage,
    Unitless,
}

impl Dim {
    fn si(self) -> &'static str {
        match self {
            Dim::Length => "m",
            Dim::Time => "s",
            Dim::Rate => "1/s",
            Dim::Phase => "rad",
            Dim::PhaseGain => "rad/V",
            Dim::Voltage => "V",
            Dim::Unitless => "",
        }
    }

    fn scale(self, unit: &str) -> Option<Scale> {
        use Scale::{Factor, Pow10};
        let table: &[(&str, Scale)] = match self {
            Dim::Length => &[("m", Pow10(0)), ("cm", Pow10(-2)), ("mm", Pow10(-3)), ("um", Pow10(-6)), ("nm", Pow10(-9))],
            Dim::Time => &[
                ("s", Pow10(0)),
                ("ms", Pow10(-3)),
                ("us", Pow10(-6)),
                ("ns", Pow10(-9)),
                ("ps", Pow10(-12)),
                ("fs", Pow10(-15)),
            ],
            Dim::Rate => &[
                ("1/s", Pow10(0)),
                ("/s", Pow10(0)),
                ("Hz", Pow10(0)),
                ("cps", Pow10(0)),
                ("kHz", Pow10(3)),
                ("kcps", Pow10(3)),
                ("MHz", Pow10(6)),
            ],
            Dim::Phase => &[("rad", Pow10(0)), ("mrad", Pow10(-3)), ("deg", Factor(std::f64::consts::PI / 180.0))],
            Dim::PhaseGain => &[("rad/V", Pow10(0))],
            Dim::Voltage => &[("V", Pow10(0)), ("mV", Pow10(-3))],
            Dim::Unitless => &[],
        };
        table.iter().find(|(u, _)| *u == unit).map(|(_, s)| *s)
    }
}

/// Decimal prefixes shift the exponent of the written number, so `1.5 ns`
/// parses to exactly the same value as `1.5e-9`.
#[derive(Debug, Clone, Copy)]
enum Scale {
    Pow10(i32),
    Factor(f64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Kind {
    Num(Dim),
    Geometry,
    ScanKind,
    Bool,
    Seed,
    Values,
}

/// One schema row. `default` is spec-file text; `None` marks a key that is
/// required (`scan.values`) or optional without a default.
pub struct KeyDef {
    pub key: &'static str,
    kind: Kind,
    pub default: Option<&'static str>,
    pub doc: &'static str,
}

impl KeyDef {
    pub fn unit(&self) -> &'static str {
        match self.kind {
            Kind::Num(d) => d.si(),
            Kind::Values => "V or s",
            _ => "",
        }
    }
}

const fn key(key: &'static str, kind: Kind, default: Option<&'static str>, doc: &'static str) -> KeyDef {
    KeyDef { key, kind, default, doc }
}

/// Every accepted key with its default and meaning.
pub const SCHEMA: &[KeyDef] = &[
    key("config.geometry", Kind::Geometry, Some("michelson_swap"), "franson_dual, michelson_swap or michelson_balanced"),
    key("config.arm_short_s", Kind::Num(Dim::Length), Some("0.3"), "short arm length"),
    key("config.arm_long_l", Kind::Num(Dim::Length), Some("0.9"), "long arm length"),
    key("config.imbalance_dx", Kind::Num(Dim::Length), None, "optical imbalance; sets arm_long_l from arm_short_s"),
    key("config.bs_reflectivity_R", Kind::Num(Dim::Unitless), Some("0.5"), "beam splitter intensity reflectivity"),
    key("config.phase_A", Kind::Num(Dim::Phase), Some("0"), "long-path phase, A side"),
    key("config.phase_B", Kind::Num(Dim::Phase), Some("0"), "long-path phase, B side"),
    key("config.piezo_gain", Kind::Num(Dim::PhaseGain), Some("1"), "two-photon phase per piezo volt"),
    key("config.pump_coherence_time", Kind::Num(Dim::Time), Some("1e-7"), "pump coherence time (inf allowed)"),
    key("config.single_photon_coherence_time", Kind::Num(Dim::Time), Some("1e-13"), "filtered photon coherence time (inf allowed)"),
    key("config.coincidence_window", Kind::Num(Dim::Time), Some("1.5e-9"), "half-width of the coincidence window"),
    key("config.pair_rate", Kind::Num(Dim::Rate), Some("1e4"), "pair emission rate"),
    key("config.background_singles_A", Kind::Num(Dim::Rate), Some("0"), "uncorrelated singles, detector A"),
    key("config.background_singles_B", Kind::Num(Dim::Rate), Some("0"), "uncorrelated singles, detector B"),
    key("config.detection_efficiency_A", Kind::Num(Dim::Unitless), Some("1"), "detector A efficiency"),
    key("config.detection_efficiency_B", Kind::Num(Dim::Unitless), Some("1"), "detector B efficiency"),
    key("config.mode_match_visibility", Kind::Num(Dim::Unitless), Some("1"), "spatial mode overlap visibility"),
    key("scan.kind", Kind::ScanKind, Some("phase"), "phase or delay"),
    key("scan.values", Kind::Values, None, "scan points (required), strictly monotone"),
    key("scan.duration_per_point", Kind::Num(Dim::Time), Some("1"), "acquisition time per point"),
    key("scan.seed", Kind::Seed, Some("0"), "base seed"),
    key("analysis.fit", Kind::Bool, Some("true"), "fit the fringe (phase) or the window (delay)"),
    key("analysis.subtract", Kind::Bool, Some("false"), "subtract accidentals before fitting (phase only)"),
    key("analysis.piezo_sigma", Kind::Num(Dim::Voltage), Some("0"), "piezo voltage jitter"),
];

struct Entry {
    line: Option<usize>,
    text: String,
}

struct Entries(HashMap<&'static str, Entry>);

impl Entries {
    fn get(&self, def: &KeyDef) -> Option<&Entry> {
        self.0.get(def.key)
    }

    fn line(&self, key: &str) -> Option<usize> {
        self.0.get(key).and_then(|e| e.line)
    }
}

fn def(key: &str) -> &'static KeyDef {
    SCHEMA.iter().find(|d| d.key == key).expect("schema key")
}

/// Reads and validates a spec file.
pub fn load_spec(path: &Path) -> Result<ExperimentSpec, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Spec {
        path: path.to_path_buf(),
        source: SpecError::new(None, "file", format!("cannot read: {e}")),
    })?;
    parse_spec(&text).map_err(|source| CliError::Spec {
        path: path.to_path_buf(),
        source,
    })
}

pub fn parse_spec(text: &str) -> Result<ExperimentSpec, SpecError> {
    let mut entries = HashMap::new();
    for (i, raw) in text.lines().enumerate() {
        let n = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let Some((k, v)) = line.split_once('=') else {
            return Err(SpecError::new(Some(n), line, "expected `key = value`"));
        };
        let (k, v) = (k.trim(), v.trim());
        if k.starts_with("manifest.") {
            continue;
        }
        let Some(d) = SCHEMA.iter().find(|d| d.key == k) else {
            return Err(SpecError::new(Some(n), k, "unknown key"));
        };
        if v.is_empty() {
            return Err(SpecError::new(Some(n), k, "missing value"));
        }
        let previous = entries.insert(
            d.key,
            Entry {
                line: Some(n),
                text: v.to_string(),
            },
        );
        if let Some(p) = previous {
            return Err(SpecError::new(
                Some(n),
                k,
                format!("duplicate key (first set on line {})", p.line.unwrap_or(0)),
            ));
        }
    }
    build(Entries(entries))
}

fn build(entries: Entries) -> Result<ExperimentSpec, SpecError> {
    let text_of = |d: &KeyDef| -> Option<(Option<usize>, String)> {
        entries
            .get(d)
            .map(|e| (e.line, e.text.clone()))
            .or_else(|| d.default.map(|t| (None, t.to_string())))
    };
    let num = |k: &str| -> Result<f64, SpecError> {
        let d = def(k);
        let Kind::Num(dim) = d.kind else { unreachable!() };
        let (line, t) = text_of(d).expect("numeric keys have defaults");
        parse_quantity(&t, dim).map_err(|m| SpecError::new(line, k, m))
    };
    let boolean = |k: &str| -> Result<bool, SpecError> {
        let (line, t) = text_of(def(k)).expect("default");
        match t.as_str() {
            "true" => Ok(true),
            "false" => Ok(false),
            _ => Err(SpecError::new(line, k, format!("expected true or false, got `{t}`"))),
        }
    };

    let (line, g) = text_of(def("config.geometry")).expect("default");
    let geometry = Geometry::from_name(&g).ok_or_else(|| {
        SpecError::new(
            line,
            "config.geometry",
            format!("unknown geometry `{g}` (franson_dual, michelson_swap, michelson_balanced)"),
        )
    })?;

    let mut config = Config {
        geometry,
        arm_short: num("config.arm_short_s")?,
        arm_long: num("config.arm_long_l")?,
        bs_reflectivity: num("config.bs_reflectivity_R")?,
        phase_a: num("config.phase_A")?,
        phase_b: num("config.phase_B")?,
        piezo_gain: num("config.piezo_gain")?,
        pump_coherence_time: num("config.pump_coherence_time")?,
        single_photon_coherence_time: num("config.single_photon_coherence_time")?,
        coincidence_window: num("config.coincidence_window")?,
        pair_rate: num("config.pair_rate")?,
        background_singles_a: num("config.background_singles_A")?,
        background_singles_b: num("config.background_singles_B")?,
        detection_efficiency_a: num("config.detection_efficiency_A")?,
        detection_efficiency_b: num("config.detection_efficiency_B")?,
        mode_match_visibility: num("config.mode_match_visibility")?,
    };
    let dx_def = def("config.imbalance_dx");
    if let Some(e) = entries.get(dx_def) {
        if entries.get(def("config.arm_long_l")).is_some() {
            return Err(SpecError::new(
                e.line,
                dx_def.key,
                "conflicts with config.arm_long_l; set one of them",
            ));
        }
        let dx = parse_quantity(&e.text, Dim::Length).map_err(|m| SpecError::new(e.line, dx_def.key, m))?;
        if !(dx >= 0.0) || !dx.is_finite() {
            return Err(SpecError::new(e.line, dx_def.key, format!("must be >= 0 and finite, got {dx}")));
        }
        config = config.with_imbalance(dx);
    }
    if let Err(err) = config.validate() {
        return Err(match err {
            timebin_core::Error::Config { field, constraint } => {
                let mut k = format!("config.{field}");
                if field == "arm_long_l" && entries.get(dx_def).is_some() {
                    k = dx_def.key.to_string();
                }
                SpecError::new(entries.line(&k), k, constraint)
            }
            other => SpecError::new(None, "config", other.to_string()),
        });
    }

    let (line, k) = text_of(def("scan.kind")).expect("default");
    let kind = match k.as_str() {
        "phase" => ScanKind::Phase,
        "delay" => ScanKind::Delay,
        _ => return Err(SpecError::new(line, "scan.kind", format!("expected phase or delay, got `{k}`"))),
    };
    let values_def = def("scan.values");
    let values_entry = entries
        .get(values_def)
        .ok_or_else(|| SpecError::new(None, values_def.key, "missing required key"))?;
    let values_dim = match kind {
        ScanKind::Phase => Dim::Voltage,
        ScanKind::Delay => Dim::Time,
    };
    let values = parse_values(&values_entry.text, values_dim)
        .map_err(|m| SpecError::new(values_entry.line, values_def.key, m))?;
    check_monotone(&values).map_err(|m| SpecError::new(values_entry.line, values_def.key, m))?;

    let duration_per_point = num("scan.duration_per_point")?;
    if !(duration_per_point > 0.0) || !duration_per_point.is_finite() {
        return Err(SpecError::new(
            entries.line("scan.duration_per_point"),
            "scan.duration_per_point",
            format!("must be positive and finite, got {duration_per_point}"),
        ));
    }
    let (line, s) = text_of(def("scan.seed")).expect("default");
    let seed = s
        .parse::<u64>()
        .map_err(|_| SpecError::new(line, "scan.seed", format!("expected an unsigned 64-bit integer, got `{s}`")))?;

    let fit = boolean("analysis.fit")?;
    let subtract = boolean("analysis.subtract")?;
    if subtract && kind == ScanKind::Delay {
        return Err(SpecError::new(
            entries.line("analysis.subtract"),
            "analysis.subtract",
            "only applies to phase scans",
        ));
    }
    let piezo_sigma = num("analysis.piezo_sigma")?;
    if !(piezo_sigma >= 0.0) || !piezo_sigma.is_finite() {
        return Err(SpecError::new(
            entries.line("analysis.piezo_sigma"),
            "analysis.piezo_sigma",
            format!("must be >= 0 and finite, got {piezo_sigma}"),
        ));
    }

    Ok(ExperimentSpec {
        config,
        scan: ScanSpec {
            kind,
            values,
            duration_per_point,
            seed,
        },
        analysis: AnalysisSpec {
            fit,
            subtract,
            piezo_sigma,
        },
    })
}

/// Number with optional unit suffix, converted to SI.
fn parse_quantity(text: &str, dim: Dim) -> Result<f64, String> {
    let text = text.trim();
    let split = (1..=text.len())
        .rev()
        .filter(|&i| text.is_char_boundary(i))
        .find(|&i| text[..i].trim_end().parse::<f64>().is_ok())
        .ok_or_else(|| format!("expected a number, got `{text}`"))?;
    let number = text[..split].trim_end();
    let value: f64 = number.parse().unwrap();
    let unit = text[split..].trim();
    if unit.is_empty() {
        return Ok(value);
    }
    match dim.scale(unit) {
        Some(Scale::Pow10(0)) => Ok(value),
        Some(Scale::Pow10(p)) if value.is_finite() => {
            let (mantissa, exp) = match number.split_once(['e', 'E']) {
                Some((m, e)) => (m, e.parse::<i32>().map_err(|_| format!("bad exponent in `{number}`"))?),
                None => (number, 0),
            };
            Ok(format!("{mantissa}e{}", exp + p).parse().unwrap())
        }
        Some(Scale::Pow10(_)) => Ok(value),
        Some(Scale::Factor(f)) => Ok(value * f),
        None if dim == Dim::Unitless => Err(format!("is dimensionless, got unit `{unit}`")),
        None => Err(format!("unit `{unit}` is not a unit of {}", dim.si())),
    }
}

fn parse_values(text: &str, dim: Dim) -> Result<Vec<f64>, String> {
    let text = text.trim();
    if let Some(args) = text.strip_prefix("linspace(").and_then(|t| t.strip_suffix(')')) {
        let parts: Vec<&str> = args.split(',').map(str::trim).collect();
        let [a, b, n] = parts[..] else {
            return Err("linspace takes (start, stop, count)".into());
        };
        let (a, b) = (parse_quantity(a, dim)?, parse_quantity(b, dim)?);
        let n: usize = n
            .parse()
            .map_err(|_| format!("linspace count must be a positive integer, got `{n}`"))?;
        return match n {
            0 => Err("linspace count must be a positive integer, got `0`".into()),
            1 => Ok(vec![a]),
            _ => Ok((0..n)
                .map(|i| if i + 1 == n { b } else { a + (b - a) * i as f64 / (n - 1) as f64 })
                .collect()),
        };
    }
    let inner = match text.strip_prefix('[') {
        Some(rest) => rest
            .strip_suffix(']')
            .ok_or_else(|| "unterminated list".to_string())?,
        None => text,
    };
    inner
        .split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| parse_quantity(t, dim))
        .collect::<Result<Vec<_>, _>>()
        .and_then(|v| if v.is_empty() { Err("must be nonempty".into()) } else { Ok(v) })
}

fn check_monotone(values: &[f64]) -> Result<(), String> {
    if let Some(v) = values.iter().find(|v| !v.is_finite()) {
        return Err(format!("value {v} is not finite"));
    }
    let up = values.windows(2).all(|w| w[1] > w[0]);
    let down = values.windows(2).all(|w| w[1] < w[0]);
    if up || down {
        Ok(())
    } else {
        Err("must be strictly monotone".into())
    }
}

/// Shortest text that parses back to exactly `x`.
pub fn fmt_num(x: f64) -> String {
    let a = x.abs();
    if x == 0.0 || x.is_infinite() || (1e-3..1e7).contains(&a) {
        format!("{x}")
    } else {
        format!("{x:e}")
    }
}

impl ExperimentSpec {
    /// Canonical spec text with every key set; parses back to `self`.
    pub fn to_text(&self) -> String {
        let c = &self.config;
        let mut s = String::new();
        let mut put = |k: &str, v: String| writeln!(s, "{k} = {v}").unwrap();
        put("config.geometry", c.geometry.name().into());
        put("config.arm_short_s", fmt_num(c.arm_short));
        put("config.arm_long_l", fmt_num(c.arm_long));
        put("config.bs_reflectivity_R", fmt_num(c.bs_reflectivity));
        put("config.phase_A", fmt_num(c.phase_a));
        put("config.phase_B", fmt_num(c.phase_b));
        put("config.piezo_gain", fmt_num(c.piezo_gain));
        put("config.pump_coherence_time", fmt_num(c.pump_coherence_time));
        put("config.single_photon_coherence_time", fmt_num(c.single_photon_coherence_time));
        put("config.coincidence_window", fmt_num(c.coincidence_window));
        put("config.pair_rate", fmt_num(c.pair_rate));
        put("config.background_singles_A", fmt_num(c.background_singles_a));
        put("config.background_singles_B", fmt_num(c.background_singles_b));
        put("config.detection_efficiency_A", fmt_num(c.detection_efficiency_a));
        put("config.detection_efficiency_B", fmt_num(c.detection_efficiency_b));
        put("config.mode_match_visibility", fmt_num(c.mode_match_visibility));
        put("scan.kind", self.scan.kind.name().into());
        let values: Vec<String> = self.scan.values.iter().map(|&v| fmt_num(v)).collect();
        put("scan.values", format!("[{}]", values.join(", ")));
        put("scan.duration_per_point", fmt_num(self.scan.duration_per_point));
        put("scan.seed", self.scan.seed.to_string());
        put("analysis.fit", self.analysis.fit.to_string());
        put("analysis.subtract", self.analysis.subtract.to_string());
        put("analysis.piezo_sigma", fmt_num(self.analysis.piezo_sigma));
        s
    }
}

/// Markdown table of [`SCHEMA`].
pub fn schema_table() -> String {
    let mut s = String::from("| key | unit | default | meaning |\n|---|---|---|---|\n");
    for d in SCHEMA {
        writeln!(
            s,
            "| `{}` | {} | {} | {} |",
            d.key,
            d.unit(),
            d.default.unwrap_or("-"),
            d.doc
        )
        .unwrap();
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_spec_takes_defaults() {
        let spec = parse_spec("scan.values = linspace(0, 6, 4)\n").unwrap();
        assert_eq!(spec.config, Config::default());
        assert_eq!(spec.scan.values, vec![0.0, 2.0, 4.0, 6.0]);
        assert_eq!(spec.scan.kind, ScanKind::Phase);
        assert_eq!(spec.scan.duration_per_point, 1.0);
        assert!(spec.analysis.fit && !spec.analysis.subtract);
    }

    #[test]
    fn units_convert_to_si() {
        assert_eq!(parse_quantity("1.5 ns", Dim::Time).unwrap(), 1.5e-9);
        assert_eq!(parse_quantity("1.5ns", Dim::Time).unwrap(), 1.5e-9);
        assert_eq!(parse_quantity("1e-9s", Dim::Time).unwrap(), 1e-9);
        assert_eq!(parse_quantity("2.15e1 ns", Dim::Time).unwrap(), 21.5e-9);
        assert_eq!(parse_quantity("-40 ns", Dim::Time).unwrap(), -40e-9);
        assert_eq!(parse_quantity("100 fs", Dim::Time).unwrap(), 1e-13);
        assert_eq!(parse_quantity("20 kHz", Dim::Rate).unwrap(), 2e4);
        assert_eq!(parse_quantity("inf", Dim::Time).unwrap(), f64::INFINITY);
        assert!(parse_quantity("3 m", Dim::Time).unwrap_err().contains("not a unit of s"));
        assert!(parse_quantity("0.5 m", Dim::Unitless).is_err());
        assert!(parse_quantity("abc", Dim::Time).is_err());
    }

    #[test]
    fn errors_name_key_and_line() {
        let e = parse_spec("scan.values = [1, 2]\n\nconfig.bs_reflectivity_R = 1.2\n").unwrap_err();
        assert_eq!(e.line, Some(3));
        assert_eq!(e.key, "config.bs_reflectivity_R");
        assert!(e.to_string().contains("bs_reflectivity_R"));

        let e = parse_spec("config.pair_rate = 1\n").unwrap_err();
        assert_eq!((e.key.as_str(), e.line), ("scan.values", None));

        let e = parse_spec("scan.values = [1]\nconfig.pair_rte = 1\n").unwrap_err();
        assert_eq!((e.key.as_str(), e.line), ("config.pair_rte", Some(2)));

        let e = parse_spec("scan.values = [1, 3, 2]\n").unwrap_err();
        assert!(e.message.contains("monotone"));

        let e = parse_spec("scan.values = [1]\nscan.values = [2]\n").unwrap_err();
        assert_eq!(e.line, Some(2));

        let e = parse_spec("scan.values = [1]\nconfig.coincidence_window = 2 m\n").unwrap_err();
        assert_eq!(e.line, Some(2));
    }

    #[test]
    fn imbalance_sets_long_arm() {
        let spec = parse_spec("config.imbalance_dx = 1.2\nscan.values = [0]\n").unwrap();
        assert!((spec.config.imbalance() - 1.2).abs() < 1e-12);
        let e = parse_spec("config.imbalance_dx = 1.2\nconfig.arm_long_l = 1\nscan.values = [0]\n").unwrap_err();
        assert_eq!(e.line, Some(1));
    }

    #[test]
    fn normalized_text_round_trips() {
        let spec = parse_spec(
            "config.geometry = franson_dual\nconfig.imbalance_dx = 1.2 m\n\
             config.pump_coherence_time = inf\nscan.values = linspace(0, 6.283185307179586, 17)\n\
             scan.seed = 18446744073709551615\nanalysis.subtract = true # comment\n",
        )
        .unwrap();
        let again = parse_spec(&spec.to_text()).unwrap();
        assert_eq!(spec, again);
        assert_eq!(spec.to_text(), again.to_text());
    }

    #[test]
    fn fmt_num_round_trips() {
        for x in [0.0, 1.0, 0.3, 1.5e-9, 1e-13, 29816.0, 1.93e5, 1e12, -2.5e-4, 0.1 + 0.2] {
            assert_eq!(fmt_num(x).parse::<f64>().unwrap(), x);
        }
    }
}
