//! `records.csv`: one row per scan point, SI units, floats with 9
//! significant digits.

use timebin_core::events::Corrected;
use timebin_core::Record;

const BASE_HEADER: [&str; 5] = ["scan_value", "duration_s", "singles_A", "singles_B", "coinc_raw"];
const CORRECTED_HEADER: [&str; 2] = ["coinc_corr", "corr_flag"];

fn fmt9(x: f64) -> String {
    format!("{x:.8e}")
}

/// Rounds to the value written in the CSV, so that writing and reading
/// back is lossless.
pub fn quantize(x: f64) -> f64 {
    fmt9(x).parse().unwrap_or(x)
}

/// Quantizes every float field of a record in place.
pub fn quantize_record(r: &mut Record) {
    r.scan_value = quantize(r.scan_value);
    r.duration = quantize(r.duration);
    if let Some(c) = r.corrected.as_mut() {
        c.coincidences = quantize(c.coincidences);
    }
}

pub fn write_records(records: &[Record]) -> String {
    let corrected = records.iter().any(|r| r.corrected.is_some());
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header: Vec<&str> = BASE_HEADER.to_vec();
    if corrected {
        header.extend(CORRECTED_HEADER);
    }
    w.write_record(&header).expect("in-memory write");
    for r in records {
        let mut row = vec![
            fmt9(r.scan_value),
            fmt9(r.duration),
            r.singles_a.to_string(),
            r.singles_b.to_string(),
            r.coincidences_raw.to_string(),
        ];
        if corrected {
            let (c, flag) = match r.corrected {
                Some(c) => (fmt9(c.coincidences), u8::from(c.clamped).to_string()),
                None => (fmt9(r.coincidences_raw as f64), "0".into()),
            };
            row.extend([c, flag]);
        }
        w.write_record(&row).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("ascii output")
}

/// Parses `records.csv` text. Errors carry the 1-based line number.
pub fn read_records(text: &str) -> Result<Vec<Record>, String> {
    let mut rdr = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let header: Vec<String> = rdr
        .headers()
        .map_err(|e| format!("line 1: {e}"))?
        .iter()
        .map(str::to_string)
        .collect();
    let corrected = if header == BASE_HEADER {
        false
    } else if header.len() == 7 && header[..5] == BASE_HEADER && header[5..] == CORRECTED_HEADER {
        true
    } else {
        return Err(format!(
            "line 1: expected header `{}[,{}]`",
            BASE_HEADER.join(","),
            CORRECTED_HEADER.join(",")
        ));
    };

    let mut records = Vec::new();
    for (i, row) in rdr.records().enumerate() {
        let line = i + 2;
        let row = row.map_err(|e| format!("line {line}: {e}"))?;
        let field = |j: usize| -> &str { row.get(j).unwrap_or("") };
        let float = |j: usize| -> Result<f64, String> {
            field(j)
                .parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(|| format!("line {line}: column {} is not a finite number: `{}`", header[j], field(j)))
        };
        let count = |j: usize| -> Result<u64, String> {
            field(j)
                .parse::<u64>()
                .map_err(|_| format!("line {line}: column {} is not a count: `{}`", header[j], field(j)))
        };
        let mut r = Record::new(float(0)?, float(1)?, count(2)?, count(3)?, count(4)?);
        if !(r.duration > 0.0) {
            return Err(format!("line {line}: duration_s must be positive"));
        }
        if corrected {
            let clamped = match field(6) {
                "0" => false,
                "1" => true,
                other => return Err(format!("line {line}: corr_flag must be 0 or 1, got `{other}`")),
            };
            r.corrected = Some(Corrected {
                coincidences: float(5)?,
                clamped,
            });
        }
        records.push(r);
    }
    if records.is_empty() {
        return Err("no data rows".into());
    }
    Ok(records)
}
