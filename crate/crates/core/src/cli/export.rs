//! CSV and JSON serialization of zero sets.
//!
//! CSV files open with `# key: value` metadata lines followed by the header
//! `label,re,im,residual,multiplicity`. Numbers are decimal strings at 40
//! significant digits, so files are byte-stable for fixed inputs.

use rug::Complex;

use crate::error::{Error, Result};
use crate::numerics::{complex_strings, fmt_float, parse_float, EXPORT_DIGITS};
use crate::roots::ZeroSet;

pub const CSV_HEADER: [&str; 5] = ["label", "re", "im", "residual", "multiplicity"];

fn csv_err(e: csv::Error) -> Error {
    Error::Parse(e.to_string())
}

pub fn to_csv(sets: &[&ZeroSet], meta: &[(String, String)]) -> Result<String> {
    let mut out = Vec::new();
    for (k, v) in meta {
        out.extend_from_slice(format!("# {k}: {v}\n").as_bytes());
    }
    {
        let mut w = csv::Writer::from_writer(&mut out);
        w.write_record(CSV_HEADER).map_err(csv_err)?;
        for set in sets {
            for ((z, r), m) in set.roots.iter().zip(&set.residuals).zip(&set.multiplicity_flags) {
                let [re, im] = complex_strings(z, EXPORT_DIGITS);
                let m = if *m { "1" } else { "0" };
                w.write_record([set.label.as_str(), &re, &im, &fmt_float(r, 6), m]).map_err(csv_err)?;
            }
        }
        w.flush()?;
    }
    String::from_utf8(out).map_err(|e| Error::Parse(e.to_string()))
}

/// Reads zero sets back, grouped by label in order of first appearance.
pub fn from_csv(text: &str, bits: u32) -> Result<Vec<ZeroSet>> {
    let mut r = csv::ReaderBuilder::new().comment(Some(b'#')).from_reader(text.as_bytes());
    let headers = r.headers().map_err(csv_err)?.clone();
    if headers.iter().collect::<Vec<_>>() != CSV_HEADER {
        return Err(Error::Parse(format!("unexpected header {headers:?}")));
    }
    let mut sets: Vec<ZeroSet> = Vec::new();
    for rec in r.records() {
        let rec = rec.map_err(csv_err)?;
        let label = &rec[0];
        let z = Complex::with_val(bits, (parse_float(&rec[1], bits)?, parse_float(&rec[2], bits)?));
        let residual = parse_float(&rec[3], 64)?;
        let flag = &rec[4] == "1";
        let idx = match sets.iter().position(|s| s.label == label) {
            Some(i) => i,
            None => {
                sets.push(ZeroSet::new(label, Vec::new()));
                sets.len() - 1
            }
        };
        let s = &mut sets[idx];
        s.roots.push(z);
        s.residuals.push(residual);
        s.multiplicity_flags.push(flag);
    }
    Ok(sets)
}

/// `# key: value` metadata lines of a CSV file.
pub fn csv_metadata(text: &str) -> Vec<(String, String)> {
    text.lines()
        .map_while(|l| l.strip_prefix("# "))
        .filter_map(|l| l.split_once(": ").map(|(k, v)| (k.to_string(), v.to_string())))
        .collect()
}
