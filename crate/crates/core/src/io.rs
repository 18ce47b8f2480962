//! Flat-file output. Floats are written with 17 significant digits so that
//! every value re-parses to the same `f64`.

use std::fs;
use std::path::{Path, PathBuf};

use nalgebra::DMatrix;
use serde::Serialize;

use crate::blochsolve::{SpectrumRow, StateLabel};
use crate::dynamics::{CorrelationMatrix, Space};
use crate::error::{Error, Result};

pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

fn parse_f64(s: &str) -> Result<f64> {
    s.trim()
        .parse()
        .map_err(|e| Error::Parse(format!("`{s}` is not a float: {e}")))
}

fn parse_i64(s: &str) -> Result<i64> {
    s.trim()
        .parse()
        .map_err(|e| Error::Parse(format!("`{s}` is not an integer: {e}")))
}

fn csv_err(e: csv::Error) -> Error {
    Error::Parse(e.to_string())
}

/// Write rows of pre-formatted fields under a header.
pub fn write_csv(path: &Path, header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> Result<()> {
    let mut w = csv::Writer::from_path(path).map_err(csv_err)?;
    w.write_record(header).map_err(csv_err)?;
    for row in rows {
        w.write_record(&row).map_err(csv_err)?;
    }
    w.flush()?;
    Ok(())
}

fn read_csv(path: &Path, header: &[&str]) -> Result<Vec<csv::StringRecord>> {
    let mut r = csv::Reader::from_path(path).map_err(csv_err)?;
    let found: Vec<String> = r.headers().map_err(csv_err)?.iter().map(str::to_owned).collect();
    if found != header {
        return Err(Error::Parse(format!(
            "{}: header {found:?}, expected {header:?}",
            path.display()
        )));
    }
    r.records().map(|rec| rec.map_err(csv_err)).collect()
}

pub fn write_json<T: Serialize + ?Sized>(path: &Path, value: &T) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    fs::write(path, text)?;
    Ok(())
}

pub const SPECTRUM_HEADER: [&str; 4] = ["alpha", "K", "energy", "label"];

pub fn write_spectrum_csv(path: &Path, rows: &[SpectrumRow]) -> Result<()> {
    write_csv(
        path,
        &SPECTRUM_HEADER,
        rows.iter().map(|r| {
            vec![
                r.alpha.to_string(),
                fmt_f64(r.momentum),
                fmt_f64(r.energy),
                r.label.as_str().to_owned(),
            ]
        }),
    )
}

pub fn read_spectrum_csv(path: &Path) -> Result<Vec<SpectrumRow>> {
    read_csv(path, &SPECTRUM_HEADER)?
        .iter()
        .map(|rec| {
            Ok(SpectrumRow {
                alpha: parse_i64(&rec[0])?,
                momentum: parse_f64(&rec[1])?,
                energy: parse_f64(&rec[2])?,
                label: StateLabel::parse(&rec[3])?,
            })
        })
        .collect()
}

fn correlation_header(space: Space) -> [&'static str; 4] {
    match space {
        Space::Position => ["t", "q", "r", "gamma"],
        Space::Momentum => ["t", "alpha", "beta", "gamma"],
    }
}

/// Row-major `t, index, index, gamma` rows with indices as labels in `[-L, L]`.
pub fn write_correlation_csv(path: &Path, space: Space, frames: &[&CorrelationMatrix]) -> Result<()> {
    let rows = frames.iter().flat_map(|g| {
        let n = g.entries.nrows();
        let l = (n / 2) as i64;
        let t = fmt_f64(g.time);
        (0..n).flat_map(move |a| {
            let t = t.clone();
            (0..n).map(move |b| {
                vec![
                    t.clone(),
                    (a as i64 - l).to_string(),
                    (b as i64 - l).to_string(),
                    fmt_f64(g.entries[(a, b)]),
                ]
            })
        })
    });
    write_csv(path, &correlation_header(space), rows)
}

pub fn read_correlation_csv(path: &Path, space: Space) -> Result<Vec<CorrelationMatrix>> {
    let records = read_csv(path, &correlation_header(space))?;
    let mut parsed = Vec::with_capacity(records.len());
    let mut max_label = 0;
    for rec in &records {
        let (t, a, b, g) = (
            parse_f64(&rec[0])?,
            parse_i64(&rec[1])?,
            parse_i64(&rec[2])?,
            parse_f64(&rec[3])?,
        );
        max_label = max_label.max(a.abs()).max(b.abs());
        parsed.push((t, a, b, g));
    }
    let n = (2 * max_label + 1) as usize;
    let mut out: Vec<CorrelationMatrix> = Vec::new();
    for chunk in parsed.chunks(n * n) {
        if chunk.len() != n * n {
            return Err(Error::Parse(format!("{}: incomplete frame", path.display())));
        }
        let mut entries = DMatrix::zeros(n, n);
        for &(_, a, b, g) in chunk {
            entries[((a + max_label) as usize, (b + max_label) as usize)] = g;
        }
        out.push(CorrelationMatrix {
            entries,
            space,
            time: chunk[0].0,
        });
    }
    Ok(out)
}

/// `meta.json` beside the data files; the only place a timestamp appears.
#[derive(Debug, Serialize)]
pub struct Meta<'a, C: Serialize> {
    pub command: &'a str,
    pub version: &'a str,
    pub generated_unix: u64,
    pub config: &'a C,
    pub files: Vec<String>,
}

pub fn write_meta<C: Serialize>(dir: &Path, command: &str, config: &C, files: &[PathBuf]) -> Result<()> {
    let generated_unix = std::time::SystemTime::now()
        .duration_since(std::time::UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0);
    let meta = Meta {
        command,
        version: env!("CARGO_PKG_VERSION"),
        generated_unix,
        config,
        files: files
            .iter()
            .filter_map(|p| p.file_name().map(|n| n.to_string_lossy().into_owned()))
            .collect(),
    };
    write_json(&dir.join("meta.json"), &meta)
}
