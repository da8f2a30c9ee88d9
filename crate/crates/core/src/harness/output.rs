//! CSV and JSON serialization of experiment results.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use serde::Serialize;

use super::experiments::{ExperimentResult, Records};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OutputFormat {
    /// One row per record, header from the record fields.
    #[default]
    Csv,
    /// The whole result: config, fingerprint, notes, summary and records.
    Json,
}

impl std::str::FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            other => Err(Error::Config(format!("unknown output format '{other}' (expected csv or json)"))),
        }
    }
}

fn write_csv_rows<W: Write, R: Serialize>(out: W, rows: &[R]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in rows {
        w.serialize(r).map_err(|e| Error::Argument(format!("csv: {e}")))?;
    }
    w.flush().map_err(|e| Error::Argument(format!("csv: {e}")))
}

/// Writes `result` to any sink. Output is a pure function of the result.
pub fn write_results<W: Write>(result: &ExperimentResult, format: OutputFormat, mut out: W) -> Result<()> {
    let io_err = |e: io::Error| Error::Argument(format!("write failed: {e}"));
    match format {
        OutputFormat::Csv => match &result.records {
            Records::Subspace(r) => write_csv_rows(out, r),
            Records::Sumrate(r) => write_csv_rows(out, r),
            Records::Runtime(r) => write_csv_rows(out, r),
        },
        OutputFormat::Json => {
            serde_json::to_writer_pretty(&mut out, result).map_err(|e| Error::Argument(format!("json: {e}")))?;
            writeln!(out).map_err(io_err)?;
            out.flush().map_err(io_err)
        }
    }
}

/// Writes to `path`, or to stdout when `path` is `None` or `-`.
pub fn emit_results(result: &ExperimentResult, format: OutputFormat, path: Option<&Path>) -> Result<()> {
    match path {
        Some(p) if p != Path::new("-") => {
            let file = File::create(p).map_err(|source| Error::Io { path: p.to_path_buf(), source })?;
            write_results(result, format, BufWriter::new(file))
        }
        _ => write_results(result, format, io::stdout().lock()),
    }
}
