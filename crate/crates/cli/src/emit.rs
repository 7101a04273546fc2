//! CSV and JSON writers. Floats are written in shortest round-trip form with
//! a '.' decimal point, independent of locale.

use std::fs::File;
use std::io::{self, Write};
use std::path::Path;

use serde::Serialize;

use crate::config::Format;
use crate::CliError;

pub fn to_csv<T: Serialize>(rows: &[T]) -> Result<Vec<u8>, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for row in rows {
        w.serialize(row).map_err(|e| CliError::Output(e.to_string()))?;
    }
    w.into_inner().map_err(|e| CliError::Output(e.to_string()))
}

pub fn to_json<T: Serialize>(rows: &[T]) -> Result<Vec<u8>, CliError> {
    let mut buf = serde_json::to_vec_pretty(rows).map_err(|e| CliError::Output(e.to_string()))?;
    buf.push(b'\n');
    Ok(buf)
}

pub fn render<T: Serialize>(rows: &[T], format: Format) -> Result<Vec<u8>, CliError> {
    match format {
        Format::Csv => to_csv(rows),
        Format::Json => to_json(rows),
    }
}

/// Writes `rows` to `out`, or to stdout when `out` is `None`.
pub fn emit<T: Serialize>(rows: &[T], format: Format, out: Option<&Path>) -> Result<(), CliError> {
    let bytes = render(rows, format)?;
    match out {
        Some(path) => File::create(path)?.write_all(&bytes)?,
        None => {
            let mut stdout = io::stdout().lock();
            stdout.write_all(&bytes)?;
            stdout.flush()?;
        }
    }
    Ok(())
}
