//! Reading inputs and writing JSON and CSV outputs.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::de::DeserializeOwned;
use serde::Serialize;
use swcert_core::analysis::{Cell, ScanTable};
use swcert_core::json::{format_f64, to_string_precise};

use crate::{CliError, CliResult};

fn io_error(path: &Path, source: std::io::Error) -> CliError {
    CliError::Io {
        path: path.to_path_buf(),
        source,
    }
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> CliResult<T> {
    let text = fs::read_to_string(path).map_err(|e| io_error(path, e))?;
    serde_json::from_str(&text).map_err(|source| CliError::Json {
        path: path.to_path_buf(),
        source,
    })
}

/// Writes to `path`, or to stdout when no path is given.
pub fn emit(text: &str, path: Option<&PathBuf>) -> CliResult<()> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| io_error(p, e)),
        None => std::io::stdout()
            .lock()
            .write_all(text.as_bytes())
            .map_err(|e| io_error(Path::new("<stdout>"), e)),
    }
}

pub fn json_text<T: Serialize + ?Sized>(value: &T) -> CliResult<String> {
    to_string_precise(value).map_err(|source| CliError::Json {
        path: PathBuf::from("<output>"),
        source,
    })
}

pub fn emit_json<T: Serialize + ?Sized>(value: &T, path: Option<&PathBuf>) -> CliResult<()> {
    emit(&json_text(value)?, path)
}

fn cell_text(c: &Cell) -> String {
    match c {
        Cell::Int(n) => n.to_string(),
        Cell::Real(x) => format_f64(*x),
        Cell::Empty => String::new(),
    }
}

pub fn csv_text(table: &ScanTable) -> CliResult<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let to_io = |e: csv::Error| io_error(Path::new("<csv>"), e.into());
    w.write_record(&table.columns).map_err(to_io)?;
    for row in &table.rows {
        w.write_record(row.iter().map(cell_text)).map_err(to_io)?;
    }
    let bytes = w
        .into_inner()
        .map_err(|e| io_error(Path::new("<csv>"), e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("CSV cells are ASCII"))
}
