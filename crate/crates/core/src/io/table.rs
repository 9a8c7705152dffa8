//! CSV output for diagnostics and convergence tables.

use std::fs::File;
use std::io::Write;
use std::path::{Path, PathBuf};

use crate::driver::{ConvergenceRow, DiagnosticRecord};
use crate::error::OutputError;

const DIAGNOSTIC_HEADER: [&str; 9] = [
    "step",
    "time",
    "dt",
    "mass",
    "momentum_x",
    "momentum_y",
    "max_froude",
    "min_h",
    "max_h",
];

/// Appends one diagnostics row per step, flushing each row so an aborted run
/// keeps everything up to the failure.
pub struct DiagnosticsWriter {
    path: PathBuf,
    inner: csv::Writer<File>,
}

impl DiagnosticsWriter {
    pub fn create(path: impl AsRef<Path>) -> Result<Self, OutputError> {
        let path = path.as_ref().to_path_buf();
        let mut inner = csv::Writer::from_path(&path).map_err(|source| OutputError::Csv {
            path: path.clone(),
            source,
        })?;
        inner.write_record(DIAGNOSTIC_HEADER).map_err(|source| OutputError::Csv {
            path: path.clone(),
            source,
        })?;
        Ok(Self { path, inner })
    }

    pub fn write(&mut self, r: &DiagnosticRecord) -> Result<(), OutputError> {
        let row = [
            r.step.to_string(),
            format!("{:.16e}", r.time),
            format!("{:.16e}", r.dt),
            format!("{:.16e}", r.mass),
            format!("{:.16e}", r.momentum_x),
            format!("{:.16e}", r.momentum_y),
            format!("{:.16e}", r.max_froude),
            format!("{:.16e}", r.min_h),
            format!("{:.16e}", r.max_h),
        ];
        self.inner.write_record(&row).map_err(|source| OutputError::Csv {
            path: self.path.clone(),
            source,
        })?;
        self.inner.flush().map_err(|source| OutputError::Io {
            path: self.path.clone(),
            source,
        })
    }
}

/// Writes `scheme,cells,l1_error,observed_order`; the order is empty on the
/// coarsest mesh of each scheme.
pub fn write_convergence_csv(rows: &[ConvergenceRow], out: impl Write) -> Result<(), csv::Error> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["scheme", "cells", "l1_error", "observed_order"])?;
    for r in rows {
        w.write_record([
            r.scheme.to_string(),
            r.cells.to_string(),
            format!("{:.16e}", r.l1_error),
            r.observed_order.map(|p| format!("{p:.6}")).unwrap_or_default(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::driver::SchemeKind;

    #[test]
    fn convergence_table() {
        let rows = vec![
            ConvergenceRow {
                scheme: SchemeKind::Fvc,
                cells: 100,
                l1_error: 0.5,
                observed_order: None,
            },
            ConvergenceRow {
                scheme: SchemeKind::Fvc,
                cells: 400,
                l1_error: 0.25,
                observed_order: Some(1.0),
            },
        ];
        let mut buf = Vec::new();
        write_convergence_csv(&rows, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "scheme,cells,l1_error,observed_order");
        assert_eq!(lines[1], "fvc,100,5.0000000000000000e-1,");
        assert_eq!(lines[2], "fvc,400,2.5000000000000000e-1,1.000000");
    }
}
