//! Deterministic CSV and JSON emission. Floats are written with 17
//! significant digits so parsing the output reproduces the exact bits.

use std::io::{self, Write};

use crate::sweep::{SweepRow, CSV_HEADER};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Json,
}

impl std::str::FromStr for OutputFormat {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            other => Err(format!("unknown format {other:?}, expected csv or json")),
        }
    }
}

/// 17-significant-digit scientific notation; round-trip exact and
/// byte-stable. Negative zero is normalized.
pub fn format_float(x: f64) -> String {
    if x == 0.0 {
        return format!("{:.16e}", 0.0f64);
    }
    format!("{x:.16e}")
}

pub fn emit_csv(rows: &[SweepRow], out: &mut impl Write) -> io::Result<()> {
    writeln!(out, "{CSV_HEADER}")?;
    for r in rows {
        writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{},{}",
            r.model,
            format_float(r.p_f),
            format_float(r.sigma),
            format_float(r.d),
            format_float(r.tau),
            format_float(r.f),
            format_float(r.g),
            format_float(r.negativity_closed),
            format_float(r.negativity_eigen),
            format_float(r.singlet_fraction),
            r.entangled,
        )?;
    }
    Ok(())
}

/// Array of objects with the same keys and values as the CSV columns.
pub fn emit_json(rows: &[SweepRow], out: &mut impl Write) -> io::Result<()> {
    serde_json::to_writer_pretty(&mut *out, rows)?;
    writeln!(out)?;
    Ok(())
}

pub fn emit(rows: &[SweepRow], format: OutputFormat, out: &mut impl Write) -> io::Result<()> {
    match format {
        OutputFormat::Csv => emit_csv(rows, out),
        OutputFormat::Json => emit_json(rows, out),
    }
}
