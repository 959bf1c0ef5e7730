//! Machine-readable records and the three output encodings.

use std::io::{self, Write};

use matrixavoid::{PhiResult, Provenance};
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Plain,
    Csv,
    Json,
}

/// One count, as printed by `phi`, `oracle`, `table` and `seq`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutputRecord {
    pub k: usize,
    pub n: usize,
    pub alpha: String,
    /// Exact decimal digits.
    pub value: String,
    pub provenance: String,
}

impl From<&PhiResult> for OutputRecord {
    fn from(r: &PhiResult) -> Self {
        OutputRecord {
            k: r.k,
            n: r.n,
            alpha: r.alpha.to_string(),
            value: r.value.to_string(),
            provenance: r.provenance.to_string(),
        }
    }
}

impl OutputRecord {
    pub fn provenance(&self) -> Option<Provenance> {
        match self.provenance.as_str() {
            "formula" => Some(Provenance::Formula),
            "oracle" => Some(Provenance::Oracle),
            _ => None,
        }
    }
}

/// An exact series coefficient with its factorial-scaled count.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoefficientRecord {
    /// Absent for diagonal series.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub k: Option<usize>,
    pub n: usize,
    pub coefficient: String,
    pub count: String,
}

pub fn write_json_lines<T: Serialize>(out: &mut dyn Write, rows: &[T]) -> io::Result<()> {
    for r in rows {
        serde_json::to_writer(&mut *out, r)?;
        writeln!(out)?;
    }
    Ok(())
}

pub fn write_csv<T: Serialize>(out: &mut dyn Write, rows: &[T]) -> io::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in rows {
        w.serialize(r).map_err(io::Error::other)?;
    }
    w.flush()
}

/// Writes string rows as CSV with RFC-4180 quoting.
pub fn write_csv_rows(out: &mut dyn Write, rows: &[Vec<String>]) -> io::Result<()> {
    let mut w = csv::WriterBuilder::new().flexible(true).from_writer(out);
    for r in rows {
        w.write_record(r).map_err(io::Error::other)?;
    }
    w.flush()
}
