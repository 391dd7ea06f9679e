//! CSV form of bench records.
//!
//! ```text
//! prime_digits,algorithm,residues_found,total_time_s,verified
//! 50,proposed,4987,1.240000,true
//! ```

use std::io::{self, Write};

use crate::bench::{Algorithm, BenchRecord};

pub const CSV_HEADER: &str = "prime_digits,algorithm,residues_found,total_time_s,verified";

pub fn emit_csv(records: &[BenchRecord], sink: &mut dyn Write) -> io::Result<()> {
    writeln!(sink, "{CSV_HEADER}")?;
    for r in records {
        writeln!(
            sink,
            "{},{},{},{:.6},{}",
            r.prime_digits, r.algorithm, r.residues_found, r.total_time, r.verified
        )?;
    }
    sink.flush()
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum CsvError {
    #[error("missing or wrong header")]
    Header,
    #[error("line {line}: {message}")]
    Row { line: usize, message: String },
}

pub fn parse_csv(text: &str) -> Result<Vec<BenchRecord>, CsvError> {
    let mut lines = text.lines();
    if lines.next() != Some(CSV_HEADER) {
        return Err(CsvError::Header);
    }
    let mut records = Vec::new();
    for (idx, line) in lines.enumerate() {
        let line_no = idx + 2;
        let row_err = |message: String| CsvError::Row {
            line: line_no,
            message,
        };
        let fields: Vec<&str> = line.split(',').collect();
        let [digits, algorithm, found, time, verified] = fields[..] else {
            return Err(row_err(format!("expected 5 fields, got {}", fields.len())));
        };
        records.push(BenchRecord {
            prime_digits: digits
                .parse()
                .map_err(|e| row_err(format!("prime_digits: {e}")))?,
            algorithm: algorithm.parse::<Algorithm>().map_err(row_err)?,
            residues_found: found
                .parse()
                .map_err(|e| row_err(format!("residues_found: {e}")))?,
            total_time: time
                .parse()
                .map_err(|e| row_err(format!("total_time_s: {e}")))?,
            verified: verified
                .parse()
                .map_err(|e| row_err(format!("verified: {e}")))?,
        });
    }
    Ok(records)
}
