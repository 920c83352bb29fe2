//! Parallel batch driver and the tab-separated key=value record format
//! shared by manifests and reports.

use std::path::{Path, PathBuf};

use anyhow::Result;
use rayon::prelude::*;

/// Ordered key=value pairs for one record line.
pub type Record = Vec<(&'static str, String)>;

pub fn record_line(record: &Record) -> String {
    record
        .iter()
        .map(|(k, v)| format!("{k}={v}"))
        .collect::<Vec<_>>()
        .join("\t")
}

/// Formats a float with the shortest representation that parses back to the
/// same value, so downstream recomputation can match records exactly.
pub fn fmt_f64(v: f64) -> String {
    format!("{v}")
}

/// Runs `work` over all inputs in parallel, keeping input order in the
/// returned records. Failures are reported on stderr and counted; their
/// records are skipped.
pub fn run_batch<F>(inputs: &[PathBuf], stems: &[String], work: F) -> (Vec<Record>, usize)
where
    F: Fn(usize, &Path, &str) -> Result<Record> + Sync,
{
    let results: Vec<Result<Record>> = inputs
        .par_iter()
        .enumerate()
        .map(|(i, path)| work(i, path, &stems[i]))
        .collect();

    let mut records = Vec::with_capacity(results.len());
    let mut failures = 0;
    for (path, result) in inputs.iter().zip(results) {
        match result {
            Ok(record) => records.push(record),
            Err(e) => {
                failures += 1;
                eprintln!("error: {}: {e:#}", path.display());
            }
        }
    }
    (records, failures)
}

/// Writes one record per line. An empty batch still produces the file.
pub fn write_records(path: &Path, records: &[Record]) -> Result<()> {
    let mut text = String::new();
    for record in records {
        text.push_str(&record_line(record));
        text.push('\n');
    }
    std::fs::write(path, text)?;
    Ok(())
}
