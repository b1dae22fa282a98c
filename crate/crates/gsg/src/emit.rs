//! Bit-stable file emission: RFC-4180 CSV, pretty JSON, and a sha256-checked
//! run manifest.
//!
//! Determinism contract: floats print as Rust's shortest round-trip decimal
//! ('.' separator, at most 17 significant digits), line endings are '\n', and
//! rows are written in the order supplied — identical inputs give identical
//! bytes, so the manifest checksums double as a reproducibility check.

use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};

/// Shortest decimal that parses back to exactly `v`.
pub fn fmt_f64(v: f64) -> String {
    if v.is_finite() { format!("{v}") } else { format!("\"{v}\"") }
}

#[derive(Debug, Clone, Serialize)]
pub struct OutputRecord {
    /// Path relative to the output directory.
    pub path: String,
    pub sha256: String,
    pub bytes: u64,
}

/// Everything needed to audit or reproduce one invocation.
#[derive(Debug, Clone, Serialize)]
pub struct RunManifest {
    pub tool: String,
    pub version: String,
    pub subcommand: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub threads: usize,
    pub wall_ms: u64,
    pub config: serde_json::Value,
    pub outputs: Vec<OutputRecord>,
}

/// Collects output files under one directory and records their checksums.
pub struct Emitter {
    out_dir: PathBuf,
    outputs: Vec<OutputRecord>,
}

impl Emitter {
    pub fn new(out_dir: &Path) -> Result<Self> {
        fs::create_dir_all(out_dir)?;
        Ok(Emitter { out_dir: out_dir.to_path_buf(), outputs: Vec::new() })
    }

    pub fn out_dir(&self) -> &Path {
        &self.out_dir
    }

    fn record(&mut self, name: &str, bytes: &[u8]) -> Result<()> {
        let path = self.out_dir.join(name);
        fs::write(&path, bytes)?;
        let mut hasher = Sha256::new();
        hasher.update(bytes);
        self.outputs.push(OutputRecord {
            path: name.to_string(),
            sha256: format!("{:x}", hasher.finalize()),
            bytes: bytes.len() as u64,
        });
        Ok(())
    }

    /// Writes a CSV file with the given single-line header; rows are emitted
    /// in iteration order with RFC-4180 quoting.
    pub fn write_csv<I>(&mut self, name: &str, header: &[&str], rows: I) -> Result<()>
    where
        I: IntoIterator<Item = Vec<String>>,
    {
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(Vec::new());
        w.write_record(header)?;
        for row in rows {
            if row.len() != header.len() {
                return Err(Error::numerical(format!(
                    "csv row width {} does not match header width {} in {name}",
                    row.len(),
                    header.len()
                )));
            }
            w.write_record(&row)?;
        }
        let bytes =
            w.into_inner().map_err(|e| Error::numerical(format!("csv flush failed: {e}")))?;
        self.record(name, &bytes)
    }

    /// Writes pretty-printed JSON with a trailing newline.
    pub fn write_json<T: Serialize>(&mut self, name: &str, value: &T) -> Result<()> {
        let mut text = serde_json::to_string_pretty(value)
            .map_err(|e| Error::numerical(format!("json serialization failed: {e}")))?;
        text.push('\n');
        self.record(name, text.as_bytes())
    }

    /// Writes `manifest.json` (last, so it covers every other file) and
    /// returns the manifest.
    pub fn finish(
        self,
        subcommand: &str,
        config: serde_json::Value,
        seed: Option<u64>,
        wall_ms: u64,
    ) -> Result<RunManifest> {
        let manifest = RunManifest {
            tool: "gsg".to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            subcommand: subcommand.to_string(),
            seed,
            threads: rayon::current_num_threads(),
            wall_ms,
            config,
            outputs: self.outputs,
        };
        let mut text = serde_json::to_string_pretty(&manifest)
            .map_err(|e| Error::numerical(format!("manifest serialization failed: {e}")))?;
        text.push('\n');
        fs::write(self.out_dir.join("manifest.json"), text.as_bytes())?;
        Ok(manifest)
    }
}
