//! Deterministic CSV emission and run records.
//!
//! Every emitted file is UTF-8 with `\n` line endings: `#`-prefixed
//! metadata lines (`# key = value`), one header row, then data rows with
//! floats printed to 17 significant digits.  Identical inputs therefore
//! produce byte-identical files, which is what the regression checks hash.

use sha2::{Digest, Sha256};
use std::io::Write;
use std::path::{Path, PathBuf};

/// 17 significant digits: enough to round-trip any f64.
pub fn format_float(x: f64) -> String {
    format!("{x:.16e}")
}

/// An in-memory CSV document: metadata, header, rows.
#[derive(Debug, Clone)]
pub struct CsvDoc {
    metadata: Vec<(String, String)>,
    header: Vec<String>,
    rows: Vec<Vec<String>>,
}

impl CsvDoc {
    pub fn new<S: Into<String>>(header: Vec<S>) -> Self {
        Self {
            metadata: Vec::new(),
            header: header.into_iter().map(Into::into).collect(),
            rows: Vec::new(),
        }
    }

    pub fn meta<K: Into<String>, V: Into<String>>(&mut self, key: K, value: V) -> &mut Self {
        self.metadata.push((key.into(), value.into()));
        self
    }

    pub fn meta_float<K: Into<String>>(&mut self, key: K, value: f64) -> &mut Self {
        self.meta(key, format_float(value))
    }

    /// Append a row of floats.
    pub fn row(&mut self, values: &[f64]) -> &mut Self {
        assert_eq!(values.len(), self.header.len(), "row width mismatch");
        self.rows
            .push(values.iter().map(|&v| format_float(v)).collect());
        self
    }

    /// Append a row with pre-formatted cells (integer indices etc.).
    pub fn row_cells(&mut self, cells: Vec<String>) -> &mut Self {
        assert_eq!(cells.len(), self.header.len(), "row width mismatch");
        self.rows.push(cells);
        self
    }

    pub fn row_count(&self) -> usize {
        self.rows.len()
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.metadata {
            out.push_str("# ");
            out.push_str(k);
            out.push_str(" = ");
            out.push_str(v);
            out.push('\n');
        }
        out.push_str(&self.header.join(","));
        out.push('\n');
        for row in &self.rows {
            out.push_str(&row.join(","));
            out.push('\n');
        }
        out
    }

    /// Write to disk and return the verifiable record.
    pub fn write<P: AsRef<Path>>(
        &self,
        scenario: &str,
        path: P,
    ) -> std::io::Result<RunRecord> {
        let text = self.render();
        let path = path.as_ref().to_path_buf();
        if let Some(parent) = path.parent() {
            if !parent.as_os_str().is_empty() {
                std::fs::create_dir_all(parent)?;
            }
        }
        let mut file = std::fs::File::create(&path)?;
        file.write_all(text.as_bytes())?;
        file.flush()?;
        Ok(RunRecord {
            scenario: scenario.to_string(),
            params: self.metadata.clone(),
            path,
            sha256: sha256_hex(text.as_bytes()),
            rows: self.rows.len(),
        })
    }
}

fn sha256_hex(bytes: &[u8]) -> String {
    let mut hasher = Sha256::new();
    hasher.update(bytes);
    let digest = hasher.finalize();
    digest.iter().map(|b| format!("{b:02x}")).collect()
}

/// What was run, with what parameters, where it landed, and its checksum.
#[derive(Debug, Clone)]
pub struct RunRecord {
    pub scenario: String,
    pub params: Vec<(String, String)>,
    pub path: PathBuf,
    pub sha256: String,
    pub rows: usize,
}

impl RunRecord {
    /// Re-hash the file on disk and compare with the recorded checksum.
    pub fn verify(&self) -> std::io::Result<bool> {
        let bytes = std::fs::read(&self.path)?;
        Ok(sha256_hex(&bytes) == self.sha256)
    }
}
