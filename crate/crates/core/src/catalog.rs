//! A JSON-lines catalog of verified sets, append-only with canonical-key
//! deduplication. It plays the role of a small local existence database.

use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::format::SetFile;
use crate::sds::SignedDiffSet;

/// One catalog line: the wire-format set plus provenance.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CatalogRecord {
    pub group: Vec<u64>,
    pub lambda: i64,
    #[serde(rename = "P")]
    pub p: Vec<Vec<u64>>,
    #[serde(rename = "N")]
    pub n: Vec<Vec<u64>>,
    pub v: i64,
    pub k: i64,
    /// Construction family name or "search".
    pub source: String,
    /// Hex of the canonical form; the dedup key.
    pub canonical_key: String,
    /// Unix seconds at append time.
    pub timestamp: u64,
    /// For search records, the options that produced the set.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub options: Option<serde_json::Value>,
}

fn hex(bytes: &[u8]) -> String {
    let mut s = String::with_capacity(bytes.len() * 2);
    for b in bytes {
        s.push_str(&format!("{b:02x}"));
    }
    s
}

impl CatalogRecord {
    pub fn new(set: &SignedDiffSet, source: &str, options: Option<serde_json::Value>) -> Self {
        let file = SetFile::from_set(set);
        let timestamp = std::time::SystemTime::now()
            .duration_since(std::time::UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0);
        Self {
            group: file.group,
            lambda: file.lambda,
            p: file.p,
            n: file.n,
            v: set.group().order() as i64,
            k: set.k(),
            source: source.to_string(),
            canonical_key: hex(&set.canonical_form()),
            timestamp,
            options,
        }
    }

    pub fn to_set(&self) -> Result<SignedDiffSet> {
        SetFile {
            group: self.group.clone(),
            lambda: self.lambda,
            p: self.p.clone(),
            n: self.n.clone(),
        }
        .to_set()
    }

    /// Re-derives everything checkable: the set verifies, v and k match, and
    /// the canonical key matches recomputation.
    pub fn check(&self) -> Result<()> {
        let set = self.to_set()?;
        if self.v != set.group().order() as i64 || self.k != set.k() {
            return Err(Error::Catalog(format!(
                "stored v={} k={} disagree with the set ({}, {})",
                self.v,
                self.k,
                set.group().order(),
                set.k()
            )));
        }
        let report = set.verify()?;
        if !report.ok {
            return Err(Error::Catalog("set fails verification".into()));
        }
        let key = hex(&set.canonical_form());
        if key != self.canonical_key {
            return Err(Error::Catalog(format!(
                "canonical key mismatch: stored {}, recomputed {}",
                self.canonical_key, key
            )));
        }
        Ok(())
    }
}

/// Loads all records, validating each one: the set must verify and the
/// stored canonical key must match recomputation. Errors carry the 1-based
/// line number. Records come back in file order with exact canonical-key
/// duplicates dropped.
pub fn load(path: &Path) -> Result<Vec<CatalogRecord>> {
    if !path.exists() {
        return Ok(Vec::new());
    }
    let text = std::fs::read_to_string(path)?;
    let mut out: Vec<CatalogRecord> = Vec::new();
    let mut seen = std::collections::BTreeSet::new();
    for (i, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let rec: CatalogRecord = serde_json::from_str(line)
            .map_err(|e| Error::Catalog(format!("line {}: {e}", i + 1)))?;
        rec.check()
            .map_err(|e| Error::Catalog(format!("line {}: {e}", i + 1)))?;
        if seen.insert(rec.canonical_key.clone()) {
            out.push(rec);
        }
    }
    Ok(out)
}

/// Appends a record unless an equal canonical key already exists; returns
/// true when the record was written.
pub fn append(path: &Path, record: &CatalogRecord) -> Result<bool> {
    let existing = load(path)?;
    if existing
        .iter()
        .any(|r| r.canonical_key == record.canonical_key)
    {
        return Ok(false);
    }
    let mut file = std::fs::OpenOptions::new()
        .create(true)
        .append(true)
        .open(path)?;
    writeln!(file, "{}", serde_json::to_string(record)?)?;
    Ok(true)
}

/// Verifies every record; the error names the first offending line.
pub fn check(path: &Path) -> Result<()> {
    load(path).map(drop)
}
