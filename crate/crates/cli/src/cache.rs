//! Append-only JSON-lines store of finished scan records, keyed by `(n, m, a, b)`.

use std::collections::BTreeMap;
use std::fs::{File, OpenOptions};
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};

use crate::record::{Key, ScanRecord};

pub struct Cache {
    path: PathBuf,
    file: File,
    records: BTreeMap<Key, ScanRecord>,
}

impl Cache {
    /// Opens (creating if needed) and loads every complete record. A torn final
    /// line from an interrupted run is cut off so later appends start clean.
    pub fn open(path: &Path) -> io::Result<Self> {
        let mut file = OpenOptions::new().read(true).append(true).create(true).open(path)?;
        let mut text = String::new();
        file.read_to_string(&mut text)?;
        let mut records = BTreeMap::new();
        let mut good_len = 0usize;
        let mut offset = 0usize;
        for line in text.split_inclusive('\n') {
            offset += line.len();
            let complete = line.ends_with('\n');
            let body = line.trim();
            if body.is_empty() {
                if complete {
                    good_len = offset;
                }
                continue;
            }
            if !complete {
                // Torn tail: recomputed on resume.
                break;
            }
            let rec: ScanRecord = serde_json::from_str(body).map_err(|e| {
                io::Error::new(
                    io::ErrorKind::InvalidData,
                    format!("{}: corrupt cache line: {e}", path.display()),
                )
            })?;
            records.insert(rec.key(), rec);
            good_len = offset;
        }
        if good_len < text.len() {
            file.set_len(good_len as u64)?;
        }
        Ok(Self {
            path: path.to_path_buf(),
            file,
            records,
        })
    }

    /// Writes one record as a single line and flushes it.
    pub fn append(&mut self, rec: &ScanRecord) -> io::Result<()> {
        let mut line = serde_json::to_string(rec).map_err(io::Error::other)?;
        line.push('\n');
        self.file.write_all(line.as_bytes())?;
        self.file.flush()
    }

    /// Records present when the cache was opened.
    pub fn records(&self) -> &BTreeMap<Key, ScanRecord> {
        &self.records
    }

    pub fn path(&self) -> &Path {
        &self.path
    }
}
