//! CSV output with `#` metadata lines, and the append-only journal that lets
//! an interrupted sweep resume.

use std::collections::HashMap;
use std::fs::{self, File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::sync::Mutex;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Serialises `rows` as CSV with a header, preceded by `# `-prefixed
/// metadata lines.
pub fn write_csv<W: Write, R: Serialize>(out: W, metadata: &[String], rows: &[R]) -> Result<()> {
    let mut out = out;
    for line in metadata {
        writeln!(out, "# {line}")?;
    }
    let mut writer = csv::Writer::from_writer(out);
    for row in rows {
        writer.serialize(row)?;
    }
    writer.flush()?;
    Ok(())
}

pub fn write_csv_file<R: Serialize>(path: &Path, metadata: &[String], rows: &[R]) -> Result<()> {
    write_csv(File::create(path)?, metadata, rows)
}

/// Reads rows back, skipping `#` metadata lines.
pub fn read_csv<R: DeserializeOwned>(text: &str) -> Result<Vec<R>> {
    let body: String = text
        .lines()
        .filter(|l| !l.starts_with('#'))
        .map(|l| format!("{l}\n"))
        .collect();
    let mut reader = csv::Reader::from_reader(body.as_bytes());
    reader
        .deserialize()
        .map(|r| r.map_err(Error::from))
        .collect()
}

#[derive(Serialize, Deserialize)]
struct Manifest {
    config_hash: String,
    tool_version: String,
}

#[derive(Serialize, Deserialize)]
struct Entry<R> {
    task: String,
    records: Vec<R>,
}

/// Completed-task log. Each finished task appends one JSON line, so a rerun
/// with the same configuration skips work already on disk. A manifest next
/// to the journal pins the configuration hash.
pub struct Journal<R> {
    file: Mutex<File>,
    done: HashMap<String, Vec<R>>,
}

fn manifest_path(journal: &Path) -> PathBuf {
    let mut name = journal.as_os_str().to_owned();
    name.push(".manifest.json");
    PathBuf::from(name)
}

impl<R: Serialize + DeserializeOwned + Clone> Journal<R> {
    /// Opens or creates the journal at `path`. Fails if an existing manifest
    /// was written for a different configuration.
    pub fn open(path: &Path, config_hash: &str) -> Result<Self> {
        let manifest_path = manifest_path(path);
        let mut done = HashMap::new();
        if manifest_path.exists() {
            let manifest: Manifest = serde_json::from_str(&fs::read_to_string(&manifest_path)?)
                .map_err(|e| Error::Io(format!("unreadable manifest: {e}")))?;
            if manifest.config_hash != config_hash {
                return Err(Error::InvalidArgument(format!(
                    "journal {} belongs to config {}, not {config_hash}",
                    path.display(),
                    manifest.config_hash
                )));
            }
            if path.exists() {
                for line in BufReader::new(File::open(path)?).lines() {
                    let line = line?;
                    // A torn final line from an interrupted write is ignored.
                    if let Ok(entry) = serde_json::from_str::<Entry<R>>(&line) {
                        done.insert(entry.task, entry.records);
                    }
                }
            }
        } else {
            let manifest = Manifest {
                config_hash: config_hash.to_string(),
                tool_version: env!("CARGO_PKG_VERSION").to_string(),
            };
            fs::write(
                &manifest_path,
                serde_json::to_string_pretty(&manifest).expect("manifest serialises"),
            )?;
            File::create(path)?;
        }
        let file = OpenOptions::new().append(true).open(path)?;
        Ok(Self {
            file: Mutex::new(file),
            done,
        })
    }

    pub fn completed(&self, task: &str) -> Option<&Vec<R>> {
        self.done.get(task)
    }

    pub fn completed_count(&self) -> usize {
        self.done.len()
    }

    pub fn append(&self, task: &str, records: &[R]) -> Result<()> {
        let line = serde_json::to_string(&Entry {
            task: task.to_string(),
            records: records.to_vec(),
        })
        .map_err(|e| Error::Io(e.to_string()))?;
        let mut file = self.file.lock().expect("journal lock poisoned");
        writeln!(file, "{line}")?;
        file.flush()?;
        Ok(())
    }
}
