//! Benchmark dataset retrieval with content pinning. Downloads normalize
//! to comma-delimited CSV, and a sha-256 sidecar recorded on first fetch
//! guards every later read of the cache.

use std::collections::BTreeMap;
use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::sync::{Mutex, OnceLock};

use serde::Deserialize;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};

const SOURCE_TABLE: &str = include_str!("datasets.toml");
const MAX_DOWNLOAD_BYTES: u64 = 256 * 1024 * 1024;

/// The four benchmark datasets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Dataset {
    Concrete,
    Wine,
    Powerplant,
    News,
}

impl Dataset {
    pub const ALL: [Dataset; 4] = [
        Dataset::Concrete,
        Dataset::Wine,
        Dataset::Powerplant,
        Dataset::News,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Dataset::Concrete => "concrete",
            Dataset::Wine => "wine",
            Dataset::Powerplant => "powerplant",
            Dataset::News => "news",
        }
    }
}

impl fmt::Display for Dataset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Dataset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "concrete" => Ok(Dataset::Concrete),
            "wine" => Ok(Dataset::Wine),
            "powerplant" => Ok(Dataset::Powerplant),
            "news" => Ok(Dataset::News),
            other => Err(Error::UnknownDataset(other.to_string())),
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
struct SourceEntry {
    url: String,
    delimiter: String,
    #[allow(dead_code)]
    expected_rows: Option<usize>,
    note: Option<String>,
}

fn source_table() -> &'static BTreeMap<String, SourceEntry> {
    static TABLE: OnceLock<BTreeMap<String, SourceEntry>> = OnceLock::new();
    TABLE.get_or_init(|| {
        toml::from_str(SOURCE_TABLE).expect("bundled dataset table parses")
    })
}

fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// Rewrites `bytes` as comma-delimited CSV. Already-comma input passes
/// through untouched so pinned checksums stay stable.
fn normalize_csv(bytes: &[u8], delimiter: u8) -> Result<Vec<u8>> {
    if delimiter == b',' {
        return Ok(bytes.to_vec());
    }
    let mut reader = ::csv::ReaderBuilder::new()
        .delimiter(delimiter)
        .has_headers(false)
        .flexible(true)
        .from_reader(bytes);
    let mut out = Vec::with_capacity(bytes.len());
    {
        let mut writer = ::csv::WriterBuilder::new().from_writer(&mut out);
        for record in reader.records() {
            let record = record.map_err(|e| Error::CsvParse {
                line: e.position().map_or(0, |p| p.line() as usize),
                message: e.to_string(),
            })?;
            writer.write_record(&record).map_err(|e| Error::CsvParse {
                line: 0,
                message: e.to_string(),
            })?;
        }
        writer.flush()?;
    }
    Ok(out)
}

fn read_pin(pin_path: &Path) -> Result<Option<String>> {
    if pin_path.exists() {
        Ok(Some(fs::read_to_string(pin_path)?.trim().to_string()))
    } else {
        Ok(None)
    }
}

fn verify_or_pin(name: Dataset, bytes: &[u8], pin_path: &Path) -> Result<()> {
    let actual = sha256_hex(bytes);
    match read_pin(pin_path)? {
        Some(expected) if expected != actual => Err(Error::ChecksumMismatch {
            name: name.name().to_string(),
            expected,
            actual,
        }),
        Some(_) => Ok(()),
        None => {
            fs::write(pin_path, format!("{actual}\n"))?;
            Ok(())
        }
    }
}

fn download(url: &str) -> Result<Vec<u8>> {
    let network = |message: String| Error::Network {
        url: url.to_string(),
        message,
    };
    let mut response = ureq::get(url)
        .call()
        .map_err(|e| network(e.to_string()))?;
    response
        .body_mut()
        .with_config()
        .limit(MAX_DOWNLOAD_BYTES)
        .read_to_vec()
        .map_err(|e| network(e.to_string()))
}

/// Ensures `<dir>/<name>.csv` exists, is comma-delimited, and matches its
/// pinned checksum; downloads on a cache miss. Returns the CSV path.
///
/// An existing unpinned file is adopted: its checksum becomes the pin.
pub fn fetch_dataset(name: Dataset, dir: &Path) -> Result<PathBuf> {
    // One fetch writes at a time; concurrent callers see either the old or
    // the completed new cache file, never a partial write.
    static WRITE_LOCK: Mutex<()> = Mutex::new(());

    fs::create_dir_all(dir)?;
    let dest = dir.join(format!("{name}.csv"));
    let pin_path = dir.join(format!("{name}.sha256"));

    if dest.exists() {
        let bytes = fs::read(&dest)?;
        verify_or_pin(name, &bytes, &pin_path)?;
        return Ok(dest);
    }

    let entry = &source_table()[name.name()];
    if entry.url.is_empty() {
        let note = entry.note.as_deref().unwrap_or("no URL configured");
        return Err(Error::Network {
            url: format!("<none configured for {name}>"),
            message: format!("{note}; expected cache file {}", dest.display()),
        });
    }
    let raw = download(&entry.url)?;
    let normalized = normalize_csv(&raw, entry.delimiter.as_bytes()[0])?;
    verify_or_pin(name, &normalized, &pin_path)?;

    let _guard = WRITE_LOCK.lock().expect("fetch lock");
    let tmp = dir.join(format!(".{name}.csv.tmp"));
    fs::write(&tmp, &normalized)?;
    fs::rename(&tmp, &dest)?;
    Ok(dest)
}
