//! On-disk memo of generated records, one JSON file per request.
//!
//! A file whose header does not carry the current format version is
//! rejected, never migrated or rebuilt behind the user's back; the fix is
//! `graphgen cache clear`.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::CliError;
use crate::record::OutputRecord;

pub const FORMAT_VERSION: &str = "1";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheHeader {
    pub format_version: String,
    pub family: String,
    pub n: usize,
    pub k: usize,
    pub s: usize,
    pub min_degree: Option<usize>,
}

impl CacheHeader {
    pub fn new(family: &str, n: usize, k: usize, s: usize, min_degree: Option<usize>) -> Self {
        CacheHeader {
            format_version: FORMAT_VERSION.to_owned(),
            family: family.to_owned(),
            n,
            k,
            s,
            min_degree,
        }
    }

    fn file_name(&self) -> String {
        let mut name = format!("{}-n{}-k{}-s{}", self.family, self.n, self.k, self.s);
        if let Some(nu) = self.min_degree {
            name.push_str(&format!("-d{nu}"));
        }
        name.push_str(".json");
        name
    }
}

#[derive(Debug, Serialize, Deserialize)]
pub struct CacheFile {
    pub header: CacheHeader,
    pub record: OutputRecord,
}

/// Flag beats the `GRAPHGEN_CACHE_DIR` environment variable beats the
/// working-directory default.
pub fn resolve_dir(flag: Option<&Path>) -> PathBuf {
    if let Some(dir) = flag {
        return dir.to_owned();
    }
    if let Some(dir) = std::env::var_os("GRAPHGEN_CACHE_DIR") {
        return PathBuf::from(dir);
    }
    PathBuf::from(".graphgen-cache")
}

pub fn entry_path(dir: &Path, header: &CacheHeader) -> PathBuf {
    dir.join(header.file_name())
}

/// `Ok(None)` when the entry simply is not there yet.
pub fn load(path: &Path, expected: &CacheHeader) -> Result<Option<OutputRecord>, CliError> {
    let text = match fs::read_to_string(path) {
        Ok(text) => text,
        Err(err) if err.kind() == std::io::ErrorKind::NotFound => return Ok(None),
        Err(err) => return Err(CliError::Io(err)),
    };
    let file: CacheFile = serde_json::from_str(&text).map_err(|err| CliError::StaleCache {
        path: path.to_owned(),
        reason: err.to_string(),
    })?;
    if file.header != *expected {
        return Err(CliError::StaleCache {
            path: path.to_owned(),
            reason: format!(
                "header does not match the request (cache format {}, expected {})",
                file.header.format_version, expected.format_version
            ),
        });
    }
    Ok(Some(file.record))
}

pub fn store(path: &Path, header: &CacheHeader, record: &OutputRecord) -> Result<(), CliError> {
    let dir = path.parent().expect("entry paths always have a parent");
    fs::create_dir_all(dir)?;
    let file = CacheFile {
        header: header.clone(),
        record: record.clone(),
    };
    let mut text = serde_json::to_string_pretty(&file).expect("plain data serializes");
    text.push('\n');
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(text.as_bytes())?;
    tmp.persist(path).map_err(|err| CliError::Io(err.error))?;
    Ok(())
}

/// Cache entries in `dir`, sorted by file name. Missing directory reads as
/// empty. Any present but unreadable entry is an error, not a skip.
pub fn entries(dir: &Path) -> Result<Vec<(PathBuf, CacheHeader)>, CliError> {
    let mut paths = Vec::new();
    let reader = match fs::read_dir(dir) {
        Ok(reader) => reader,
        Err(err) if err.kind() == std::io::ErrorKind::NotFound => return Ok(Vec::new()),
        Err(err) => return Err(CliError::Io(err)),
    };
    for entry in reader {
        let path = entry?.path();
        if path.extension().is_some_and(|ext| ext == "json") {
            paths.push(path);
        }
    }
    paths.sort();
    let mut out = Vec::with_capacity(paths.len());
    for path in paths {
        let text = fs::read_to_string(&path)?;
        let file: CacheFile = serde_json::from_str(&text).map_err(|err| CliError::StaleCache {
            path: path.clone(),
            reason: err.to_string(),
        })?;
        if file.header.format_version != FORMAT_VERSION {
            return Err(CliError::StaleCache {
                path,
                reason: format!(
                    "cache format {}, this build reads {}",
                    file.header.format_version, FORMAT_VERSION
                ),
            });
        }
        out.push((path, file.header));
    }
    Ok(out)
}

/// Removes every `.json` entry, readable or not. Returns how many.
pub fn clear(dir: &Path) -> Result<usize, CliError> {
    let reader = match fs::read_dir(dir) {
        Ok(reader) => reader,
        Err(err) if err.kind() == std::io::ErrorKind::NotFound => return Ok(0),
        Err(err) => return Err(CliError::Io(err)),
    };
    let mut removed = 0;
    for entry in reader {
        let path = entry?.path();
        if path.extension().is_some_and(|ext| ext == "json") {
            fs::remove_file(&path)?;
            removed += 1;
        }
    }
    Ok(removed)
}
