use std::collections::BTreeMap;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde_json::Value;
use sha2::{Digest, Sha256};
use tempfile::NamedTempFile;

use crate::error::{CliError, CliResult};

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// Writes through a temporary file in the target directory and renames it
/// into place.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> CliResult<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let fail = |e: std::io::Error| CliError::data(format!("{}: {e}", path.display()));
    let mut tmp = NamedTempFile::new_in(dir).map_err(fail)?;
    tmp.write_all(bytes).map_err(fail)?;
    tmp.as_file().sync_all().map_err(fail)?;
    tmp.persist(path).map_err(|e| fail(e.error))?;
    Ok(())
}

pub fn read_file(path: &Path) -> CliResult<Vec<u8>> {
    std::fs::read(path).map_err(|e| CliError::data(format!("{}: {e}", path.display())))
}

/// `{:.16e}`: 17 significant digits, lossless for `f64`.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

/// Inputs read, outputs written and parameters resolved during one run.
#[derive(Debug, Default)]
pub struct Session {
    pub inputs: BTreeMap<String, String>,
    pub outputs: BTreeMap<String, String>,
    pub resolved: BTreeMap<String, Value>,
}

impl Session {
    pub fn read(&mut self, path: &Path) -> CliResult<Vec<u8>> {
        let bytes = read_file(path)?;
        self.inputs.insert(path_key(path), sha256_hex(&bytes));
        Ok(bytes)
    }

    pub fn write(&mut self, path: &Path, bytes: &[u8]) -> CliResult<()> {
        write_atomic(path, bytes)?;
        self.outputs.insert(path_key(path), sha256_hex(bytes));
        Ok(())
    }

    pub fn resolve(&mut self, key: &str, value: impl Into<Value>) {
        self.resolved.insert(key.to_string(), value.into());
    }
}

pub fn path_key(path: &Path) -> String {
    path.to_string_lossy().into_owned()
}

pub fn manifest_path(out: &Path) -> PathBuf {
    let mut s = out.as_os_str().to_owned();
    s.push(".manifest.json");
    PathBuf::from(s)
}
