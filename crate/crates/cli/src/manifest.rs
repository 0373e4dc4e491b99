use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::args::{Command, VERSION};
use crate::error::{CliError, CliResult};
use crate::files::{manifest_path, read_file, sha256_hex, write_atomic, Session};

pub const MANIFEST_VERSION: u32 = 1;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RunManifest {
    pub manifest_version: u32,
    pub tool: String,
    pub version: String,
    pub subcommand: String,
    pub seed: Option<u64>,
    /// Every flag, defaults included.
    pub params: Command,
    /// Values derived at run time, such as the ball radius.
    pub resolved: BTreeMap<String, Value>,
    /// sha256 of each input file.
    pub inputs: BTreeMap<String, String>,
    /// sha256 of each output file.
    pub outputs: BTreeMap<String, String>,
}

impl RunManifest {
    pub fn new(command: &Command, seed: Option<u64>, session: Session) -> Self {
        RunManifest {
            manifest_version: MANIFEST_VERSION,
            tool: "spectral-kcluster".to_string(),
            version: VERSION.to_string(),
            subcommand: command.name().to_string(),
            seed,
            params: command.clone(),
            resolved: session.resolved,
            inputs: session.inputs,
            outputs: session.outputs,
        }
    }

    pub fn write_next_to(&self, out: &Path) -> CliResult<()> {
        let mut text = serde_json::to_string_pretty(self).expect("manifest serializes");
        text.push('\n');
        write_atomic(&manifest_path(out), text.as_bytes())
    }

    pub fn load(path: &Path) -> CliResult<Self> {
        let bytes = read_file(path)?;
        serde_json::from_slice(&bytes)
            .map_err(|e| CliError::data(format!("{}: {e}", path.display())))
    }

    /// Fails if any recorded input changed since the manifest was written.
    pub fn check_inputs(&self) -> CliResult<()> {
        for (path, digest) in &self.inputs {
            let now = sha256_hex(&read_file(Path::new(path))?);
            if &now != digest {
                return Err(CliError::data(format!(
                    "input {path} changed since the recorded run"
                )));
            }
        }
        Ok(())
    }
}
