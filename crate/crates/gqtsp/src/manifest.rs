//! Run manifests: `<output>.manifest.json` next to each written artifact.
//!
//! A manifest echoes the command, its resolved configuration and the seed,
//! so a run can be replayed. Wall-clock timings are left out unless asked
//! for, which keeps manifests byte-identical across repeated runs.

use std::path::{Path, PathBuf};
use std::time::Duration;

use serde::Serialize;

use crate::error::{CliError, Result};

#[derive(Clone, Debug, Serialize)]
pub struct Timings {
    pub elapsed_ms: u128,
}

#[derive(Clone, Debug, Serialize)]
pub struct RunManifest {
    pub format: &'static str,
    pub version: u32,
    pub command: String,
    pub tool_version: &'static str,
    pub seed: Option<u64>,
    pub config: serde_json::Value,
    pub outputs: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings: Option<Timings>,
}

impl RunManifest {
    pub fn new(command: &str, seed: Option<u64>, config: serde_json::Value) -> RunManifest {
        RunManifest {
            format: "gqtsp-manifest",
            version: 1,
            command: command.to_string(),
            tool_version: env!("CARGO_PKG_VERSION"),
            seed,
            config,
            outputs: Vec::new(),
            timings: None,
        }
    }

    pub fn with_elapsed(mut self, elapsed: Option<Duration>) -> RunManifest {
        self.timings = elapsed.map(|d| Timings { elapsed_ms: d.as_millis() });
        self
    }

    /// Writes `output` and its manifest.
    pub fn write_with(mut self, output: &Path, contents: &str) -> Result<PathBuf> {
        std::fs::write(output, contents).map_err(|e| CliError::io(output, e))?;
        self.outputs.push(output.display().to_string());
        let path = manifest_path(output);
        let mut text = serde_json::to_string_pretty(&self).expect("manifests always serialize");
        text.push('\n');
        std::fs::write(&path, text).map_err(|e| CliError::io(&path, e))?;
        Ok(path)
    }
}

pub fn manifest_path(output: &Path) -> PathBuf {
    let mut name = output.file_name().map(|n| n.to_os_string()).unwrap_or_default();
    name.push(".manifest.json");
    output.with_file_name(name)
}
