//! Output directory handling, CSV writing, and the run manifest.

use crate::config::{config_err, runtime_err, CliResult, ScenarioConfig};
use serde::Serialize;
use std::path::{Path, PathBuf};

/// Run manifest: enough to reproduce any result byte for byte.
#[derive(Debug, Serialize)]
pub struct Manifest<'a> {
    pub tool: &'static str,
    pub version: &'static str,
    pub subcommand: &'a str,
    pub seed: u64,
    pub threads: usize,
    pub config: &'a ScenarioConfig,
}

pub fn prepare_out_dir(out: &Path) -> CliResult<()> {
    std::fs::create_dir_all(out)
        .map_err(|e| config_err(format!("cannot create output directory {out:?}: {e}")))
}

pub fn write_text(out: &Path, name: &str, contents: &str) -> CliResult<PathBuf> {
    let path = out.join(name);
    std::fs::write(&path, contents)
        .map_err(|e| runtime_err(format!("cannot write {path:?}: {e}")))?;
    Ok(path)
}

pub fn write_manifest(out: &Path, manifest: &Manifest) -> CliResult<()> {
    let json = serde_json::to_string_pretty(manifest)
        .map_err(|e| runtime_err(format!("cannot serialize manifest: {e}")))?;
    write_text(out, "manifest.json", &(json + "\n"))?;
    Ok(())
}

/// Compact float formatting for CSV cells: shortest round-trip form, so no
/// information is lost and reruns are byte-identical.
pub fn num(x: f64) -> String {
    format!("{x}")
}

/// Fixed-precision helper for readability where full precision is noise.
pub fn fixed(x: f64, digits: usize) -> String {
    format!("{x:.digits$}")
}
