//! Run manifests: one JSON document per invocation recording the merged
//! parameter set, truncation/grid settings, tool version, wall-clock
//! duration, and per-point convergence outcomes. Data files reference their
//! manifest through the shared run identifier (which also prefixes the file
//! names).

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::Serialize;

use super::commands::CliError;

#[derive(Debug, Serialize)]
pub struct RunManifest {
    pub run_id: String,
    pub command: String,
    pub version: String,
    /// Merged parameter set after config resolution, keyed by config name.
    pub parameters: BTreeMap<String, serde_json::Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub truncation: Option<TruncationSettings>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub grid: Option<GridSettings>,
    pub duration_ms: u128,
    pub files: Vec<String>,
    pub points: Vec<PointOutcome>,
}

#[derive(Debug, Serialize)]
pub struct TruncationSettings {
    pub initial_dim: usize,
    pub growth_factor: f64,
    pub max_dim: usize,
    pub level_tol: f64,
}

impl From<&crate::spectra::TruncationSpec> for TruncationSettings {
    fn from(t: &crate::spectra::TruncationSpec) -> Self {
        TruncationSettings {
            initial_dim: t.initial_dim,
            growth_factor: t.growth_factor,
            max_dim: t.max_dim,
            level_tol: t.level_tol,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct GridSettings {
    pub half_width: f64,
    pub points: usize,
    pub stencil_order: String,
}

/// Convergence outcome of one sweep point (or of the single point of a
/// one-shot command).
#[derive(Debug, Serialize)]
pub struct PointOutcome {
    pub sweep_param: f64,
    pub converged: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub converged_dim: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_residual: Option<f64>,
    /// Set when the tunneling gap vanished and the Euclidean action was
    /// serialized as the literal `inf`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gap_zero: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

/// Deterministic run identifier: FNV-1a over the command name and the merged
/// parameter map (timing never enters, so reruns share the identifier).
pub fn run_id(command: &str, parameters: &BTreeMap<String, serde_json::Value>) -> String {
    let mut hash: u64 = 0xcbf29ce484222325;
    let mut feed = |bytes: &[u8]| {
        for &b in bytes {
            hash ^= b as u64;
            hash = hash.wrapping_mul(0x100000001b3);
        }
    };
    feed(command.as_bytes());
    for (k, v) in parameters {
        feed(b"|");
        feed(k.as_bytes());
        feed(b"=");
        feed(v.to_string().as_bytes());
    }
    format!("{hash:016x}")
}

impl RunManifest {
    pub fn write(&self, path: &Path) -> Result<(), CliError> {
        let json = serde_json::to_string_pretty(self)
            .map_err(|e| CliError::Io(std::io::Error::other(e)))?;
        std::fs::write(path, json + "\n").map_err(CliError::Io)
    }
}

/// File-name scheme shared by every command: `<prefix>.<kind>.csv` plus
/// `<prefix>.manifest.json`.
#[derive(Debug, Clone)]
pub struct OutputPaths {
    prefix: PathBuf,
}

impl OutputPaths {
    pub fn new(prefix: &str) -> Self {
        OutputPaths {
            prefix: PathBuf::from(prefix),
        }
    }

    pub fn data(&self, kind: &str) -> PathBuf {
        let mut name = self
            .prefix
            .file_name()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| "run".to_string());
        name.push('.');
        name.push_str(kind);
        name.push_str(".csv");
        self.prefix.with_file_name(name)
    }

    pub fn manifest(&self) -> PathBuf {
        let mut name = self
            .prefix
            .file_name()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| "run".to_string());
        name.push_str(".manifest.json");
        self.prefix.with_file_name(name)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn run_id_is_deterministic_and_parameter_sensitive() {
        let mut params = BTreeMap::new();
        params.insert("g".to_string(), serde_json::json!(1.0));
        let a = run_id("spectrum", &params);
        let b = run_id("spectrum", &params);
        assert_eq!(a, b);
        params.insert("g".to_string(), serde_json::json!(2.0));
        let c = run_id("spectrum", &params);
        assert_ne!(a, c);
    }

    #[test]
    fn output_paths_share_the_prefix() {
        let out = OutputPaths::new("/tmp/demo/run1");
        assert_eq!(
            out.data("levels"),
            PathBuf::from("/tmp/demo/run1.levels.csv")
        );
        assert_eq!(
            out.manifest(),
            PathBuf::from("/tmp/demo/run1.manifest.json")
        );
    }
}
