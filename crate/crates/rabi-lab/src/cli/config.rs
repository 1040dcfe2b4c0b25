//! Plain key=value configuration files with CLI-flag precedence.
//!
//! Precedence: CLI flag > config file > built-in default. Unknown keys are
//! errors so typos cannot silently fall back to defaults. When no `--config`
//! flag is given, the `RABI_LAB_CONFIG` environment variable supplies a
//! fallback path.

use std::collections::BTreeMap;
use std::path::Path;
use std::str::FromStr;

use super::commands::CliError;

pub const ENV_CONFIG: &str = "RABI_LAB_CONFIG";

const KNOWN_KEYS: &[&str] = &[
    "omega_a",
    "omega_c",
    "g",
    "hbar",
    "a2_coeff",
    "omega_unit",
    "levels",
    "model",
    "mode",
    "g_start",
    "g_end",
    "steps",
    "schedule",
    "initial_dim",
    "growth_factor",
    "max_dim",
    "level_tol",
    "c_dw",
    "z_real",
    "z_imag",
    "grid_m",
    "grid_l",
    "stencil_order",
    "jobs",
    "out",
    "beta",
    "beta_growth",
    "rel_tol",
    "susy_tol",
];

/// Parsed config file plus lookup helpers implementing the precedence rule.
#[derive(Debug, Default)]
pub struct Config {
    values: BTreeMap<String, String>,
}

impl Config {
    /// Load from an explicit path, the environment fallback, or empty.
    pub fn load(explicit: Option<&Path>) -> Result<Self, CliError> {
        let path = match explicit {
            Some(p) => Some(p.to_path_buf()),
            None => std::env::var_os(ENV_CONFIG).map(Into::into),
        };
        match path {
            Some(p) => Self::from_file(&p),
            None => Ok(Config::default()),
        }
    }

    pub fn from_file(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| {
            CliError::Usage(format!("cannot read config file {}: {e}", path.display()))
        })?;
        Self::from_str_contents(&text)
    }

    pub fn from_str_contents(text: &str) -> Result<Self, CliError> {
        let mut values = BTreeMap::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(CliError::Usage(format!(
                    "config line {} is not key=value: '{raw}'",
                    lineno + 1
                )));
            };
            let key = key.trim().to_string();
            if !KNOWN_KEYS.contains(&key.as_str()) {
                return Err(CliError::Usage(format!(
                    "unknown config key '{key}' on line {}",
                    lineno + 1
                )));
            }
            values.insert(key, value.trim().to_string());
        }
        Ok(Config { values })
    }

    /// flag > file > default.
    pub fn resolve<T: FromStr + Copy>(
        &self,
        flag: Option<T>,
        key: &str,
        default: T,
    ) -> Result<T, CliError> {
        self.resolve_opt(flag, key)?.map_or(Ok(default), Ok)
    }

    /// flag > file > None.
    pub fn resolve_opt<T: FromStr>(
        &self,
        flag: Option<T>,
        key: &str,
    ) -> Result<Option<T>, CliError> {
        if let Some(v) = flag {
            return Ok(Some(v));
        }
        match self.values.get(key) {
            Some(raw) => raw.parse::<T>().map(Some).map_err(|_| {
                CliError::Usage(format!("config key '{key}' has unparseable value '{raw}'"))
            }),
            None => Ok(None),
        }
    }

    /// flag > file, missing is a usage error naming both spellings.
    pub fn resolve_required<T: FromStr>(&self, flag: Option<T>, key: &str) -> Result<T, CliError> {
        self.resolve_opt(flag, key)?.ok_or_else(|| {
            CliError::Usage(format!(
                "missing required parameter '{key}' (pass --{} or set {key}= in the config)",
                key.replace('_', "-")
            ))
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_prioritizes() {
        let cfg = Config::from_str_contents("omega_a = 0.5\n# comment\n\nomega_c=1.0\n").unwrap();
        assert_eq!(cfg.resolve_required::<f64>(None, "omega_a").unwrap(), 0.5);
        // CLI flag wins.
        assert_eq!(
            cfg.resolve_required::<f64>(Some(2.0), "omega_a").unwrap(),
            2.0
        );
        // Default applies when absent everywhere.
        assert_eq!(cfg.resolve::<f64>(None, "hbar", 1.0).unwrap(), 1.0);
    }

    #[test]
    fn unknown_key_is_an_error() {
        let err = Config::from_str_contents("omega_q=1\n").unwrap_err();
        assert!(format!("{err}").contains("omega_q"));
    }

    #[test]
    fn missing_required_names_both_spellings() {
        let cfg = Config::default();
        let err = cfg.resolve_required::<f64>(None, "omega_c").unwrap_err();
        let msg = format!("{err}");
        assert!(
            msg.contains("--omega-c") && msg.contains("omega_c"),
            "{msg}"
        );
    }

    #[test]
    fn malformed_lines_are_errors() {
        assert!(Config::from_str_contents("omega_a 0.5").is_err());
        assert!(Config::from_str_contents("omega_a=abc")
            .unwrap()
            .resolve_opt::<f64>(None, "omega_a")
            .is_err());
    }
}
