use std::path::Path;

use crate::backend::DEFAULT_BACKEND;
use crate::error::{Error, Result};
use crate::sim::DEFAULT_QUBIT_CAP;

/// Environment variable naming the config file.
pub const CONFIG_ENV: &str = "QSOLVER_CONFIG";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeedPolicy {
    /// Fresh seed per run from OS entropy (always echoed).
    Entropy,
    Fixed(u64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Verbosity {
    Quiet,
    Normal,
    Verbose,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliConfig {
    pub default_backend: String,
    pub seed: SeedPolicy,
    pub verbosity: Verbosity,
    pub jobs: usize,
    pub max_qubits: usize,
}

impl Default for CliConfig {
    fn default() -> Self {
        CliConfig {
            default_backend: DEFAULT_BACKEND.to_owned(),
            seed: SeedPolicy::Entropy,
            verbosity: Verbosity::Normal,
            jobs: std::thread::available_parallelism().map_or(1, |n| n.get()),
            max_qubits: DEFAULT_QUBIT_CAP,
        }
    }
}

impl CliConfig {
    /// Parses `key = value` lines. Blank lines and `#` comments are skipped.
    ///
    /// Keys: `backend`, `seed` (`entropy` or an integer), `verbosity`
    /// (`quiet`, `normal`, `verbose`), `jobs`, `max_qubits`.
    pub fn parse(text: &str) -> Result<Self> {
        let mut cfg = CliConfig::default();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .map(|(k, v)| (k.trim(), v.trim()))
                .ok_or_else(|| Error::validation("config", format!("line {}: expected key = value", i + 1)))?;
            let bad = |what: &str| Error::validation(key, format!("line {}: {what}", i + 1));
            match key {
                "backend" => cfg.default_backend = value.to_owned(),
                "seed" => {
                    cfg.seed = if value.eq_ignore_ascii_case("entropy") {
                        SeedPolicy::Entropy
                    } else {
                        SeedPolicy::Fixed(value.parse().map_err(|_| bad("expected 'entropy' or an integer"))?)
                    }
                }
                "verbosity" => {
                    cfg.verbosity = match value {
                        "quiet" => Verbosity::Quiet,
                        "normal" => Verbosity::Normal,
                        "verbose" => Verbosity::Verbose,
                        _ => return Err(bad("expected quiet, normal or verbose")),
                    }
                }
                "jobs" => {
                    cfg.jobs = value.parse().ok().filter(|&j| j > 0).ok_or_else(|| bad("expected a positive integer"))?
                }
                "max_qubits" => {
                    cfg.max_qubits = value.parse().ok().filter(|&j| j > 0).ok_or_else(|| bad("expected a positive integer"))?
                }
                other => return Err(Error::validation(other, format!("line {}: unknown key", i + 1))),
            }
        }
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    /// Reads the file named by [`CONFIG_ENV`], or returns defaults.
    pub fn from_env() -> Result<Self> {
        match std::env::var_os(CONFIG_ENV) {
            Some(p) => Self::load(Path::new(&p)),
            None => Ok(Self::default()),
        }
    }
}
