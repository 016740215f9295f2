use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rep::DEFAULT_CHARACTER_CAP;
use crate::verlinde::DEFAULT_WEYL_CAP;

/// Environment variable overriding the character cache location.
pub const CACHE_ENV: &str = "VERLINDE_CACHE";

pub const TOL_ROUNDING: &str = "rounding";
pub const TOL_TRACE: &str = "trace";
pub const TOL_INDEX: &str = "index";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Config {
    pub character_cap: usize,
    pub weyl_cap: usize,
    pub cache_path: Option<PathBuf>,
    pub float_tolerances: BTreeMap<String, f64>,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            character_cap: DEFAULT_CHARACTER_CAP,
            weyl_cap: DEFAULT_WEYL_CAP,
            cache_path: None,
            float_tolerances: [(TOL_ROUNDING, 1e-6), (TOL_TRACE, 1e-9), (TOL_INDEX, 1e-5)]
                .into_iter()
                .map(|(k, v)| (k.to_string(), v))
                .collect(),
        }
    }
}

impl Config {
    /// Parses a TOML file; keys missing from the file keep their defaults.
    pub fn from_toml(text: &str) -> Result<Self> {
        let mut cfg: Config = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        let defaults = Config::default().float_tolerances;
        for (k, v) in defaults {
            cfg.float_tolerances.entry(k).or_insert(v);
        }
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_toml(&std::fs::read_to_string(path)?)
    }

    pub fn validate(&self) -> Result<()> {
        if self.character_cap == 0 || self.weyl_cap == 0 {
            return Err(Error::Config("caps must be positive".into()));
        }
        for (k, &v) in &self.float_tolerances {
            if !(v > 0.0 && v < 1e-3) {
                return Err(Error::Config(format!("tolerance `{k}` = {v} is outside (0, 1e-3)")));
            }
        }
        Ok(())
    }

    pub fn tolerance(&self, name: &str) -> f64 {
        self.float_tolerances
            .get(name)
            .copied()
            .or_else(|| Config::default().float_tolerances.get(name).copied())
            .unwrap_or(1e-9)
    }

    /// The environment variable wins over the configured path; otherwise the
    /// per-user cache directory is used.
    pub fn resolve_cache_path(&self) -> Option<PathBuf> {
        if let Some(p) = std::env::var_os(CACHE_ENV) {
            return (!p.is_empty()).then(|| PathBuf::from(p));
        }
        if let Some(p) = &self.cache_path {
            return Some(p.clone());
        }
        let base = std::env::var_os("XDG_CACHE_HOME")
            .map(PathBuf::from)
            .or_else(|| std::env::var_os("HOME").map(|h| PathBuf::from(h).join(".cache")))?;
        Some(base.join("verlinde").join("characters.txt"))
    }
}
