//! Plain-text key=value configuration with flag overrides. Zero-dependency
//! parsing keeps runs reproducible: every output embeds the fully resolved
//! configuration in its header.

use std::collections::BTreeMap;
use std::fmt::Write as _;

#[derive(Debug, Clone, Default)]
pub struct RunConfig {
    values: BTreeMap<String, String>,
}

#[derive(Debug)]
pub enum ConfigError {
    Parse(String),
    Missing(&'static str),
    Invalid(&'static str, String),
}

impl std::fmt::Display for ConfigError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ConfigError::Parse(line) => write!(f, "cannot parse config line: {line}"),
            ConfigError::Missing(key) => write!(f, "missing required option --{key}"),
            ConfigError::Invalid(key, v) => write!(f, "invalid value for --{key}: {v}"),
        }
    }
}

impl std::error::Error for ConfigError {}

impl RunConfig {
    /// Parse a config file body: `key=value` lines, `#` comments.
    pub fn parse_file(body: &str) -> Result<Self, ConfigError> {
        let mut cfg = RunConfig::default();
        for raw in body.lines() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| ConfigError::Parse(line.to_string()))?;
            cfg.values
                .insert(k.trim().to_string(), v.trim().to_string());
        }
        Ok(cfg)
    }

    /// Overlay `--key value` style arguments; returns leftover positionals.
    pub fn overlay_flags(&mut self, args: &[String]) -> Result<Vec<String>, ConfigError> {
        let mut rest = Vec::new();
        let mut i = 0;
        while i < args.len() {
            let a = &args[i];
            if let Some(name) = a.strip_prefix("--") {
                let key = name.replace('-', "_");
                if let Some(v) = args.get(i + 1) {
                    self.values.insert(key, v.clone());
                    i += 2;
                } else {
                    return Err(ConfigError::Invalid("", a.clone()));
                }
            } else {
                rest.push(a.clone());
                i += 1;
            }
        }
        Ok(rest)
    }

    pub fn set(&mut self, key: &str, value: &str) {
        self.values.insert(key.to_string(), value.to_string());
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.values.get(key).map(|s| s.as_str())
    }

    pub fn get_f64(&self, key: &'static str) -> Result<Option<f64>, ConfigError> {
        match self.values.get(key) {
            None => Ok(None),
            Some(v) => v
                .parse::<f64>()
                .map(Some)
                .map_err(|_| ConfigError::Invalid(key, v.clone())),
        }
    }

    pub fn get_usize(&self, key: &'static str) -> Result<Option<usize>, ConfigError> {
        match self.values.get(key) {
            None => Ok(None),
            Some(v) => v
                .parse::<usize>()
                .map(Some)
                .map_err(|_| ConfigError::Invalid(key, v.clone())),
        }
    }

    pub fn get_u64(&self, key: &'static str) -> Result<Option<u64>, ConfigError> {
        match self.values.get(key) {
            None => Ok(None),
            Some(v) => v
                .parse::<u64>()
                .map(Some)
                .map_err(|_| ConfigError::Invalid(key, v.clone())),
        }
    }

    pub fn require_usize(&self, key: &'static str) -> Result<usize, ConfigError> {
        self.get_usize(key)?.ok_or(ConfigError::Missing(key))
    }

    pub fn require_f64(&self, key: &'static str) -> Result<f64, ConfigError> {
        self.get_f64(key)?.ok_or(ConfigError::Missing(key))
    }

    /// Sorted single-line rendering for output headers.
    pub fn resolved(&self) -> String {
        let mut out = String::new();
        for (i, (k, v)) in self.values.iter().enumerate() {
            if i > 0 {
                out.push(' ');
            }
            let _ = write!(out, "{k}={v}");
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_overlay_and_resolve() {
        let mut cfg = RunConfig::parse_file("# comment\nn=2\nq=2.0\n\nseed=7\n").unwrap();
        let args: Vec<String> = ["--seed", "9", "--beta-multiple", "1.2"]
            .iter()
            .map(|s| s.to_string())
            .collect();
        cfg.overlay_flags(&args).unwrap();
        assert_eq!(cfg.get("seed"), Some("9"));
        assert_eq!(cfg.get("beta_multiple"), Some("1.2"));
        assert_eq!(cfg.resolved(), "beta_multiple=1.2 n=2 q=2.0 seed=9");
        assert!(RunConfig::parse_file("nonsense line").is_err());
    }
}
