//! Flat `key = value` configuration files.
//!
//! Blank lines and lines starting with `#` are ignored. Keys are matched with
//! `-` and `_` treated alike, so `shots_global` and `shots-global` are the
//! same key. Command-line flags take precedence over file values.

use std::collections::BTreeMap;
use std::path::Path;
use std::str::FromStr;

use gme_core::noise::{NoiseModel, ReadoutError};

use crate::error::{LabError, Result};

#[derive(Debug, Clone, Default, PartialEq)]
pub struct KeyValues {
    entries: BTreeMap<String, String>,
}

fn normalize_key(key: &str) -> String {
    key.trim().to_ascii_lowercase().replace('_', "-")
}

impl KeyValues {
    pub fn parse(text: &str) -> Result<Self> {
        let mut entries = BTreeMap::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| LabError::config(format!("line {}: expected key = value", lineno + 1)))?;
            let key = normalize_key(key);
            if key.is_empty() {
                return Err(LabError::config(format!("line {}: empty key", lineno + 1)));
            }
            if entries.insert(key.clone(), value.trim().to_string()).is_some() {
                return Err(LabError::config(format!("line {}: duplicate key `{key}`", lineno + 1)));
            }
        }
        Ok(Self { entries })
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| LabError::config(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn raw(&self, key: &str) -> Option<&str> {
        self.entries.get(&normalize_key(key)).map(String::as_str)
    }

    pub fn get<T: FromStr>(&self, key: &str) -> Result<Option<T>>
    where
        T::Err: std::fmt::Display,
    {
        self.raw(key)
            .map(|v| v.parse::<T>().map_err(|e| LabError::config(format!("`{key}` = `{v}`: {e}"))))
            .transpose()
    }

    /// Keys not in `known`, for typo detection.
    pub fn unknown_keys<'a>(&'a self, known: &[&str]) -> Vec<&'a str> {
        let known: Vec<String> = known.iter().map(|k| normalize_key(k)).collect();
        self.entries.keys().filter(|k| !known.contains(k)).map(String::as_str).collect()
    }

    /// Flag value if given, else the file value, else `None`.
    pub fn resolve<T: FromStr>(&self, flag: Option<T>, key: &str) -> Result<Option<T>>
    where
        T::Err: std::fmt::Display,
    {
        match flag {
            Some(v) => Ok(Some(v)),
            None => self.get(key),
        }
    }
}

/// Parses a noise file.
///
/// ```text
/// depolarizing = 0.02
/// p01 = 0.015
/// p10 = 0.015
/// # or per qubit, as p01:p10 pairs:
/// readout = 0.01:0.02, 0.015:0.015, 0.02:0.01
/// ```
pub fn parse_noise(text: &str) -> Result<NoiseModel> {
    let kv = KeyValues::parse(text)?;
    let unknown = kv.unknown_keys(&["depolarizing", "p01", "p10", "readout"]);
    if !unknown.is_empty() {
        return Err(LabError::config(format!("unknown noise keys: {}", unknown.join(", "))));
    }
    let depolarizing = kv.get::<f64>("depolarizing")?.unwrap_or(0.0);
    let model = match kv.raw("readout") {
        Some(list) => {
            if kv.raw("p01").is_some() || kv.raw("p10").is_some() {
                return Err(LabError::config("give either `readout` or `p01`/`p10`, not both"));
            }
            let readout = list
                .split(',')
                .map(|pair| {
                    let (a, b) = pair
                        .trim()
                        .split_once(':')
                        .ok_or_else(|| LabError::config(format!("readout entry `{}` is not p01:p10", pair.trim())))?;
                    let parse = |s: &str| {
                        s.trim().parse::<f64>().map_err(|e| LabError::config(format!("readout entry `{s}`: {e}")))
                    };
                    Ok(ReadoutError { p01: parse(a)?, p10: parse(b)? })
                })
                .collect::<Result<Vec<_>>>()?;
            NoiseModel::per_qubit(depolarizing, readout)?
        }
        None => NoiseModel::uniform(
            depolarizing,
            kv.get::<f64>("p01")?.unwrap_or(0.0),
            kv.get::<f64>("p10")?.unwrap_or(0.0),
        )?,
    };
    Ok(model)
}

pub fn load_noise(path: &Path) -> Result<NoiseModel> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| LabError::config(format!("cannot read noise file {}: {e}", path.display())))?;
    parse_noise(&text)
}
