//! Flat `key = value` configuration files.
//!
//! Blank lines and lines starting with `#` are ignored. Every key must be
//! read by the experiment; leftovers are reported by [`Config::finish`].
//! Keys filled in by [`Config::with_default`] are exempt, so a file may
//! switch `family` without tripping over the stock family's keys.

use std::cell::RefCell;
use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;
use std::str::FromStr;

use crate::error::{CliError, Result};

#[derive(Debug, Default, Clone)]
pub struct Config {
    values: BTreeMap<String, String>,
    used: RefCell<BTreeSet<String>>,
    defaulted: BTreeSet<String>,
}

impl Config {
    pub fn parse(text: &str) -> Result<Self> {
        let mut values = BTreeMap::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let bad = |reason: &str| CliError::Config {
                line: i + 1,
                reason: reason.to_string(),
            };
            let (k, v) = line.split_once('=').ok_or_else(|| bad("expected key = value"))?;
            let (k, v) = (k.trim(), v.trim());
            if k.is_empty() {
                return Err(bad("empty key"));
            }
            if values.insert(k.to_string(), v.to_string()).is_some() {
                return Err(bad(&format!("duplicate key `{k}`")));
            }
        }
        Ok(Self {
            values,
            used: RefCell::new(BTreeSet::new()),
            defaulted: BTreeSet::new(),
        })
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    /// Sets `key` unless the file already did.
    pub fn with_default(mut self, key: &str, value: &str) -> Self {
        if !self.values.contains_key(key) {
            self.values.insert(key.to_string(), value.to_string());
            self.defaulted.insert(key.to_string());
        }
        self
    }

    pub fn raw(&self, key: &str) -> Option<&str> {
        self.used.borrow_mut().insert(key.to_string());
        self.values.get(key).map(String::as_str)
    }

    pub fn opt<T: FromStr>(&self, key: &str) -> Result<Option<T>>
    where
        T::Err: std::fmt::Display,
    {
        match self.raw(key) {
            None => Ok(None),
            Some(v) => v.parse().map(Some).map_err(|e: T::Err| CliError::ConfigValue {
                key: key.to_string(),
                reason: format!("cannot parse `{v}`: {e}"),
            }),
        }
    }

    pub fn get<T: FromStr>(&self, key: &str, default: T) -> Result<T>
    where
        T::Err: std::fmt::Display,
    {
        Ok(self.opt(key)?.unwrap_or(default))
    }

    pub fn require<T: FromStr>(&self, key: &str) -> Result<T>
    where
        T::Err: std::fmt::Display,
    {
        self.opt(key)?.ok_or_else(|| CliError::ConfigValue {
            key: key.to_string(),
            reason: "missing".into(),
        })
    }

    /// Fails on user-supplied keys nobody asked for.
    pub fn finish(&self) -> Result<()> {
        let used = self.used.borrow();
        match self
            .values
            .keys()
            .find(|k| !used.contains(*k) && !self.defaulted.contains(*k))
        {
            Some(k) => Err(CliError::ConfigValue {
                key: k.clone(),
                reason: "unknown key".into(),
            }),
            None => Ok(()),
        }
    }
}
