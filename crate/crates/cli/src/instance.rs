//! `key = value` instance files. `#` starts a comment.

use std::collections::BTreeMap;

use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, Default)]
pub struct InstanceFile {
    entries: BTreeMap<String, (usize, String)>,
}

impl InstanceFile {
    pub fn parse(text: &str) -> CliResult<Self> {
        let mut entries = BTreeMap::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| CliError::Instance { line: i + 1, msg: "expected `key = value`".into() })?;
            let k = k.trim().to_string();
            if k.is_empty() {
                return Err(CliError::Instance { line: i + 1, msg: "empty key".into() });
            }
            if entries.insert(k.clone(), (i + 1, v.trim().to_string())).is_some() {
                return Err(CliError::Instance { line: i + 1, msg: format!("duplicate key `{k}`") });
            }
        }
        Ok(InstanceFile { entries })
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries.get(key).map(|(_, v)| v.as_str())
    }

    pub fn line(&self, key: &str) -> usize {
        self.entries.get(key).map_or(0, |(l, _)| *l)
    }

    pub fn require(&self, key: &str) -> CliResult<&str> {
        self.get(key).ok_or_else(|| CliError::Instance { line: 0, msg: format!("missing key `{key}`") })
    }

    /// Rejects keys outside `known`.
    pub fn check_keys(&self, known: &[&str]) -> CliResult<()> {
        match self.entries.iter().find(|(k, _)| !known.contains(&k.as_str())) {
            Some((k, (line, _))) => Err(CliError::Instance { line: *line, msg: format!("unknown key `{k}`") }),
            None => Ok(()),
        }
    }

    pub fn entries(&self) -> impl Iterator<Item = (&str, &str)> {
        self.entries.iter().map(|(k, (_, v))| (k.as_str(), v.as_str()))
    }
}
