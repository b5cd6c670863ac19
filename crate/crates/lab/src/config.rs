//! Flat key-value run configuration. A file holds TOML top-level keys; the
//! reserved keys `command`, `out`, `threads`, `seed` and `format` map to
//! fields and everything else is a subcommand parameter.

use std::collections::{BTreeMap, BTreeSet};
use std::path::PathBuf;

use clap::ValueEnum;
use serde::{Deserialize, Serialize};
use toml::Value;

use crate::error::{LabError, LabResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    Bscan,
    Discrepancy,
    Weyl,
    Dynamics,
    Cantor,
    Phitilde,
    Deltaeps,
    Topdemo,
}

impl Command {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::Bscan => "bscan",
            Self::Discrepancy => "discrepancy",
            Self::Weyl => "weyl",
            Self::Dynamics => "dynamics",
            Self::Cantor => "cantor",
            Self::Phitilde => "phitilde",
            Self::Deltaeps => "deltaeps",
            Self::Topdemo => "topdemo",
        }
    }

    fn parse(s: &str) -> Option<Self> {
        <Self as ValueEnum>::from_str(s, true).ok()
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

impl Format {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::Csv => "csv",
            Self::Json => "json",
        }
    }
}

pub const RESERVED: [&str; 5] = ["command", "out", "threads", "seed", "format"];

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub out: PathBuf,
    pub threads: Option<usize>,
    pub seed: u64,
    pub format: Format,
    pub params: BTreeMap<String, Value>,
}

/// Fields that may come from a file, before command-line overrides.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct PartialConfig {
    pub command: Option<Command>,
    pub out: Option<PathBuf>,
    pub threads: Option<usize>,
    pub seed: Option<u64>,
    pub format: Option<Format>,
    pub params: BTreeMap<String, Value>,
}

fn as_str<'a>(key: &str, v: &'a Value) -> LabResult<&'a str> {
    v.as_str().ok_or_else(|| LabError::Config(format!("`{key}` must be a string")))
}

fn as_count(key: &str, v: &Value) -> LabResult<u64> {
    match v.as_integer() {
        Some(i) if i >= 0 => Ok(i as u64),
        _ => Err(LabError::Config(format!("`{key}` must be a nonnegative integer"))),
    }
}

impl PartialConfig {
    pub fn from_toml_str(text: &str) -> LabResult<Self> {
        let table: toml::Table = text.parse().map_err(LabError::config)?;
        let mut out = Self::default();
        for (key, value) in table {
            match key.as_str() {
                "command" => {
                    let s = as_str(&key, &value)?;
                    out.command = Some(Command::parse(s).ok_or_else(|| LabError::Config(format!("unknown command `{s}`")))?);
                }
                "out" => out.out = Some(PathBuf::from(as_str(&key, &value)?)),
                "threads" => out.threads = Some(as_count(&key, &value)? as usize),
                "seed" => out.seed = Some(as_count(&key, &value)?),
                "format" => {
                    let s = as_str(&key, &value)?;
                    out.format = Some(
                        <Format as ValueEnum>::from_str(s, true).map_err(|_| LabError::Config(format!("unknown format `{s}`")))?,
                    );
                }
                _ => {
                    if value.is_table() {
                        return Err(LabError::Config(format!("`{key}`: nested tables are not allowed, the config is flat")));
                    }
                    out.params.insert(key, value);
                }
            }
        }
        Ok(out)
    }
}

/// Parses the right-hand side of `--set key=value` as a TOML value, falling
/// back to a bare string.
pub fn parse_assignment(s: &str) -> LabResult<(String, Value)> {
    let (key, raw) = s
        .split_once('=')
        .ok_or_else(|| LabError::Config(format!("expected KEY=VALUE, got `{s}`")))?;
    let key = key.trim().to_string();
    if key.is_empty() || RESERVED.contains(&key.as_str()) {
        return Err(LabError::Config(format!("`{key}` cannot be set with --set")));
    }
    let raw = raw.trim();
    let value = format!("v = {raw}")
        .parse::<toml::Table>()
        .ok()
        .and_then(|mut t| t.remove("v"))
        .unwrap_or_else(|| Value::String(raw.to_string()));
    Ok((key, value))
}

impl RunConfig {
    pub fn new(command: Command) -> Self {
        Self {
            command,
            out: PathBuf::from("floquet-out"),
            threads: None,
            seed: 0,
            format: Format::Csv,
            params: BTreeMap::new(),
        }
    }

    pub fn from_toml_str(text: &str) -> LabResult<Self> {
        let p = PartialConfig::from_toml_str(text)?;
        let command = p.command.ok_or_else(|| LabError::Config("config has no `command`".into()))?;
        let mut cfg = Self::new(command);
        cfg.apply(p);
        Ok(cfg)
    }

    pub fn apply(&mut self, p: PartialConfig) {
        if let Some(c) = p.command {
            self.command = c;
        }
        if let Some(o) = p.out {
            self.out = o;
        }
        if p.threads.is_some() {
            self.threads = p.threads;
        }
        if let Some(s) = p.seed {
            self.seed = s;
        }
        if let Some(f) = p.format {
            self.format = f;
        }
        self.params.extend(p.params);
    }

    /// Flat TOML echo; parses back to an equal config.
    pub fn to_toml_string(&self) -> String {
        let mut t = toml::Table::new();
        t.insert("command".into(), Value::String(self.command.as_str().into()));
        t.insert("out".into(), Value::String(self.out.to_string_lossy().into_owned()));
        if let Some(n) = self.threads {
            t.insert("threads".into(), Value::Integer(n as i64));
        }
        t.insert("seed".into(), Value::Integer(self.seed as i64));
        t.insert("format".into(), Value::String(self.format.as_str().into()));
        for (k, v) in &self.params {
            t.insert(k.clone(), v.clone());
        }
        toml::to_string(&t).expect("flat table serialises")
    }

    pub fn params(&self) -> Params {
        Params {
            map: self.params.clone(),
            used: BTreeSet::new(),
        }
    }
}

/// Typed access to subcommand parameters. [`Params::finish`] rejects keys
/// that no accessor asked for.
pub struct Params {
    map: BTreeMap<String, Value>,
    used: BTreeSet<String>,
}

fn bad(key: &str, what: &str) -> LabError {
    LabError::Config(format!("`{key}` must be {what}"))
}

impl Params {
    pub fn raw(&mut self, key: &str) -> Option<Value> {
        self.used.insert(key.to_string());
        self.map.get(key).cloned()
    }

    pub fn f64_or(&mut self, key: &str, default: f64) -> LabResult<f64> {
        match self.raw(key) {
            None => Ok(default),
            Some(v) => value_f64(&v).ok_or_else(|| bad(key, "a number")),
        }
    }

    pub fn usize_or(&mut self, key: &str, default: usize) -> LabResult<usize> {
        match self.raw(key) {
            None => Ok(default),
            Some(v) => value_usize(&v).ok_or_else(|| bad(key, "a nonnegative integer")),
        }
    }

    pub fn bool_or(&mut self, key: &str, default: bool) -> LabResult<bool> {
        match self.raw(key) {
            None => Ok(default),
            Some(v) => v.as_bool().ok_or_else(|| bad(key, "true or false")),
        }
    }

    pub fn str_or(&mut self, key: &str, default: &str) -> LabResult<String> {
        match self.raw(key) {
            None => Ok(default.to_string()),
            Some(v) => v.as_str().map(str::to_string).ok_or_else(|| bad(key, "a string")),
        }
    }

    pub fn f64_list_or(&mut self, key: &str, default: &[f64]) -> LabResult<Vec<f64>> {
        match self.raw(key) {
            None => Ok(default.to_vec()),
            Some(Value::Array(a)) => a.iter().map(|v| value_f64(v).ok_or_else(|| bad(key, "a list of numbers"))).collect(),
            Some(v) => value_f64(&v).map(|x| vec![x]).ok_or_else(|| bad(key, "a number or a list of numbers")),
        }
    }

    pub fn usize_list_or(&mut self, key: &str, default: &[usize]) -> LabResult<Vec<usize>> {
        match self.raw(key) {
            None => Ok(default.to_vec()),
            Some(Value::Array(a)) => a
                .iter()
                .map(|v| value_usize(v).ok_or_else(|| bad(key, "a list of nonnegative integers")))
                .collect(),
            Some(_) => Err(bad(key, "a list of nonnegative integers")),
        }
    }

    pub fn pairs_or(&mut self, key: &str, default: &[(usize, usize)]) -> LabResult<Vec<(usize, usize)>> {
        match self.raw(key) {
            None => Ok(default.to_vec()),
            Some(Value::Array(a)) => a
                .iter()
                .map(|v| match v.as_array().map(|p| p.iter().map(value_usize).collect::<Vec<_>>()) {
                    Some(p) if p.len() == 2 && p.iter().all(Option::is_some) => Ok((p[0].unwrap(), p[1].unwrap())),
                    _ => Err(bad(key, "a list of [k, l] index pairs")),
                })
                .collect(),
            Some(_) => Err(bad(key, "a list of [k, l] index pairs")),
        }
    }

    pub fn finish(self) -> LabResult<()> {
        let unknown: Vec<&String> = self.map.keys().filter(|k| !self.used.contains(*k)).collect();
        if unknown.is_empty() {
            Ok(())
        } else {
            Err(LabError::Config(format!(
                "unknown parameter(s): {}",
                unknown.iter().map(|s| s.as_str()).collect::<Vec<_>>().join(", ")
            )))
        }
    }
}

fn value_f64(v: &Value) -> Option<f64> {
    match v {
        Value::Float(x) => Some(*x),
        Value::Integer(i) => Some(*i as f64),
        _ => None,
    }
}

fn value_usize(v: &Value) -> Option<usize> {
    v.as_integer().filter(|&i| i >= 0).map(|i| i as usize)
}
