//! Job configuration: flags, `key = value` files and `--set` overrides all
//! fill the same [`JobConfig`].

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ConfigError {
    #[error("line {line}: expected `key = value`")]
    Syntax { line: usize },
    #[error("unknown key `{0}`")]
    UnknownKey(String),
    #[error("bad value for `{key}`: {value}")]
    BadValue { key: String, value: String },
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Text,
    Json,
}

impl fmt::Display for OutputFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OutputFormat::Text => "text",
            OutputFormat::Json => "json",
        })
    }
}

/// Which characters a job runs on.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RhoChoice {
    #[default]
    Unset,
    /// Every primed character.
    All,
    Exps(Vec<u32>),
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct JobConfig {
    pub parts: Vec<usize>,
    pub degrees: Vec<u32>,
    pub rho: RhoChoice,
    pub word: Option<String>,
    /// Interpret the word as a raw `B_n` word.
    pub raw: bool,
    /// Reduced colored Burau instead of the full one.
    pub reduced: bool,
    pub output: OutputFormat,
    /// Decimal digits for the optional floating-point rendering.
    pub precision: Option<u32>,
}

pub const KEYS: [&str; 8] = ["parts", "degrees", "rho", "word", "raw", "reduced", "output", "precision"];

pub fn parse_list<T: FromStr>(s: &str) -> Option<Vec<T>> {
    let s = s.trim();
    if s.is_empty() {
        return Some(Vec::new());
    }
    s.split(',').map(|x| x.trim().parse().ok()).collect()
}

fn join<T: ToString>(v: &[T]) -> String {
    v.iter().map(T::to_string).collect::<Vec<_>>().join(",")
}

impl JobConfig {
    /// Applies one `key = value` assignment.
    pub fn set(&mut self, key: &str, value: &str) -> Result<(), ConfigError> {
        let bad = || ConfigError::BadValue { key: key.to_string(), value: value.to_string() };
        let value = value.trim();
        match key.trim() {
            "parts" => self.parts = parse_list(value).ok_or_else(bad)?,
            "degrees" => self.degrees = parse_list(value).ok_or_else(bad)?,
            "rho" => {
                self.rho = if value == "all" { RhoChoice::All } else { RhoChoice::Exps(parse_list(value).ok_or_else(bad)?) }
            }
            "word" => self.word = Some(value.to_string()),
            "raw" => self.raw = value.parse().map_err(|_| bad())?,
            "reduced" => self.reduced = value.parse().map_err(|_| bad())?,
            "output" => {
                self.output = match value {
                    "json" => OutputFormat::Json,
                    "text" => OutputFormat::Text,
                    _ => return Err(bad()),
                }
            }
            "precision" => self.precision = Some(value.parse().map_err(|_| bad())?),
            other => return Err(ConfigError::UnknownKey(other.to_string())),
        }
        Ok(())
    }

    /// Parses a `key = value` file. Blank lines and `#` comments are skipped.
    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        let mut cfg = JobConfig::default();
        cfg.merge_text(text)?;
        Ok(cfg)
    }

    pub fn merge_text(&mut self, text: &str) -> Result<(), ConfigError> {
        for (idx, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line.split_once('=').ok_or(ConfigError::Syntax { line: idx + 1 })?;
            self.set(k, v)?;
        }
        Ok(())
    }

    /// Canonical `key = value` text: fixed key order, defaults omitted.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let mut line = |k: &str, v: String| out.push_str(&format!("{k} = {v}\n"));
        if !self.parts.is_empty() {
            line("parts", join(&self.parts));
        }
        if !self.degrees.is_empty() {
            line("degrees", join(&self.degrees));
        }
        match &self.rho {
            RhoChoice::Unset => {}
            RhoChoice::All => line("rho", "all".into()),
            RhoChoice::Exps(e) => line("rho", join(e)),
        }
        if let Some(w) = &self.word {
            line("word", w.clone());
        }
        if self.raw {
            line("raw", "true".into());
        }
        if self.reduced {
            line("reduced", "true".into());
        }
        if self.output != OutputFormat::Text {
            line("output", self.output.to_string());
        }
        if let Some(p) = self.precision {
            line("precision", p.to_string());
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print() {
        let cfg = JobConfig::parse("# worked example\nparts = 2, 2\ndegrees=3,5\nrho = 2,4\noutput = json\n").unwrap();
        assert_eq!(cfg.parts, vec![2, 2]);
        assert_eq!(cfg.rho, RhoChoice::Exps(vec![2, 4]));
        assert_eq!(cfg.to_text(), "parts = 2,2\ndegrees = 3,5\nrho = 2,4\noutput = json\n");
        assert_eq!(JobConfig::parse(&cfg.to_text()).unwrap(), cfg);
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(JobConfig::parse("parts 2"), Err(ConfigError::Syntax { line: 1 }));
        assert!(matches!(JobConfig::parse("colour = 2"), Err(ConfigError::UnknownKey(_))));
        assert!(matches!(JobConfig::parse("degrees = 3,x"), Err(ConfigError::BadValue { .. })));
        assert!(JobConfig::parse("rho = all").is_ok());
    }
}
