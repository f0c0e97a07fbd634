//! Command-line front end: configuration, rendering and the subcommands.

pub mod commands;
pub mod config;
pub mod render;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::commands::{CliError, Report};
use crate::config::{JobConfig, OutputFormat};

#[derive(Debug, Parser)]
#[command(name = "mixbraid", version, about = "Monodromy of mixed braid groups on abelian covers of the line")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub opts: Opts,
}

#[derive(Debug, Clone, Copy, Subcommand)]
pub enum Command {
    /// Gram matrix of the intersection form, with rank and signature.
    Gram,
    /// Matrix of a word under θ_ρ.
    Rep,
    /// Colored Burau matrix of a word.
    Burau,
    /// Genus, ramification at infinity and eigenspace data of the cover.
    Cover,
    /// Run the invariant checks; exit 1 if any fails.
    Verify,
    /// What the finiteness criterion says about the image.
    Analyze,
}

#[derive(Debug, Default, Args)]
pub struct Opts {
    /// Block sizes, e.g. 2,2.
    #[arg(long, global = true)]
    pub parts: Option<String>,
    /// Cyclic degrees, one per block, e.g. 3,5.
    #[arg(long, global = true)]
    pub degrees: Option<String>,
    /// Character exponents k_j, with ρ_j = ζ_{d_j}^{-k_j}.
    #[arg(long, global = true, conflicts_with = "all_rho")]
    pub rho: Option<String>,
    /// Every primed character.
    #[arg(long, global = true)]
    pub all_rho: bool,
    /// A single generator such as s1 or A1,2 (shorthand for --word).
    #[arg(long = "gen", global = true, conflicts_with = "word")]
    pub generator: Option<String>,
    /// Whitespace-separated letters, e.g. "s1 A1,2^-1 s3".
    #[arg(long, global = true)]
    pub word: Option<String>,
    /// Read the word as a raw B_n word.
    #[arg(long, global = true)]
    pub raw: bool,
    /// Reduced colored Burau.
    #[arg(long, global = true)]
    pub reduced: bool,
    #[arg(long, global = true, value_enum)]
    pub output: Option<OutputFormat>,
    /// Also print entries as decimals with this many digits.
    #[arg(long, global = true)]
    pub precision: Option<u32>,
    /// File of `key = value` lines with the same fields as the flags.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Extra `key=value` assignments, applied after the config file.
    #[arg(long = "set", global = true)]
    pub set: Vec<String>,
}

impl Opts {
    /// Config file, then `--set`, then explicit flags.
    pub fn to_config(&self) -> Result<JobConfig, CliError> {
        let usage = |e: &dyn std::fmt::Display| CliError::Usage(e.to_string());
        let mut cfg = JobConfig::default();
        if let Some(path) = &self.config {
            let text = std::fs::read_to_string(path).map_err(|e| usage(&format!("{}: {e}", path.display())))?;
            cfg.merge_text(&text).map_err(|e| usage(&e))?;
        }
        for kv in &self.set {
            let (k, v) = kv.split_once('=').ok_or_else(|| usage(&format!("--set expects key=value, got {kv}")))?;
            cfg.set(k, v).map_err(|e| usage(&e))?;
        }
        let flags: [(&str, Option<&String>); 4] = [
            ("parts", self.parts.as_ref()),
            ("degrees", self.degrees.as_ref()),
            ("rho", self.rho.as_ref()),
            ("word", self.word.as_ref().or(self.generator.as_ref())),
        ];
        for (k, v) in flags {
            if let Some(v) = v {
                cfg.set(k, v).map_err(|e| usage(&e))?;
            }
        }
        if self.all_rho {
            cfg.set("rho", "all").map_err(|e| usage(&e))?;
        }
        cfg.raw |= self.raw;
        cfg.reduced |= self.reduced;
        if let Some(o) = self.output {
            cfg.output = o;
        }
        if self.precision.is_some() {
            cfg.precision = self.precision;
        }
        Ok(cfg)
    }
}

pub fn run(command: Command, cfg: &JobConfig) -> Result<Report, CliError> {
    match command {
        Command::Gram => commands::cmd_gram(cfg),
        Command::Rep => commands::cmd_rep(cfg),
        Command::Burau => commands::cmd_burau(cfg),
        Command::Cover => commands::cmd_cover(cfg),
        Command::Verify => commands::cmd_verify(cfg),
        Command::Analyze => commands::cmd_analyze(cfg),
    }
}
