// Copyright 2026 The aqo-recall Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

//! Run configuration: defaults, then a JSON config file, then command-line
//! flags. The resolved [`RunConfig`] is what gets echoed next to the
//! results, and feeding that echo back through [`parse_config`] reproduces it.

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use aqo_core::anneal::{DEFAULT_DT, DENSE_QUBIT_CAP, STATE_QUBIT_CAP};
use aqo_core::hopfield::{LearningRule, MemorySet, UpdateMode};
use aqo_core::lab::{Protocol, DEFAULT_ENSEMBLE_SIZE, DEFAULT_THRESHOLD};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, Result};
use crate::memfile::{load_memories, parse_pattern};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    Spectrum,
    Recall,
    Classical,
    BiasSweep,
    AnnealSweep,
    Figures,
}

impl Command {
    /// Commands that operate on one instance and take scalar parameters.
    fn is_single(self) -> bool {
        matches!(self, Self::Spectrum | Self::Recall | Self::Classical)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Rule {
    Hebb,
    Storkey,
    Projection,
}

impl From<Rule> for LearningRule {
    fn from(rule: Rule) -> Self {
        match rule {
            Rule::Hebb => Self::Hebb,
            Rule::Storkey => Self::Storkey,
            Rule::Projection => Self::Projection,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum ProtocolArg {
    Exact,
    Noisy,
    Failure1,
    Failure2,
}

impl From<ProtocolArg> for Protocol {
    fn from(p: ProtocolArg) -> Self {
        match p {
            ProtocolArg::Exact => Self::Exact,
            ProtocolArg::Noisy => Self::Noisy,
            ProtocolArg::Failure1 => Self::Failure1,
            ProtocolArg::Failure2 => Self::Failure2,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum ModeArg {
    Sync,
    Async,
}

impl From<ModeArg> for UpdateMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Sync => Self::Synchronous,
            ModeArg::Async => Self::Asynchronous,
        }
    }
}

/// Figure identifiers, in caption order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum FigureId {
    F1,
    F2,
    F3,
    F4,
    F5,
    F6,
    F7,
    F8,
    F9,
    F10,
}

impl FigureId {
    pub fn name(self) -> &'static str {
        match self {
            Self::F1 => "f1",
            Self::F2 => "f2",
            Self::F3 => "f3",
            Self::F4 => "f4",
            Self::F5 => "f5",
            Self::F6 => "f6",
            Self::F7 => "f7",
            Self::F8 => "f8",
            Self::F9 => "f9",
            Self::F10 => "f10",
        }
    }

    /// Protocol of the ensemble behind the figure, if it has one.
    pub fn protocol(self) -> Option<ProtocolArg> {
        match self {
            Self::F6 | Self::F10 => Some(ProtocolArg::Exact),
            Self::F7 => Some(ProtocolArg::Noisy),
            Self::F8 => Some(ProtocolArg::Failure1),
            Self::F9 => Some(ProtocolArg::Failure2),
            _ => None,
        }
    }

    /// Default number of memories for the single-instance bias curves.
    pub fn curve_p(self) -> Option<usize> {
        match self {
            Self::F3 => Some(1),
            Self::F4 => Some(2),
            Self::F5 => Some(3),
            _ => None,
        }
    }

    fn default_n(self) -> usize {
        match self {
            Self::F1 | Self::F2 | Self::F3 | Self::F4 | Self::F5 => 4,
            _ => 5,
        }
    }
}

/// Partially specified settings, as read from a config file or flags.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize, Args)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct Settings {
    /// Ignored inside config files; present so an echo parses back.
    #[arg(skip)]
    pub command: Option<Command>,
    /// Number of neurons.
    #[arg(long)]
    pub n: Option<usize>,
    /// Number(s) of stored memories, comma separated.
    #[arg(long, value_delimiter = ',')]
    #[serde(default, deserialize_with = "one_or_many")]
    pub p: Option<Vec<usize>>,
    /// Learning rule(s), comma separated.
    #[arg(long, value_enum, value_delimiter = ',')]
    #[serde(default, deserialize_with = "one_or_many")]
    pub rule: Option<Vec<Rule>>,
    /// Bias scale(s), comma separated.
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    #[serde(default, deserialize_with = "one_or_many")]
    pub gamma: Option<Vec<f64>>,
    /// Annealing time(s), comma separated.
    #[arg(long = "T", value_delimiter = ',', allow_negative_numbers = true)]
    #[serde(rename = "T")]
    #[serde(default, deserialize_with = "one_or_many")]
    pub anneal_time: Option<Vec<f64>>,
    /// Magnus time step.
    #[arg(long, allow_negative_numbers = true)]
    pub dt: Option<f64>,
    /// Instances per ensemble cell.
    #[arg(long = "N")]
    #[serde(rename = "N")]
    pub ensemble_size: Option<usize>,
    /// Success threshold on the target probability.
    #[arg(long, allow_negative_numbers = true)]
    pub x: Option<f64>,
    /// Master seed.
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long, value_enum)]
    pub protocol: Option<ProtocolArg>,
    /// Memory file, one pattern per line.
    #[arg(long)]
    pub memories: Option<PathBuf>,
    /// Input key, e.g. "+1,-1,+1,-1".
    #[arg(long, allow_hyphen_values = true)]
    pub input: Option<String>,
    /// Output directory.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Spectrum samples including both endpoints.
    #[arg(long)]
    pub samples: Option<usize>,
    #[arg(long, value_enum)]
    pub figure: Option<FigureId>,
    /// Sweep cap for the classical dynamics.
    #[arg(long)]
    pub max_sweeps: Option<usize>,
    /// Classical update mode.
    #[arg(long, value_enum)]
    pub mode: Option<ModeArg>,
}

impl Settings {
    /// Fields set in `self` win over `base`.
    fn over(self, base: Settings) -> Settings {
        Settings {
            command: self.command.or(base.command),
            n: self.n.or(base.n),
            p: self.p.or(base.p),
            rule: self.rule.or(base.rule),
            gamma: self.gamma.or(base.gamma),
            anneal_time: self.anneal_time.or(base.anneal_time),
            dt: self.dt.or(base.dt),
            ensemble_size: self.ensemble_size.or(base.ensemble_size),
            x: self.x.or(base.x),
            seed: self.seed.or(base.seed),
            protocol: self.protocol.or(base.protocol),
            memories: self.memories.or(base.memories),
            input: self.input.or(base.input),
            out: self.out.or(base.out),
            samples: self.samples.or(base.samples),
            figure: self.figure.or(base.figure),
            max_sweeps: self.max_sweeps.or(base.max_sweeps),
            mode: self.mode.or(base.mode),
        }
    }
}

#[derive(Debug, Clone, Args)]
struct CommandArgs {
    /// JSON config file; flags override its values.
    #[arg(long)]
    config: Option<PathBuf>,
    #[command(flatten)]
    settings: Settings,
}

#[derive(Debug, Subcommand)]
enum CliCommand {
    /// Instantaneous spectrum along the anneal.
    Spectrum(CommandArgs),
    /// Anneal one instance and score the recall.
    Recall(CommandArgs),
    /// Classical threshold dynamics from the input key.
    Classical(CommandArgs),
    /// Ensemble success over a bias grid.
    BiasSweep(CommandArgs),
    /// Ensemble success over annealing times.
    AnnealSweep(CommandArgs),
    /// Run the experiment behind a figure and write its plot data.
    Figures(CommandArgs),
}

#[derive(Debug, Parser)]
#[command(
    name = "aqo-recall",
    version,
    about = "Associative memory recall by simulated adiabatic quantum optimization"
)]
struct Cli {
    #[command(subcommand)]
    command: CliCommand,
}

/// Fully resolved configuration of one run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct RunConfig {
    pub command: Command,
    pub n: usize,
    pub p: Vec<usize>,
    pub rule: Vec<Rule>,
    pub gamma: Vec<f64>,
    #[serde(rename = "T")]
    pub anneal_time: Vec<f64>,
    pub dt: f64,
    #[serde(rename = "N")]
    pub ensemble_size: usize,
    pub x: f64,
    pub seed: u64,
    pub protocol: ProtocolArg,
    pub memories: Option<PathBuf>,
    pub input: Option<String>,
    pub out: PathBuf,
    pub samples: usize,
    pub figure: Option<FigureId>,
    pub max_sweeps: usize,
    pub mode: ModeArg,
}

pub const DEFAULT_OUT: &str = "aqo-out";
pub const DEFAULT_SAMPLES: usize = 201;
pub const DEFAULT_MAX_SWEEPS: usize = 100;
pub const DEFAULT_SEED: u64 = 1;
pub const DEFAULT_GAMMA: f64 = 0.5;
pub const DEFAULT_ANNEAL_TIME: f64 = 1000.0;
/// Annealing times of the convergence study.
pub const DEFAULT_TIME_GRID: [f64; 7] = [10.0, 20.0, 50.0, 100.0, 500.0, 1000.0, 5000.0];

/// `0, 0.05, ..., 1`.
pub fn default_gamma_grid() -> Vec<f64> {
    (0..=20).map(|k| k as f64 / 20.0).collect()
}

#[derive(Deserialize)]
#[serde(untagged)]
enum OneOrMany<T> {
    One(T),
    Many(Vec<T>),
}

/// Lets config files write `"T": 1000` as well as `"T": [500, 1000]`.
fn one_or_many<'de, D, T>(de: D) -> std::result::Result<Option<Vec<T>>, D::Error>
where
    D: serde::Deserializer<'de>,
    T: Deserialize<'de>,
{
    Ok(Option::<OneOrMany<T>>::deserialize(de)?.map(|v| match v {
        OneOrMany::One(x) => vec![x],
        OneOrMany::Many(xs) => xs,
    }))
}

fn read_settings(path: &Path) -> Result<Settings> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    let de = &mut serde_json::Deserializer::from_str(&text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let key = e.path().to_string();
        CliError::Usage(format!(
            "config file {}: key `{key}`: {}",
            path.display(),
            e.inner()
        ))
    })
}

/// Parses `argv` (program name first) into a resolved, validated config.
pub fn parse_config<I, T>(argv: I) -> Result<RunConfig>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = Cli::try_parse_from(argv).map_err(CliError::Clap)?;
    let (command, args) = match cli.command {
        CliCommand::Spectrum(a) => (Command::Spectrum, a),
        CliCommand::Recall(a) => (Command::Recall, a),
        CliCommand::Classical(a) => (Command::Classical, a),
        CliCommand::BiasSweep(a) => (Command::BiasSweep, a),
        CliCommand::AnnealSweep(a) => (Command::AnnealSweep, a),
        CliCommand::Figures(a) => (Command::Figures, a),
    };
    let file = match &args.config {
        Some(path) => read_settings(path)?,
        None => Settings::default(),
    };
    let merged = args.settings.over(file);
    resolve(command, merged)
}

fn usage(key: &str, message: impl std::fmt::Display) -> CliError {
    CliError::Usage(format!("`{key}`: {message}"))
}

fn single<T: Copy>(key: &str, command: Command, values: &[T]) -> Result<T> {
    match values {
        [v] => Ok(*v),
        _ => Err(usage(
            key,
            format!("{command:?} takes exactly one value, got {}", values.len()),
        )),
    }
}

/// Fills command-dependent defaults and validates every field.
pub fn resolve(command: Command, s: Settings) -> Result<RunConfig> {
    let figure = s.figure;
    if command == Command::Figures && figure.is_none() {
        return Err(usage(
            "figure",
            "the figures command needs --figure f1..f10",
        ));
    }
    let file_set = match &s.memories {
        Some(path) => {
            let draws_own = !command.is_single()
                && !matches!(figure, Some(FigureId::F3 | FigureId::F4 | FigureId::F5));
            if draws_own {
                return Err(usage("memories", "this command draws its own memory sets"));
            }
            Some(load_memories(path)?)
        }
        None => None,
    };
    let n = match (&file_set, s.n) {
        (Some(set), Some(n)) if n != set.dim() => {
            return Err(usage(
                "n",
                format!("memory file has {} neurons, got n = {n}", set.dim()),
            ))
        }
        (Some(set), _) => set.dim(),
        (None, Some(n)) => n,
        (None, None) => figure.map_or(5, FigureId::default_n),
    };

    let protocol = match (figure.and_then(FigureId::protocol), s.protocol) {
        (Some(fixed), Some(given)) if fixed != given => {
            return Err(usage(
                "protocol",
                format!(
                    "figure {} uses protocol {}",
                    figure.unwrap().name(),
                    aqo_core::lab::Protocol::from(fixed)
                ),
            ))
        }
        (Some(fixed), _) => fixed,
        (None, given) => given.unwrap_or(ProtocolArg::Exact),
    };

    let sweep_like = !command.is_single();
    let rule = s.rule.unwrap_or_else(|| {
        // orthogonal memories give one spectrum for every rule
        let spectrum = matches!(figure, Some(FigureId::F1 | FigureId::F2));
        if sweep_like && !spectrum {
            vec![Rule::Hebb, Rule::Storkey, Rule::Projection]
        } else {
            vec![Rule::Hebb]
        }
    });
    let gamma = s.gamma.unwrap_or_else(|| match (command, figure) {
        (Command::BiasSweep, _) => default_gamma_grid(),
        (_, Some(FigureId::F1)) => vec![0.0],
        (_, Some(FigureId::F2)) => vec![1.0],
        (_, Some(f)) if f != FigureId::F10 => default_gamma_grid(),
        _ => vec![DEFAULT_GAMMA],
    });
    let anneal_time = s.anneal_time.unwrap_or_else(|| {
        if command == Command::AnnealSweep || figure == Some(FigureId::F10) {
            DEFAULT_TIME_GRID.to_vec()
        } else {
            vec![DEFAULT_ANNEAL_TIME]
        }
    });
    let max_p = if (1..=STATE_QUBIT_CAP).contains(&n) {
        1usize << (n - 1)
    } else {
        1
    };
    let p = match s.p {
        Some(p) => p,
        None => match figure {
            Some(FigureId::F1 | FigureId::F2) => vec![n],
            Some(f) if f.curve_p().is_some() => vec![f.curve_p().unwrap()],
            _ if sweep_like => (1..=5.min(max_p)).collect(),
            // single runs on a memory file default to the whole file
            _ => vec![file_set.as_ref().map_or(1, MemorySet::len)],
        },
    };
    if let Some(set) = &file_set {
        if let Some(&too_many) = p.iter().find(|&&p| p > set.len()) {
            return Err(usage(
                "p",
                format!(
                    "memory file holds {} patterns, got p = {too_many}",
                    set.len()
                ),
            ));
        }
    }

    let config = RunConfig {
        command,
        n,
        p,
        rule,
        gamma,
        anneal_time,
        dt: s.dt.unwrap_or(DEFAULT_DT),
        ensemble_size: s.ensemble_size.unwrap_or(DEFAULT_ENSEMBLE_SIZE),
        x: s.x.unwrap_or(DEFAULT_THRESHOLD),
        seed: s.seed.unwrap_or(DEFAULT_SEED),
        protocol,
        memories: s.memories,
        input: s.input,
        out: s.out.unwrap_or_else(|| PathBuf::from(DEFAULT_OUT)),
        samples: s.samples.unwrap_or(DEFAULT_SAMPLES),
        figure,
        max_sweeps: s.max_sweeps.unwrap_or(DEFAULT_MAX_SWEEPS),
        mode: s.mode.unwrap_or(ModeArg::Async),
    };
    if let Some(echoed) = s.command {
        if echoed != command {
            log::warn!("config file was written for {echoed:?}; running {command:?}");
        }
    }
    config.validate()?;
    Ok(config)
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        let c = self.command;
        if self.n == 0 || self.n > STATE_QUBIT_CAP {
            return Err(usage(
                "n",
                format!("must be in 1..={STATE_QUBIT_CAP}, got {}", self.n),
            ));
        }
        let dense =
            c == Command::Spectrum || matches!(self.figure, Some(FigureId::F1 | FigureId::F2));
        if dense && self.n > DENSE_QUBIT_CAP {
            return Err(usage(
                "n",
                format!(
                    "spectra are limited to {DENSE_QUBIT_CAP} neurons, got {}",
                    self.n
                ),
            ));
        }
        let generated = self.memories.is_none();
        let max_p = 1usize << (self.n - 1);
        if self.p.is_empty() {
            return Err(usage("p", "at least one value is required"));
        }
        for &p in &self.p {
            if p == 0 || (generated && p > max_p) {
                return Err(usage(
                    "p",
                    format!("must be in 1..={max_p} for n = {}, got {p}", self.n),
                ));
            }
        }
        if self.rule.is_empty() {
            return Err(usage("rule", "at least one rule is required"));
        }
        if self.gamma.is_empty() {
            return Err(usage("gamma", "at least one value is required"));
        }
        for &g in &self.gamma {
            if !(g >= 0.0 && g.is_finite()) {
                return Err(usage("gamma", format!("must be finite and >= 0, got {g}")));
            }
            if (c == Command::BiasSweep || self.figure.and_then(FigureId::protocol).is_some())
                && g > 1.0
            {
                return Err(usage(
                    "gamma",
                    format!("sweep grids lie in [0, 1], got {g}"),
                ));
            }
        }
        if self.anneal_time.is_empty() {
            return Err(usage("T", "at least one value is required"));
        }
        for &t in &self.anneal_time {
            if !(t > 0.0 && t.is_finite()) {
                return Err(usage("T", format!("must be positive and finite, got {t}")));
            }
        }
        if (c == Command::AnnealSweep || self.figure == Some(FigureId::F10))
            && !self.anneal_time.windows(2).all(|w| w[0] < w[1])
        {
            return Err(usage("T", "annealing times must be strictly ascending"));
        }
        if !(self.dt > 0.0 && self.dt.is_finite()) {
            return Err(usage(
                "dt",
                format!("must be positive and finite, got {}", self.dt),
            ));
        }
        if self.ensemble_size == 0 {
            return Err(usage("N", "must be at least 1"));
        }
        if !(0.0..=1.0).contains(&self.x) {
            return Err(usage("x", format!("must lie in [0, 1], got {}", self.x)));
        }
        if self.samples < 2 {
            return Err(usage(
                "samples",
                format!("must be at least 2, got {}", self.samples),
            ));
        }
        if self.max_sweeps == 0 {
            return Err(usage("max-sweeps", "must be at least 1"));
        }
        if let Some(input) = &self.input {
            let key = parse_pattern(input)?;
            if key.len() != self.n {
                return Err(usage(
                    "input",
                    format!("has {} spins but n = {}", key.len(), self.n),
                ));
            }
        }
        if c.is_single() {
            single("rule", c, &self.rule)?;
            single("gamma", c, &self.gamma)?;
            single("T", c, &self.anneal_time)?;
            single("p", c, &self.p)?;
        }
        match c {
            Command::AnnealSweep => {
                single("gamma", c, &self.gamma)?;
            }
            Command::BiasSweep => {
                single("T", c, &self.anneal_time)?;
            }
            Command::Figures => {
                let f = self.figure.expect("checked in resolve");
                match f {
                    FigureId::F1 | FigureId::F2 => {
                        single("gamma", c, &self.gamma)?;
                        single("p", c, &self.p)?;
                        single("rule", c, &self.rule)?;
                        if f == FigureId::F1 && self.gamma[0] != 0.0 {
                            return Err(usage("gamma", "figure f1 is the unbiased spectrum"));
                        }
                        if !self.n.is_power_of_two() {
                            return Err(usage("n", "Hadamard memories need a power of two"));
                        }
                        if self.p[0] > self.n {
                            return Err(usage(
                                "p",
                                format!("at most {} Hadamard memories", self.n),
                            ));
                        }
                    }
                    FigureId::F3 | FigureId::F4 | FigureId::F5 => {
                        single("p", c, &self.p)?;
                        single("T", c, &self.anneal_time)?;
                    }
                    FigureId::F10 => {
                        single("gamma", c, &self.gamma)?;
                    }
                    _ => {
                        single("T", c, &self.anneal_time)?;
                    }
                }
            }
            _ => {}
        }
        Ok(())
    }

    pub fn learning_rules(&self) -> Vec<LearningRule> {
        self.rule.iter().map(|&r| r.into()).collect()
    }

    pub fn protocol(&self) -> Protocol {
        self.protocol.into()
    }

    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("config serializes");
        text.push('\n');
        text
    }
}
