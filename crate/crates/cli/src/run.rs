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

//! Command execution. Experiment cells run in parallel; every file is
//! written afterwards from this thread.

use std::path::PathBuf;

use aqo_core::anneal::{
    answer_overlap, build_final_hamiltonian, evolve, min_gap, spectrum_trace, AnnealSchedule,
    TransverseField, DEGENERACY_TOLERANCE,
};
use aqo_core::hopfield::{
    classical_update, network_energy, BiasSpec, LearningRule, MemorySet, RuleOptions,
    SingularPolicy,
};
use aqo_core::lab::{
    aggregate, run_instance, EnsembleSpec, EnsembleStats, InstanceParams, ProblemInstance,
    RecallOutcome, RecallSettings, SweepSpec,
};
use rayon::prelude::*;
use serde::Serialize;

use crate::config::{Command, FigureId, RunConfig};
use crate::error::{CliError, Result};
use crate::figures::{emit_figure_data, ExperimentData};
use crate::memfile::{format_pattern, load_memories, parse_memories, parse_pattern};
use crate::output::{exact, results_csv, spectrum_csv, table, OutputDir, RESULTS, SPECTRUM};

const RECALL_HEADER: [&str; 12] = [
    "protocol",
    "rule",
    "n",
    "p",
    "gamma",
    "T",
    "x",
    "p_ans",
    "success",
    "ground_overlap",
    "recalled",
    "seed",
];
const CLASSICAL_HEADER: [&str; 10] = [
    "rule",
    "gamma",
    "mode",
    "input",
    "state",
    "converged",
    "sweeps",
    "energy",
    "is_answer",
    "is_stored",
];

/// The four-pattern non-orthogonal set used by the single-instance curves.
pub const SIGMA_FIXTURE: &str = include_str!("../fixtures/sigma.txt");

pub fn sigma_memories() -> MemorySet {
    parse_memories(SIGMA_FIXTURE, std::path::Path::new("fixtures/sigma.txt"))
        .expect("bundled fixture parses")
}

/// What a run produced, for the caller to print.
#[derive(Debug)]
pub struct RunSummary {
    pub lines: Vec<String>,
    pub files: Vec<PathBuf>,
}

/// Single-instance commands refuse singular covariances instead of
/// regularizing behind the user's back.
fn strict() -> RuleOptions {
    RuleOptions {
        singular: SingularPolicy::Error,
        ..RuleOptions::default()
    }
}

fn settings(config: &RunConfig) -> RecallSettings {
    RecallSettings {
        x: config.x,
        dt: config.dt,
        ..RecallSettings::default()
    }
}

/// The instance a single-instance command works on: the memory file (answer
/// and default input = first pattern) or instance 0 of the generated cell.
pub fn single_instance(config: &RunConfig) -> Result<ProblemInstance> {
    let params = InstanceParams {
        n: config.n,
        p: config.p[0],
        rule: config.learning_rules()[0],
        gamma: config.gamma[0],
        anneal_time: config.anneal_time[0],
    };
    let mut instance = match &config.memories {
        Some(path) => {
            let memories = load_memories(path)?.truncated(params.p)?;
            ProblemInstance {
                protocol: config.protocol(),
                params,
                input_key: memories.patterns()[0].clone(),
                memories,
                answer_index: 0,
                seed: config.seed,
            }
        }
        None => {
            let spec = EnsembleSpec {
                protocol: config.protocol(),
                params,
                count: 1,
                master_seed: config.seed,
                gamma_index: 0,
                time_index: 0,
            };
            spec.instance(0)?
        }
    };
    if let Some(input) = &config.input {
        instance.input_key = parse_pattern(input)?;
    }
    Ok(instance)
}

/// Runs every instance of every cell in parallel, then reduces per cell.
pub fn run_cells(cells: &[EnsembleSpec], settings: &RecallSettings) -> Result<Vec<EnsembleStats>> {
    let jobs: Vec<(usize, usize)> = cells
        .iter()
        .enumerate()
        .flat_map(|(c, spec)| (0..spec.count).map(move |i| (c, i)))
        .collect();
    let outcomes = jobs
        .par_iter()
        .map(|&(c, i)| {
            let instance = cells[c].instance(i)?;
            Ok((c, run_instance(&instance, settings)?))
        })
        .collect::<Result<Vec<(usize, RecallOutcome)>>>()?;
    let stats: Vec<EnsembleStats> = cells
        .iter()
        .enumerate()
        .map(|(c, spec)| {
            aggregate(
                spec,
                settings,
                outcomes.iter().filter(|o| o.0 == c).map(|o| &o.1),
            )
        })
        .collect();
    for s in stats.iter().filter(|s| s.disagreements > 0) {
        log::warn!(
            "{} {} p={} gamma={} T={}: classical and annealed recall disagree on {} of {} instances",
            s.protocol,
            s.rule,
            s.p,
            s.gamma,
            s.anneal_time,
            s.disagreements,
            s.count
        );
    }
    Ok(stats)
}

fn sweep_cells(config: &RunConfig) -> Result<Vec<EnsembleSpec>> {
    let mut cells = Vec::new();
    for rule in config.learning_rules() {
        let sweep = SweepSpec {
            protocol: config.protocol(),
            n: config.n,
            rule,
            p_list: config.p.clone(),
            gammas: config.gamma.clone(),
            anneal_times: config.anneal_time.clone(),
            count: config.ensemble_size,
            master_seed: config.seed,
        };
        cells.extend(sweep.cells()?);
    }
    Ok(cells)
}

fn stats_lines(stats: &[EnsembleStats]) -> Vec<String> {
    stats
        .iter()
        .map(|s| {
            format!(
                "{} {} p={} gamma={} T={}: <f> = {:.3} +- {:.3} ({} disagreements)",
                s.protocol,
                s.rule,
                s.p,
                s.gamma,
                s.anneal_time,
                s.mean_success,
                s.sigma(),
                s.disagreements
            )
        })
        .collect()
}

#[derive(Debug, Serialize)]
struct RecallReport {
    protocol: String,
    rule: String,
    n: usize,
    p: usize,
    gamma: f64,
    #[serde(rename = "T")]
    anneal_time: f64,
    dt: f64,
    x: f64,
    seed: u64,
    memories: Vec<String>,
    answer_index: usize,
    input_key: String,
    target: String,
    p_ans: f64,
    success: bool,
    ground_overlap: f64,
    recalled: String,
    recalled_probability: f64,
    classical_state: String,
    classical_converged: bool,
    layers_disagree: bool,
}

#[derive(Debug, Serialize)]
struct ClassicalReport {
    rule: String,
    gamma: f64,
    mode: String,
    input_key: String,
    state: String,
    converged: bool,
    sweeps_used: usize,
    energy: f64,
    is_answer: bool,
    is_stored: bool,
}

fn json_bytes<T: Serialize>(value: &T) -> Vec<u8> {
    let mut text = serde_json::to_string_pretty(value).expect("report serializes");
    text.push('\n');
    text.into_bytes()
}

fn spectrum_of(
    instance: &ProblemInstance,
    samples: usize,
) -> Result<aqo_core::anneal::SpectrumTrace> {
    let params = &instance.params;
    let weights = params.rule.weights(&instance.memories, strict())?;
    let bias = BiasSpec::new(instance.input_key.clone(), params.gamma)?;
    let target = build_final_hamiltonian(&weights, &bias)?;
    let driver = TransverseField::new(params.n)?;
    let schedule = AnnealSchedule::linear(params.anneal_time)?;
    Ok(spectrum_trace(&driver, &target, &schedule, samples)?)
}

fn spectrum_lines(trace: &aqo_core::anneal::SpectrumTrace) -> Vec<String> {
    match min_gap(trace, DEGENERACY_TOLERANCE) {
        Ok(gap) => vec![
            format!("final ground multiplicity: {}", gap.manifold_dim),
            format!("minimum gap: {:.6e} at t = {}", gap.gap, gap.time),
        ],
        Err(e) => vec![format!("minimum gap undefined: {e}")],
    }
}

fn recall(config: &RunConfig, out: &OutputDir) -> Result<RunSummary> {
    let instance = single_instance(config)?;
    // refuse singular covariances before the anneal
    instance.params.rule.weights(&instance.memories, strict())?;
    let outcome = run_instance(&instance, &settings(config))?;
    let report = RecallReport {
        protocol: instance.protocol.to_string(),
        rule: instance.params.rule.to_string(),
        n: instance.params.n,
        p: instance.params.p,
        gamma: instance.params.gamma,
        anneal_time: instance.params.anneal_time,
        dt: config.dt,
        x: config.x,
        seed: instance.seed,
        memories: instance.memories.iter().map(format_pattern).collect(),
        answer_index: instance.answer_index,
        input_key: format_pattern(&instance.input_key),
        target: format_pattern(instance.target()),
        p_ans: outcome.p_ans,
        success: outcome.success,
        ground_overlap: outcome.ground_overlap,
        recalled: format_pattern(&outcome.recalled),
        recalled_probability: outcome.recalled_probability,
        classical_state: format_pattern(&outcome.classical.state),
        classical_converged: outcome.classical.converged,
        layers_disagree: outcome.layers_disagree(config.x),
    };
    if report.layers_disagree {
        log::warn!("classical and annealed recall disagree");
    }
    let bytes = json_bytes(&report);
    let file = out.write("recall.json", &bytes)?;
    let row = vec![
        report.protocol.clone(),
        report.rule.clone(),
        report.n.to_string(),
        report.p.to_string(),
        report.gamma.to_string(),
        report.anneal_time.to_string(),
        report.x.to_string(),
        exact(report.p_ans),
        u8::from(report.success).to_string(),
        exact(report.ground_overlap),
        report.recalled.clone(),
        report.seed.to_string(),
    ];
    let csv = out.write("recall.csv", &table(&RECALL_HEADER, &[row])?)?;
    Ok(RunSummary {
        lines: vec![String::from_utf8(bytes)
            .expect("json is utf-8")
            .trim_end()
            .to_string()],
        files: vec![file, csv],
    })
}

fn classical(config: &RunConfig, out: &OutputDir) -> Result<RunSummary> {
    let instance = single_instance(config)?;
    let params = &instance.params;
    let weights = params.rule.weights(&instance.memories, strict())?;
    let bias = BiasSpec::new(instance.input_key.clone(), params.gamma)?;
    let result = classical_update(
        &instance.input_key,
        &weights,
        &bias,
        config.mode.into(),
        config.max_sweeps,
        instance.seed,
    )?;
    let report = ClassicalReport {
        rule: params.rule.to_string(),
        gamma: params.gamma,
        mode: format!("{:?}", config.mode).to_lowercase(),
        input_key: format_pattern(&instance.input_key),
        state: format_pattern(&result.state),
        converged: result.converged,
        sweeps_used: result.sweeps_used,
        energy: network_energy(&result.state, &weights, &bias)?,
        is_answer: &result.state == instance.answer(),
        is_stored: instance.memories.contains(&result.state),
    };
    let bytes = json_bytes(&report);
    let file = out.write("classical.json", &bytes)?;
    let row = vec![
        report.rule.clone(),
        report.gamma.to_string(),
        report.mode.clone(),
        report.input_key.clone(),
        report.state.clone(),
        u8::from(report.converged).to_string(),
        report.sweeps_used.to_string(),
        exact(report.energy),
        u8::from(report.is_answer).to_string(),
        u8::from(report.is_stored).to_string(),
    ];
    let csv = out.write("classical.csv", &table(&CLASSICAL_HEADER, &[row])?)?;
    if !result.converged {
        return Err(CliError::Numerical(format!(
            "classical dynamics did not converge in {} sweeps (state written to {})",
            config.max_sweeps,
            file.display()
        )));
    }
    Ok(RunSummary {
        lines: vec![String::from_utf8(bytes)
            .expect("json is utf-8")
            .trim_end()
            .to_string()],
        files: vec![file, csv],
    })
}

fn sweep(config: &RunConfig, out: &OutputDir) -> Result<(Vec<EnsembleStats>, RunSummary)> {
    let cells = sweep_cells(config)?;
    let stats = run_cells(&cells, &settings(config))?;
    let file = out.write(RESULTS, &results_csv(&stats)?)?;
    let lines = stats_lines(&stats);
    Ok((
        stats,
        RunSummary {
            lines,
            files: vec![file],
        },
    ))
}

fn bias_curve(config: &RunConfig) -> Result<ExperimentData> {
    let memories = match &config.memories {
        Some(path) => load_memories(path)?,
        None => sigma_memories(),
    }
    .truncated(config.p[0])?;
    let answer = memories.patterns()[0].clone();
    let input = match &config.input {
        Some(text) => parse_pattern(text)?,
        None => answer.clone(),
    };
    let driver = TransverseField::new(memories.dim())?;
    let schedule = AnnealSchedule::linear(config.anneal_time[0])?;
    let rules = config.learning_rules();
    let jobs: Vec<(LearningRule, f64)> = rules
        .iter()
        .flat_map(|&r| config.gamma.iter().map(move |&g| (r, g)))
        .collect();
    let q = jobs
        .par_iter()
        .map(|&(rule, gamma)| {
            let weights = rule.weights(&memories, strict())?;
            let bias = BiasSpec::new(input.clone(), gamma)?;
            let target = build_final_hamiltonian(&weights, &bias)?;
            let psi = evolve(&driver, &target, &schedule, config.dt)?;
            Ok(answer_overlap(&psi, &answer)?)
        })
        .collect::<Result<Vec<f64>>>()?;
    Ok(ExperimentData::BiasCurve {
        p: memories.len(),
        gammas: config.gamma.clone(),
        q: rules
            .iter()
            .zip(q.chunks(config.gamma.len()))
            .map(|(&r, v)| (r, v.to_vec()))
            .collect(),
    })
}

fn figures(config: &RunConfig, out: &OutputDir) -> Result<RunSummary> {
    let figure = config.figure.expect("validated");
    let mut lines = Vec::new();
    let mut files = Vec::new();
    let data = match figure {
        FigureId::F1 | FigureId::F2 => {
            let memories = MemorySet::hadamard(config.n)?.truncated(config.p[0])?;
            let input = match &config.input {
                Some(text) => parse_pattern(text)?,
                None => memories.patterns()[0].clone(),
            };
            let instance = ProblemInstance {
                protocol: config.protocol(),
                params: InstanceParams {
                    n: config.n,
                    p: config.p[0],
                    rule: config.learning_rules()[0],
                    gamma: config.gamma[0],
                    anneal_time: config.anneal_time[0],
                },
                memories,
                answer_index: 0,
                input_key: input,
                seed: config.seed,
            };
            let trace = spectrum_of(&instance, config.samples)?;
            lines.extend(spectrum_lines(&trace));
            ExperimentData::Spectrum {
                biased: figure == FigureId::F2,
                trace,
            }
        }
        FigureId::F3 | FigureId::F4 | FigureId::F5 => bias_curve(config)?,
        FigureId::F10 => {
            let (stats, summary) = sweep(config, out)?;
            lines.extend(summary.lines);
            files.extend(summary.files);
            ExperimentData::AnnealSweep { stats }
        }
        _ => {
            let (stats, summary) = sweep(config, out)?;
            lines.extend(summary.lines);
            files.extend(summary.files);
            ExperimentData::BiasSweep {
                protocol: config.protocol(),
                stats,
            }
        }
    };
    files.extend(emit_figure_data(&data, figure, out)?);
    Ok(RunSummary { lines, files })
}

/// Executes a resolved config, writing everything under `config.out`.
pub fn execute(config: &RunConfig) -> Result<RunSummary> {
    let out = OutputDir::create(&config.out)?;
    out.write_run_header(config)?;
    let mut summary = match config.command {
        Command::Spectrum => {
            let trace = spectrum_of(&single_instance(config)?, config.samples)?;
            let file = out.write(SPECTRUM, &spectrum_csv(&trace)?)?;
            RunSummary {
                lines: spectrum_lines(&trace),
                files: vec![file],
            }
        }
        Command::Recall => recall(config, &out)?,
        Command::Classical => classical(config, &out)?,
        Command::BiasSweep | Command::AnnealSweep => sweep(config, &out)?.1,
        Command::Figures => figures(config, &out)?,
    };
    summary.lines.push(
        crate::output::provenance_line(config)
            .trim_end()
            .to_string(),
    );
    Ok(summary)
}
