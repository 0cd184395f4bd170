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

//! Plot data for the figures: one CSV per figure plus a manifest naming the
//! axes and series, so any plotting tool can render it.

use std::path::PathBuf;

use aqo_core::anneal::SpectrumTrace;
use aqo_core::hopfield::LearningRule;
use aqo_core::lab::{EnsembleStats, Protocol};
use serde::Serialize;

use crate::config::FigureId;
use crate::error::{CliError, Result};
use crate::output::{exact, spectrum_csv, table, OutputDir};

/// Recall errors `1 - q` below this are numerical noise and are clamped to
/// it, so log-scale insets stay finite.
pub const ERROR_FLOOR: f64 = 1e-12;

/// Output of the experiment behind a figure.
#[derive(Debug, Clone)]
pub enum ExperimentData {
    Spectrum {
        biased: bool,
        trace: SpectrumTrace,
    },
    /// Single-instance answer probability `q(gamma)` per rule.
    BiasCurve {
        p: usize,
        gammas: Vec<f64>,
        q: Vec<(LearningRule, Vec<f64>)>,
    },
    BiasSweep {
        protocol: Protocol,
        stats: Vec<EnsembleStats>,
    },
    AnnealSweep {
        stats: Vec<EnsembleStats>,
    },
}

impl ExperimentData {
    fn kind(&self) -> String {
        match self {
            Self::Spectrum { biased: false, .. } => "unbiased spectrum".into(),
            Self::Spectrum { biased: true, .. } => "biased spectrum".into(),
            Self::BiasCurve { .. } => "single-instance bias curve".into(),
            Self::BiasSweep { protocol, .. } => format!("{protocol} bias sweep"),
            Self::AnnealSweep { .. } => "annealing-time sweep".into(),
        }
    }
}

#[derive(Debug, Serialize)]
struct Manifest {
    figure: &'static str,
    title: &'static str,
    files: Vec<String>,
    x: &'static str,
    y: &'static str,
    series_keys: Vec<&'static str>,
    series: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    error_floor: Option<f64>,
}

fn title(figure: FigureId) -> &'static str {
    match figure {
        FigureId::F1 => "Instantaneous spectrum, orthogonal memories, no bias",
        FigureId::F2 => "Instantaneous spectrum, orthogonal memories, biased input",
        FigureId::F3 | FigureId::F4 | FigureId::F5 => {
            "Probability q to recall the correct memory versus bias"
        }
        FigureId::F6 => "Mean recall success versus bias, exact input",
        FigureId::F7 => "Mean recall success versus bias, input one flip from a memory",
        FigureId::F8 => "Mean failure versus bias, input at distance 1 from all memories",
        FigureId::F9 => "Mean failure versus bias, input at distance 2 from all memories",
        FigureId::F10 => "Mean recall success versus p, one series per annealing time",
    }
}

fn mismatch(figure: FigureId, data: &ExperimentData) -> CliError {
    CliError::Usage(format!(
        "figure {} cannot be drawn from a {}",
        figure.name(),
        data.kind()
    ))
}

fn write_manifest(out: &OutputDir, manifest: &Manifest) -> Result<PathBuf> {
    let mut text = serde_json::to_string_pretty(manifest).expect("manifest serializes");
    text.push('\n');
    out.write(
        &format!("{}.manifest.json", manifest.figure),
        text.as_bytes(),
    )
}

/// Writes the CSV series and manifest of `figure`; returns the files written.
pub fn emit_figure_data(
    data: &ExperimentData,
    figure: FigureId,
    out: &OutputDir,
) -> Result<Vec<PathBuf>> {
    let id = figure.name();
    let csv_name = format!("{id}.csv");
    let mut files = Vec::new();
    let manifest = match (figure, data) {
        (
            FigureId::F1,
            ExperimentData::Spectrum {
                biased: false,
                trace,
            },
        )
        | (
            FigureId::F2,
            ExperimentData::Spectrum {
                biased: true,
                trace,
            },
        ) => {
            files.push(out.write(&csv_name, &spectrum_csv(trace)?)?);
            let levels = trace.energies.first().map_or(0, Vec::len);
            Manifest {
                figure: id,
                title: title(figure),
                files: vec![csv_name],
                x: "t",
                y: "E",
                series_keys: vec!["level"],
                series: (0..levels).map(|k| format!("E_{k}")).collect(),
                error_floor: None,
            }
        }
        (
            FigureId::F3 | FigureId::F4 | FigureId::F5,
            ExperimentData::BiasCurve { gammas, q, .. },
        ) => {
            // columns in canonical rule order, whichever rules were run
            let present: Vec<&(LearningRule, Vec<f64>)> = LearningRule::ALL
                .iter()
                .filter_map(|&r| q.iter().find(|(rule, _)| *rule == r))
                .collect();
            if present.is_empty() || present.iter().any(|(_, v)| v.len() != gammas.len()) {
                return Err(CliError::Usage(format!(
                    "figure {id} needs one q value per gamma for at least one rule"
                )));
            }
            let cols: Vec<&Vec<f64>> = present.iter().map(|(_, v)| v).collect();
            let header = |prefix: &str| -> Vec<String> {
                std::iter::once("gamma".to_string())
                    .chain(
                        present
                            .iter()
                            .map(|(r, _)| format!("{prefix}_{}", r.name())),
                    )
                    .collect()
            };
            let rows = |f: &dyn Fn(f64) -> f64| -> Vec<Vec<String>> {
                gammas
                    .iter()
                    .enumerate()
                    .map(|(k, &g)| {
                        std::iter::once(g.to_string())
                            .chain(cols.iter().map(|c| exact(f(c[k]))))
                            .collect()
                    })
                    .collect()
            };
            files.push(out.write(&csv_name, &table(&header("q"), &rows(&|q| q))?)?);
            let inset_name = format!("{id}_inset.csv");
            files.push(out.write(
                &inset_name,
                &table(&header("err"), &rows(&|q| (1.0 - q).max(ERROR_FLOOR)))?,
            )?);
            Manifest {
                figure: id,
                title: title(figure),
                files: vec![csv_name, inset_name],
                x: "gamma",
                y: "q (inset: 1 - q, log scale)",
                series_keys: vec!["rule"],
                series: present.iter().map(|(r, _)| r.name().to_string()).collect(),
                error_floor: Some(ERROR_FLOOR),
            }
        }
        (
            FigureId::F6 | FigureId::F7 | FigureId::F8 | FigureId::F9,
            ExperimentData::BiasSweep { protocol, stats },
        ) if figure.protocol().map(Protocol::from) == Some(*protocol) => {
            let mut sorted: Vec<&EnsembleStats> = stats.iter().collect();
            sorted.sort_by(|a, b| {
                (a.rule.name(), a.p)
                    .cmp(&(b.rule.name(), b.p))
                    .then(a.gamma.total_cmp(&b.gamma))
            });
            let rows: Vec<Vec<String>> = sorted
                .iter()
                .map(|s| {
                    vec![
                        s.rule.name().to_string(),
                        s.p.to_string(),
                        s.gamma.to_string(),
                        s.mean_success.to_string(),
                        s.sigma().to_string(),
                    ]
                })
                .collect();
            files.push(out.write(
                &csv_name,
                &table(&["rule", "p", "gamma", "mean_success", "sigma"], &rows)?,
            )?);
            let mut series: Vec<String> = sorted
                .iter()
                .map(|s| format!("{}/p={}", s.rule.name(), s.p))
                .collect();
            series.dedup();
            Manifest {
                figure: id,
                title: title(figure),
                files: vec![csv_name],
                x: "gamma",
                y: "mean_success",
                series_keys: vec!["rule", "p"],
                series,
                error_floor: None,
            }
        }
        (FigureId::F10, ExperimentData::AnnealSweep { stats }) => {
            let mut times: Vec<f64> = stats.iter().map(|s| s.anneal_time).collect();
            times.sort_by(f64::total_cmp);
            times.dedup();
            let mut keys: Vec<(&'static str, usize)> =
                stats.iter().map(|s| (s.rule.name(), s.p)).collect();
            keys.sort();
            keys.dedup();
            let time_cols: Vec<String> = times.iter().map(|t| format!("T_{t}")).collect();
            let header: Vec<&str> = ["rule", "p"]
                .into_iter()
                .chain(time_cols.iter().map(String::as_str))
                .collect();
            let rows = keys
                .iter()
                .map(|&(rule, p)| {
                    let mut row = vec![rule.to_string(), p.to_string()];
                    for &t in &times {
                        let cell = stats
                            .iter()
                            .find(|s| s.rule.name() == rule && s.p == p && s.anneal_time == t);
                        row.push(cell.map_or(String::new(), |s| s.mean_success.to_string()));
                    }
                    row
                })
                .collect::<Vec<_>>();
            files.push(out.write(&csv_name, &table(&header, &rows)?)?);
            Manifest {
                figure: id,
                title: title(figure),
                files: vec![csv_name],
                x: "p",
                y: "mean_success",
                series_keys: vec!["T"],
                series: time_cols,
                error_floor: None,
            }
        }
        _ => return Err(mismatch(figure, data)),
    };
    files.push(write_manifest(out, &manifest)?);
    Ok(files)
}
