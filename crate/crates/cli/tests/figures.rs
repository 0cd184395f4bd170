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

use aqo_core::hopfield::LearningRule;
use aqo_core::lab::Protocol;
use aqo_recall::config::FigureId;
use aqo_recall::emit_figure_data;
use aqo_recall::figures::{ExperimentData, ERROR_FLOOR};
use aqo_recall::output::OutputDir;

fn curve() -> ExperimentData {
    ExperimentData::BiasCurve {
        p: 2,
        gammas: vec![0.0, 0.5, 1.0],
        q: vec![
            (LearningRule::Hebb, vec![0.5, 0.9, 1.0]),
            (LearningRule::Projection, vec![0.5, 0.99, 1.0 - 1e-15]),
        ],
    }
}

#[test]
fn data_must_match_the_figure() {
    let dir = tempfile::tempdir().unwrap();
    let out = OutputDir::create(dir.path()).unwrap();
    for figure in [FigureId::F1, FigureId::F6, FigureId::F10] {
        let err = emit_figure_data(&curve(), figure, &out).unwrap_err();
        assert_eq!(err.exit_code(), 2);
        assert!(err.to_string().contains(figure.name()), "{err}");
    }
    let sweep = ExperimentData::BiasSweep {
        protocol: Protocol::Exact,
        stats: Vec::new(),
    };
    // an exact-input sweep is not the noisy-input figure
    assert!(emit_figure_data(&sweep, FigureId::F7, &out).is_err());
    assert!(std::fs::read_dir(dir.path()).unwrap().next().is_none());
}

#[test]
fn inset_errors_are_floored() {
    let dir = tempfile::tempdir().unwrap();
    let out = OutputDir::create(dir.path()).unwrap();
    let files = emit_figure_data(&curve(), FigureId::F4, &out).unwrap();
    assert_eq!(files.len(), 3);
    let inset = std::fs::read_to_string(dir.path().join("f4_inset.csv")).unwrap();
    assert_eq!(
        inset.lines().next().unwrap(),
        "gamma,err_hebb,err_projection"
    );
    let last: Vec<f64> = inset
        .lines()
        .last()
        .unwrap()
        .split(',')
        .map(|v| v.parse().unwrap())
        .collect();
    assert_eq!(last[1], ERROR_FLOOR);
    assert_eq!(last[2], ERROR_FLOOR);
}
