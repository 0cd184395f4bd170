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

use alloc::format;
use alloc::vec::Vec;

use super::instance::{generate_instance, InstanceParams, ProblemInstance, Protocol};
use super::metrics::{success_indicator, EnsembleStats, DEFAULT_THRESHOLD};
use super::seed::{instance_seed, SeedKey};
use crate::anneal::{
    answer_overlap, build_final_hamiltonian, evolve, AnnealSchedule, TransverseField, DEFAULT_DT,
    DEGENERACY_TOLERANCE,
};
use crate::error::{Error, Result};
use crate::hopfield::{
    classical_update, BiasSpec, BipolarPattern, RuleOptions, SingularPolicy, UpdateMode,
};

/// Instances per ensemble cell unless configured otherwise.
pub const DEFAULT_ENSEMBLE_SIZE: usize = 100;

/// Sweep cap for the classical cross-check.
const CLASSICAL_MAX_SWEEPS: usize = 100;

/// How a single recall is simulated and scored.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RecallSettings {
    /// Success threshold on the target probability.
    pub x: f64,
    /// Nominal Magnus step.
    pub dt: f64,
    /// Handling of linearly dependent memories under the projection rule.
    /// Random memory sets with `p` close to `n` are often dependent, so the
    /// experiments default to the pseudoinverse.
    pub singular: SingularPolicy,
}

impl Default for RecallSettings {
    fn default() -> Self {
        Self {
            x: DEFAULT_THRESHOLD,
            dt: DEFAULT_DT,
            singular: SingularPolicy::PseudoInverse,
        }
    }
}

impl RecallSettings {
    pub fn validate(&self) -> Result<()> {
        if !(0.0..=1.0).contains(&self.x) {
            return Err(Error::InvalidInput(format!(
                "threshold x = {} outside [0, 1]",
                self.x
            )));
        }
        if !(self.dt > 0.0 && self.dt.is_finite()) {
            return Err(Error::InvalidInput(format!("dt = {} is invalid", self.dt)));
        }
        Ok(())
    }
}

/// Outcome of the classical threshold dynamics started from the input key.
#[derive(Debug, Clone, PartialEq)]
pub struct ClassicalCheck {
    pub state: BipolarPattern,
    pub converged: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RecallOutcome {
    pub instance: ProblemInstance,
    /// Probability of the protocol's target basis state.
    pub p_ans: f64,
    pub success: bool,
    /// Probability mass on the ground manifold of the target Hamiltonian.
    pub ground_overlap: f64,
    /// Most probable basis state of the final register.
    pub recalled: BipolarPattern,
    pub recalled_probability: f64,
    pub classical: ClassicalCheck,
}

impl RecallOutcome {
    /// Both layers settled on a definite pattern and the patterns differ.
    pub fn layers_disagree(&self, x: f64) -> bool {
        self.classical.converged
            && self.recalled_probability >= x
            && self.classical.state != self.recalled
    }
}

/// Anneals one instance and scores it.
pub fn run_instance(
    instance: &ProblemInstance,
    settings: &RecallSettings,
) -> Result<RecallOutcome> {
    settings.validate()?;
    let params = &instance.params;
    let options = RuleOptions {
        singular: settings.singular,
        ..RuleOptions::default()
    };
    let weights = params.rule.weights(&instance.memories, options)?;
    let bias = BiasSpec::new(instance.input_key.clone(), params.gamma)?;
    let driver = TransverseField::new(params.n)?;
    let target = build_final_hamiltonian(&weights, &bias)?;
    let schedule = AnnealSchedule::linear(params.anneal_time)?;
    let psi = evolve(&driver, &target, &schedule, settings.dt)?;

    let p_ans = answer_overlap(&psi, instance.target())?;
    let probabilities = psi.probabilities();
    let ground_overlap = target
        .ground_states(DEGENERACY_TOLERANCE)
        .into_iter()
        .map(|s| probabilities[s])
        .sum();
    let (best, &recalled_probability) = probabilities
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.total_cmp(b.1))
        .expect("state vector is non-empty");
    let recalled = BipolarPattern::from_basis_index(best, params.n)?;

    let classical = classical_update(
        &instance.input_key,
        &weights,
        &bias,
        UpdateMode::Asynchronous,
        CLASSICAL_MAX_SWEEPS,
        instance.seed,
    )?;

    Ok(RecallOutcome {
        instance: instance.clone(),
        p_ans,
        success: success_indicator(p_ans, settings.x),
        ground_overlap,
        recalled,
        recalled_probability,
        classical: ClassicalCheck {
            state: classical.state,
            converged: classical.converged,
        },
    })
}

/// One cell of a sweep: `count` instances drawn from derived seeds.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnsembleSpec {
    pub protocol: Protocol,
    pub params: InstanceParams,
    pub count: usize,
    pub master_seed: u64,
    /// Position of the cell's bias value in its sweep grid.
    pub gamma_index: usize,
    /// Always `0` inside sweeps, so annealing-time curves share instances.
    pub time_index: usize,
}

impl EnsembleSpec {
    pub fn instance_seed(&self, index: usize) -> u64 {
        instance_seed(SeedKey {
            master_seed: self.master_seed,
            protocol_id: self.protocol.id(),
            p: self.params.p as u64,
            gamma_index: self.gamma_index as u64,
            time_index: self.time_index as u64,
            instance: index as u64,
        })
    }

    pub fn instance(&self, index: usize) -> Result<ProblemInstance> {
        generate_instance(self.protocol, self.params, self.instance_seed(index))
    }

    pub fn validate(&self) -> Result<()> {
        if self.count == 0 {
            return Err(Error::InvalidInput(
                "ensemble size must be at least 1".into(),
            ));
        }
        Ok(())
    }
}

/// Reduces per-instance outcomes of `spec` into its statistics.
pub fn aggregate<'a>(
    spec: &EnsembleSpec,
    settings: &RecallSettings,
    outcomes: impl IntoIterator<Item = &'a RecallOutcome>,
) -> EnsembleStats {
    let mut count = 0;
    let mut successes = 0;
    let mut disagreements = 0;
    for outcome in outcomes {
        count += 1;
        successes += usize::from(outcome.success);
        disagreements += usize::from(outcome.layers_disagree(settings.x));
    }
    let (mean_success, variance) = EnsembleStats::mean_and_variance(successes, count);
    EnsembleStats {
        protocol: spec.protocol,
        rule: spec.params.rule,
        n: spec.params.n,
        p: spec.params.p,
        gamma: spec.params.gamma,
        anneal_time: spec.params.anneal_time,
        x: settings.x,
        master_seed: spec.master_seed,
        count,
        successes,
        mean_success,
        variance,
        disagreements,
    }
}

/// Runs every instance of a cell in index order.
pub fn run_ensemble(spec: &EnsembleSpec, settings: &RecallSettings) -> Result<EnsembleStats> {
    spec.validate()?;
    let outcomes = (0..spec.count)
        .map(|i| run_instance(&spec.instance(i)?, settings))
        .collect::<Result<Vec<_>>>()?;
    Ok(aggregate(spec, settings, &outcomes))
}

/// A grid of cells over `p`, bias and annealing time.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub protocol: Protocol,
    pub n: usize,
    pub rule: crate::hopfield::LearningRule,
    pub p_list: Vec<usize>,
    pub gammas: Vec<f64>,
    pub anneal_times: Vec<f64>,
    pub count: usize,
    pub master_seed: u64,
}

impl SweepSpec {
    /// Cells sorted by `(p, gamma, T)`. Instances are redrawn for every
    /// `(p, gamma)` and shared across annealing times.
    pub fn cells(&self) -> Result<Vec<EnsembleSpec>> {
        if self.p_list.is_empty() || self.gammas.is_empty() || self.anneal_times.is_empty() {
            return Err(Error::InvalidInput("sweep axes must be non-empty".into()));
        }
        let mut p_list = self.p_list.clone();
        p_list.sort_unstable();
        p_list.dedup();
        let mut gammas: Vec<(usize, f64)> = self.gammas.iter().copied().enumerate().collect();
        gammas.sort_by(|a, b| a.1.total_cmp(&b.1));
        let mut times = self.anneal_times.clone();
        times.sort_by(f64::total_cmp);

        let mut cells = Vec::with_capacity(p_list.len() * gammas.len() * times.len());
        for &p in &p_list {
            for &(gamma_index, gamma) in &gammas {
                for &anneal_time in &times {
                    let spec = EnsembleSpec {
                        protocol: self.protocol,
                        params: InstanceParams {
                            n: self.n,
                            p,
                            rule: self.rule,
                            gamma,
                            anneal_time,
                        },
                        count: self.count,
                        master_seed: self.master_seed,
                        gamma_index,
                        time_index: 0,
                    };
                    spec.validate()?;
                    cells.push(spec);
                }
            }
        }
        Ok(cells)
    }

    fn run(&self, settings: &RecallSettings) -> Result<Vec<EnsembleStats>> {
        self.cells()?
            .iter()
            .map(|cell| run_ensemble(cell, settings))
            .collect()
    }
}

/// One cell per `(p, gamma)` at a single annealing time.
pub fn bias_sweep(sweep: &SweepSpec, settings: &RecallSettings) -> Result<Vec<EnsembleStats>> {
    if sweep.anneal_times.len() != 1 {
        return Err(Error::InvalidInput(
            "a bias sweep runs at exactly one annealing time".into(),
        ));
    }
    if let Some(g) = sweep.gammas.iter().find(|g| !(0.0..=1.0).contains(*g)) {
        return Err(Error::InvalidInput(format!("bias {g} outside [0, 1]")));
    }
    sweep.run(settings)
}

/// One cell per `(p, T)` at a single bias, reusing instances across `T`.
pub fn anneal_time_sweep(
    sweep: &SweepSpec,
    settings: &RecallSettings,
) -> Result<Vec<EnsembleStats>> {
    if sweep.gammas.len() != 1 {
        return Err(Error::InvalidInput(
            "an annealing-time sweep runs at exactly one bias".into(),
        ));
    }
    let ascending = sweep.anneal_times.windows(2).all(|w| w[0] < w[1]);
    if !ascending || sweep.anneal_times.iter().any(|&t| !t.is_finite() || t <= 0.0) {
        return Err(Error::InvalidInput(
            "annealing times must be positive and strictly ascending".into(),
        ));
    }
    sweep.run(settings)
}
