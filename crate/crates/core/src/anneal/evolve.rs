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

use super::expm::{expm_action_in_place, ActionWorkspace, SymmetricGenerator};
use super::hamiltonian::{IsingHamiltonian, TransverseField};
use super::schedule::AnnealSchedule;
use super::state::{uniform_superposition, QuantumState};
use crate::error::{ensure_dim, Error, Result};

/// Default uniform time step.
pub const DEFAULT_DT: f64 = 0.1;

/// Relative slack when checking that a step stays inside `[0, T]`.
const TIME_SLACK: f64 = 1e-12;

/// First-order Magnus propagator for one annealing problem, with reusable
/// scratch space.
#[derive(Debug, Clone)]
pub struct Propagator<'a> {
    driver: TransverseField,
    target: &'a IsingHamiltonian,
    schedule: AnnealSchedule,
    work: ActionWorkspace,
}

impl<'a> Propagator<'a> {
    pub fn new(
        driver: TransverseField,
        target: &'a IsingHamiltonian,
        schedule: AnnealSchedule,
    ) -> Result<Self> {
        target.check_matches(&driver)?;
        Ok(Self {
            driver,
            target,
            schedule,
            work: ActionWorkspace::default(),
        })
    }

    /// Applies `exp(-i int_{t0}^{t0+dt} H)` to `state` in place.
    pub fn step(&mut self, state: &mut QuantumState, t0: f64, dt: f64) -> Result<()> {
        ensure_dim(self.driver.dim(), state.dim())?;
        let total = self.schedule.total_time();
        if !(t0 >= 0.0 && dt > 0.0 && t0 + dt <= total * (1.0 + TIME_SLACK)) {
            return Err(Error::InvalidInput(format!(
                "step [{t0}, {t0} + {dt}] leaves [0, {total}]"
            )));
        }
        let (int_a, int_b) = self.schedule.integrated(t0, dt);
        let generator = SymmetricGenerator {
            driver: self.driver,
            driver_weight: int_a,
            diagonal: self.target.energies(),
            diagonal_weight: int_b,
        };
        expm_action_in_place(&generator, state.amplitudes_mut(), &mut self.work);
        Ok(())
    }

    /// Number of steps and their length for a uniform grid of nominal step
    /// `dt`; the last step is shortened to land on `T`.
    pub fn grid(&self, dt: f64) -> Result<usize> {
        let total = self.schedule.total_time();
        if !(dt > 0.0 && dt.is_finite()) {
            return Err(Error::InvalidInput(format!(
                "time step must be positive and finite, got {dt}"
            )));
        }
        let steps = libm::ceil(total / dt * (1.0 - TIME_SLACK)) as usize;
        Ok(steps.max(1))
    }

    /// Evolves the driver ground state to `T`, calling `observe(j, t_j, psi)`
    /// after every step.
    pub fn run_with(
        &mut self,
        dt: f64,
        mut observe: impl FnMut(usize, f64, &QuantumState),
    ) -> Result<QuantumState> {
        let steps = self.grid(dt)?;
        let total = self.schedule.total_time();
        let mut state = uniform_superposition(self.driver.n())?;
        for j in 0..steps {
            let t0 = j as f64 * dt;
            let h = if j + 1 == steps { total - t0 } else { dt };
            self.step(&mut state, t0, h)?;
            observe(j + 1, t0 + h, &state);
        }
        Ok(state)
    }
}

/// One Magnus step from `t_j` of length `dt`, returning the new state.
pub fn magnus_step(
    state: &QuantumState,
    driver: &TransverseField,
    target: &IsingHamiltonian,
    schedule: &AnnealSchedule,
    t_j: f64,
    dt: f64,
) -> Result<QuantumState> {
    let mut propagator = Propagator::new(*driver, target, *schedule)?;
    let mut next = state.clone();
    propagator.step(&mut next, t_j, dt)?;
    Ok(next)
}

/// `psi(T)` from the uniform superposition under uniform steps `dt`.
pub fn evolve(
    driver: &TransverseField,
    target: &IsingHamiltonian,
    schedule: &AnnealSchedule,
    dt: f64,
) -> Result<QuantumState> {
    evolve_with(driver, target, schedule, dt, |_, _, _| {})
}

pub fn evolve_with(
    driver: &TransverseField,
    target: &IsingHamiltonian,
    schedule: &AnnealSchedule,
    dt: f64,
    observe: impl FnMut(usize, f64, &QuantumState),
) -> Result<QuantumState> {
    Propagator::new(*driver, target, *schedule)?.run_with(dt, observe)
}
