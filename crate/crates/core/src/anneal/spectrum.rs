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

use nalgebra::{DMatrix, SymmetricEigen};

use super::hamiltonian::{check_qubits, IsingHamiltonian, TransverseField, DENSE_QUBIT_CAP};
use super::schedule::AnnealSchedule;
use crate::error::{Error, Result};

/// Eigenvalues closer than this to the final ground energy belong to the
/// ground manifold.
pub const DEGENERACY_TOLERANCE: f64 = 1e-9;

/// Sorted instantaneous spectra on a time grid.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumTrace {
    pub times: Vec<f64>,
    /// `energies[k]` is the ascending spectrum at `times[k]`.
    pub energies: Vec<Vec<f64>>,
}

/// Ascending eigenvalues of `A(t) H0 + B(t) H1`.
pub fn instantaneous_spectrum(
    driver: &TransverseField,
    target: &IsingHamiltonian,
    schedule: &AnnealSchedule,
    t: f64,
) -> Result<Vec<f64>> {
    target.check_matches(driver)?;
    check_qubits(driver.n(), DENSE_QUBIT_CAP)?;
    let total = schedule.total_time();
    if !(0.0..=total).contains(&t) {
        return Err(Error::InvalidInput(format!(
            "time {t} outside [0, {total}]"
        )));
    }
    let (a, b) = (schedule.a(t), schedule.b(t));
    let dim = driver.dim();
    let energies = target.energies();
    let h = DMatrix::from_fn(dim, dim, |r, c| {
        if r == c {
            b * energies[r]
        } else if (r ^ c).count_ones() == 1 {
            -a
        } else {
            0.0
        }
    });
    let mut values: Vec<f64> = SymmetricEigen::new(h).eigenvalues.iter().copied().collect();
    values.sort_by(f64::total_cmp);
    Ok(values)
}

/// Spectra at `num_samples` uniformly spaced times including `0` and `T`.
pub fn spectrum_trace(
    driver: &TransverseField,
    target: &IsingHamiltonian,
    schedule: &AnnealSchedule,
    num_samples: usize,
) -> Result<SpectrumTrace> {
    if num_samples < 2 {
        return Err(Error::InvalidInput(format!(
            "a spectrum trace needs at least 2 samples, got {num_samples}"
        )));
    }
    let total = schedule.total_time();
    let times: Vec<f64> = (0..num_samples)
        .map(|k| {
            if k + 1 == num_samples {
                total
            } else {
                total * k as f64 / (num_samples - 1) as f64
            }
        })
        .collect();
    let energies = times
        .iter()
        .map(|&t| instantaneous_spectrum(driver, target, schedule, t))
        .collect::<Result<_>>()?;
    Ok(SpectrumTrace { times, energies })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MinGap {
    pub gap: f64,
    pub time: f64,
    /// Dimension `d` of the final-time ground manifold.
    pub manifold_dim: usize,
}

/// Smallest `E_d(t) - E_0(t)` over the grid, where `d` is the multiplicity of
/// the final ground energy. Levels that merge into the final ground manifold
/// are approximated by that count rather than tracked through crossings.
pub fn min_gap(trace: &SpectrumTrace, degeneracy_tolerance: f64) -> Result<MinGap> {
    let Some(last) = trace.energies.last() else {
        return Err(Error::InvalidInput("empty spectrum trace".into()));
    };
    let e0 = last[0];
    let d = last
        .iter()
        .take_while(|&&e| e - e0 <= degeneracy_tolerance)
        .count();
    if d >= last.len() {
        return Err(Error::InvalidInput(format!(
            "final ground manifold spans all {d} levels; no gap is defined"
        )));
    }
    let mut best = MinGap {
        gap: f64::INFINITY,
        time: 0.0,
        manifold_dim: d,
    };
    for (t, levels) in trace.times.iter().zip(&trace.energies) {
        let gap = levels[d] - levels[0];
        if gap < best.gap {
            best.gap = gap;
            best.time = *t;
        }
    }
    Ok(best)
}
