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

use super::pattern::BipolarPattern;
use super::rules::SynapticMatrix;
use crate::error::{ensure_dim, Error, Result};

/// Input key `z0` with bias scale `gamma`; thresholds are `gamma * z0`.
#[derive(Debug, Clone, PartialEq)]
pub struct BiasSpec {
    input_key: BipolarPattern,
    gamma: f64,
    thresholds: Vec<f64>,
}

impl BiasSpec {
    pub fn new(input_key: BipolarPattern, gamma: f64) -> Result<Self> {
        if !(gamma >= 0.0 && gamma.is_finite()) {
            return Err(Error::InvalidInput(format!(
                "bias scale must be finite and non-negative, got {gamma}"
            )));
        }
        let thresholds = input_key.iter_f64().map(|z| gamma * z).collect();
        Ok(Self {
            input_key,
            gamma,
            thresholds,
        })
    }

    /// Zero thresholds on `n` neurons (the key is the all-`+1` pattern).
    pub fn unbiased(n: usize) -> Result<Self> {
        Self::new(BipolarPattern::ones(n)?, 0.0)
    }

    pub fn input_key(&self) -> &BipolarPattern {
        &self.input_key
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn thresholds(&self) -> &[f64] {
        &self.thresholds
    }

    pub fn n(&self) -> usize {
        self.thresholds.len()
    }
}

/// `sum_j w_ij z_j`.
pub fn local_field(state: &BipolarPattern, weights: &SynapticMatrix, i: usize) -> f64 {
    weights
        .row(i)
        .iter()
        .zip(state.spins())
        .map(|(w, &z)| w * f64::from(z))
        .sum()
}

/// Ising energy `E(z; theta) = -1/2 sum_ij z_i w_ij z_j - sum_i theta_i z_i`.
pub fn network_energy(
    state: &BipolarPattern,
    weights: &SynapticMatrix,
    bias: &BiasSpec,
) -> Result<f64> {
    ensure_dim(weights.n(), state.len())?;
    ensure_dim(weights.n(), bias.n())?;
    let mut quadratic = 0.0;
    let mut linear = 0.0;
    for (i, z) in state.iter_f64().enumerate() {
        quadratic += z * local_field(state, weights, i);
        linear += bias.thresholds[i] * z;
    }
    Ok(-0.5 * quadratic - linear)
}

fn check_index(state: &BipolarPattern, weights: &SynapticMatrix, k: usize) -> Result<()> {
    ensure_dim(weights.n(), state.len())?;
    if k >= state.len() {
        return Err(Error::InvalidInput(format!(
            "neuron index {k} out of range for {} neurons",
            state.len()
        )));
    }
    Ok(())
}

/// Field-plus-threshold excluding self-coupling.
fn drive(state: &BipolarPattern, weights: &SynapticMatrix, k: usize, threshold: f64) -> f64 {
    let z_k = f64::from(state.spins()[k]);
    local_field(state, weights, k) - weights.get(k, k) * z_k + threshold
}

/// Unbiased energy change when neuron `k` (0-based) takes the value chosen by
/// the threshold rule, `-(z_k' - z_k) sum_{j != k} w_jk z_j`. Never positive.
pub fn delta_energy(state: &BipolarPattern, k: usize, weights: &SynapticMatrix) -> Result<f64> {
    check_index(state, weights, k)?;
    Ok(flip_delta(state, k, drive(state, weights, k, 0.0)))
}

/// As [`delta_energy`] with the thresholds of `bias` included in both the
/// update choice and the energy.
pub fn delta_energy_biased(
    state: &BipolarPattern,
    k: usize,
    weights: &SynapticMatrix,
    bias: &BiasSpec,
) -> Result<f64> {
    check_index(state, weights, k)?;
    ensure_dim(weights.n(), bias.n())?;
    Ok(flip_delta(
        state,
        k,
        drive(state, weights, k, bias.thresholds[k]),
    ))
}

fn flip_delta(state: &BipolarPattern, k: usize, drive: f64) -> f64 {
    let z_k = f64::from(state.spins()[k]);
    let next = if drive > 0.0 { 1.0 } else { -1.0 };
    -(next - z_k) * drive
}

/// Largest bias scale for which memory `xi` stays below the input key `z0` in
/// energy:
///
/// `sum_ij (xi_i w_ij xi_j - z0_i w_ij z0_j) / (2 (n - z0 . xi))`
///
/// `None` when `z0 == xi` (zero denominator).
pub fn gamma_upper_bound(
    memory: &BipolarPattern,
    input_key: &BipolarPattern,
    weights: &SynapticMatrix,
) -> Result<Option<f64>> {
    let n = weights.n();
    ensure_dim(n, memory.len())?;
    ensure_dim(n, input_key.len())?;
    let overlap = memory.dot(input_key)?;
    if overlap == n as i64 {
        return Ok(None);
    }
    let quad = |z: &BipolarPattern| -> f64 {
        z.iter_f64()
            .enumerate()
            .map(|(i, zi)| zi * local_field(z, weights, i))
            .sum()
    };
    let numerator = quad(memory) - quad(input_key);
    Ok(Some(numerator / (2.0 * (n as i64 - overlap) as f64)))
}
