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

//! Learning rules mapping a [`MemorySet`] to synaptic weights.
//!
//! Every rule fills the upper triangle from its defining formula and mirrors
//! it, so the result is symmetric bit for bit. The network always runs on the
//! zero-diagonal form; [`Diagonal::Retained`] keeps the diagonal the formula
//! produces and exists for analytic checks (projector property, closed-form
//! energies and bias bounds).

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use nalgebra::{DMatrix, SymmetricEigen};

use super::pattern::MemorySet;
use crate::error::{ensure_dim, Error, Result};

/// Condition number of the memory covariance above which the projection rule
/// refuses to invert it.
pub const MAX_COVARIANCE_CONDITION: f64 = 1e12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LearningRule {
    Hebb,
    Storkey,
    Projection,
}

impl LearningRule {
    pub const ALL: [LearningRule; 3] = [Self::Hebb, Self::Storkey, Self::Projection];

    pub fn name(self) -> &'static str {
        match self {
            Self::Hebb => "hebb",
            Self::Storkey => "storkey",
            Self::Projection => "projection",
        }
    }

    pub fn weights(self, memories: &MemorySet, options: RuleOptions) -> Result<SynapticMatrix> {
        match self {
            Self::Hebb => hebb(memories, options.diagonal),
            Self::Storkey => storkey(memories, options.diagonal),
            Self::Projection => projection(memories, options),
        }
    }
}

impl fmt::Display for LearningRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for LearningRule {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "hebb" => Ok(Self::Hebb),
            "storkey" => Ok(Self::Storkey),
            "projection" => Ok(Self::Projection),
            other => Err(Error::InvalidInput(format!(
                "unknown learning rule {other:?} (expected hebb, storkey or projection)"
            ))),
        }
    }
}

/// Which diagonal the returned matrix carries.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Diagonal {
    /// `w_ii = 0`: the network form.
    #[default]
    Zeroed,
    /// The diagonal exactly as the rule's formula produces it.
    Retained,
}

/// What the projection rule does when the memory covariance is singular.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SingularPolicy {
    #[default]
    Error,
    /// Moore-Penrose pseudoinverse of the covariance. Not part of the
    /// projection rule proper; it projects onto the span of the memories.
    PseudoInverse,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct RuleOptions {
    pub diagonal: Diagonal,
    pub singular: SingularPolicy,
}

impl RuleOptions {
    pub fn retained() -> Self {
        Self {
            diagonal: Diagonal::Retained,
            ..Self::default()
        }
    }
}

/// Symmetric `n x n` coupling matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct SynapticMatrix {
    n: usize,
    weights: Vec<f64>,
    diagonal: Diagonal,
}

impl SynapticMatrix {
    /// Builds a network matrix from row-major entries. The entries must be
    /// exactly symmetric with a zero diagonal.
    pub fn from_row_major(n: usize, weights: Vec<f64>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidInput(
                "weight matrix must be at least 1x1".into(),
            ));
        }
        ensure_dim(n * n, weights.len())?;
        for i in 0..n {
            if weights[i * n + i] != 0.0 {
                return Err(Error::InvalidInput(format!("w[{i}][{i}] is not zero")));
            }
            for j in i + 1..n {
                let (a, b) = (weights[i * n + j], weights[j * n + i]);
                if a != b || !a.is_finite() {
                    return Err(Error::InvalidInput(format!(
                        "w[{i}][{j}] = {a} but w[{j}][{i}] = {b}"
                    )));
                }
            }
        }
        Ok(Self {
            n,
            weights,
            diagonal: Diagonal::Zeroed,
        })
    }

    /// Fills from an upper-triangle generator `f(i, j)`, `i <= j`.
    fn from_upper(n: usize, diagonal: Diagonal, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut weights = vec![0.0; n * n];
        for i in 0..n {
            if diagonal == Diagonal::Retained {
                weights[i * n + i] = f(i, i);
            }
            for j in i + 1..n {
                let w = f(i, j);
                weights[i * n + j] = w;
                weights[j * n + i] = w;
            }
        }
        Self {
            n,
            weights,
            diagonal,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn diagonal(&self) -> Diagonal {
        self.diagonal
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.weights[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.weights[i * self.n..(i + 1) * self.n]
    }

    /// Row-major entries.
    pub fn as_slice(&self) -> &[f64] {
        &self.weights
    }

    /// Copy with the diagonal set to zero.
    pub fn zeroed(&self) -> Self {
        let mut out = self.clone();
        for i in 0..self.n {
            out.weights[i * self.n + i] = 0.0;
        }
        out.diagonal = Diagonal::Zeroed;
        out
    }

    /// `W v`.
    pub fn apply(&self, v: &[f64]) -> Result<Vec<f64>> {
        ensure_dim(self.n, v.len())?;
        Ok((0..self.n)
            .map(|i| self.row(i).iter().zip(v).map(|(w, x)| w * x).sum())
            .collect())
    }

    pub fn max_asymmetry(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..self.n {
            for j in 0..self.n {
                worst = worst.max((self.get(i, j) - self.get(j, i)).abs());
            }
        }
        worst
    }
}

/// Hebb rule, `w_ij = (1/n) sum_mu xi_i xi_j`, zero diagonal.
pub fn hebb_weights(memories: &MemorySet) -> Result<SynapticMatrix> {
    hebb(memories, Diagonal::Zeroed)
}

/// Storkey rule applied in stored order, zero diagonal.
pub fn storkey_weights(memories: &MemorySet) -> Result<SynapticMatrix> {
    storkey(memories, Diagonal::Zeroed)
}

/// Projection (pseudo-inverse) rule, zero diagonal. Fails on a singular
/// memory covariance.
pub fn projection_weights(memories: &MemorySet) -> Result<SynapticMatrix> {
    projection(memories, RuleOptions::default())
}

fn as_columns(memories: &MemorySet) -> Vec<Vec<f64>> {
    memories.iter().map(|m| m.iter_f64().collect()).collect()
}

fn hebb(memories: &MemorySet, diagonal: Diagonal) -> Result<SynapticMatrix> {
    let n = memories.dim();
    let xi = as_columns(memories);
    let scale = 1.0 / n as f64;
    Ok(SynapticMatrix::from_upper(n, diagonal, |i, j| {
        scale * xi.iter().map(|m| m[i] * m[j]).sum::<f64>()
    }))
}

fn storkey(memories: &MemorySet, diagonal: Diagonal) -> Result<SynapticMatrix> {
    let n = memories.dim();
    let scale = 1.0 / n as f64;
    let mut w = vec![0.0; n * n];
    let mut h = vec![0.0; n * n];
    for m in memories {
        let xi: Vec<f64> = m.iter_f64().collect();
        // h[i][j] = sum_{k != i, j} w[i][k] xi[k], from the previous iterate.
        // w[i][i] never enters, so the diagonal is left as accumulated.
        for i in 0..n {
            let full: f64 = (0..n)
                .filter(|&k| k != i)
                .map(|k| w[i * n + k] * xi[k])
                .sum();
            for j in 0..n {
                h[i * n + j] = if j == i {
                    full
                } else {
                    full - w[i * n + j] * xi[j]
                };
            }
        }
        for i in 0..n {
            for j in i..n {
                let dw = scale * (xi[i] * xi[j] - xi[i] * h[j * n + i] - h[i * n + j] * xi[j]);
                w[i * n + j] += dw;
                if i != j {
                    w[j * n + i] = w[i * n + j];
                }
            }
        }
    }
    Ok(SynapticMatrix::from_upper(n, diagonal, |i, j| w[i * n + j]))
}

fn projection(memories: &MemorySet, options: RuleOptions) -> Result<SynapticMatrix> {
    let n = memories.dim();
    let p = memories.len();
    let scale = 1.0 / n as f64;
    let xi = as_columns(memories);

    let covariance = DMatrix::from_fn(p, p, |a, b| {
        scale * xi[a].iter().zip(&xi[b]).map(|(x, y)| x * y).sum::<f64>()
    });
    let eig = SymmetricEigen::new(covariance);
    let max = eig.eigenvalues.iter().fold(0.0f64, |m, &l| m.max(l.abs()));
    let min = eig.eigenvalues.iter().fold(f64::INFINITY, |m, &l| m.min(l));
    let condition_number = if min > 0.0 { max / min } else { f64::INFINITY };

    let cutoff = max * f64::EPSILON * p as f64 * 16.0;
    let inverse_eigenvalues: Vec<f64> = if condition_number <= MAX_COVARIANCE_CONDITION {
        eig.eigenvalues.iter().map(|l| 1.0 / l).collect()
    } else {
        match options.singular {
            SingularPolicy::Error => return Err(Error::SingularCovariance { condition_number }),
            SingularPolicy::PseudoInverse => eig
                .eigenvalues
                .iter()
                .map(|&l| if l > cutoff { 1.0 / l } else { 0.0 })
                .collect(),
        }
    };
    let v = &eig.eigenvectors;
    let c_inv = DMatrix::from_fn(p, p, |a, b| {
        (0..p)
            .map(|k| v[(a, k)] * inverse_eigenvalues[k] * v[(b, k)])
            .sum::<f64>()
    });

    Ok(SynapticMatrix::from_upper(n, options.diagonal, |i, j| {
        let mut acc = 0.0;
        for a in 0..p {
            for b in 0..p {
                acc += xi[a][i] * c_inv[(a, b)] * xi[b][j];
            }
        }
        scale * acc
    }))
}
