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

use nalgebra::DMatrix;

use crate::error::{ensure_dim, Error, Result};
use crate::hopfield::{BiasSpec, SynapticMatrix};

/// Largest register for which dense `2^n x 2^n` matrices are built.
pub const DENSE_QUBIT_CAP: usize = 12;

/// Largest register for which state vectors are allocated.
pub const STATE_QUBIT_CAP: usize = 24;

pub(crate) fn check_qubits(n: usize, cap: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidInput(
            "register needs at least one qubit".into(),
        ));
    }
    if n > cap {
        return Err(Error::ResourceLimit { n, cap });
    }
    Ok(())
}

/// The driver `H0 = -sum_i X_i`, applied without materializing it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TransverseField {
    n: usize,
}

impl TransverseField {
    pub fn new(n: usize) -> Result<Self> {
        check_qubits(n, STATE_QUBIT_CAP)?;
        Ok(Self { n })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        1 << self.n
    }

    /// `out[s] = -sum_i v[s ^ (1 << i)]`, generic over the element type.
    pub fn apply_into<T>(&self, v: &[T], out: &mut [T])
    where
        T: Copy + core::ops::Add<Output = T> + core::ops::Neg<Output = T> + Default,
    {
        for (s, o) in out.iter_mut().enumerate() {
            let mut acc = T::default();
            for i in 0..self.n {
                acc = acc + v[s ^ (1 << i)];
            }
            *o = -acc;
        }
    }

    pub fn to_dense(&self) -> Result<DMatrix<f64>> {
        build_initial_hamiltonian(self.n)
    }
}

/// Dense matrix of `-sum_i X_i` in the computational basis: entry `-1` where
/// the row and column indices differ in exactly one bit.
pub fn build_initial_hamiltonian(n: usize) -> Result<DMatrix<f64>> {
    check_qubits(n, DENSE_QUBIT_CAP)?;
    let dim = 1usize << n;
    Ok(DMatrix::from_fn(dim, dim, |r, c| {
        if (r ^ c).count_ones() == 1 {
            -1.0
        } else {
            0.0
        }
    }))
}

/// Ising target with couplings `J = w` and fields `h = theta`, stored as its
/// diagonal in the computational basis.
///
/// The diagonal entry for spin vector `z` is
/// `-sum_{i<j} J_ij z_i z_j - sum_i h_i z_i - 1/2 sum_i J_ii`, which is the
/// network energy `E(z; theta)` (the last term vanishes for network weights).
#[derive(Debug, Clone, PartialEq)]
pub struct IsingHamiltonian {
    couplings: SynapticMatrix,
    fields: Vec<f64>,
    diagonal: Vec<f64>,
}

/// Builds the Ising target for weights and bias on `n <= STATE_QUBIT_CAP`
/// neurons.
pub fn build_final_hamiltonian(
    weights: &SynapticMatrix,
    bias: &BiasSpec,
) -> Result<IsingHamiltonian> {
    let n = weights.n();
    ensure_dim(n, bias.n())?;
    check_qubits(n, STATE_QUBIT_CAP)?;
    let fields = bias.thresholds().to_vec();
    let offset: f64 = -0.5 * (0..n).map(|i| weights.get(i, i)).sum::<f64>();
    let spin = |s: usize, i: usize| if s >> i & 1 == 1 { 1.0 } else { -1.0 };
    let diagonal = (0..1usize << n)
        .map(|s| {
            let mut e = offset;
            for (i, &h) in fields.iter().enumerate() {
                let zi = spin(s, i);
                e -= h * zi;
                for j in i + 1..n {
                    e -= weights.get(i, j) * zi * spin(s, j);
                }
            }
            e
        })
        .collect();
    Ok(IsingHamiltonian {
        couplings: weights.clone(),
        fields,
        diagonal,
    })
}

impl IsingHamiltonian {
    pub fn n(&self) -> usize {
        self.fields.len()
    }

    pub fn dim(&self) -> usize {
        self.diagonal.len()
    }

    pub fn couplings(&self) -> &SynapticMatrix {
        &self.couplings
    }

    pub fn fields(&self) -> &[f64] {
        &self.fields
    }

    /// `<s|H1|s>` for every basis index `s`.
    pub fn energies(&self) -> &[f64] {
        &self.diagonal
    }

    pub fn ground_energy(&self) -> f64 {
        self.diagonal.iter().copied().fold(f64::INFINITY, f64::min)
    }

    /// Basis indices whose energy lies within `tolerance` of the minimum.
    pub fn ground_states(&self, tolerance: f64) -> Vec<usize> {
        let e0 = self.ground_energy();
        (0..self.dim())
            .filter(|&s| self.diagonal[s] - e0 <= tolerance)
            .collect()
    }

    pub fn to_dense(&self) -> Result<DMatrix<f64>> {
        check_qubits(self.n(), DENSE_QUBIT_CAP)?;
        Ok(DMatrix::from_diagonal(
            &nalgebra::DVector::from_column_slice(&self.diagonal),
        ))
    }

    pub(crate) fn check_matches(&self, driver: &TransverseField) -> Result<()> {
        if driver.n() != self.n() {
            return Err(Error::InvalidInput(format!(
                "driver has {} qubits but target has {}",
                driver.n(),
                self.n()
            )));
        }
        Ok(())
    }
}
