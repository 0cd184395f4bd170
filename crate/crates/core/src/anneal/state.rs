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
use alloc::vec;
use alloc::vec::Vec;

use nalgebra::Complex;

use super::hamiltonian::{check_qubits, STATE_QUBIT_CAP};
use crate::error::{ensure_dim, Error, Result};
use crate::hopfield::BipolarPattern;

/// Normalization slack accepted when wrapping external amplitudes.
const NORM_TOLERANCE: f64 = 1e-9;

/// Pure state of an `n`-qubit register in the computational basis.
#[derive(Debug, Clone, PartialEq)]
pub struct QuantumState {
    n: usize,
    amplitudes: Vec<Complex<f64>>,
}

impl QuantumState {
    pub fn from_amplitudes(n: usize, amplitudes: Vec<Complex<f64>>) -> Result<Self> {
        check_qubits(n, STATE_QUBIT_CAP)?;
        ensure_dim(1 << n, amplitudes.len())?;
        let state = Self { n, amplitudes };
        let norm = state.norm();
        if (norm - 1.0).abs() > NORM_TOLERANCE {
            return Err(Error::InvalidInput(format!(
                "state norm {norm} differs from 1"
            )));
        }
        Ok(state)
    }

    /// Computational basis state `|s>`.
    pub fn basis(n: usize, s: usize) -> Result<Self> {
        check_qubits(n, STATE_QUBIT_CAP)?;
        if s >= 1 << n {
            return Err(Error::InvalidInput(format!(
                "basis index {s} out of range for {n} qubits"
            )));
        }
        let mut amplitudes = vec![Complex::new(0.0, 0.0); 1 << n];
        amplitudes[s] = Complex::new(1.0, 0.0);
        Ok(Self { n, amplitudes })
    }

    pub(crate) fn from_raw(n: usize, amplitudes: Vec<Complex<f64>>) -> Self {
        debug_assert_eq!(amplitudes.len(), 1 << n);
        Self { n, amplitudes }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex<f64>] {
        &self.amplitudes
    }

    pub(crate) fn amplitudes_mut(&mut self) -> &mut [Complex<f64>] {
        &mut self.amplitudes
    }

    pub fn norm(&self) -> f64 {
        libm::sqrt(self.amplitudes.iter().map(|a| a.norm_sqr()).sum())
    }

    pub fn probability(&self, s: usize) -> f64 {
        self.amplitudes[s].norm_sqr()
    }

    pub fn probabilities(&self) -> Vec<f64> {
        self.amplitudes.iter().map(|a| a.norm_sqr()).collect()
    }

    /// `|<phi|psi>|^2`.
    pub fn fidelity(&self, other: &Self) -> Result<f64> {
        ensure_dim(self.dim(), other.dim())?;
        let inner: Complex<f64> = self
            .amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum();
        Ok(inner.norm_sqr())
    }
}

/// Ground state of the driver: every amplitude `2^(-n/2)`.
pub fn uniform_superposition(n: usize) -> Result<QuantumState> {
    check_qubits(n, STATE_QUBIT_CAP)?;
    let dim = 1usize << n;
    let a = 1.0 / libm::sqrt(dim as f64);
    Ok(QuantumState::from_raw(n, vec![Complex::new(a, 0.0); dim]))
}

/// Probability of measuring the basis state that encodes `answer`.
pub fn answer_overlap(state: &QuantumState, answer: &BipolarPattern) -> Result<f64> {
    ensure_dim(state.n(), answer.len())?;
    Ok(state.probability(answer.basis_index()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn uniform_amplitudes() {
        let u = uniform_superposition(2).unwrap();
        for a in u.amplitudes() {
            assert_eq!(*a, Complex::new(0.5, 0.0));
        }
        for n in 1..=10 {
            assert!((uniform_superposition(n).unwrap().norm() - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn overlap_examples() {
        let answer = BipolarPattern::new(alloc::vec![1, -1, -1, 1]).unwrap();
        let basis = QuantumState::basis(4, answer.basis_index()).unwrap();
        assert_eq!(answer_overlap(&basis, &answer).unwrap(), 1.0);
        let u = uniform_superposition(4).unwrap();
        assert!((answer_overlap(&u, &answer).unwrap() - 1.0 / 16.0).abs() < 1e-15);
        let other = QuantumState::basis(4, answer.complement().basis_index()).unwrap();
        assert_eq!(answer_overlap(&other, &answer).unwrap(), 0.0);
        assert!(answer_overlap(&u, &BipolarPattern::ones(3).unwrap()).is_err());
    }

    #[test]
    fn rejects_unnormalized() {
        let amps = vec![Complex::new(1.0, 0.0), Complex::new(1.0, 0.0)];
        assert!(QuantumState::from_amplitudes(1, amps).is_err());
    }
}
