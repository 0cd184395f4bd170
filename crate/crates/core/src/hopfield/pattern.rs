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
use core::fmt;

use crate::error::{ensure_dim, Error, Result};

/// A vector of `n >= 1` spins, each exactly `+1` or `-1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BipolarPattern(Vec<i8>);

impl BipolarPattern {
    pub fn new(spins: Vec<i8>) -> Result<Self> {
        if spins.is_empty() {
            return Err(Error::InvalidInput(
                "pattern must have at least one spin".into(),
            ));
        }
        if let Some(pos) = spins.iter().position(|&s| s != 1 && s != -1) {
            return Err(Error::InvalidInput(format!(
                "spin {} at position {pos} is not +1 or -1",
                spins[pos]
            )));
        }
        Ok(Self(spins))
    }

    /// All-`+1` pattern of length `n`.
    pub fn ones(n: usize) -> Result<Self> {
        Self::new(alloc::vec![1; n])
    }

    /// Decodes a computational-basis index: bit `i` set means spin `i` is `+1`.
    pub fn from_basis_index(index: usize, n: usize) -> Result<Self> {
        if n == 0 || n >= usize::BITS as usize || index >> n != 0 {
            return Err(Error::InvalidInput(format!(
                "basis index {index} does not fit in {n} qubits"
            )));
        }
        Ok(Self(
            (0..n)
                .map(|i| if index >> i & 1 == 1 { 1 } else { -1 })
                .collect(),
        ))
    }

    /// Basis index with `s_i = (z_i + 1) / 2` at bit `i`.
    pub fn basis_index(&self) -> usize {
        self.0
            .iter()
            .enumerate()
            .fold(0, |acc, (i, &s)| if s == 1 { acc | 1 << i } else { acc })
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn spins(&self) -> &[i8] {
        &self.0
    }

    pub fn get(&self, i: usize) -> Option<i8> {
        self.0.get(i).copied()
    }

    pub fn iter_f64(&self) -> impl ExactSizeIterator<Item = f64> + '_ {
        self.0.iter().map(|&s| f64::from(s))
    }

    /// Global spin flip `-z`.
    pub fn complement(&self) -> Self {
        Self(self.0.iter().map(|&s| -s).collect())
    }

    pub fn with_flipped(&self, index: usize) -> Result<Self> {
        if index >= self.len() {
            return Err(Error::InvalidInput(format!(
                "flip index {index} out of range for {} spins",
                self.len()
            )));
        }
        let mut spins = self.0.clone();
        spins[index] = -spins[index];
        Ok(Self(spins))
    }

    pub(crate) fn set(&mut self, index: usize, spin: i8) {
        debug_assert!(spin == 1 || spin == -1);
        self.0[index] = spin;
    }

    /// Inner product `sum_i a_i b_i`.
    pub fn dot(&self, other: &Self) -> Result<i64> {
        ensure_dim(self.len(), other.len())?;
        Ok(self
            .0
            .iter()
            .zip(&other.0)
            .map(|(&a, &b)| i64::from(a) * i64::from(b))
            .sum())
    }
}

impl fmt::Display for BipolarPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, s) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            f.write_str(if *s == 1 { "+1" } else { "-1" })?;
        }
        Ok(())
    }
}

/// Number of positions where `a` and `b` differ.
pub fn hamming_distance(a: &BipolarPattern, b: &BipolarPattern) -> Result<usize> {
    ensure_dim(a.len(), b.len())?;
    Ok(a.0.iter().zip(&b.0).filter(|(x, y)| x != y).count())
}

/// An ordered, non-empty list of patterns sharing one length.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MemorySet {
    patterns: Vec<BipolarPattern>,
}

impl MemorySet {
    pub fn new(patterns: Vec<BipolarPattern>) -> Result<Self> {
        let Some(first) = patterns.first() else {
            return Err(Error::InvalidInput("memory set is empty".into()));
        };
        let n = first.len();
        for (mu, pattern) in patterns.iter().enumerate() {
            if pattern.len() != n {
                return Err(Error::InvalidInput(format!(
                    "memory {mu} has length {} but memory 0 has length {n}",
                    pattern.len()
                )));
            }
        }
        Ok(Self { patterns })
    }

    /// Columns of the Sylvester Hadamard matrix of order `n` (a power of two).
    pub fn hadamard(n: usize) -> Result<Self> {
        if n == 0 || !n.is_power_of_two() {
            return Err(Error::InvalidInput(format!(
                "Hadamard order {n} is not a power of two"
            )));
        }
        // H[i][j] = (-1)^popcount(i & j)
        let columns = (0..n)
            .map(|j| {
                let spins = (0..n)
                    .map(|i| if (i & j).count_ones() % 2 == 0 { 1 } else { -1 })
                    .collect();
                BipolarPattern(spins)
            })
            .collect();
        Ok(Self { patterns: columns })
    }

    /// Number of neurons `n`.
    pub fn dim(&self) -> usize {
        self.patterns[0].len()
    }

    /// Number of stored memories `p`.
    pub fn len(&self) -> usize {
        self.patterns.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn patterns(&self) -> &[BipolarPattern] {
        &self.patterns
    }

    pub fn get(&self, mu: usize) -> Option<&BipolarPattern> {
        self.patterns.get(mu)
    }

    pub fn iter(&self) -> core::slice::Iter<'_, BipolarPattern> {
        self.patterns.iter()
    }

    /// The first `p` memories.
    pub fn truncated(&self, p: usize) -> Result<Self> {
        if p == 0 || p > self.len() {
            return Err(Error::InvalidInput(format!(
                "cannot take {p} of {} memories",
                self.len()
            )));
        }
        Ok(Self {
            patterns: self.patterns[..p].to_vec(),
        })
    }

    /// Minimum Hamming distance from `probe` to any stored memory.
    pub fn min_distance_to(&self, probe: &BipolarPattern) -> Result<usize> {
        let mut best = usize::MAX;
        for pattern in &self.patterns {
            best = best.min(hamming_distance(pattern, probe)?);
        }
        Ok(best)
    }

    pub fn contains(&self, probe: &BipolarPattern) -> bool {
        self.patterns.iter().any(|p| p == probe)
    }
}

impl<'a> IntoIterator for &'a MemorySet {
    type Item = &'a BipolarPattern;
    type IntoIter = core::slice::Iter<'a, BipolarPattern>;

    fn into_iter(self) -> Self::IntoIter {
        self.patterns.iter()
    }
}
