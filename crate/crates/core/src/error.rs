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

use alloc::string::String;

/// Errors produced by the core layers.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// A precondition on the arguments does not hold.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// Two objects that must share a dimension do not.
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    /// The memory covariance matrix of the projection rule cannot be inverted.
    #[error("singular covariance matrix (condition number {condition_number:.3e})")]
    SingularCovariance { condition_number: f64 },

    /// A dense 2^n representation was requested above the qubit cap.
    #[error("{n} qubits exceeds the dense simulation cap of {cap}")]
    ResourceLimit { n: usize, cap: usize },

    /// Rejection sampling could not satisfy a protocol's constraints.
    #[error("infeasible instance constraints: {0}")]
    Infeasible(String),
}

pub type Result<T, E = Error> = core::result::Result<T, E>;

pub(crate) fn ensure_dim(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}
