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

//! Transverse-field Ising annealing on a dense state vector.
//!
//! `H(t) = A(t) H0 + B(t) H1` with the driver `H0 = -sum_i X_i` and the
//! diagonal Ising target `H1` whose entry for spin vector `z` is the network
//! energy `E(z; theta)`. The state is propagated with first-order Magnus steps
//! `exp(-i int H)` whose action on the vector is evaluated by a scaled Taylor
//! series.

mod evolve;
mod expm;
mod hamiltonian;
mod schedule;
mod spectrum;
mod state;

pub use self::evolve::{evolve, evolve_with, magnus_step, Propagator, DEFAULT_DT};
pub use self::expm::{expm_action, SymmetricGenerator, ACTION_TOLERANCE};
pub use self::hamiltonian::{
    build_final_hamiltonian, build_initial_hamiltonian, IsingHamiltonian, TransverseField,
    DENSE_QUBIT_CAP, STATE_QUBIT_CAP,
};
pub use self::schedule::AnnealSchedule;
pub use self::spectrum::{
    instantaneous_spectrum, min_gap, spectrum_trace, MinGap, SpectrumTrace, DEGENERACY_TOLERANCE,
};
pub use self::state::{answer_overlap, uniform_superposition, QuantumState};

pub use nalgebra::Complex;
