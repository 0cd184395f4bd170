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

//! Hopfield associative memory recall by simulated adiabatic quantum
//! optimization.
//!
//! The crate is split into three layers:
//!
//! * [`hopfield`]: bipolar patterns, the Hebb, Storkey and projection learning
//!   rules, the Ising energy, classical threshold dynamics and bias bounds.
//! * [`anneal`]: the transverse-field Ising Hamiltonian, state-vector
//!   evolution under first-order Magnus propagators, instantaneous spectra
//!   and the minimum gap.
//! * [`lab`]: problem-instance generators for the recall protocols, success
//!   metrics and deterministic ensembles.
//!
//! Everything here is `no_std` (with `alloc`) and free of IO. File formats,
//! the CLI and parallel sweep execution live in the `aqo-recall` crate.
//!
//! Basis convention: qubit `i` (0-based) is bit `1 << i` of the basis index,
//! and a set bit encodes spin `+1` (`z_i = 2 s_i - 1`).

#![no_std]
#![deny(missing_debug_implementations)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod anneal;
mod error;
pub mod hopfield;
pub mod lab;

pub use crate::error::{Error, Result};
