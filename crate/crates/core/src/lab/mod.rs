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

//! Recall experiments: instance generators, the success metric and
//! deterministic ensembles.
//!
//! Every random draw comes from a `ChaCha8Rng` seeded with
//! [`instance_seed`], so an ensemble is a pure function of its parameters
//! and master seed regardless of the order in which instances run.

mod ensemble;
mod instance;
mod metrics;
mod seed;

pub use self::ensemble::{
    aggregate, anneal_time_sweep, bias_sweep, run_ensemble, run_instance, ClassicalCheck,
    EnsembleSpec, RecallOutcome, RecallSettings, SweepSpec, DEFAULT_ENSEMBLE_SIZE,
};
pub use self::instance::{
    generate_exact_instance, generate_failure_instance, generate_instance, generate_noisy_instance,
    InstanceParams, ProblemInstance, Protocol, REJECTION_CAP,
};
pub use self::metrics::{success_indicator, EnsembleStats, DEFAULT_THRESHOLD};
pub use self::seed::{instance_seed, splitmix64, SeedKey};
