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

//! Classical Hopfield network layer.

mod dynamics;
mod energy;
mod pattern;
mod rules;

pub use self::dynamics::{classical_update, UpdateMode, UpdateOutcome};
pub use self::energy::{
    delta_energy, delta_energy_biased, gamma_upper_bound, local_field, network_energy, BiasSpec,
};
pub use self::pattern::{hamming_distance, BipolarPattern, MemorySet};
pub use self::rules::{
    hebb_weights, projection_weights, storkey_weights, Diagonal, LearningRule, RuleOptions,
    SingularPolicy, SynapticMatrix,
};
