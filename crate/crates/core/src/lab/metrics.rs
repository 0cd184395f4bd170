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

use super::instance::Protocol;
use crate::hopfield::LearningRule;

/// Default success threshold `x` on the answer probability.
pub const DEFAULT_THRESHOLD: f64 = 2.0 / 3.0;

/// `f_x`: whether the answer probability reaches the threshold.
pub fn success_indicator(p_ans: f64, x: f64) -> bool {
    p_ans >= x
}

/// Mean success `<f_x>` of one ensemble cell with its binomial variance
/// `<f_x> (1 - <f_x>)`.
#[derive(Debug, Clone, PartialEq)]
pub struct EnsembleStats {
    pub protocol: Protocol,
    pub rule: LearningRule,
    pub n: usize,
    pub p: usize,
    pub gamma: f64,
    pub anneal_time: f64,
    pub x: f64,
    pub master_seed: u64,
    pub count: usize,
    pub successes: usize,
    pub mean_success: f64,
    pub variance: f64,
    /// Instances where the classical dynamics and the annealer both settled
    /// on a definite pattern and the patterns differ.
    pub disagreements: usize,
}

impl EnsembleStats {
    pub(crate) fn mean_and_variance(successes: usize, count: usize) -> (f64, f64) {
        let mean = successes as f64 / count as f64;
        (mean, mean * (1.0 - mean))
    }

    /// Standard error of the mean, `sqrt(variance / N)`.
    pub fn sigma(&self) -> f64 {
        libm::sqrt(self.variance / self.count as f64)
    }
}
