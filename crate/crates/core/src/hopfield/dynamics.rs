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

//! Threshold update dynamics of the classical network.
//!
//! Neuron `i` becomes `+1` when `sum_j w_ij z_j + theta_i > 0` and `-1`
//! otherwise, so an exact tie goes to `-1`. The threshold enters with the
//! same sign as in [`network_energy`](super::network_energy), which makes the
//! energy a Lyapunov function of asynchronous updates.

use alloc::format;
use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::energy::{local_field, BiasSpec};
use super::pattern::BipolarPattern;
use super::rules::SynapticMatrix;
use crate::error::{ensure_dim, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UpdateMode {
    /// All neurons update from the same snapshot.
    Synchronous,
    /// One neuron at a time, in a fresh seeded permutation every sweep.
    Asynchronous,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UpdateOutcome {
    pub state: BipolarPattern,
    /// A full sweep left the state unchanged.
    pub converged: bool,
    pub sweeps_used: usize,
}

fn threshold(field: f64) -> i8 {
    if field > 0.0 {
        1
    } else {
        -1
    }
}

/// Runs threshold updates from `state` until a sweep changes nothing or
/// `max_sweeps` sweeps have run.
pub fn classical_update(
    state: &BipolarPattern,
    weights: &SynapticMatrix,
    bias: &BiasSpec,
    mode: UpdateMode,
    max_sweeps: usize,
    seed: u64,
) -> Result<UpdateOutcome> {
    let n = weights.n();
    ensure_dim(n, state.len())?;
    ensure_dim(n, bias.n())?;
    if max_sweeps == 0 {
        return Err(Error::InvalidInput(format!(
            "max_sweeps must be at least 1, got {max_sweeps}"
        )));
    }
    let theta = bias.thresholds();
    let mut z = state.clone();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut order: Vec<usize> = (0..n).collect();

    for sweep in 1..=max_sweeps {
        let changed = match mode {
            UpdateMode::Synchronous => {
                let next: Vec<i8> = (0..n)
                    .map(|i| threshold(local_field(&z, weights, i) + theta[i]))
                    .collect();
                let changed = next.as_slice() != z.spins();
                for (i, s) in next.into_iter().enumerate() {
                    z.set(i, s);
                }
                changed
            }
            UpdateMode::Asynchronous => {
                order.shuffle(&mut rng);
                let mut changed = false;
                for &i in &order {
                    let s = threshold(local_field(&z, weights, i) + theta[i]);
                    if s != z.spins()[i] {
                        z.set(i, s);
                        changed = true;
                    }
                }
                changed
            }
        };
        if !changed {
            return Ok(UpdateOutcome {
                state: z,
                converged: true,
                sweeps_used: sweep,
            });
        }
    }
    Ok(UpdateOutcome {
        state: z,
        converged: false,
        sweeps_used: max_sweeps,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hopfield::{
        delta_energy_biased, hebb_weights, network_energy, LearningRule, MemorySet, RuleOptions,
    };
    use alloc::vec;
    use rand::Rng;

    fn pat(s: &[i8]) -> BipolarPattern {
        BipolarPattern::new(s.to_vec()).unwrap()
    }

    fn all_states(n: usize) -> impl Iterator<Item = BipolarPattern> {
        (0..1usize << n).map(move |s| BipolarPattern::from_basis_index(s, n).unwrap())
    }

    fn is_fixed_point(z: &BipolarPattern, w: &SynapticMatrix, bias: &BiasSpec) -> bool {
        (0..z.len()).all(|i| threshold(local_field(z, w, i) + bias.thresholds()[i]) == z.spins()[i])
    }

    #[test]
    fn stored_memory_is_immediately_stable() {
        let xi = pat(&[1, -1, -1, 1]);
        let w = hebb_weights(&MemorySet::new(vec![xi.clone()]).unwrap()).unwrap();
        // oracle: sign(W xi) = xi
        let field = w.apply(&xi.iter_f64().collect::<Vec<_>>()).unwrap();
        for (f, z) in field.iter().zip(xi.iter_f64()) {
            assert_eq!(f.signum(), z);
        }
        let zero = BiasSpec::unbiased(4).unwrap();
        for mode in [UpdateMode::Synchronous, UpdateMode::Asynchronous] {
            let out = classical_update(&xi, &w, &zero, mode, 10, 7).unwrap();
            assert_eq!(out.state, xi);
            assert!(out.converged);
            assert_eq!(out.sweeps_used, 1);
            let out = classical_update(&xi.complement(), &w, &zero, mode, 10, 7).unwrap();
            assert_eq!(out.state, xi.complement());
            assert_eq!(out.sweeps_used, 1);
        }
    }

    #[test]
    fn hamming_one_starts_recover_memory() {
        let xi = pat(&[1, -1, -1, 1]);
        let w = hebb_weights(&MemorySet::new(vec![xi.clone()]).unwrap()).unwrap();
        let zero = BiasSpec::unbiased(4).unwrap();
        let biased = BiasSpec::new(xi.clone(), 0.2).unwrap();
        for k in 0..4 {
            let start = xi.with_flipped(k).unwrap();
            for seed in 0..5 {
                let out = classical_update(&start, &w, &zero, UpdateMode::Asynchronous, 20, seed)
                    .unwrap();
                assert!(out.converged);
                assert!(out.state == xi || out.state == xi.complement());
                let out = classical_update(&start, &w, &biased, UpdateMode::Asynchronous, 20, seed)
                    .unwrap();
                assert_eq!(out.state, xi);
            }
        }
    }

    #[test]
    fn fixed_points_are_exactly_the_stable_states() {
        for n in 1..=4 {
            let h = MemorySet::hadamard(4).unwrap();
            let m = MemorySet::new(
                h.iter()
                    .take(2)
                    .map(|x| BipolarPattern::new(x.spins()[..n].to_vec()).unwrap())
                    .collect(),
            )
            .unwrap();
            for rule in LearningRule::ALL {
                let options = RuleOptions {
                    singular: crate::hopfield::SingularPolicy::PseudoInverse,
                    ..Default::default()
                };
                let w = rule.weights(&m, options).unwrap();
                for gamma in [0.0, 0.4] {
                    let bias = BiasSpec::new(m.get(0).unwrap().clone(), gamma).unwrap();
                    for z in all_states(n) {
                        for mode in [UpdateMode::Synchronous, UpdateMode::Asynchronous] {
                            let out = classical_update(&z, &w, &bias, mode, 50, 3).unwrap();
                            let stable = out.converged && out.sweeps_used == 1;
                            assert_eq!(stable, is_fixed_point(&z, &w, &bias));
                            if out.converged {
                                assert!(is_fixed_point(&out.state, &w, &bias));
                            }
                        }
                        // ties break towards -1, so symmetry needs nonzero fields
                        let tie_free = (0..n).all(|i| local_field(&z, &w, i) != 0.0);
                        if gamma == 0.0 && tie_free {
                            assert_eq!(
                                is_fixed_point(&z, &w, &bias),
                                is_fixed_point(&z.complement(), &w, &bias)
                            );
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn asynchronous_updates_never_raise_energy() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for n in 5..=8 {
            for _ in 0..20 {
                let p = rng.random_range(1..=n);
                let m = MemorySet::new(
                    (0..p)
                        .map(|_| {
                            BipolarPattern::new(
                                (0..n).map(|_| if rng.random() { 1 } else { -1 }).collect(),
                            )
                            .unwrap()
                        })
                        .collect(),
                )
                .unwrap();
                let w = LearningRule::Storkey
                    .weights(&m, RuleOptions::default())
                    .unwrap();
                let key = m.get(0).unwrap().clone();
                let bias = BiasSpec::new(key, rng.random_range(0.0..1.0)).unwrap();
                let mut z = BipolarPattern::new(
                    (0..n).map(|_| if rng.random() { 1 } else { -1 }).collect(),
                )
                .unwrap();
                for _ in 0..4 * n {
                    let k = rng.random_range(0..n);
                    let before = network_energy(&z, &w, &bias).unwrap();
                    let d = delta_energy_biased(&z, k, &w, &bias).unwrap();
                    let s = threshold(local_field(&z, &w, k) + bias.thresholds()[k]);
                    z.set(k, s);
                    let after = network_energy(&z, &w, &bias).unwrap();
                    assert!(after <= before + 1e-12);
                    assert!((after - before - d).abs() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn asynchronous_order_is_seeded() {
        let m = MemorySet::hadamard(8).unwrap().truncated(3).unwrap();
        let w = hebb_weights(&m).unwrap();
        let zero = BiasSpec::unbiased(8).unwrap();
        let start = pat(&[1, 1, -1, 1, -1, -1, 1, 1]);
        let a = classical_update(&start, &w, &zero, UpdateMode::Asynchronous, 30, 99).unwrap();
        let b = classical_update(&start, &w, &zero, UpdateMode::Asynchronous, 30, 99).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn zero_sweeps_rejected() {
        let w = SynapticMatrix::from_row_major(1, vec![0.0]).unwrap();
        let zero = BiasSpec::unbiased(1).unwrap();
        assert!(classical_update(&pat(&[1]), &w, &zero, UpdateMode::Synchronous, 0, 0).is_err());
    }
}
