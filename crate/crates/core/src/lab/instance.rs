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

//! Problem instances for the four recall protocols.
//!
//! | protocol   | memories                                   | input key                     |
//! |------------|--------------------------------------------|-------------------------------|
//! | `exact`    | `p` distinct uniform patterns              | the answer memory             |
//! | `noisy`    | others at Hamming distance >= 2 from answer| answer with one bit flipped   |
//! | `failure1` | `p` distinct uniform patterns              | distance exactly 1 from the nearest memory |
//! | `failure2` | `p` distinct uniform patterns              | distance exactly 2 from the nearest memory |
//!
//! For the failure protocols the target is the (unstored) input itself: a
//! "success" there counts a recall failure of the memory.

use alloc::format;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::hopfield::{hamming_distance, BipolarPattern, LearningRule, MemorySet};

/// Attempts per sampled pattern before a constraint is declared infeasible.
pub const REJECTION_CAP: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Protocol {
    Exact,
    Noisy,
    Failure1,
    Failure2,
}

impl Protocol {
    pub const ALL: [Protocol; 4] = [Self::Exact, Self::Noisy, Self::Failure1, Self::Failure2];

    pub fn name(self) -> &'static str {
        match self {
            Self::Exact => "exact",
            Self::Noisy => "noisy",
            Self::Failure1 => "failure1",
            Self::Failure2 => "failure2",
        }
    }

    /// Stable identifier mixed into instance seeds.
    pub fn id(self) -> u64 {
        match self {
            Self::Exact => 0,
            Self::Noisy => 1,
            Self::Failure1 => 2,
            Self::Failure2 => 3,
        }
    }

    /// Whether success means recalling the input rather than the answer.
    pub fn targets_input(self) -> bool {
        matches!(self, Self::Failure1 | Self::Failure2)
    }
}

impl fmt::Display for Protocol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Protocol {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| {
                Error::InvalidInput(format!(
                    "unknown protocol {s:?} (expected exact, noisy, failure1 or failure2)"
                ))
            })
    }
}

/// Parameters shared by every instance of a cell.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InstanceParams {
    pub n: usize,
    pub p: usize,
    pub rule: LearningRule,
    pub gamma: f64,
    pub anneal_time: f64,
}

impl InstanceParams {
    fn validate(&self) -> Result<()> {
        if self.n == 0 || self.n > 24 {
            return Err(Error::InvalidInput(format!("n = {} out of range", self.n)));
        }
        if self.p == 0 || self.p > 1usize << (self.n - 1) {
            return Err(Error::InvalidInput(format!(
                "p = {} must lie in [1, 2^(n-1)] = [1, {}]",
                self.p,
                1usize << (self.n - 1)
            )));
        }
        if !(self.gamma >= 0.0 && self.gamma.is_finite()) {
            return Err(Error::InvalidInput(format!(
                "gamma = {} is invalid",
                self.gamma
            )));
        }
        if !(self.anneal_time > 0.0 && self.anneal_time.is_finite()) {
            return Err(Error::InvalidInput(format!(
                "annealing time {} is invalid",
                self.anneal_time
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ProblemInstance {
    pub protocol: Protocol,
    pub params: InstanceParams,
    pub memories: MemorySet,
    /// Index (0-based) of the answer memory, or the nominal nearest memory
    /// for the failure protocols.
    pub answer_index: usize,
    pub input_key: BipolarPattern,
    pub seed: u64,
}

impl ProblemInstance {
    pub fn answer(&self) -> &BipolarPattern {
        &self.memories.patterns()[self.answer_index]
    }

    /// The state whose probability is scored.
    pub fn target(&self) -> &BipolarPattern {
        if self.protocol.targets_input() {
            &self.input_key
        } else {
            self.answer()
        }
    }

    /// Re-checks the protocol's constraints.
    pub fn validate(&self) -> Result<()> {
        let n = self.params.n;
        if self.memories.dim() != n || self.input_key.len() != n {
            return Err(Error::InvalidInput("instance dimensions disagree".into()));
        }
        if self.answer_index >= self.memories.len() {
            return Err(Error::InvalidInput("answer index out of range".into()));
        }
        let answer = self.answer();
        let violation = |what: &str| Err(Error::InvalidInput(format!("{}: {what}", self.protocol)));
        match self.protocol {
            Protocol::Exact => {
                if &self.input_key != answer {
                    return violation("input differs from answer");
                }
            }
            Protocol::Noisy => {
                if hamming_distance(&self.input_key, answer)? != 1 {
                    return violation("input is not at distance 1 from the answer");
                }
                for (mu, m) in self.memories.iter().enumerate() {
                    if mu != self.answer_index && hamming_distance(m, answer)? < 2 {
                        return violation("a memory lies within distance 1 of the answer");
                    }
                }
            }
            Protocol::Failure1 | Protocol::Failure2 => {
                let d = if self.protocol == Protocol::Failure1 {
                    1
                } else {
                    2
                };
                if self.memories.min_distance_to(&self.input_key)? != d
                    || hamming_distance(&self.input_key, answer)? != d
                {
                    return violation("input is not at the required distance");
                }
            }
        }
        let patterns = self.memories.patterns();
        for a in 0..patterns.len() {
            for b in a + 1..patterns.len() {
                if patterns[a] == patterns[b] {
                    return violation("memories are not distinct");
                }
            }
        }
        Ok(())
    }
}

fn random_pattern(rng: &mut ChaCha8Rng, n: usize) -> BipolarPattern {
    let spins = (0..n)
        .map(|_| if rng.random::<bool>() { 1 } else { -1 })
        .collect();
    BipolarPattern::new(spins).expect("n >= 1 and spins are bipolar")
}

/// Draws a uniform pattern satisfying `accept`, up to [`REJECTION_CAP`] tries.
fn sample_until(
    rng: &mut ChaCha8Rng,
    n: usize,
    what: &str,
    mut accept: impl FnMut(&BipolarPattern) -> bool,
) -> Result<BipolarPattern> {
    for _ in 0..REJECTION_CAP {
        let candidate = random_pattern(rng, n);
        if accept(&candidate) {
            return Ok(candidate);
        }
    }
    Err(Error::Infeasible(format!(
        "no {what} found in {REJECTION_CAP} draws"
    )))
}

/// Answer first, then `p - 1` distinct others satisfying `keep`, with the
/// answer placed at a uniform position.
fn sample_memories(
    rng: &mut ChaCha8Rng,
    n: usize,
    p: usize,
    min_distance_from_answer: usize,
) -> Result<(Vec<BipolarPattern>, usize)> {
    let answer = random_pattern(rng, n);
    let mut others: Vec<BipolarPattern> = Vec::with_capacity(p - 1);
    for _ in 1..p {
        let next = sample_until(rng, n, "distinct memory", |c| {
            hamming_distance(c, &answer).unwrap_or(0) >= min_distance_from_answer
                && others.iter().all(|o| o != c)
        })?;
        others.push(next);
    }
    let answer_index = rng.random_range(0..p);
    others.insert(answer_index, answer);
    Ok((others, answer_index))
}

fn feasible(params: &InstanceParams, needed: usize, what: &str) -> Result<()> {
    let n = params.n;
    let available = (1usize << n).saturating_sub(needed);
    if params.p - 1 > available {
        return Err(Error::InvalidInput(format!(
            "cannot place {} {what} among {available} admissible patterns for n = {n}",
            params.p - 1
        )));
    }
    Ok(())
}

/// Exact-input protocol: the input key is the answer memory itself.
pub fn generate_exact_instance(params: InstanceParams, seed: u64) -> Result<ProblemInstance> {
    params.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (memories, answer_index) = sample_memories(&mut rng, params.n, params.p, 1)?;
    let input_key = memories[answer_index].clone();
    Ok(ProblemInstance {
        protocol: Protocol::Exact,
        params,
        memories: MemorySet::new(memories)?,
        answer_index,
        input_key,
        seed,
    })
}

/// Noisy-input protocol: other memories at distance >= 2 from the answer and
/// the input one random flip away from it.
pub fn generate_noisy_instance(params: InstanceParams, seed: u64) -> Result<ProblemInstance> {
    params.validate()?;
    feasible(&params, 1 + params.n, "memories at distance >= 2")?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (memories, answer_index) = sample_memories(&mut rng, params.n, params.p, 2)?;
    let flip = rng.random_range(0..params.n);
    let input_key = memories[answer_index].with_flipped(flip)?;
    Ok(ProblemInstance {
        protocol: Protocol::Noisy,
        params,
        memories: MemorySet::new(memories)?,
        answer_index,
        input_key,
        seed,
    })
}

/// Failure protocol: the input is exactly `distance` flips from a nominal
/// memory and at least that far from every memory.
pub fn generate_failure_instance(
    params: InstanceParams,
    seed: u64,
    distance: usize,
) -> Result<ProblemInstance> {
    params.validate()?;
    let protocol = match distance {
        1 => Protocol::Failure1,
        2 => Protocol::Failure2,
        d => {
            return Err(Error::InvalidInput(format!(
                "failure distance must be 1 or 2, got {d}"
            )))
        }
    };
    if distance > params.n {
        return Err(Error::InvalidInput(format!(
            "cannot flip {distance} of {} spins",
            params.n
        )));
    }
    // Some memory sets admit no valid input at all, so each attempt redraws
    // the memories together with the input.
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..REJECTION_CAP {
        let (memories, answer_index) = sample_memories(&mut rng, params.n, params.p, 1)?;
        let mut input = memories[answer_index].clone();
        for i in index::sample(&mut rng, params.n, distance) {
            input = input.with_flipped(i)?;
        }
        let set = MemorySet::new(memories)?;
        if set.min_distance_to(&input)? == distance {
            return Ok(ProblemInstance {
                protocol,
                params,
                memories: set,
                answer_index,
                input_key: input,
                seed,
            });
        }
    }
    Err(Error::Infeasible(format!(
        "no input at distance {distance} from every memory in {REJECTION_CAP} draws"
    )))
}

pub fn generate_instance(
    protocol: Protocol,
    params: InstanceParams,
    seed: u64,
) -> Result<ProblemInstance> {
    match protocol {
        Protocol::Exact => generate_exact_instance(params, seed),
        Protocol::Noisy => generate_noisy_instance(params, seed),
        Protocol::Failure1 => generate_failure_instance(params, seed, 1),
        Protocol::Failure2 => generate_failure_instance(params, seed, 2),
    }
}
