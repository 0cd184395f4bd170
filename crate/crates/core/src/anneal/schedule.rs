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

use crate::error::{Error, Result};

/// Interpolation weights `A(t)`, `B(t)` on `[0, T]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum AnnealSchedule {
    /// `A(t) = 1 - t/T`, `B(t) = t/T`.
    Linear { total_time: f64 },
    /// Time-independent weights; used to isolate one term of `H(t)`.
    Constant { total_time: f64, a: f64, b: f64 },
}

fn check_time(total_time: f64) -> Result<()> {
    if total_time > 0.0 && total_time.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidInput(format!(
            "annealing time must be positive and finite, got {total_time}"
        )))
    }
}

impl AnnealSchedule {
    pub fn linear(total_time: f64) -> Result<Self> {
        check_time(total_time)?;
        Ok(Self::Linear { total_time })
    }

    pub fn constant(total_time: f64, a: f64, b: f64) -> Result<Self> {
        check_time(total_time)?;
        Ok(Self::Constant { total_time, a, b })
    }

    pub fn total_time(&self) -> f64 {
        match *self {
            Self::Linear { total_time } | Self::Constant { total_time, .. } => total_time,
        }
    }

    pub fn a(&self, t: f64) -> f64 {
        match *self {
            Self::Linear { total_time } => 1.0 - t / total_time,
            Self::Constant { a, .. } => a,
        }
    }

    pub fn b(&self, t: f64) -> f64 {
        match *self {
            Self::Linear { total_time } => t / total_time,
            Self::Constant { b, .. } => b,
        }
    }

    /// `(int A, int B)` over `[t0, t0 + dt]`. Both schedules are affine in
    /// `t`, so the midpoint rule is exact.
    pub fn integrated(&self, t0: f64, dt: f64) -> (f64, f64) {
        let mid = t0 + 0.5 * dt;
        (dt * self.a(mid), dt * self.b(mid))
    }
}
