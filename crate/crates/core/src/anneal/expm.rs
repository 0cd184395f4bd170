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

//! Action of `exp(-i G)` on a vector for real symmetric `G = a H0 + b D`.
//!
//! Truncated Taylor series with scaling, in the style of Al-Mohy and Higham:
//! the generator is shifted to centre its diagonal, split into `s` substeps of
//! norm at most [`SUBSTEP_NORM`], and each substep's series is cut once two
//! consecutive terms fall below the tolerance relative to the partial sum.

use alloc::vec::Vec;

use nalgebra::Complex;

use super::hamiltonian::TransverseField;
use crate::error::{ensure_dim, Result};

/// Relative truncation tolerance of each Taylor substep, two orders inside
/// the `1e-12` action accuracy the propagator needs.
pub const ACTION_TOLERANCE: f64 = 1e-14;

/// Upper bound on the infinity norm of `G / s`.
const SUBSTEP_NORM: f64 = 3.0;

const MAX_TERMS: usize = 80;

/// `a * H0 + b * diag(d)`.
#[derive(Debug, Clone, Copy)]
pub struct SymmetricGenerator<'a> {
    pub driver: TransverseField,
    pub driver_weight: f64,
    pub diagonal: &'a [f64],
    pub diagonal_weight: f64,
}

impl SymmetricGenerator<'_> {
    pub fn dim(&self) -> usize {
        self.driver.dim()
    }
}

/// Reusable buffers for [`expm_action_in_place`].
#[derive(Debug, Clone, Default)]
pub(crate) struct ActionWorkspace {
    shifted: Vec<f64>,
    term: Vec<Complex<f64>>,
    next: Vec<Complex<f64>>,
}

impl ActionWorkspace {
    fn resize(&mut self, dim: usize) {
        let zero = Complex::new(0.0, 0.0);
        self.shifted.resize(dim, 0.0);
        self.term.resize(dim, zero);
        self.next.resize(dim, zero);
    }
}

/// Returns `exp(-i G) v`.
pub fn expm_action(
    generator: &SymmetricGenerator<'_>,
    v: &[Complex<f64>],
) -> Result<Vec<Complex<f64>>> {
    ensure_dim(generator.dim(), v.len())?;
    ensure_dim(generator.dim(), generator.diagonal.len())?;
    let mut out = v.to_vec();
    expm_action_in_place(generator, &mut out, &mut ActionWorkspace::default());
    Ok(out)
}

pub(crate) fn expm_action_in_place(
    generator: &SymmetricGenerator<'_>,
    v: &mut [Complex<f64>],
    work: &mut ActionWorkspace,
) {
    let dim = v.len();
    let n = generator.driver.n();
    work.resize(dim);
    let a = generator.driver_weight;
    let b = generator.diagonal_weight;

    // centre the diagonal on its range, which minimises its sup norm
    let (lo, hi) = generator
        .diagonal
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &d| {
            (lo.min(b * d), hi.max(b * d))
        });
    let shift = 0.5 * (lo + hi);
    for (shifted, &d) in work.shifted.iter_mut().zip(generator.diagonal) {
        *shifted = b * d - shift;
    }
    let norm = a.abs() * n as f64 + 0.5 * (hi - lo);
    let substeps = libm::ceil(norm / SUBSTEP_NORM).max(1.0) as usize;
    let scale = 1.0 / substeps as f64;
    let phase = Complex::new(libm::cos(shift * scale), -libm::sin(shift * scale));

    for _ in 0..substeps {
        work.term.copy_from_slice(v);
        let mut previous = f64::INFINITY;
        for k in 1..=MAX_TERMS {
            // next = (G - shift) term; the driver part pairs contiguous
            // half-blocks of every bit level
            for ((out, t), &d) in work.next.iter_mut().zip(&work.term).zip(&work.shifted) {
                *out = t * d;
            }
            for i in 0..n {
                let half = 1usize << i;
                for (out, t) in work
                    .next
                    .chunks_exact_mut(2 * half)
                    .zip(work.term.chunks_exact(2 * half))
                {
                    let (out_lo, out_hi) = out.split_at_mut(half);
                    let (t_lo, t_hi) = t.split_at(half);
                    for (o, x) in out_lo.iter_mut().zip(t_hi) {
                        *o -= x * a;
                    }
                    for (o, x) in out_hi.iter_mut().zip(t_lo) {
                        *o -= x * a;
                    }
                }
            }
            // term = -i/(k s) next, accumulated into v
            let c = scale / k as f64;
            let mut current: f64 = 0.0;
            let mut total: f64 = 0.0;
            for (out, acc) in work.next.iter_mut().zip(v.iter_mut()) {
                *out = Complex::new(c * out.im, -c * out.re);
                *acc += *out;
                current = current.max(out.re.abs()).max(out.im.abs());
                total = total.max(acc.re.abs()).max(acc.im.abs());
            }
            core::mem::swap(&mut work.term, &mut work.next);
            if current + previous <= ACTION_TOLERANCE * total {
                break;
            }
            previous = current;
        }
        for z in v.iter_mut() {
            *z *= phase;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use nalgebra::{DMatrix, DVector, SymmetricEigen};

    /// exp(-i G) v through a full eigendecomposition of the dense matrix.
    fn eigen_oracle(g: &DMatrix<f64>, v: &[Complex<f64>]) -> Vec<Complex<f64>> {
        let eig = SymmetricEigen::new(g.clone());
        let u = &eig.eigenvectors;
        let dim = v.len();
        let mut out = vec![Complex::new(0.0, 0.0); dim];
        for k in 0..dim {
            let mut coeff = Complex::new(0.0, 0.0);
            for s in 0..dim {
                coeff += v[s] * u[(s, k)];
            }
            let l = eig.eigenvalues[k];
            coeff *= Complex::new(libm::cos(l), -libm::sin(l));
            for s in 0..dim {
                out[s] += coeff * u[(s, k)];
            }
        }
        out
    }

    fn dense(generator: &SymmetricGenerator<'_>) -> DMatrix<f64> {
        let h0 = generator.driver.to_dense().unwrap();
        let d = DMatrix::from_diagonal(&DVector::from_column_slice(generator.diagonal));
        h0 * generator.driver_weight + d * generator.diagonal_weight
    }

    #[test]
    fn single_qubit_rotation_closed_form() {
        // exp(+i X pi/2) |0> = cos(pi/2)|0> + i sin(pi/2)|1>
        let g = SymmetricGenerator {
            driver: TransverseField::new(1).unwrap(),
            driver_weight: core::f64::consts::FRAC_PI_2,
            diagonal: &[0.0, 0.0],
            diagonal_weight: 0.0,
        };
        let out = expm_action(&g, &[Complex::new(1.0, 0.0), Complex::new(0.0, 0.0)]).unwrap();
        assert!((out[0] - Complex::new(0.0, 0.0)).norm_sqr() < 1e-14 * 1e-14);
        assert!((out[1] - Complex::new(0.0, 1.0)).norm_sqr() < 1e-14 * 1e-14);
        // and a generic angle
        let theta = 0.731;
        let g = SymmetricGenerator {
            driver_weight: theta,
            ..g
        };
        let out = expm_action(&g, &[Complex::new(1.0, 0.0), Complex::new(0.0, 0.0)]).unwrap();
        assert!((out[0] - Complex::new(libm::cos(theta), 0.0)).norm_sqr() < 1e-14 * 1e-14);
        assert!((out[1] - Complex::new(0.0, libm::sin(theta))).norm_sqr() < 1e-14 * 1e-14);
    }

    #[test]
    fn diagonal_generator_is_pure_phase() {
        let diag = [0.3, -1.7, 2.5, 0.0];
        let g = SymmetricGenerator {
            driver: TransverseField::new(2).unwrap(),
            driver_weight: 0.0,
            diagonal: &diag,
            diagonal_weight: 1.3,
        };
        let v = [Complex::new(0.5, 0.0); 4];
        let out = expm_action(&g, &v).unwrap();
        for s in 0..4 {
            let phase = Complex::new(libm::cos(1.3 * diag[s]), -libm::sin(1.3 * diag[s]));
            assert!((out[s] - v[s] * phase).norm_sqr() < 1e-13 * 1e-13);
        }
    }

    #[test]
    fn matches_eigendecomposition() {
        for (n, a, b) in [
            (3usize, 0.2, 0.9),
            (4, 1.7, 3.1),
            (5, 0.05, 0.1),
            (5, 12.0, 20.0),
        ] {
            let dim = 1 << n;
            let diag: Vec<f64> = (0..dim).map(|s| libm::sin(s as f64 * 1.9) * 3.0).collect();
            let g = SymmetricGenerator {
                driver: TransverseField::new(n).unwrap(),
                driver_weight: a,
                diagonal: &diag,
                diagonal_weight: b,
            };
            let v: Vec<Complex<f64>> = (0..dim)
                .map(|s| Complex::new(libm::cos(s as f64), libm::sin(0.3 * s as f64)))
                .collect();
            let norm = libm::sqrt(v.iter().map(|z| z.norm_sqr()).sum::<f64>());
            let v: Vec<Complex<f64>> = v.iter().map(|z| z / norm).collect();
            let got = expm_action(&g, &v).unwrap();
            let want = eigen_oracle(&dense(&g), &v);
            for (x, y) in got.iter().zip(&want) {
                assert!((x - y).norm_sqr() < 1e-12 * 1e-12, "n={n} a={a} b={b}");
            }
            let out_norm = libm::sqrt(got.iter().map(|z| z.norm_sqr()).sum::<f64>());
            assert!((out_norm - 1.0).abs() < 1e-13);
        }
    }
}
