// Copyright 2026 The tomodiscord Authors
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

//! Seeded random two-qubit states.
//!
//! Every sample index gets its own ChaCha8 stream derived from
//! `(seed, index)`, so ensembles are reproducible regardless of how rows are
//! scheduled across threads. The X-state generator is not Haar-uniform.

use nalgebra::SMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::qstate::{TwoQubitState, XState, C64};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Seed(pub u64);

impl Seed {
    /// Independent stream for sample `index`.
    pub fn stream(self, index: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.0);
        rng.set_stream(index);
        rng
    }
}

impl From<u64> for Seed {
    fn from(v: u64) -> Self {
        Seed(v)
    }
}

/// X-state from four diagonal draws (normalized) and two coherence
/// fractions ε₁, ε₂ ∈ [0, 1].
pub fn x_state_from_draws(diag: [f64; 4], eps: [f64; 2]) -> XState {
    let total: f64 = diag.iter().sum();
    let [r11, r22, r33, r44] = diag.map(|d| d / total);
    XState::new(
        r11,
        r22,
        r33,
        r44,
        eps[0] * (r11 * r44).sqrt(),
        eps[1] * (r22 * r33).sqrt(),
    )
    .expect("generated X-state satisfies its constraints")
}

pub fn random_x_state<R: Rng + ?Sized>(rng: &mut R) -> XState {
    let diag = [rng.random(), rng.random(), rng.random(), rng.random()];
    // All-zero draws are possible in principle but have probability 2^-212.
    let diag = if diag.iter().sum::<f64>() > 0.0 { diag } else { [1.0; 4] };
    x_state_from_draws(diag, [rng.random(), rng.random()])
}

fn normalized(v: &[(f64, f64); 4]) -> [C64; 4] {
    let norm = v.iter().map(|(re, im)| re * re + im * im).sum::<f64>().sqrt();
    v.map(|(re, im)| C64::new(re / norm, im / norm))
}

/// `Σ_k p_k |ψ_k⟩⟨ψ_k| / Σ p`, each ψ_k normalized.
pub fn mixed_state_from_draws(vectors: &[[(f64, f64); 4]; 4], weights: [f64; 4]) -> SMatrix<C64, 4, 4> {
    let total: f64 = weights.iter().sum();
    let mut m = SMatrix::<C64, 4, 4>::zeros();
    for (v, w) in vectors.iter().zip(weights) {
        let psi = normalized(v);
        for i in 0..4 {
            for j in 0..4 {
                m[(i, j)] += psi[i] * psi[j].conj() * (w / total);
            }
        }
    }
    crate::qstate::hermitize(m)
}

fn gaussian_vector<R: Rng + ?Sized>(rng: &mut R) -> [(f64, f64); 4] {
    std::array::from_fn(|_| (rng.sample(StandardNormal), rng.sample(StandardNormal)))
}

pub fn random_mixed_state<R: Rng + ?Sized>(rng: &mut R) -> TwoQubitState {
    let vectors: [[(f64, f64); 4]; 4] = std::array::from_fn(|_| gaussian_vector(rng));
    let weights = [rng.random(), rng.random(), rng.random(), rng.random()];
    let weights = if weights.iter().sum::<f64>() > 0.0 { weights } else { [1.0; 4] };
    TwoQubitState::from_matrix(mixed_state_from_draws(&vectors, weights))
        .expect("convex mixture of pure states is a valid state")
}

/// Pure state with Gaussian amplitudes (unitarily invariant).
pub fn random_pure_state<R: Rng + ?Sized>(rng: &mut R) -> TwoQubitState {
    TwoQubitState::pure(normalized(&gaussian_vector(rng)))
}
