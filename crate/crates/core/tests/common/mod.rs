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

//! Independent oracles shared by integration tests.

#![allow(dead_code)]

use nalgebra::{DMatrix, SymmetricEigen};
use tomodiscord::circuits::{CircuitParams, NormalModes, OverlapTable, MODE_PAIRS};

/// Eigenvectors of the coupled Hamiltonian in a number basis truncated at
/// `levels` quanta per mode, for every normal-mode pair (m, n), m + n ≤ 2.
///
/// H = Σ_j ω_j (n_j + ½) + (g √(ω₁ω₂) / 2)(a₁ + a₁†)(a₂ + a₂†).
/// Returned vectors are indexed `i * (levels + 1) + j`.
pub struct TruncatedOracle {
    pub levels: usize,
    pub energies: Vec<f64>,
    pub vectors: Vec<Vec<f64>>,
}

impl TruncatedOracle {
    pub fn new(p: &CircuitParams, modes: &NormalModes, levels: usize) -> Self {
        let side = levels + 1;
        let dim = side * side;
        let (w1, w2) = (p.omega1, p.omega2());
        let k = 0.5 * p.g * (w1 * w2).sqrt();
        // ⟨i'|(a + a†)|i⟩ = √i δ_{i', i−1} + √(i+1) δ_{i', i+1}
        let x = |a: usize, b: usize| -> f64 {
            if a + 1 == b {
                (b as f64).sqrt()
            } else if b + 1 == a {
                (a as f64).sqrt()
            } else {
                0.0
            }
        };
        let h = DMatrix::from_fn(dim, dim, |r, c| {
            let (i, j) = (r / side, r % side);
            let (i2, j2) = (c / side, c % side);
            let mut v = k * x(i, i2) * x(j, j2);
            if r == c {
                v += w1 * (i as f64 + 0.5) + w2 * (j as f64 + 0.5);
            }
            v
        });
        let eig = SymmetricEigen::new(h);
        let mut energies = Vec::new();
        let mut vectors = Vec::new();
        for &(m, n) in MODE_PAIRS.iter() {
            let target = modes.omega1 * (m as f64 + 0.5) + modes.omega2 * (n as f64 + 0.5);
            let (idx, e) = eig
                .eigenvalues
                .iter()
                .enumerate()
                .min_by(|a, b| (a.1 - target).abs().total_cmp(&(b.1 - target).abs()))
                .unwrap();
            energies.push(*e);
            vectors.push(eig.eigenvectors.column(idx).iter().copied().collect());
        }
        TruncatedOracle {
            levels,
            energies,
            vectors,
        }
    }

    /// Largest |C_table − C_oracle| after aligning each vector's sign.
    pub fn max_deviation(&self, table: &OverlapTable) -> f64 {
        let side = self.levels + 1;
        let mut worst: f64 = 0.0;
        for (k, &(m, n)) in MODE_PAIRS.iter().enumerate() {
            let v = &self.vectors[k];
            let dot: f64 = (0..side * side).map(|r| v[r] * table.get(m, n, r / side, r % side)).sum();
            let sign = dot.signum();
            for r in 0..side * side {
                worst = worst.max((sign * v[r] - table.get(m, n, r / side, r % side)).abs());
            }
        }
        worst
    }
}
