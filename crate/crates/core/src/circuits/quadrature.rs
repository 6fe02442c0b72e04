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

//! Oscillator eigenfunctions and Gauss–Hermite rules.

use std::f64::consts::PI;

use nalgebra::{DMatrix, SymmetricEigen};

/// Fills `out[l]` with ψ_l^(Ω)(x) for l = 0..out.len().
///
/// Uses the normalized three-term recurrence, which stays finite where the
/// explicit `H_l / √(2^l l!)` form overflows.
pub fn hermite_functions(omega: f64, x: f64, out: &mut [f64]) {
    if out.is_empty() {
        return;
    }
    let xi = omega.sqrt() * x;
    out[0] = omega.powf(0.25) * PI.powf(-0.25) * (-0.5 * xi * xi).exp();
    if out.len() > 1 {
        out[1] = 2f64.sqrt() * xi * out[0];
    }
    for l in 1..out.len() - 1 {
        let lf = l as f64;
        out[l + 1] = (2.0 / (lf + 1.0)).sqrt() * xi * out[l] - (lf / (lf + 1.0)).sqrt() * out[l - 1];
    }
}

/// ψ_l^(Ω)(x), the normalized oscillator eigenfunction with ħ = m = 1.
pub fn hermite_wavefunction(l: usize, omega: f64, x: f64) -> f64 {
    let mut buf = vec![0.0; l + 1];
    hermite_functions(omega, x, &mut buf);
    buf[l]
}

/// Gauss–Hermite rule for weight e^{−y²}, with weights pre-multiplied by
/// e^{y²} so that `Σ_k w_k f(y_k) ≈ ∫ f(y) dy` for f decaying like a Gaussian.
#[derive(Debug, Clone)]
pub struct GaussHermite {
    pub nodes: Vec<f64>,
    pub scaled_weights: Vec<f64>,
}

impl GaussHermite {
    pub fn new(n: usize) -> Self {
        assert!(n >= 1, "rule needs at least one node");
        let jacobi = DMatrix::from_fn(n, n, |i, j| {
            if i + 1 == j || j + 1 == i {
                ((i.max(j)) as f64 / 2.0).sqrt()
            } else {
                0.0
            }
        });
        let mut nodes: Vec<f64> = SymmetricEigen::new(jacobi).eigenvalues.iter().copied().collect();
        nodes.sort_by(f64::total_cmp);

        let mut h = vec![0.0; n + 1];
        for y in nodes.iter_mut() {
            for _ in 0..3 {
                hermite_functions(1.0, *y, &mut h);
                if h[n - 1] == 0.0 {
                    break;
                }
                // (h_n)' = √(2n) h_{n−1} − y h_n, and h_n vanishes at the root.
                *y -= h[n] / ((2.0 * n as f64).sqrt() * h[n - 1] - *y * h[n]);
            }
        }
        // Symmetrize so odd integrands cancel exactly.
        for k in 0..n / 2 {
            let m = 0.5 * (nodes[n - 1 - k] - nodes[k]);
            nodes[k] = -m;
            nodes[n - 1 - k] = m;
        }
        if n % 2 == 1 {
            nodes[n / 2] = 0.0;
        }

        // Christoffel: w_k e^{y_k²} = 1 / Σ_{j<n} h_j(y_k)².
        let scaled_weights = nodes
            .iter()
            .map(|&y| {
                hermite_functions(1.0, y, &mut h[..n]);
                1.0 / h[..n].iter().map(|v| v * v).sum::<f64>()
            })
            .collect();
        GaussHermite {
            nodes,
            scaled_weights,
        }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn ground_state_peak() {
        assert_abs_diff_eq!(hermite_wavefunction(0, 1.0, 0.0), PI.powf(-0.25), epsilon = 1e-15);
        assert_abs_diff_eq!(hermite_wavefunction(0, 1.0, 0.0), 0.751_125_544_464_942_5, epsilon = 1e-15);
        for omega in [0.3, 1.0, 2.5] {
            assert_eq!(hermite_wavefunction(1, omega, 0.0), 0.0);
        }
    }

    #[test]
    fn matches_explicit_polynomials() {
        // H_2 = 4ξ² − 2, H_3 = 8ξ³ − 12ξ
        let omega: f64 = 1.7;
        for x in [-1.3, -0.2, 0.0, 0.7, 2.1] {
            let xi = omega.sqrt() * x;
            let g = omega.powf(0.25) * PI.powf(-0.25) * (-0.5 * xi * xi).exp();
            let h2 = g * (4.0 * xi * xi - 2.0) / (8.0f64).sqrt();
            let h3 = g * (8.0 * xi.powi(3) - 12.0 * xi) / (48.0f64).sqrt();
            assert_abs_diff_eq!(hermite_wavefunction(2, omega, x), h2, epsilon = 1e-13);
            assert_abs_diff_eq!(hermite_wavefunction(3, omega, x), h3, epsilon = 1e-13);
        }
    }

    #[test]
    fn orthonormal_under_trapezoid_rule() {
        // Independent check: dense trapezoid sum on [-12, 12].
        let omega = 1.0;
        let n = 24_001;
        let dx = 24.0 / (n - 1) as f64;
        let mut gram = [[0.0; 6]; 6];
        let mut buf = [0.0; 6];
        for k in 0..n {
            let x = -12.0 + k as f64 * dx;
            hermite_functions(omega, x, &mut buf);
            for a in 0..6 {
                for b in 0..6 {
                    gram[a][b] += buf[a] * buf[b] * dx;
                }
            }
        }
        for a in 0..6 {
            for b in 0..6 {
                let expected = if a == b { 1.0 } else { 0.0 };
                assert_abs_diff_eq!(gram[a][b], expected, epsilon = 1e-10);
            }
        }
    }

    #[test]
    fn high_levels_are_normalized() {
        let rule = GaussHermite::new(80);
        let mut buf = [0.0; 21];
        let mut norms = [0.0; 21];
        for (y, w) in rule.nodes.iter().zip(&rule.scaled_weights) {
            hermite_functions(0.8, *y, &mut buf);
            for (acc, v) in norms.iter_mut().zip(buf) {
                *acc += w * v * v;
            }
        }
        // ψ² has Gaussian width Ω = 0.8 ≠ 1, so this is not exact; it still
        // converges far below the tolerance.
        for v in norms {
            assert_abs_diff_eq!(v, 1.0, epsilon = 1e-10);
        }
    }

    #[test]
    fn rule_integrates_gaussian_moments() {
        let rule = GaussHermite::new(20);
        // ∫ y^{2k} e^{−y²} dy = Γ(k + ½)
        let gamma_half = [1.0, 0.5, 0.75, 1.875, 6.5625];
        for (k, g) in gamma_half.iter().enumerate() {
            let s: f64 = rule
                .nodes
                .iter()
                .zip(&rule.scaled_weights)
                .map(|(y, w)| w * (-y * y).exp() * y.powi(2 * k as i32))
                .sum();
            assert_abs_diff_eq!(s, g * PI.sqrt(), epsilon = 1e-12);
        }
        assert_eq!(rule.len(), 20);
        for k in 0..10 {
            assert_eq!(rule.nodes[k], -rule.nodes[19 - k]);
        }
    }
}
