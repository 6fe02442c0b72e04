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

//! Two inductively coupled LC circuits.
//!
//! With ħ = k_B = 1 and ω₁ = 1 the Hamiltonian is
//! `Σ_j (p_j² + ω_j² x_j²)/2 + g ω₁ ω₂ x₁ x₂`. A coordinate rotation by the
//! mixing angle decouples it into normal modes Ω₁, Ω₂. Ground and thermal
//! states are projected onto the span of {|0,0⟩, |0,1⟩, |1,0⟩, |1,1⟩} of the
//! uncoupled oscillators, which yields X-states.

mod quadrature;

pub use quadrature::{hermite_functions, hermite_wavefunction, GaussHermite};

use nalgebra::Matrix2;
use thiserror::Error;

use crate::qstate::XState;

/// Highest oscillator level an overlap table supports.
pub const MAX_SUPPORTED_LEVEL: usize = 20;
pub const DEFAULT_MAX_LEVEL: usize = 12;
pub const DEFAULT_QUAD_NODES: usize = 80;
/// Largest change of any coefficient tolerated when doubling the nodes.
pub const QUADRATURE_TOL: f64 = 1e-8;
/// Below this temperature the thermal state is replaced by the ground state.
pub const MIN_TEMPERATURE: f64 = 1e-6;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CircuitError {
    #[error("invalid circuit parameters: {0}")]
    InvalidParams(String),
    #[error("unstable coupling: normal-mode frequency squared {min_omega_sq:.3e} is not positive")]
    UnstableCoupling { min_omega_sq: f64 },
    #[error("overlap quadrature not converged: doubling nodes changed a coefficient by {max_change:.3e}")]
    QuadratureNotConverged { max_change: f64 },
    #[error("temperature must be positive, got {0}")]
    NonPositiveTemperature(f64),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CircuitParams {
    pub omega1: f64,
    pub delta_omega: f64,
    pub g: f64,
    pub temperature: f64,
}

impl CircuitParams {
    /// ω₁ = 1, ω₂ = 1 + Δω.
    pub fn new(delta_omega: f64, g: f64, temperature: f64) -> Result<Self, CircuitError> {
        let p = CircuitParams {
            omega1: 1.0,
            delta_omega,
            g,
            temperature,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn omega2(&self) -> f64 {
        self.omega1 + self.delta_omega
    }

    pub fn validate(&self) -> Result<(), CircuitError> {
        let finite = [self.omega1, self.delta_omega, self.g, self.temperature]
            .iter()
            .all(|v| v.is_finite());
        if !finite {
            return Err(CircuitError::InvalidParams("parameters must be finite".into()));
        }
        if self.omega1 <= 0.0 || self.omega2() <= 0.0 {
            return Err(CircuitError::InvalidParams(format!(
                "frequencies must be positive (omega1={}, omega2={})",
                self.omega1,
                self.omega2()
            )));
        }
        if self.g.abs() >= 1.0 {
            return Err(CircuitError::UnstableCoupling {
                min_omega_sq: self.omega1 * self.omega1 * self.omega2() * self.omega2() * (1.0 - self.g * self.g),
            });
        }
        if self.temperature < 0.0 {
            return Err(CircuitError::NonPositiveTemperature(self.temperature));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormalModes {
    /// Angle ϑ of the rotation X = M x, M = [[cos ϑ, sin ϑ], [−sin ϑ, cos ϑ]].
    pub mixing_angle: f64,
    pub omega1: f64,
    pub omega2: f64,
}

impl NormalModes {
    pub fn rotation(&self) -> Matrix2<f64> {
        let (s, c) = self.mixing_angle.sin_cos();
        Matrix2::new(c, s, -s, c)
    }
}

/// [[ω₁², gω₁ω₂], [gω₁ω₂, ω₂²]].
pub fn potential_matrix(p: &CircuitParams) -> Matrix2<f64> {
    let (w1, w2) = (p.omega1, p.omega2());
    Matrix2::new(w1 * w1, p.g * w1 * w2, p.g * w1 * w2, w2 * w2)
}

/// Off-diagonal entry of the potential in rotated coordinates.
pub fn rotated_cross_term(p: &CircuitParams, angle: f64) -> f64 {
    let (w1, w2) = (p.omega1, p.omega2());
    let (s2, c2) = (2.0 * angle).sin_cos();
    p.g * w1 * w2 * c2 - 0.5 * (w1 * w1 - w2 * w2) * s2
}

pub fn normal_modes(p: &CircuitParams) -> Result<NormalModes, CircuitError> {
    p.validate()?;
    let (w1, w2) = (p.omega1, p.omega2());
    let angle = if p.g == 0.0 {
        0.0
    } else {
        0.5 * f64::atan2(2.0 * p.g * w1 * w2, w1 * w1 - w2 * w2)
    };
    let (s, c) = angle.sin_cos();
    let gs = p.g * w1 * w2 * (2.0 * angle).sin();
    let o1_sq = w1 * w1 * c * c + w2 * w2 * s * s + gs;
    let o2_sq = w1 * w1 * s * s + w2 * w2 * c * c - gs;
    let min_omega_sq = o1_sq.min(o2_sq);
    if min_omega_sq <= 0.0 {
        return Err(CircuitError::UnstableCoupling { min_omega_sq });
    }
    debug_assert!(rotated_cross_term(p, angle).abs() < 1e-10 * (1.0 + w1 * w1 + w2 * w2));
    Ok(NormalModes {
        mixing_angle: angle,
        omega1: o1_sq.sqrt(),
        omega2: o2_sq.sqrt(),
    })
}

/// The normal-mode pairs (m, n) with m + n ≤ 2, in table order.
pub const MODE_PAIRS: [(usize, usize); 6] = [(0, 0), (0, 1), (1, 0), (1, 1), (0, 2), (2, 0)];

/// C^{mn}_{ij} = ⟨i, j | m̃, ñ⟩ for m + n ≤ 2 and i, j ≤ `max_level`.
#[derive(Debug, Clone, PartialEq)]
pub struct OverlapTable {
    pub max_level: usize,
    pub quadrature_nodes: usize,
    pub modes: NormalModes,
    values: Vec<f64>,
}

impl OverlapTable {
    fn index(&self, pair: usize, i: usize, j: usize) -> usize {
        let side = self.max_level + 1;
        (pair * side + i) * side + j
    }

    fn pair_index(m: usize, n: usize) -> usize {
        MODE_PAIRS
            .iter()
            .position(|&p| p == (m, n))
            .unwrap_or_else(|| panic!("mode pair ({m}, {n}) is outside m + n ≤ 2"))
    }

    /// Panics when m + n > 2 or i, j exceed `max_level`.
    pub fn get(&self, m: usize, n: usize, i: usize, j: usize) -> f64 {
        assert!(i <= self.max_level && j <= self.max_level, "level out of range");
        self.values[self.index(Self::pair_index(m, n), i, j)]
    }

    /// Σ_{ij} (C^{mn}_{ij})².
    pub fn completeness(&self, m: usize, n: usize) -> f64 {
        let p = Self::pair_index(m, n);
        let side = self.max_level + 1;
        let start = self.index(p, 0, 0);
        self.values[start..start + side * side].iter().map(|c| c * c).sum()
    }
}

fn overlap_values(p: &CircuitParams, modes: &NormalModes, max_level: usize, nodes: usize) -> Vec<f64> {
    let (w1, w2) = (p.omega1, p.omega2());
    let rot = modes.rotation();
    // Combined Gaussian exponent −½ xᵀ A x of the integrand.
    let a = Matrix2::from_diagonal(&nalgebra::Vector2::new(w1, w2))
        + rot.transpose() * Matrix2::from_diagonal(&nalgebra::Vector2::new(modes.omega1, modes.omega2)) * rot;
    // x = B y with Bᵀ A B = 2·I turns the exponent into −|y|².
    let chol = a.cholesky().expect("sum of positive-definite matrices");
    let b = chol
        .l()
        .transpose()
        .try_inverse()
        .expect("Cholesky factor is invertible")
        * 2f64.sqrt();
    let jacobian = 2.0 / a.determinant().sqrt();

    let rule = GaussHermite::new(nodes);
    let side = max_level + 1;
    let mut values = vec![0.0; MODE_PAIRS.len() * side * side];
    let (mut psi1, mut psi2) = (vec![0.0; side], vec![0.0; side]);
    let (mut big1, mut big2) = ([0.0; 3], [0.0; 3]);
    for (y1, wa) in rule.nodes.iter().zip(&rule.scaled_weights) {
        for (y2, wb) in rule.nodes.iter().zip(&rule.scaled_weights) {
            let x = b * nalgebra::Vector2::new(*y1, *y2);
            let big = rot * x;
            hermite_functions(w1, x[0], &mut psi1);
            hermite_functions(w2, x[1], &mut psi2);
            hermite_functions(modes.omega1, big[0], &mut big1);
            hermite_functions(modes.omega2, big[1], &mut big2);
            let w = wa * wb * jacobian;
            for (k, &(m, n)) in MODE_PAIRS.iter().enumerate() {
                let f = w * big1[m] * big2[n];
                let block = &mut values[k * side * side..(k + 1) * side * side];
                for i in 0..side {
                    let fi = f * psi1[i];
                    for j in 0..side {
                        block[i * side + j] += fi * psi2[j];
                    }
                }
            }
        }
    }
    for (k, &(m, n)) in MODE_PAIRS.iter().enumerate() {
        for i in 0..side {
            for j in 0..side {
                if (i + j + m + n) % 2 == 1 {
                    values[(k * side + i) * side + j] = 0.0;
                }
            }
        }
    }
    values
}

/// Overlap coefficients by tensor Gauss–Hermite quadrature, checked against
/// a rule with twice the nodes.
pub fn overlap_coefficients(
    p: &CircuitParams,
    max_level: usize,
    nodes: usize,
) -> Result<OverlapTable, CircuitError> {
    if max_level > MAX_SUPPORTED_LEVEL {
        return Err(CircuitError::InvalidParams(format!(
            "max level {max_level} exceeds {MAX_SUPPORTED_LEVEL}"
        )));
    }
    if nodes < 2 {
        return Err(CircuitError::InvalidParams("quadrature needs at least 2 nodes".into()));
    }
    let modes = normal_modes(p)?;
    let values = overlap_values(p, &modes, max_level, nodes);
    let check = overlap_values(p, &modes, max_level, 2 * nodes);
    let max_change = values
        .iter()
        .zip(&check)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    if max_change > QUADRATURE_TOL {
        return Err(CircuitError::QuadratureNotConverged { max_change });
    }
    Ok(OverlapTable {
        max_level,
        quadrature_nodes: nodes,
        modes,
        values,
    })
}

/// A two-qubit projection together with the weight it discards.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoQubitApprox {
    pub state: XState,
    /// 1 − Tr[Π ρ Π].
    pub alpha: f64,
    /// Set when a near-zero temperature was replaced by the ground state.
    pub ground_fallback: bool,
}

/// Local phase gates on A and B that make both coherences non-negative.
/// All correlation measures are invariant under them.
fn x_state_with_phases(diag: [f64; 4], c14: f64, c23: f64) -> XState {
    let clamp = |v: f64| v.max(0.0);
    let [r11, r22, r33, r44] = diag.map(clamp);
    let total = r11 + r22 + r33 + r44;
    let bound = |c: f64, a: f64, b: f64| c.abs().min((a * b).sqrt());
    XState::new(
        r11 / total,
        r22 / total,
        r33 / total,
        r44 / total,
        bound(c14, r11, r44) / total,
        bound(c23, r22, r33) / total,
    )
    .expect("projected state is a valid X-state")
}

pub fn ground_state_2qb(
    p: &CircuitParams,
    max_level: usize,
    nodes: usize,
) -> Result<TwoQubitApprox, CircuitError> {
    let table = overlap_coefficients(p, max_level.max(1), nodes)?;
    Ok(ground_from_table(&table))
}

/// Ground-state projection from a precomputed table (`max_level` ≥ 1).
pub fn ground_from_table(table: &OverlapTable) -> TwoQubitApprox {
    let c00 = table.get(0, 0, 0, 0);
    let c11 = table.get(0, 0, 1, 1);
    TwoQubitApprox {
        state: x_state_with_phases([c00 * c00, 0.0, 0.0, c11 * c11], c00 * c11, 0.0),
        alpha: 1.0 - c00 * c00 - c11 * c11,
        ground_fallback: false,
    }
}

pub fn thermal_state_2qb(
    p: &CircuitParams,
    max_level: usize,
    nodes: usize,
) -> Result<TwoQubitApprox, CircuitError> {
    let t = p.temperature;
    if t <= 0.0 {
        return Err(CircuitError::NonPositiveTemperature(t));
    }
    let table = overlap_coefficients(p, max_level.max(1), nodes)?;
    thermal_from_table(&table, t)
}

/// Thermal projection at temperature `t` from a precomputed table, which
/// depends only on (Δω, g).
pub fn thermal_from_table(table: &OverlapTable, t: f64) -> Result<TwoQubitApprox, CircuitError> {
    if !(t > 0.0) {
        return Err(CircuitError::NonPositiveTemperature(t));
    }
    if t < MIN_TEMPERATURE {
        return Ok(TwoQubitApprox {
            ground_fallback: true,
            ..ground_from_table(table)
        });
    }
    let modes = table.modes;
    // Energies relative to the ground state.
    let boltzmann = |m: usize, n: usize| (-(m as f64 * modes.omega1 + n as f64 * modes.omega2) / t).exp();

    let mut diag = [0.0; 4];
    let (mut c14, mut c23) = (0.0, 0.0);
    for &(m, n) in MODE_PAIRS.iter() {
        let w = boltzmann(m, n);
        let c = |i, j| table.get(m, n, i, j);
        diag[0] += w * c(0, 0) * c(0, 0);
        diag[1] += w * c(0, 1) * c(0, 1);
        diag[2] += w * c(1, 0) * c(1, 0);
        diag[3] += w * c(1, 1) * c(1, 1);
        c14 += w * c(0, 0) * c(1, 1);
        c23 += w * c(0, 1) * c(1, 0);
    }
    let z1: f64 = diag.iter().sum();
    let z: f64 = [modes.omega1, modes.omega2]
        .iter()
        .map(|o| -1.0 / (-o / t).exp_m1())
        .product();
    Ok(TwoQubitApprox {
        state: x_state_with_phases(diag, c14, c23),
        alpha: 1.0 - z1 / z,
        ground_fallback: false,
    })
}
