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

//! Local-rotation tomograms of two-qubit states.
//!
//! A measurement on one qubit is the basis rotation
//! `U(θ, φ) = R(θ/2) · diag(e^{iφ/2}, e^{−iφ/2})`; outcome 0 of that
//! measurement projects onto the Bloch direction
//! `n = (sin θ cos φ, sin θ sin φ, cos θ)`.

use std::f64::consts::{PI, TAU};

use nalgebra::{Matrix2, Matrix3, SMatrix, Vector3};

use crate::qstate::{neg_xlog2x, QubitState, TwoQubitState, XState, C64};

/// Probabilities above this negative bound are treated as rounding and clamped.
pub const PROB_CLAMP: f64 = 1e-12;

/// Bloch angles of the two local measurements, in radians.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct MeasurementSetting {
    pub theta_a: f64,
    pub phi_a: f64,
    pub theta_b: f64,
    pub phi_b: f64,
}

impl MeasurementSetting {
    pub fn new(theta_a: f64, phi_a: f64, theta_b: f64, phi_b: f64) -> Self {
        MeasurementSetting {
            theta_a,
            phi_a,
            theta_b,
            phi_b,
        }
    }

    /// Both qubits measured in the computational basis.
    pub fn identity() -> Self {
        Self::default()
    }

    pub fn from_directions(a: &Vector3<f64>, b: &Vector3<f64>) -> Self {
        let (theta_a, phi_a) = angles_of(a);
        let (theta_b, phi_b) = angles_of(b);
        MeasurementSetting {
            theta_a,
            phi_a,
            theta_b,
            phi_b,
        }
    }

    /// Maps both angle pairs into θ ∈ [0, π], φ ∈ [0, 2π) without changing
    /// the measured directions.
    pub fn canonical(&self) -> Self {
        let (theta_a, phi_a) = canonical_angles(self.theta_a, self.phi_a);
        let (theta_b, phi_b) = canonical_angles(self.theta_b, self.phi_b);
        MeasurementSetting {
            theta_a,
            phi_a,
            theta_b,
            phi_b,
        }
    }

    pub fn direction_a(&self) -> Vector3<f64> {
        bloch_direction(self.theta_a, self.phi_a)
    }

    pub fn direction_b(&self) -> Vector3<f64> {
        bloch_direction(self.theta_b, self.phi_b)
    }
}

/// Unit Bloch vector measured as outcome 0 by `U(θ, φ)`.
pub fn bloch_direction(theta: f64, phi: f64) -> Vector3<f64> {
    let (st, ct) = theta.sin_cos();
    let (sp, cp) = phi.sin_cos();
    Vector3::new(st * cp, st * sp, ct)
}

/// Inverse of [`bloch_direction`] for a non-zero vector.
pub fn angles_of(n: &Vector3<f64>) -> (f64, f64) {
    let u = n.normalize();
    let theta = u.z.clamp(-1.0, 1.0).acos();
    let mut phi = u.y.atan2(u.x);
    if phi < 0.0 {
        phi += TAU;
    }
    if phi >= TAU {
        phi -= TAU;
    }
    (theta, phi)
}

fn canonical_angles(theta: f64, phi: f64) -> (f64, f64) {
    let mut t = theta.rem_euclid(TAU);
    let mut p = phi;
    if t > PI {
        t = TAU - t;
        p += PI;
    }
    p = p.rem_euclid(TAU);
    if p >= TAU {
        p = 0.0;
    }
    (t, p)
}

/// `U(θ, φ)`: half-angle real rotation times the diagonal phase matrix.
pub fn rotation_matrix(theta: f64, phi: f64) -> Matrix2<C64> {
    let (s, c) = (theta / 2.0).sin_cos();
    let rot = Matrix2::new(
        C64::new(c, 0.0),
        C64::new(s, 0.0),
        C64::new(-s, 0.0),
        C64::new(c, 0.0),
    );
    let phase = Matrix2::new(
        C64::from_polar(1.0, phi / 2.0),
        C64::new(0.0, 0.0),
        C64::new(0.0, 0.0),
        C64::from_polar(1.0, -phi / 2.0),
    );
    rot * phase
}

/// Joint outcome distribution in the order T₀₀, T₀₁, T₁₀, T₁₁.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tomogram {
    pub probs: [f64; 4],
    pub setting: MeasurementSetting,
}

impl Tomogram {
    /// Clamps round-off negatives and renormalizes.
    pub fn from_raw(raw: [f64; 4], setting: MeasurementSetting) -> Self {
        let mut probs = raw.map(|p| if p < 0.0 && p >= -PROB_CLAMP { 0.0 } else { p });
        let total: f64 = probs.iter().sum();
        for p in probs.iter_mut() {
            *p /= total;
        }
        Tomogram { probs, setting }
    }

    pub fn marginals(&self) -> ([f64; 2], [f64; 2]) {
        reduced_tomograms(self)
    }

    pub fn joint_entropy(&self) -> f64 {
        shannon_entropy(&self.probs)
    }

    /// J = H_A + H_B − H_AB.
    pub fn mutual_information(&self) -> f64 {
        let (a, b) = self.marginals();
        shannon_entropy(&a) + shannon_entropy(&b) - self.joint_entropy()
    }
}

/// `⟨m| (U_A⊗U_B) ρ (U_A⊗U_B)† |m⟩` for the four basis states.
pub fn tomogram(state: &TwoQubitState, setting: &MeasurementSetting) -> Tomogram {
    let ua = rotation_matrix(setting.theta_a, setting.phi_a);
    let ub = rotation_matrix(setting.theta_b, setting.phi_b);
    let u: SMatrix<C64, 4, 4> = ua.kronecker(&ub);
    let rotated = u * state.joint().matrix() * u.adjoint();
    Tomogram::from_raw(
        [
            rotated[(0, 0)].re,
            rotated[(1, 1)].re,
            rotated[(2, 2)].re,
            rotated[(3, 3)].re,
        ],
        *setting,
    )
}

/// Row and column sums of the joint tomogram: (T_A, T_B).
pub fn reduced_tomograms(t: &Tomogram) -> ([f64; 2], [f64; 2]) {
    let p = &t.probs;
    ([p[0] + p[1], p[2] + p[3]], [p[0] + p[2], p[1] + p[3]])
}

/// −Σ p log₂ p.
pub fn shannon_entropy(probs: &[f64]) -> f64 {
    probs.iter().map(|&p| neg_xlog2x(p)).sum()
}

/// Tomographic Shannon entropies (H_A, H_B, H_AB) at a setting.
pub fn tomographic_entropies(state: &TwoQubitState, setting: &MeasurementSetting) -> (f64, f64, f64) {
    let t = tomogram(state, setting);
    let (a, b) = t.marginals();
    (shannon_entropy(&a), shannon_entropy(&b), t.joint_entropy())
}

pub fn tomographic_mutual_information(state: &TwoQubitState, setting: &MeasurementSetting) -> f64 {
    tomogram(state, setting).mutual_information()
}

/// Closed-form tomogram of an X-state.
pub fn x_tomogram_closed_form(x: &XState, setting: &MeasurementSetting) -> Tomogram {
    let (za, zb, zab) = (x.z_a(), x.z_b(), x.z_ab());
    let (sa, ca) = setting.theta_a.sin_cos();
    let (sb, cb) = setting.theta_b.sin_cos();
    let interference = 0.5
        * sa
        * sb
        * (x.rho14 * (setting.phi_a + setting.phi_b).cos()
            + x.rho23 * (setting.phi_a - setting.phi_b).cos());
    let a = 0.25 * za * ca;
    let b = 0.25 * zb * cb;
    let ab = 0.25 * zab * ca * cb;
    Tomogram::from_raw(
        [
            0.25 + a + b + ab + interference,
            0.25 + a - b - ab - interference,
            0.25 - a + b - ab - interference,
            0.25 - a - b + ab + interference,
        ],
        *setting,
    )
}

/// Tomogram at θ_A = θ_B = 0: the diagonal of the X-state.
pub fn diag_tomogram(x: &XState) -> Tomogram {
    Tomogram::from_raw(x.diagonal(), MeasurementSetting::identity())
}

/// Tomogram at θ_A = θ_B = π/2, φ_A = φ_B = 0:
/// {1/4 + κ, 1/4 − κ, 1/4 − κ, 1/4 + κ} with κ = (ρ14 + ρ23)/2.
pub fn sym_tomogram(x: &XState) -> Tomogram {
    let kappa = 0.5 * (x.rho14 + x.rho23);
    Tomogram::from_raw(
        [0.25 + kappa, 0.25 - kappa, 0.25 - kappa, 0.25 + kappa],
        MeasurementSetting::new(PI / 2.0, 0.0, PI / 2.0, 0.0),
    )
}

pub(crate) fn pauli() -> [Matrix2<C64>; 3] {
    let z = C64::new(0.0, 0.0);
    let one = C64::new(1.0, 0.0);
    let i = C64::new(0.0, 1.0);
    [
        Matrix2::new(z, one, one, z),
        Matrix2::new(z, -i, i, z),
        Matrix2::new(one, z, z, -one),
    ]
}

/// Bloch vector `(Tr ρσx, Tr ρσy, Tr ρσz)` of a qubit state.
pub fn bloch_vector(q: &QubitState) -> Vector3<f64> {
    let m = q.matrix();
    Vector3::new(2.0 * m[(0, 1)].re, -2.0 * m[(0, 1)].im, (m[(0, 0)] - m[(1, 1)]).re)
}

/// Pauli-basis decomposition
/// `ρ = ¼ (I + r·σ⊗I + I⊗s·σ + Σ t_ij σ_i⊗σ_j)`.
///
/// In this form a projective measurement along (n_A, n_B) gives
/// `P(a, b) = ¼ (1 + a r·n_A + b s·n_B + ab n_A·t·n_B)` with a, b = ±1, where
/// +1 is outcome 0.
#[derive(Debug, Clone, PartialEq)]
pub struct BlochForm {
    pub r: Vector3<f64>,
    pub s: Vector3<f64>,
    pub t: Matrix3<f64>,
}

impl BlochForm {
    pub fn new(state: &TwoQubitState) -> Self {
        let sig = pauli();
        let rho = state.joint().matrix();
        let t = Matrix3::from_fn(|i, j| {
            let op: SMatrix<C64, 4, 4> = sig[i].kronecker(&sig[j]);
            (rho * op).trace().re
        });
        BlochForm {
            r: bloch_vector(state.marginal_a()),
            s: bloch_vector(state.marginal_b()),
            t,
        }
    }

    /// Tomogram probabilities (unclamped) for unit directions.
    #[inline]
    pub fn probs(&self, na: &Vector3<f64>, nb: &Vector3<f64>) -> [f64; 4] {
        let alpha = self.r.dot(na);
        let beta = self.s.dot(nb);
        let gamma = na.dot(&(self.t * nb));
        joint_probs(alpha, beta, gamma)
    }

    /// Tomographic mutual information J for unit directions.
    pub fn mutual_information(&self, na: &Vector3<f64>, nb: &Vector3<f64>) -> f64 {
        let alpha = self.r.dot(na);
        let beta = self.s.dot(nb);
        let gamma = na.dot(&(self.t * nb));
        binary_h(alpha) + binary_h(beta) - joint_h(alpha, beta, gamma)
    }
}

#[inline]
pub(crate) fn joint_probs(alpha: f64, beta: f64, gamma: f64) -> [f64; 4] {
    [
        0.25 * (1.0 + alpha + beta + gamma),
        0.25 * (1.0 + alpha - beta - gamma),
        0.25 * (1.0 - alpha + beta - gamma),
        0.25 * (1.0 - alpha - beta + gamma),
    ]
}

/// Entropy of the two-outcome distribution {(1+x)/2, (1−x)/2}.
#[inline]
pub(crate) fn binary_h(x: f64) -> f64 {
    neg_xlog2x(0.5 * (1.0 + x)) + neg_xlog2x(0.5 * (1.0 - x))
}

#[inline]
pub(crate) fn joint_h(alpha: f64, beta: f64, gamma: f64) -> f64 {
    joint_probs(alpha, beta, gamma)
        .iter()
        .map(|&p| neg_xlog2x(p))
        .sum()
}
