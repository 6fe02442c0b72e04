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

//! Discord variants and entanglement of formation.
//!
//! Tomographic discord is `D = I − J(U_A, U_B)` for a measurement setting
//! picked by one of three schemes:
//!
//! * optimal: J maximized over all four Bloch angles;
//! * diagonalizing: local bases diagonalize the marginals (J maximized over
//!   whatever freedom a degenerate marginal leaves);
//! * symmetrizing: both marginal tomograms are uniform (J maximized over the
//!   great circle orthogonal to each marginal's Bloch vector, or to the z
//!   axis when that vector vanishes).
//!
//! Canonical discord measures one side only and maximizes the mutual
//! information of the post-measurement state.

use std::fmt;

use nalgebra::{Matrix4, SMatrix, SymmetricEigen, Vector3};

use crate::causal::{quantum_asymmetry, tomographic_asymmetry, AsymmetryReport};
use crate::qstate::{as_x_state, binary_entropy, Subsystem, TwoQubitState, XState, C64};
use crate::search::{
    compass_maximize, hemisphere_representative, maximize_direction, maximize_tomographic_mi,
    sphere_params, SearchGrid, Space,
};
use crate::tomography::{
    binary_h, bloch_vector, diag_tomogram, pauli, sym_tomogram, tomographic_mutual_information,
    x_tomogram_closed_form, BlochForm, MeasurementSetting,
};

/// Marginals whose eigenvalue gap is below this are treated as degenerate.
pub const DEGENERACY_GAP: f64 = 1e-9;
/// |D^diag − D^sym| below this counts as a tie and resolves to diag.
pub const SCHEME_TIE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Scheme {
    Optimal,
    Diagonalizing,
    Symmetrizing,
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Scheme::Optimal => "opt",
            Scheme::Diagonalizing => "diag",
            Scheme::Symmetrizing => "sym",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SchemeResult {
    pub scheme: Scheme,
    pub setting: MeasurementSetting,
    /// Tomographic mutual information at `setting`.
    pub j: f64,
    /// Tomographic discord I − J.
    pub d: f64,
}

impl SchemeResult {
    fn at(state: &TwoQubitState, scheme: Scheme, setting: MeasurementSetting) -> Self {
        let i = state.mutual_information();
        let j = tomographic_mutual_information(state, &setting);
        SchemeResult {
            scheme,
            setting,
            j,
            d: i - j,
        }
    }
}

fn marginal_space(state: &TwoQubitState, side: Subsystem) -> (Vector3<f64>, bool) {
    let r = bloch_vector(state.marginal(side));
    (r, r.norm() < DEGENERACY_GAP)
}

/// Setting maximizing J over all local orthogonal measurements.
pub fn optimal_scheme(state: &TwoQubitState, grid: &SearchGrid) -> SchemeResult {
    let form = BlochForm::new(state);
    // Marginal eigenbases are refined as extra starts.
    let mut seeds = Vec::new();
    let (ra, deg_a) = marginal_space(state, Subsystem::A);
    let (rb, deg_b) = marginal_space(state, Subsystem::B);
    if !deg_a && !deg_b {
        seeds.push((sphere_params(&ra), sphere_params(&rb)));
    }
    let best = maximize_tomographic_mi(&form, &Space::Sphere, &Space::Sphere, grid, &seeds);
    SchemeResult::at(
        state,
        Scheme::Optimal,
        MeasurementSetting::from_directions(&best.a, &best.b),
    )
}

/// Setting whose local bases diagonalize both marginals, maximizing J over
/// the remaining freedom.
pub fn diagonalizing_scheme(state: &TwoQubitState, grid: &SearchGrid) -> SchemeResult {
    let form = BlochForm::new(state);
    let space = |side| {
        let (r, degenerate) = marginal_space(state, side);
        if degenerate {
            Space::Sphere
        } else {
            Space::Fixed(hemisphere_representative(&r.normalize()))
        }
    };
    let best = maximize_tomographic_mi(&form, &space(Subsystem::A), &space(Subsystem::B), grid, &[]);
    SchemeResult::at(
        state,
        Scheme::Diagonalizing,
        MeasurementSetting::from_directions(&best.a, &best.b),
    )
}

/// Setting with uniform marginal tomograms on both sides, maximizing J.
pub fn symmetrizing_scheme(state: &TwoQubitState, grid: &SearchGrid) -> SchemeResult {
    let form = BlochForm::new(state);
    // A vanishing Bloch vector leaves every direction uniform; the
    // computational axis stands in for it, as in the X-state closed form.
    let space = |side| {
        let (r, degenerate) = marginal_space(state, side);
        let axis = if degenerate { Vector3::z() } else { r };
        Space::circle_orthogonal_to(&axis)
    };
    let best = maximize_tomographic_mi(&form, &space(Subsystem::A), &space(Subsystem::B), grid, &[]);
    let result = SchemeResult::at(
        state,
        Scheme::Symmetrizing,
        MeasurementSetting::from_directions(&best.a, &best.b),
    );
    debug_assert!(
        (form.r.dot(&best.a)).abs() < 1e-9 && (form.s.dot(&best.b)).abs() < 1e-9,
        "symmetrizing setting must give uniform marginal tomograms"
    );
    result
}

/// Canonical discord with a projective measurement on one side.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CanonicalDiscord {
    pub side: Subsystem,
    /// Bloch angles (θ, φ) of the optimal measurement on `side`.
    pub theta: f64,
    pub phi: f64,
    /// Mutual information of the post-measurement state.
    pub classical: f64,
    pub discord: f64,
}

/// `I(ρ')` for ρ' the state after measuring `side` along `n`.
///
/// The post-measurement state is `Σ_k p_k ρ_{other|k} ⊗ |k⟩⟨k|`, so
/// `I(ρ') = S(ρ_other) − Σ_k p_k S(ρ_{other|k})`.
fn post_measurement_mi(form: &BlochForm, side: Subsystem, s_other: f64, n: &Vector3<f64>) -> f64 {
    let (own, other, corr) = match side {
        Subsystem::B => (form.s, form.r, form.t * n),
        Subsystem::A => (form.r, form.s, form.t.transpose() * n),
    };
    let bias = own.dot(n);
    let mut conditional = 0.0;
    for sign in [1.0, -1.0] {
        let weight = 0.5 * (1.0 + sign * bias);
        if weight <= 1e-15 {
            continue;
        }
        let v = (other + corr * sign) / (1.0 + sign * bias);
        conditional += weight * binary_h(v.norm().min(1.0));
    }
    s_other - conditional
}

pub fn canonical_discord(state: &TwoQubitState, side: Subsystem, grid: &SearchGrid) -> CanonicalDiscord {
    let form = BlochForm::new(state);
    let s_other = state.marginal(side.other()).entropy();
    let (n, classical) =
        maximize_direction(&Space::Sphere, grid, |n| post_measurement_mi(&form, side, s_other, n));
    let (theta, phi) = crate::tomography::angles_of(&n);
    CanonicalDiscord {
        side,
        theta,
        phi,
        classical,
        discord: state.mutual_information() - classical,
    }
}

/// Wootters concurrence, from the spectrum of √ρ ρ̃ √ρ with
/// ρ̃ = (σy⊗σy) ρ* (σy⊗σy).
pub fn concurrence(state: &TwoQubitState) -> f64 {
    let rho = *state.joint().matrix();
    let sy = pauli()[1];
    let yy: Matrix4<C64> = sy.kronecker(&sy);
    let flipped = yy * rho.conjugate() * yy;

    let eig = SymmetricEigen::new(rho);
    let sqrt_vals = eig.eigenvalues.map(|l| l.max(0.0).sqrt());
    let sqrt_rho = eig.eigenvectors
        * SMatrix::<C64, 4, 4>::from_diagonal(&sqrt_vals.map(|v| C64::new(v, 0.0)))
        * eig.eigenvectors.adjoint();
    let m = sqrt_rho * flipped * sqrt_rho;
    let m = (m + m.adjoint()) * C64::new(0.5, 0.0);
    let mut lambdas: Vec<f64> = SymmetricEigen::new(m)
        .eigenvalues
        .iter()
        .map(|l| l.max(0.0).sqrt())
        .collect();
    lambdas.sort_by(|a, b| b.total_cmp(a));
    (lambdas[0] - lambdas[1] - lambdas[2] - lambdas[3]).clamp(0.0, 1.0)
}

/// E = h(½ + ½√(1 − C²)).
pub fn entanglement_from_concurrence(c: f64) -> f64 {
    let c = c.clamp(0.0, 1.0);
    binary_entropy(0.5 + 0.5 * (1.0 - c * c).sqrt())
}

pub fn entanglement_of_formation(state: &TwoQubitState) -> f64 {
    entanglement_from_concurrence(concurrence(state))
}

/// Which scheme attains the optimal discord of an X-state.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum XSubclass {
    /// D^opt = D^diag ("tomographically asymmetric").
    Asymmetric,
    /// D^opt = D^sym < D^diag ("tomographically symmetric").
    Symmetric,
}

impl fmt::Display for XSubclass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            XSubclass::Asymmetric => "asymmetric",
            XSubclass::Symmetric => "symmetric",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct XOptimal {
    /// The winning scheme's result, relabeled as optimal.
    pub optimal: SchemeResult,
    pub diag: SchemeResult,
    pub sym: SchemeResult,
    pub subclass: XSubclass,
}

fn x_scheme_result(i: f64, scheme: Scheme, t: &crate::tomography::Tomogram) -> SchemeResult {
    let j = t.mutual_information();
    SchemeResult {
        scheme,
        setting: t.setting,
        j,
        d: i - j,
    }
}

/// Diagonalizing scheme for an X-state. A degenerate marginal (z = 0)
/// leaves θ of that side free; it is searched on θ ∈ [0, π/2] at φ = 0.
fn x_diagonalizing(x: &XState, i: f64, grid: &SearchGrid) -> SchemeResult {
    let free_a = x.z_a().abs() < DEGENERACY_GAP;
    let free_b = x.z_b().abs() < DEGENERACY_GAP;
    if !free_a && !free_b {
        return x_scheme_result(i, Scheme::Diagonalizing, &diag_tomogram(x));
    }
    let setting_of = |p: &[f64]| {
        let mut k = 0;
        let mut next = |free: bool| {
            if free {
                k += 1;
                p[k - 1]
            } else {
                0.0
            }
        };
        let ta = next(free_a);
        let tb = next(free_b);
        MeasurementSetting::new(ta, 0.0, tb, 0.0)
    };
    let f = |p: &[f64]| x_tomogram_closed_form(x, &setting_of(p)).mutual_information();
    let dims = free_a as usize + free_b as usize;
    let n = grid.theta_divisions / 2;
    let mut best: Option<(Vec<f64>, f64)> = None;
    let mut consider = |p: Vec<f64>| {
        let v = f(&p);
        if best.as_ref().map_or(true, |(_, bv)| v > *bv) {
            best = Some((p, v));
        }
    };
    for ka in 0..=n {
        if dims == 1 {
            consider(vec![ka as f64 * grid.theta_step()]);
        } else {
            for kb in 0..=n {
                consider(vec![ka as f64 * grid.theta_step(), kb as f64 * grid.theta_step()]);
            }
        }
        if dims == 1 && ka == n {
            break;
        }
    }
    let (start, _) = best.expect("non-empty grid");
    let (p, _) = compass_maximize(f, start, vec![grid.theta_step(); dims], grid.tolerance);
    let t = x_tomogram_closed_form(x, &setting_of(&p));
    x_scheme_result(i, Scheme::Diagonalizing, &t)
}

/// D^opt = min(D^diag, D^sym) for an X-state, from the closed-form
/// tomograms; ties go to the diagonalizing scheme.
pub fn x_optimal_discord(x: &XState, grid: &SearchGrid) -> XOptimal {
    let state = x
        .to_state()
        .unwrap_or_else(|_| TwoQubitState::new(force_valid(x)));
    let i = state.mutual_information();
    let diag = x_diagonalizing(x, i, grid);
    let sym = x_scheme_result(i, Scheme::Symmetrizing, &sym_tomogram(x));
    let (winner, subclass) = if diag.d <= sym.d + SCHEME_TIE {
        (diag, XSubclass::Asymmetric)
    } else {
        (sym, XSubclass::Symmetric)
    };
    XOptimal {
        optimal: SchemeResult {
            scheme: Scheme::Optimal,
            ..winner
        },
        diag,
        sym,
        subclass,
    }
}

// XState validation allows 1e-12 of slack on the coherence bounds, which a
// 4×4 eigenvalue check at 1e-10 always accepts; this is unreachable for
// validated inputs.
fn force_valid(x: &XState) -> crate::qstate::DensityMatrix<4> {
    crate::qstate::DensityMatrix::new(x.to_matrix()).expect("validated X-state")
}

/// Every scalar correlation measure of one two-qubit state.
#[derive(Debug, Clone, PartialEq)]
pub struct CorrelationReport {
    pub mutual_information: f64,
    pub opt: SchemeResult,
    pub diag: SchemeResult,
    pub sym: SchemeResult,
    pub canonical_a: CanonicalDiscord,
    pub canonical_b: CanonicalDiscord,
    pub concurrence: f64,
    pub entanglement: f64,
    pub asymmetry: AsymmetryReport,
    pub asymmetry_diag: AsymmetryReport,
    pub asymmetry_opt: AsymmetryReport,
    /// Weight lost by a two-qubit projection; `None` when not applicable.
    pub alpha: Option<f64>,
    /// Set for X-shaped inputs.
    pub subclass: Option<XSubclass>,
}

impl CorrelationReport {
    pub fn d_opt(&self) -> f64 {
        self.opt.d
    }
    pub fn d_diag(&self) -> f64 {
        self.diag.d
    }
    pub fn d_sym(&self) -> f64 {
        self.sym.d
    }
    pub fn d_can_a(&self) -> f64 {
        self.canonical_a.discord
    }
    pub fn d_can_b(&self) -> f64 {
        self.canonical_b.discord
    }
}

/// Tolerance used to decide whether a state is X-shaped for the subclass label.
pub const X_SHAPE_TOL: f64 = 1e-12;

pub fn correlation_report(state: &TwoQubitState, grid: &SearchGrid) -> CorrelationReport {
    let opt = optimal_scheme(state, grid);
    let diag = diagonalizing_scheme(state, grid);
    let sym = symmetrizing_scheme(state, grid);
    let c = concurrence(state);
    let subclass = as_x_state(state, X_SHAPE_TOL).ok().map(|_| {
        if diag.d <= sym.d + SCHEME_TIE {
            XSubclass::Asymmetric
        } else {
            XSubclass::Symmetric
        }
    });
    CorrelationReport {
        mutual_information: state.mutual_information(),
        canonical_a: canonical_discord(state, Subsystem::A, grid),
        canonical_b: canonical_discord(state, Subsystem::B, grid),
        concurrence: c,
        entanglement: entanglement_from_concurrence(c),
        asymmetry: quantum_asymmetry(state),
        asymmetry_diag: tomographic_asymmetry(state, &diag.setting),
        asymmetry_opt: tomographic_asymmetry(state, &opt.setting),
        opt,
        diag,
        sym,
        alpha: None,
        subclass,
    }
}
