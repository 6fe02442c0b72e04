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

//! Validated density operators for one and two qubits.
//!
//! Two-qubit matrices use the tensor ordering A⊗B, i.e. the basis
//! |00⟩, |01⟩, |10⟩, |11⟩ with the first label belonging to qubit A.
//! All entropies are in bits.

use std::fmt;

use nalgebra::{Complex, DMatrix, SMatrix, SymmetricEigen};
use thiserror::Error;

pub type C64 = Complex<f64>;

/// Tolerance on |ρ_ij − conj(ρ_ji)|.
pub const HERMITIAN_TOL: f64 = 1e-12;
/// Tolerance on |Tr ρ − 1|.
pub const TRACE_TOL: f64 = 1e-12;
/// Eigenvalues in [−POSITIVITY_TOL, 0) are treated as round-off and clamped.
pub const POSITIVITY_TOL: f64 = 1e-10;

/// A single invariant a candidate density matrix failed.
#[derive(Debug, Clone, PartialEq)]
pub enum Violation {
    NotHermitian { max_deviation: f64 },
    TraceNotOne { trace: f64 },
    NotPositive { min_eigenvalue: f64 },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NotHermitian { max_deviation } => write!(
                f,
                "NotHermitian: max |rho_ij - conj(rho_ji)| = {max_deviation:e} exceeds {HERMITIAN_TOL:e}"
            ),
            Violation::TraceNotOne { trace } => write!(
                f,
                "TraceNotOne: trace = {trace} (|trace - 1| = {:e} exceeds {TRACE_TOL:e})",
                (trace - 1.0).abs()
            ),
            Violation::NotPositive { min_eigenvalue } => write!(
                f,
                "NotPositive: smallest eigenvalue {min_eigenvalue:e} is below -{POSITIVITY_TOL:e}"
            ),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum StateError {
    #[error("matrix must be square with dimension 2 or 4, got {rows}x{cols}")]
    BadShape { rows: usize, cols: usize },
    #[error("matrix has a non-finite entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },
    #[error("invalid density matrix: {}", join_violations(.0))]
    Invalid(Vec<Violation>),
    #[error("state is not X-shaped: largest off-pattern magnitude {max_off_pattern:e}, coherences ({rho14}, {rho23})")]
    NotXShaped {
        max_off_pattern: f64,
        rho14: C64,
        rho23: C64,
    },
}

fn join_violations(v: &[Violation]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("; ")
}

/// A Hermitian, unit-trace, positive semidefinite N×N matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix<const N: usize> {
    m: SMatrix<C64, N, N>,
}

pub type QubitState = DensityMatrix<2>;

impl<const N: usize> DensityMatrix<N> {
    /// Checks every invariant and reports all of the ones that fail.
    pub fn new(m: SMatrix<C64, N, N>) -> Result<Self, StateError> {
        if N != 2 && N != 4 {
            return Err(StateError::BadShape { rows: N, cols: N });
        }
        for r in 0..N {
            for c in 0..N {
                let z = m[(r, c)];
                if !z.re.is_finite() || !z.im.is_finite() {
                    return Err(StateError::NonFinite { row: r, col: c });
                }
            }
        }
        let mut violations = Vec::new();

        let mut max_dev: f64 = 0.0;
        for r in 0..N {
            for c in r..N {
                max_dev = max_dev.max((m[(r, c)] - m[(c, r)].conj()).norm());
            }
        }
        if max_dev > HERMITIAN_TOL {
            violations.push(Violation::NotHermitian {
                max_deviation: max_dev,
            });
        }

        let trace = m.trace();
        if (trace.re - 1.0).abs() > TRACE_TOL || trace.im.abs() > TRACE_TOL {
            violations.push(Violation::TraceNotOne { trace: trace.re });
        }

        // Spectrum of the Hermitian part; exact for valid input.
        let herm = (m + m.adjoint()) * C64::new(0.5, 0.0);
        let min_eig = hermitian_spectrum(&herm).into_iter().fold(f64::INFINITY, f64::min);
        if min_eig < -POSITIVITY_TOL {
            violations.push(Violation::NotPositive {
                min_eigenvalue: min_eig,
            });
        }

        if violations.is_empty() {
            Ok(DensityMatrix { m })
        } else {
            Err(StateError::Invalid(violations))
        }
    }

    /// Builds from row-major nested rows, checking the shape first.
    pub fn from_rows(rows: &[Vec<C64>]) -> Result<Self, StateError> {
        let n_rows = rows.len();
        for row in rows {
            if row.len() != n_rows {
                return Err(StateError::BadShape {
                    rows: n_rows,
                    cols: row.len(),
                });
            }
        }
        if n_rows != N {
            return Err(StateError::BadShape {
                rows: n_rows,
                cols: n_rows,
            });
        }
        Self::new(SMatrix::from_fn(|r, c| rows[r][c]))
    }

    pub fn matrix(&self) -> &SMatrix<C64, N, N> {
        &self.m
    }

    /// Eigenvalues in ascending order, with round-off negatives clamped to 0.
    pub fn eigenvalues(&self) -> [f64; N] {
        let mut ev: Vec<f64> = hermitian_spectrum(&self.m)
            .into_iter()
            .map(|l| if l < 0.0 { 0.0 } else { l })
            .collect();
        ev.sort_by(|a, b| a.total_cmp(b));
        let mut out = [0.0; N];
        out.copy_from_slice(&ev);
        out
    }

    pub fn purity(&self) -> f64 {
        (self.m * self.m).trace().re
    }

    pub fn entropy(&self) -> f64 {
        von_neumann_entropy(self)
    }
}

fn hermitian_spectrum<const N: usize>(m: &SMatrix<C64, N, N>) -> Vec<f64> {
    let d = DMatrix::from_fn(N, N, |r, c| m[(r, c)]);
    SymmetricEigen::new(d).eigenvalues.iter().copied().collect()
}

/// Qubit subsystem selector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Subsystem {
    A,
    B,
}

impl Subsystem {
    pub fn other(self) -> Subsystem {
        match self {
            Subsystem::A => Subsystem::B,
            Subsystem::B => Subsystem::A,
        }
    }
}

impl fmt::Display for Subsystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Subsystem::A => f.write_str("A"),
            Subsystem::B => f.write_str("B"),
        }
    }
}

/// Traces out `traced` and returns the marginal of the remaining qubit.
pub fn partial_trace(state: &DensityMatrix<4>, traced: Subsystem) -> QubitState {
    let m = state.matrix();
    let mut out = SMatrix::<C64, 2, 2>::zeros();
    for i in 0..2 {
        for j in 0..2 {
            out[(i, j)] = match traced {
                // keep A: Σ_b ρ[(i,b),(j,b)]
                Subsystem::B => m[(2 * i, 2 * j)] + m[(2 * i + 1, 2 * j + 1)],
                // keep B: Σ_a ρ[(a,i),(a,j)]
                Subsystem::A => m[(i, j)] + m[(2 + i, 2 + j)],
            };
        }
    }
    // Partial traces of a valid state are valid; constructing directly keeps
    // the 1e-12 bound of the parent.
    DensityMatrix { m: out }
}

/// −x log₂ x with 0 log 0 = 0.
#[inline]
pub fn neg_xlog2x(x: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else {
        -x * x.log2()
    }
}

/// Binary entropy h(x) in bits.
pub fn binary_entropy(x: f64) -> f64 {
    neg_xlog2x(x) + neg_xlog2x(1.0 - x)
}

/// S(ρ) = −Σ λ log₂ λ.
pub fn von_neumann_entropy<const N: usize>(state: &DensityMatrix<N>) -> f64 {
    state.eigenvalues().iter().map(|&l| neg_xlog2x(l)).sum()
}

/// A two-qubit state together with its marginals.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoQubitState {
    joint: DensityMatrix<4>,
    marginal_a: QubitState,
    marginal_b: QubitState,
}

impl TwoQubitState {
    pub fn new(joint: DensityMatrix<4>) -> Self {
        let marginal_a = partial_trace(&joint, Subsystem::B);
        let marginal_b = partial_trace(&joint, Subsystem::A);
        TwoQubitState {
            joint,
            marginal_a,
            marginal_b,
        }
    }

    pub fn from_matrix(m: SMatrix<C64, 4, 4>) -> Result<Self, StateError> {
        DensityMatrix::new(m).map(Self::new)
    }

    /// Pure state from (unnormalized) amplitudes in the |00⟩..|11⟩ basis.
    pub fn pure(amplitudes: [C64; 4]) -> Self {
        let norm: f64 = amplitudes.iter().map(|a| a.norm_sqr()).sum();
        let m = SMatrix::<C64, 4, 4>::from_fn(|r, c| amplitudes[r] * amplitudes[c].conj() / norm);
        Self::from_matrix(hermitize(m)).expect("normalized projector is a valid state")
    }

    /// (|00⟩ + |11⟩)/√2.
    pub fn bell() -> Self {
        let h = C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        Self::pure([h, C64::new(0.0, 0.0), C64::new(0.0, 0.0), h])
    }

    pub fn maximally_mixed() -> Self {
        Self::from_matrix(SMatrix::identity() * C64::new(0.25, 0.0)).unwrap()
    }

    /// (|00⟩⟨00| + |11⟩⟨11|)/2.
    pub fn classically_correlated() -> Self {
        let mut m = SMatrix::<C64, 4, 4>::zeros();
        m[(0, 0)] = C64::new(0.5, 0.0);
        m[(3, 3)] = C64::new(0.5, 0.0);
        Self::from_matrix(m).unwrap()
    }

    /// p |Φ⁺⟩⟨Φ⁺| + (1 − p) I/4.
    pub fn werner(p: f64) -> Self {
        let bell = *Self::bell().joint.matrix();
        let m = bell * C64::new(p, 0.0)
            + SMatrix::<C64, 4, 4>::identity() * C64::new((1.0 - p) / 4.0, 0.0);
        Self::from_matrix(m).expect("Werner state with p in [-1/3, 1]")
    }

    /// ρ_A ⊗ ρ_B.
    pub fn product(a: &QubitState, b: &QubitState) -> Self {
        let m = a.matrix().kronecker(b.matrix());
        Self::from_matrix(hermitize(m)).expect("product of valid states is valid")
    }

    pub fn joint(&self) -> &DensityMatrix<4> {
        &self.joint
    }

    pub fn marginal(&self, side: Subsystem) -> &QubitState {
        match side {
            Subsystem::A => &self.marginal_a,
            Subsystem::B => &self.marginal_b,
        }
    }

    pub fn marginal_a(&self) -> &QubitState {
        &self.marginal_a
    }

    pub fn marginal_b(&self) -> &QubitState {
        &self.marginal_b
    }

    pub fn entropy_a(&self) -> f64 {
        self.marginal_a.entropy()
    }

    pub fn entropy_b(&self) -> f64 {
        self.marginal_b.entropy()
    }

    pub fn entropy_ab(&self) -> f64 {
        self.joint.entropy()
    }

    pub fn mutual_information(&self) -> f64 {
        quantum_mutual_information(self)
    }
}

/// Averages a matrix with its adjoint; removes round-off asymmetry from
/// matrices that are Hermitian by construction.
pub(crate) fn hermitize<const N: usize>(m: SMatrix<C64, N, N>) -> SMatrix<C64, N, N> {
    (m + m.adjoint()) * C64::new(0.5, 0.0)
}

/// I = S_A + S_B − S_AB.
pub fn quantum_mutual_information(state: &TwoQubitState) -> f64 {
    state.entropy_a() + state.entropy_b() - state.entropy_ab()
}

/// Real two-qubit X-state with non-negative coherences.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct XState {
    pub rho11: f64,
    pub rho22: f64,
    pub rho33: f64,
    pub rho44: f64,
    pub rho14: f64,
    pub rho23: f64,
}

/// Tolerance for the X-state diagonal and coherence bounds.
pub const XSTATE_TOL: f64 = 1e-12;

impl XState {
    pub fn new(
        rho11: f64,
        rho22: f64,
        rho33: f64,
        rho44: f64,
        rho14: f64,
        rho23: f64,
    ) -> Result<Self, StateError> {
        let x = XState {
            rho11,
            rho22,
            rho33,
            rho44,
            rho14,
            rho23,
        };
        x.check()?;
        Ok(x)
    }

    fn check(&self) -> Result<(), StateError> {
        let mut violations = Vec::new();
        let diag = [self.rho11, self.rho22, self.rho33, self.rho44];
        let all = [
            self.rho11, self.rho22, self.rho33, self.rho44, self.rho14, self.rho23,
        ];
        if all.iter().any(|v| !v.is_finite()) {
            return Err(StateError::NonFinite { row: 0, col: 0 });
        }
        let trace: f64 = diag.iter().sum();
        if (trace - 1.0).abs() > XSTATE_TOL {
            violations.push(Violation::TraceNotOne { trace });
        }
        let min_diag = diag.iter().cloned().fold(f64::INFINITY, f64::min);
        if min_diag < -XSTATE_TOL {
            violations.push(Violation::NotPositive {
                min_eigenvalue: min_diag,
            });
        }
        if self.rho14 < 0.0 || self.rho23 < 0.0 {
            return Err(StateError::NotXShaped {
                max_off_pattern: 0.0,
                rho14: C64::new(self.rho14, 0.0),
                rho23: C64::new(self.rho23, 0.0),
            });
        }
        let gap14 = self.rho11 * self.rho44 - self.rho14 * self.rho14;
        let gap23 = self.rho22 * self.rho33 - self.rho23 * self.rho23;
        if gap14 < -XSTATE_TOL || gap23 < -XSTATE_TOL {
            violations.push(Violation::NotPositive {
                min_eigenvalue: gap14.min(gap23),
            });
        }
        if violations.is_empty() {
            Ok(())
        } else {
            Err(StateError::Invalid(violations))
        }
    }

    pub fn diagonal(&self) -> [f64; 4] {
        [self.rho11, self.rho22, self.rho33, self.rho44]
    }

    /// ρ11 + ρ22 − ρ33 − ρ44: z-component of A's Bloch vector.
    pub fn z_a(&self) -> f64 {
        self.rho11 + self.rho22 - self.rho33 - self.rho44
    }

    /// ρ11 − ρ22 + ρ33 − ρ44.
    pub fn z_b(&self) -> f64 {
        self.rho11 - self.rho22 + self.rho33 - self.rho44
    }

    /// ρ11 − ρ22 − ρ33 + ρ44.
    pub fn z_ab(&self) -> f64 {
        self.rho11 - self.rho22 - self.rho33 + self.rho44
    }

    pub fn to_matrix(&self) -> SMatrix<C64, 4, 4> {
        let r = |v: f64| C64::new(v, 0.0);
        let mut m = SMatrix::<C64, 4, 4>::zeros();
        m[(0, 0)] = r(self.rho11);
        m[(1, 1)] = r(self.rho22);
        m[(2, 2)] = r(self.rho33);
        m[(3, 3)] = r(self.rho44);
        m[(0, 3)] = r(self.rho14);
        m[(3, 0)] = r(self.rho14);
        m[(1, 2)] = r(self.rho23);
        m[(2, 1)] = r(self.rho23);
        m
    }

    /// The full two-qubit state. Fails only when the small positivity slack
    /// allowed on the coherences pushes an eigenvalue past −1e-10.
    pub fn to_state(&self) -> Result<TwoQubitState, StateError> {
        TwoQubitState::from_matrix(self.to_matrix())
    }
}

/// Positions that must vanish in an X-shaped 4×4 matrix (upper triangle).
const OFF_PATTERN: [(usize, usize); 4] = [(0, 1), (0, 2), (1, 3), (2, 3)];

/// Reads a state as an X-state without any change of basis.
///
/// Fails with `NotXShaped` when an off-pattern entry has magnitude ≥ `tol`,
/// or when ρ14, ρ23 are not real and non-negative to within `tol`.
pub fn as_x_state(state: &TwoQubitState, tol: f64) -> Result<XState, StateError> {
    let m = state.joint().matrix();
    let max_off = OFF_PATTERN
        .iter()
        .map(|&(r, c)| m[(r, c)].norm().max(m[(c, r)].norm()))
        .fold(0.0, f64::max);
    let rho14 = m[(0, 3)];
    let rho23 = m[(1, 2)];
    let coherent_ok = rho14.im.abs() < tol && rho23.im.abs() < tol && rho14.re > -tol && rho23.re > -tol;
    if max_off >= tol || !coherent_ok {
        return Err(StateError::NotXShaped {
            max_off_pattern: max_off,
            rho14,
            rho23,
        });
    }
    Ok(XState {
        rho11: m[(0, 0)].re,
        rho22: m[(1, 1)].re,
        rho33: m[(2, 2)].re,
        rho44: m[(3, 3)].re,
        rho14: rho14.re.max(0.0),
        rho23: rho23.re.max(0.0),
    })
}
