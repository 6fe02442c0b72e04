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

//! Two-qubit quantum correlations seen through spin tomograms.
//!
//! The crate computes tomographic discord under three measurement schemes,
//! canonical discord, entanglement of formation and entropic asymmetry for
//! two-qubit density matrices. It also models two coupled LC circuits whose
//! ground and thermal states, projected to two qubits, are X-states.

pub mod causal;
pub mod cli;
pub mod circuits;
pub mod measures;
pub mod qstate;
pub mod randgen;
pub mod search;
pub mod tomography;

pub use causal::{quantum_asymmetry, tomographic_asymmetry, AsymmetryReport, AsymmetryVariant};
pub use measures::{
    canonical_discord, concurrence, correlation_report, diagonalizing_scheme, entanglement_of_formation,
    optimal_scheme, symmetrizing_scheme, x_optimal_discord, CorrelationReport, Scheme, SchemeResult, XOptimal,
    XSubclass,
};
pub use qstate::{DensityMatrix, QubitState, StateError, Subsystem, TwoQubitState, XState, C64};
pub use search::SearchGrid;
pub use tomography::{tomogram, MeasurementSetting, Tomogram};
