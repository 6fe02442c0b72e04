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

//! Entropic asymmetry from independence functions.
//!
//! `i_{A|B} = (S_A − I)/S_A`, `i_{B|A} = (S_B − I)/S_B` and
//! `d_AB = i_{A|B} − i_{B|A}`. A positive `d_AB` marks A as the "cause".
//! The tomographic variant replaces S and I with the Shannon entropies and
//! mutual information of a tomogram.

use crate::qstate::{Subsystem, TwoQubitState};
use crate::tomography::{shannon_entropy, tomogram, MeasurementSetting};

/// Marginal entropies below this make the independence function undefined.
pub const ENTROPY_FLOOR: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum AsymmetryVariant {
    Quantum,
    Tomographic(MeasurementSetting),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AsymmetryReport {
    /// `None` when S_A (or H_A) vanishes.
    pub i_ab: Option<f64>,
    /// `None` when S_B (or H_B) vanishes.
    pub i_ba: Option<f64>,
    /// Defined only when both independence functions are.
    pub d_ab: Option<f64>,
    pub variant: AsymmetryVariant,
}

impl AsymmetryReport {
    /// Builds the report from marginal entropies and mutual information.
    pub fn from_entropies(h_a: f64, h_b: f64, mutual: f64, variant: AsymmetryVariant) -> Self {
        let i_ab = (h_a >= ENTROPY_FLOOR).then(|| (h_a - mutual) / h_a);
        let i_ba = (h_b >= ENTROPY_FLOOR).then(|| (h_b - mutual) / h_b);
        let d_ab = match (i_ab, i_ba) {
            (Some(_), Some(_)) => Some(mutual * (h_a - h_b) / (h_a * h_b)),
            _ => None,
        };
        AsymmetryReport {
            i_ab,
            i_ba,
            d_ab,
            variant,
        }
    }

    /// The "cause" side: A when d_AB > 0, B when d_AB < 0.
    pub fn cause(&self) -> Option<Subsystem> {
        match self.d_ab {
            Some(d) if d > 0.0 => Some(Subsystem::A),
            Some(d) if d < 0.0 => Some(Subsystem::B),
            _ => None,
        }
    }

    /// d_BA = −d_AB.
    pub fn d_ba(&self) -> Option<f64> {
        self.d_ab.map(|d| -d)
    }
}

pub fn quantum_asymmetry(state: &TwoQubitState) -> AsymmetryReport {
    let (sa, sb, sab) = (state.entropy_a(), state.entropy_b(), state.entropy_ab());
    AsymmetryReport::from_entropies(sa, sb, sa + sb - sab, AsymmetryVariant::Quantum)
}

pub fn tomographic_asymmetry(state: &TwoQubitState, setting: &MeasurementSetting) -> AsymmetryReport {
    let t = tomogram(state, setting);
    let (ta, tb) = t.marginals();
    let (ha, hb) = (shannon_entropy(&ta), shannon_entropy(&tb));
    let j = ha + hb - t.joint_entropy();
    AsymmetryReport::from_entropies(ha, hb, j, AsymmetryVariant::Tomographic(*setting))
}
