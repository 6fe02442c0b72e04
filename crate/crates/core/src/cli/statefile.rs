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

//! JSON state files.
//!
//! ```json
//! {"label": "bell",
//!  "matrix": [[{"re": 0.5, "im": 0}, {"re": 0, "im": 0}, …], …]}
//! ```
//!
//! Rows and columns follow the basis |00⟩, |01⟩, |10⟩, |11⟩.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::qstate::{DensityMatrix, StateError, TwoQubitState, C64};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Entry {
    pub re: f64,
    #[serde(default)]
    pub im: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    pub matrix: Vec<Vec<Entry>>,
}

#[derive(Debug, Error)]
pub enum StateFileError {
    #[error("malformed state file: {0}")]
    Syntax(#[from] serde_json::Error),
    #[error(transparent)]
    State(#[from] StateError),
}

impl StateFile {
    pub fn from_state(state: &TwoQubitState, label: Option<String>) -> Self {
        let m = state.joint().matrix();
        StateFile {
            label,
            matrix: (0..4)
                .map(|r| (0..4).map(|c| Entry { re: m[(r, c)].re, im: m[(r, c)].im }).collect())
                .collect(),
        }
    }

    pub fn to_state(&self) -> Result<TwoQubitState, StateError> {
        let rows: Vec<Vec<C64>> = self
            .matrix
            .iter()
            .map(|row| row.iter().map(|e| C64::new(e.re, e.im)).collect())
            .collect();
        DensityMatrix::<4>::from_rows(&rows).map(TwoQubitState::new)
    }
}

/// Parses JSON text into a validated state and its label.
pub fn parse_state_file(text: &str) -> Result<(TwoQubitState, Option<String>), StateFileError> {
    let file: StateFile = serde_json::from_str(text)?;
    let state = file.to_state()?;
    Ok((state, file.label))
}
