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

//! `start:stop:step` ranges.

use thiserror::Error;

/// Upper bound on the number of points a range may expand to.
pub const MAX_POINTS: usize = 100_000;

#[derive(Debug, Error, PartialEq)]
pub enum RangeError {
    #[error("expected start:stop:step, got {0:?}")]
    Syntax(String),
    #[error("range bounds and step must be finite numbers")]
    NotFinite,
    #[error("step must be positive")]
    NonPositiveStep,
    #[error("stop {stop} is below start {start}")]
    Reversed { start: f64, stop: f64 },
    #[error("range expands to more than {MAX_POINTS} points")]
    TooLong,
}

/// Expands `start:stop:step` to `start, start + step, …`.
///
/// `stop` is included when it lies on the lattice up to 1e-9 of a step.
/// Points are computed as `start + k·step` and the final lattice point is
/// snapped to `stop`, so `0:0.5:0.05` ends exactly at 0.5.
pub fn parse_range(text: &str) -> Result<Vec<f64>, RangeError> {
    let parts: Vec<&str> = text.split(':').collect();
    if parts.len() != 3 {
        return Err(RangeError::Syntax(text.to_owned()));
    }
    let mut nums = [0.0; 3];
    for (slot, part) in nums.iter_mut().zip(&parts) {
        *slot = part
            .trim()
            .parse::<f64>()
            .map_err(|_| RangeError::Syntax(text.to_owned()))?;
    }
    let [start, stop, step] = nums;
    if !nums.iter().all(|v| v.is_finite()) {
        return Err(RangeError::NotFinite);
    }
    if step <= 0.0 {
        return Err(RangeError::NonPositiveStep);
    }
    if stop < start {
        return Err(RangeError::Reversed { start, stop });
    }
    let span = (stop - start) / step;
    if span >= MAX_POINTS as f64 {
        return Err(RangeError::TooLong);
    }
    let whole = (span + 1e-9).floor();
    let on_lattice = (span - whole).abs() <= 1e-9;
    let count = whole as usize + 1;
    let mut out: Vec<f64> = (0..count).map(|k| start + k as f64 * step).collect();
    if on_lattice {
        *out.last_mut().expect("count ≥ 1") = stop;
    }
    Ok(out)
}
