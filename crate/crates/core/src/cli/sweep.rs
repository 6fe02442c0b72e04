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

//! Versioned CSV rows shared by every command.

use std::fmt;
use std::io::{Read, Write};
use std::str::FromStr;

use thiserror::Error;

use crate::measures::{CorrelationReport, XSubclass};

pub const SCHEMA_LINE: &str = "# schema=tomodiscord-sweep/1";

pub const COLUMNS: [&str; 18] = [
    "sample",
    "g",
    "deltaOmega",
    "T",
    "I",
    "Dopt",
    "Ddiag",
    "Dsym",
    "DcanA",
    "DcanB",
    "E",
    "dAB",
    "dDiag",
    "dOpt",
    "alpha",
    "subclass",
    "residual",
    "warning",
];

const UNDEFINED: &str = "undefined";

/// One numeric cell.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub enum Field {
    Value(f64),
    /// The quantity exists for this row but has no value (e.g. a ratio with
    /// a vanishing denominator).
    Undefined,
    /// The column does not apply to this row.
    #[default]
    Missing,
}

impl Field {
    pub fn value(self) -> Option<f64> {
        match self {
            Field::Value(v) => Some(v),
            _ => None,
        }
    }
}

impl From<f64> for Field {
    fn from(v: f64) -> Self {
        Field::Value(v)
    }
}

impl From<Option<f64>> for Field {
    fn from(v: Option<f64>) -> Self {
        v.map_or(Field::Undefined, Field::Value)
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            // 9 significant digits.
            Field::Value(v) => write!(f, "{v:.8e}"),
            Field::Undefined => f.write_str(UNDEFINED),
            Field::Missing => Ok(()),
        }
    }
}

#[derive(Debug, Error, PartialEq)]
pub enum ParseError {
    #[error("missing schema line {SCHEMA_LINE:?}")]
    MissingSchema,
    #[error("unexpected header {0:?}")]
    BadHeader(Vec<String>),
    #[error("row {row}: expected {expected} fields, found {found}")]
    FieldCount { row: usize, expected: usize, found: usize },
    #[error("row {row}, column {column}: cannot parse {text:?}")]
    BadField { row: usize, column: &'static str, text: String },
    #[error("malformed CSV: {0}")]
    Csv(String),
}

impl FromStr for Field {
    type Err = ();

    fn from_str(s: &str) -> Result<Self, ()> {
        match s {
            "" => Ok(Field::Missing),
            UNDEFINED => Ok(Field::Undefined),
            _ => match s.parse::<f64>() {
                Ok(v) if v.is_finite() => Ok(Field::Value(v)),
                _ => Err(()),
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct SweepRow {
    pub sample: Option<u64>,
    pub g: Field,
    pub delta_omega: Field,
    pub temperature: Field,
    pub mutual_information: Field,
    pub d_opt: Field,
    pub d_diag: Field,
    pub d_sym: Field,
    pub d_can_a: Field,
    pub d_can_b: Field,
    pub entanglement: Field,
    pub d_ab: Field,
    pub d_tom_diag: Field,
    pub d_tom_opt: Field,
    pub alpha: Field,
    pub subclass: Option<XSubclass>,
    pub residual: Field,
    pub warning: String,
}

impl SweepRow {
    /// Fills the measure columns from a report.
    pub fn with_report(mut self, r: &CorrelationReport) -> Self {
        self.mutual_information = r.mutual_information.into();
        self.d_opt = r.d_opt().into();
        self.d_diag = r.d_diag().into();
        self.d_sym = r.d_sym().into();
        self.d_can_a = r.d_can_a().into();
        self.d_can_b = r.d_can_b().into();
        self.entanglement = r.entanglement.into();
        self.d_ab = r.asymmetry.d_ab.into();
        self.d_tom_diag = r.asymmetry_diag.d_ab.into();
        self.d_tom_opt = r.asymmetry_opt.d_ab.into();
        self.alpha = r.alpha.map_or(Field::Missing, Field::Value);
        self.subclass = r.subclass;
        self
    }

    fn cells(&self) -> [String; 18] {
        [
            self.sample.map(|s| s.to_string()).unwrap_or_default(),
            self.g.to_string(),
            self.delta_omega.to_string(),
            self.temperature.to_string(),
            self.mutual_information.to_string(),
            self.d_opt.to_string(),
            self.d_diag.to_string(),
            self.d_sym.to_string(),
            self.d_can_a.to_string(),
            self.d_can_b.to_string(),
            self.entanglement.to_string(),
            self.d_ab.to_string(),
            self.d_tom_diag.to_string(),
            self.d_tom_opt.to_string(),
            self.alpha.to_string(),
            self.subclass.map(|s| s.to_string()).unwrap_or_default(),
            self.residual.to_string(),
            self.warning.clone(),
        ]
    }
}

pub fn write_rows<W: Write>(mut out: W, rows: &[SweepRow]) -> std::io::Result<()> {
    writeln!(out, "{SCHEMA_LINE}")?;
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out);
    w.write_record(COLUMNS)?;
    for row in rows {
        w.write_record(row.cells())?;
    }
    w.flush()
}

pub fn read_rows<R: Read>(input: R) -> Result<Vec<SweepRow>, ParseError> {
    let mut input = std::io::BufReader::new(input);
    let mut first = String::new();
    std::io::BufRead::read_line(&mut input, &mut first).map_err(|e| ParseError::Csv(e.to_string()))?;
    if first.trim_end_matches(['\r', '\n']) != SCHEMA_LINE {
        return Err(ParseError::MissingSchema);
    }
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .flexible(true)
        .from_reader(input);
    let header = reader.headers().map_err(|e| ParseError::Csv(e.to_string()))?;
    if header.iter().ne(COLUMNS.iter().copied()) {
        return Err(ParseError::BadHeader(header.iter().map(str::to_owned).collect()));
    }
    let mut rows = Vec::new();
    for (k, record) in reader.records().enumerate() {
        let record = record.map_err(|e| ParseError::Csv(e.to_string()))?;
        let row = k + 1;
        if record.len() != COLUMNS.len() {
            return Err(ParseError::FieldCount {
                row,
                expected: COLUMNS.len(),
                found: record.len(),
            });
        }
        let bad = |column: usize| ParseError::BadField {
            row,
            column: COLUMNS[column],
            text: record[column].to_owned(),
        };
        let num = |column: usize| record[column].parse::<Field>().map_err(|_| bad(column));
        let sample = match &record[0] {
            "" => None,
            s => Some(s.parse::<u64>().map_err(|_| bad(0))?),
        };
        let subclass = match &record[15] {
            "" => None,
            "asymmetric" => Some(XSubclass::Asymmetric),
            "symmetric" => Some(XSubclass::Symmetric),
            _ => return Err(bad(15)),
        };
        rows.push(SweepRow {
            sample,
            g: num(1)?,
            delta_omega: num(2)?,
            temperature: num(3)?,
            mutual_information: num(4)?,
            d_opt: num(5)?,
            d_diag: num(6)?,
            d_sym: num(7)?,
            d_can_a: num(8)?,
            d_can_b: num(9)?,
            entanglement: num(10)?,
            d_ab: num(11)?,
            d_tom_diag: num(12)?,
            d_tom_opt: num(13)?,
            alpha: num(14)?,
            subclass,
            residual: num(16)?,
            warning: record[17].to_owned(),
        });
    }
    Ok(rows)
}
