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

//! Command-line experiment runner.
//!
//! Exit codes: 0 success, 1 validation failure, 2 I/O failure,
//! 3 numerical non-convergence.

pub mod range;
pub mod statefile;
pub mod sweep;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use thiserror::Error;

use crate::circuits::{
    ground_state_2qb, thermal_state_2qb, CircuitError, CircuitParams, DEFAULT_MAX_LEVEL, DEFAULT_QUAD_NODES,
};
use crate::measures::{correlation_report, x_optimal_discord, CorrelationReport};
use crate::randgen::{random_mixed_state, random_x_state, Seed};
use crate::search::SearchGrid;

use range::parse_range;
use statefile::{parse_state_file, StateFileError};
use sweep::{write_rows, Field, SweepRow};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Validation(String),
    #[error("{context}: {source}")]
    Io { context: String, source: io::Error },
    #[error("{0}")]
    NonConvergence(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Validation(_) => 1,
            CliError::Io { .. } => 2,
            CliError::NonConvergence(_) => 3,
        }
    }

    fn io(context: impl Into<String>) -> impl FnOnce(io::Error) -> CliError {
        let context = context.into();
        move |source| CliError::Io { context, source }
    }
}

#[derive(Debug, Parser)]
#[command(name = "tomodiscord", version, about = "Tomographic discord and coupled-circuit experiments")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Every correlation measure of one state read from a JSON file.
    Measures {
        /// JSON file with "matrix" (4×4 of {re, im}) and optional "label".
        state: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Measures over seeded random states.
    RandomStudy {
        #[arg(long, default_value_t = 3000)]
        samples: u64,
        #[arg(long, value_enum, default_value_t = Kind::X)]
        kind: Kind,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        common: Common,
    },
    /// Ground state of the coupled circuits over g or Δω.
    GroundSweep {
        #[command(flatten)]
        sweep: SweepArgs,
        #[command(flatten)]
        common: Common,
    },
    /// Thermal state of the coupled circuits over T or Δω.
    ThermalSweep {
        /// Temperature range start:stop:step.
        #[arg(long = "T-range", allow_hyphen_values = true)]
        t_range: Option<String>,
        #[command(flatten)]
        sweep: SweepArgs,
        #[command(flatten)]
        common: Common,
    },
    /// Entropic asymmetry of the thermal state over Δω.
    AsymmetrySweep {
        #[command(flatten)]
        sweep: SweepArgs,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    X,
    Mixed,
}

/// Circuit parameters. Ranges are start:stop:step and include stop when the
/// step divides the span.
#[derive(Debug, Clone, Args)]
pub struct SweepArgs {
    /// Coupling constant, |g| < 1.
    #[arg(long, default_value_t = 0.3, allow_hyphen_values = true)]
    g: f64,
    /// Detuning Δω = ω₂ − ω₁ (ω₁ = 1).
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    domega: f64,
    /// Temperature for thermal states.
    #[arg(long = "T", default_value_t = 0.2)]
    temperature: f64,
    /// Sweep over g instead of using --g.
    #[arg(long, allow_hyphen_values = true)]
    g_range: Option<String>,
    /// Sweep over Δω instead of using --domega.
    #[arg(long, allow_hyphen_values = true)]
    domega_range: Option<String>,
}

#[derive(Debug, Clone, Args)]
pub struct Common {
    /// θ grid divisions on [0, π] for measurement searches.
    #[arg(long, default_value_t = 60)]
    grid_theta: usize,
    /// φ grid divisions on [0, 2π) for measurement searches.
    #[arg(long, default_value_t = 60)]
    grid_phi: usize,
    /// Highest oscillator level in overlap tables.
    #[arg(long, default_value_t = DEFAULT_MAX_LEVEL)]
    max_level: usize,
    /// Gauss–Hermite nodes per axis.
    #[arg(long, default_value_t = DEFAULT_QUAD_NODES)]
    quad_nodes: usize,
    /// Worker threads (0 picks the number of CPUs).
    #[arg(long, default_value_t = 0)]
    jobs: usize,
    /// CSV output path; standard output when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

impl Common {
    fn grid(&self) -> Result<SearchGrid, CliError> {
        if self.grid_theta < 2 || self.grid_phi < 2 {
            return Err(CliError::Validation("grid divisions must be at least 2".into()));
        }
        Ok(SearchGrid {
            theta_divisions: self.grid_theta,
            phi_divisions: self.grid_phi,
            ..SearchGrid::default()
        })
    }

    fn pool(&self) -> Result<rayon::ThreadPool, CliError> {
        rayon::ThreadPoolBuilder::new()
            .num_threads(self.jobs)
            .build()
            .map_err(|e| CliError::Validation(format!("cannot start {} workers: {e}", self.jobs)))
    }
}

/// Parses arguments and runs; returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    match run(&cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

pub fn run(cli: &Cli) -> Result<(), CliError> {
    match &cli.command {
        Command::Measures { state, common } => cmd_measures(state, common),
        Command::RandomStudy {
            samples,
            kind,
            seed,
            common,
        } => {
            let rows = random_study(*samples, *kind, Seed(*seed), common)?;
            emit(common, &rows)
        }
        Command::GroundSweep { sweep, common } => {
            let points = sweep_points(sweep, None, false)?;
            emit(common, &circuit_rows(&points, StateKind::Ground, common)?)
        }
        Command::ThermalSweep { t_range, sweep, common } => {
            let points = sweep_points(sweep, t_range.as_deref(), true)?;
            emit(common, &circuit_rows(&points, StateKind::Thermal, common)?)
        }
        Command::AsymmetrySweep { sweep, common } => {
            if sweep.domega_range.is_none() {
                return Err(CliError::Validation("asymmetry-sweep needs --domega-range".into()));
            }
            let points = sweep_points(sweep, None, true)?;
            emit(common, &circuit_rows(&points, StateKind::Thermal, common)?)
        }
    }
}

fn emit(common: &Common, rows: &[SweepRow]) -> Result<(), CliError> {
    match &common.out {
        Some(path) => {
            let file = File::create(path).map_err(CliError::io(format!("cannot create {}", path.display())))?;
            let mut w = BufWriter::new(file);
            write_rows(&mut w, rows)
                .and_then(|_| w.flush())
                .map_err(CliError::io(format!("cannot write {}", path.display())))
        }
        None => write_rows(io::stdout().lock(), rows).map_err(CliError::io("cannot write standard output")),
    }
}

fn cmd_measures(path: &Path, common: &Common) -> Result<(), CliError> {
    let text =
        std::fs::read_to_string(path).map_err(CliError::io(format!("cannot read {}", path.display())))?;
    let (state, label) = parse_state_file(&text).map_err(|e| match e {
        StateFileError::Syntax(_) => CliError::Validation(e.to_string()),
        StateFileError::State(s) => CliError::Validation(s.to_string()),
    })?;
    let report = correlation_report(&state, &common.grid()?);
    let mut stdout = io::stdout().lock();
    print_report(&mut stdout, label.as_deref(), &report).map_err(CliError::io("cannot write standard output"))?;
    if common.out.is_some() {
        emit(common, &[SweepRow::default().with_report(&report)])?;
    }
    Ok(())
}

pub fn print_report<W: Write>(w: &mut W, label: Option<&str>, r: &CorrelationReport) -> io::Result<()> {
    if let Some(label) = label {
        writeln!(w, "label    {label}")?;
    }
    let line = |w: &mut W, name: &str, f: Field| writeln!(w, "{name:<8} {f}");
    line(w, "I", r.mutual_information.into())?;
    line(w, "Dopt", r.d_opt().into())?;
    line(w, "Ddiag", r.d_diag().into())?;
    line(w, "Dsym", r.d_sym().into())?;
    line(w, "DcanA", r.d_can_a().into())?;
    line(w, "DcanB", r.d_can_b().into())?;
    line(w, "C", r.concurrence.into())?;
    line(w, "E", r.entanglement.into())?;
    line(w, "dAB", r.asymmetry.d_ab.into())?;
    line(w, "dDiag", r.asymmetry_diag.d_ab.into())?;
    line(w, "dOpt", r.asymmetry_opt.d_ab.into())?;
    if let Some(s) = r.subclass {
        writeln!(w, "subclass {s}")?;
    }
    let s = r.opt.setting;
    writeln!(
        w,
        "setting  thetaA={:.6} phiA={:.6} thetaB={:.6} phiB={:.6}",
        s.theta_a, s.phi_a, s.theta_b, s.phi_b
    )
}

/// One random-study row for sample `index`.
pub fn random_row(kind: Kind, seed: Seed, index: u64, grid: &SearchGrid) -> SweepRow {
    let mut rng = seed.stream(index);
    let row = SweepRow {
        sample: Some(index),
        ..SweepRow::default()
    };
    match kind {
        Kind::X => {
            let x = random_x_state(&mut rng);
            let state = x.to_state().expect("generated X-state is valid");
            let report = correlation_report(&state, grid);
            let xo = x_optimal_discord(&x, grid);
            SweepRow {
                residual: (report.d_opt() - xo.optimal.d).abs().into(),
                ..row.with_report(&report)
            }
        }
        Kind::Mixed => {
            let state = random_mixed_state(&mut rng);
            row.with_report(&correlation_report(&state, grid))
        }
    }
}

fn random_study(samples: u64, kind: Kind, seed: Seed, common: &Common) -> Result<Vec<SweepRow>, CliError> {
    if samples == 0 {
        return Err(CliError::Validation("--samples must be at least 1".into()));
    }
    let grid = common.grid()?;
    Ok(common.pool()?.install(|| {
        (0..samples)
            .into_par_iter()
            .map(|k| random_row(kind, seed, k, &grid))
            .collect()
    }))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StateKind {
    Ground,
    Thermal,
}

/// Parameter points in sweep order; the `t_range` axis wins over Δω, which
/// wins over g.
fn sweep_points(s: &SweepArgs, t_range: Option<&str>, thermal: bool) -> Result<Vec<(f64, f64, f64)>, CliError> {
    let parse = |text: &str| parse_range(text).map_err(|e| CliError::Validation(format!("{text:?}: {e}")));
    let t = if thermal { s.temperature } else { 0.0 };
    let axes = [t_range.is_some(), s.domega_range.is_some(), s.g_range.is_some()];
    if axes.iter().filter(|&&a| a).count() > 1 {
        return Err(CliError::Validation("give at most one range flag".into()));
    }
    let points = if let Some(r) = t_range {
        parse(r)?.into_iter().map(|t| (s.domega, s.g, t)).collect()
    } else if let Some(r) = &s.domega_range {
        parse(r)?.into_iter().map(|d| (d, s.g, t)).collect()
    } else if let Some(r) = &s.g_range {
        parse(r)?.into_iter().map(|g| (s.domega, g, t)).collect()
    } else {
        vec![(s.domega, s.g, t)]
    };
    if thermal && points.iter().any(|p: &(f64, f64, f64)| p.2 <= 0.0) {
        return Err(CliError::Validation("thermal states need T > 0".into()));
    }
    Ok(points)
}

/// Row for one circuit parameter point. Unstable or invalid couplings give a
/// row carrying only the parameters and a warning.
pub fn circuit_row(
    (delta_omega, g, t): (f64, f64, f64),
    kind: StateKind,
    max_level: usize,
    nodes: usize,
    grid: &SearchGrid,
) -> Result<SweepRow, CircuitError> {
    let row = SweepRow {
        g: g.into(),
        delta_omega: delta_omega.into(),
        temperature: match kind {
            StateKind::Ground => Field::Missing,
            StateKind::Thermal => t.into(),
        },
        ..SweepRow::default()
    };
    let approx = CircuitParams::new(delta_omega, g, t).and_then(|p| match kind {
        StateKind::Ground => ground_state_2qb(&p, max_level, nodes),
        StateKind::Thermal => thermal_state_2qb(&p, max_level, nodes),
    });
    let approx = match approx {
        Ok(a) => a,
        Err(e @ (CircuitError::UnstableCoupling { .. } | CircuitError::InvalidParams(_))) => {
            return Ok(SweepRow {
                warning: e.to_string(),
                ..row
            })
        }
        Err(e) => return Err(e),
    };
    let state = approx.state.to_state().expect("circuit X-state is valid");
    let mut report = correlation_report(&state, grid);
    report.alpha = Some(approx.alpha);
    Ok(SweepRow {
        warning: if approx.ground_fallback {
            "temperature below threshold, ground state used".into()
        } else {
            String::new()
        },
        ..row.with_report(&report)
    })
}

fn circuit_rows(points: &[(f64, f64, f64)], kind: StateKind, common: &Common) -> Result<Vec<SweepRow>, CliError> {
    let grid = common.grid()?;
    let rows: Result<Vec<SweepRow>, CircuitError> = common.pool()?.install(|| {
        points
            .par_iter()
            .map(|&p| circuit_row(p, kind, common.max_level, common.quad_nodes, &grid))
            .collect()
    });
    rows.map_err(|e| match e {
        CircuitError::QuadratureNotConverged { .. } => CliError::NonConvergence(e.to_string()),
        other => CliError::Validation(other.to_string()),
    })
}
