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

//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any
//! failure. All random ensembles use seed 42.

mod common;

use std::time::Instant;

use rand::Rng;
use tomodiscord::causal::{quantum_asymmetry, tomographic_asymmetry};
use tomodiscord::circuits::{
    ground_from_table, normal_modes, overlap_coefficients, rotated_cross_term, thermal_from_table, CircuitParams,
    OverlapTable, DEFAULT_MAX_LEVEL, DEFAULT_QUAD_NODES, MODE_PAIRS,
};
use tomodiscord::measures::{
    canonical_discord, diagonalizing_scheme, entanglement_of_formation, optimal_scheme, symmetrizing_scheme,
    x_optimal_discord, SchemeResult,
};
use tomodiscord::qstate::{as_x_state, Subsystem, TwoQubitState};
use tomodiscord::randgen::{random_mixed_state, random_pure_state, random_x_state, Seed};
use tomodiscord::search::SearchGrid;
use tomodiscord::tomography::{tomogram, MeasurementSetting};

const SEED: Seed = Seed(42);
const ENSEMBLE: u64 = 3000;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

struct XSample {
    i: f64,
    opt: SchemeResult,
    diag: SchemeResult,
    sym: SchemeResult,
    d_q: Option<f64>,
    d_opt: Option<f64>,
    d_diag: Option<f64>,
    d_sym: Option<f64>,
}

fn sample(state: &TwoQubitState, opt: SchemeResult, diag: SchemeResult, sym: SchemeResult) -> XSample {
    XSample {
        i: state.mutual_information(),
        d_q: quantum_asymmetry(state).d_ab,
        d_opt: tomographic_asymmetry(state, &opt.setting).d_ab,
        d_diag: tomographic_asymmetry(state, &diag.setting).d_ab,
        d_sym: tomographic_asymmetry(state, &sym.setting).d_ab,
        opt,
        diag,
        sym,
    }
}

fn x_ensemble(grid: &SearchGrid) -> (Vec<XSample>, f64) {
    let start = Instant::now();
    let out = (0..ENSEMBLE)
        .map(|k| {
            let x = random_x_state(&mut SEED.stream(k));
            let s = x.to_state().unwrap();
            let opt = optimal_scheme(&s, grid);
            let xo = x_optimal_discord(&x, grid);
            sample(&s, opt, xo.diag, xo.sym)
        })
        .collect();
    (out, start.elapsed().as_secs_f64())
}

fn mixed_ensemble(grid: &SearchGrid) -> Vec<(TwoQubitState, XSample)> {
    (0..ENSEMBLE)
        .map(|k| {
            let s = random_mixed_state(&mut SEED.stream(k));
            let opt = optimal_scheme(&s, grid);
            let diag = diagonalizing_scheme(&s, grid);
            let sym = symmetrizing_scheme(&s, grid);
            let smp = sample(&s, opt, diag, sym);
            (s, smp)
        })
        .collect()
}

fn c1_min_rule(xs: &[XSample], secs: f64) -> Outcome {
    let worst = xs
        .iter()
        .map(|s| (s.opt.d - s.diag.d.min(s.sym.d)).abs())
        .fold(0.0, f64::max);
    outcome(
        worst < 1e-3 && secs <= 600.0,
        format!("max |Dopt - min(Ddiag,Dsym)| = {worst:.3e} over {ENSEMBLE} X-states (< 1e-3); runtime {secs:.1} s (<= 600 s)"),
    )
}

fn c2_subclasses(xs: &[XSample]) -> Outcome {
    let close = |a: Option<f64>, b: Option<f64>, tol: f64| matches!((a, b), (Some(a), Some(b)) if (a - b).abs() < tol);
    let (mut asym, mut sym, mut bad) = (0, 0, Vec::new());
    for (k, s) in xs.iter().enumerate() {
        let a = (s.opt.d - s.diag.d).abs() < 1e-3 && close(s.d_opt, s.d_diag, 1e-2);
        let b = s.opt.d < s.diag.d - 1e-3 && close(s.d_opt, Some(0.0), 1e-2);
        match (a, b) {
            (true, false) => asym += 1,
            (false, true) => sym += 1,
            _ => bad.push(k),
        }
    }
    outcome(
        bad.is_empty(),
        format!(
            "{asym} asymmetric + {sym} symmetric of {ENSEMBLE}; samples in neither or both class: {} {:?}",
            bad.len(),
            &bad[..bad.len().min(10)]
        ),
    )
}

fn c3_counterexamples(ms: &[(TwoQubitState, XSample)]) -> Outcome {
    let below = ms
        .iter()
        .filter(|(_, s)| s.opt.d < s.diag.d.min(s.sym.d) - 1e-3)
        .count();
    let flipped = ms
        .iter()
        .filter(|(_, s)| match (s.d_opt, s.d_diag) {
            (Some(a), Some(b)) => a.abs() > 1e-2 && b.abs() > 1e-2 && a.signum() != b.signum(),
            _ => false,
        })
        .count();
    outcome(
        below >= 1 && flipped >= 1,
        format!("{below} states with Dopt < min(Ddiag,Dsym) - 1e-3; {flipped} with sign(dOpt) != sign(dDiag), both > 1e-2"),
    )
}

fn c4_pure_chain(grid: &SearchGrid) -> (Outcome, Vec<f64>) {
    let mut worst: f64 = 0.0;
    let mut d_opts = Vec::new();
    for k in 0..100 {
        let s = random_pure_state(&mut SEED.stream(k));
        let opt = optimal_scheme(&s, grid);
        let diag = diagonalizing_scheme(&s, grid);
        let vals = [
            opt.d,
            diag.d,
            canonical_discord(&s, Subsystem::A, grid).discord,
            canonical_discord(&s, Subsystem::B, grid).discord,
            diag.j,
            0.5 * s.mutual_information(),
            entanglement_of_formation(&s),
        ];
        for a in vals {
            for b in vals {
                worst = worst.max((a - b).abs());
            }
        }
        d_opts.push(opt.d);
    }
    (
        outcome(worst < 1e-4, format!("max pairwise deviation {worst:.3e} over 100 pure states (< 1e-4)")),
        d_opts,
    )
}

fn c5_anchors(grid: &SearchGrid) -> Outcome {
    let mut failures = Vec::new();
    let mut check = |name: &str, got: f64, want: f64, tol: f64| {
        if !((got - want).abs() < tol) {
            failures.push(format!("{name}={got:.12} (want {want})"));
        }
    };
    let bell = TwoQubitState::bell();
    check("Bell I", bell.mutual_information(), 2.0, 1e-9);
    check("Bell Ddiag", diagonalizing_scheme(&bell, grid).d, 1.0, 1e-9);
    check("Bell Dsym", symmetrizing_scheme(&bell, grid).d, 1.0, 1e-9);
    check("Bell Dopt", optimal_scheme(&bell, grid).d, 1.0, 1e-9);
    check("Bell E", entanglement_of_formation(&bell), 1.0, 1e-9);
    check("Bell dAB", quantum_asymmetry(&bell).d_ab.unwrap_or(f64::NAN), 0.0, 1e-9);
    let cc = TwoQubitState::classically_correlated();
    check("CC I", cc.mutual_information(), 1.0, 1e-6);
    check("CC Ddiag", diagonalizing_scheme(&cc, grid).d, 0.0, 1e-6);
    check("CC Dsym", symmetrizing_scheme(&cc, grid).d, 1.0, 1e-6);
    check("CC Dopt", optimal_scheme(&cc, grid).d, 0.0, 1e-6);
    check("CC DA", canonical_discord(&cc, Subsystem::A, grid).discord, 0.0, 1e-6);
    check("CC DB", canonical_discord(&cc, Subsystem::B, grid).discord, 0.0, 1e-6);
    let pass = failures.is_empty();
    outcome(
        pass,
        if pass {
            "Bell (1e-9) and classically correlated (1e-6) anchors hold".into()
        } else {
            failures.join("; ")
        },
    )
}

fn c6_normal_modes() -> Outcome {
    let mut worst = [0.0f64; 3];
    for k in 0..1000 {
        let mut rng = SEED.stream(k);
        let p = CircuitParams::new(rng.random_range(-0.5..=0.5), rng.random_range(-0.9..=0.9), 0.0).unwrap();
        let m = normal_modes(&p).unwrap();
        let (w1, w2) = (p.omega1, p.omega2());
        let (o1, o2) = (m.omega1 * m.omega1, m.omega2 * m.omega2);
        worst[0] = worst[0].max((o1 + o2 - w1 * w1 - w2 * w2).abs());
        worst[1] = worst[1].max((o1 * o2 - w1 * w1 * w2 * w2 * (1.0 - p.g * p.g)).abs());
        worst[2] = worst[2].max(rotated_cross_term(&p, m.mixing_angle).abs());
    }
    outcome(
        worst.iter().all(|&w| w < 1e-12),
        format!(
            "1000 draws: sum {:.1e}, product {:.1e}, cross-term {:.1e} (each < 1e-12)",
            worst[0], worst[1], worst[2]
        ),
    )
}

fn c7_overlaps() -> Outcome {
    let mut details = Vec::new();
    let mut pass = true;
    for (dw, g) in [(0.0, 0.3), (0.2, 0.3)] {
        let p = CircuitParams::new(dw, g, 0.0).unwrap();
        let table = overlap_coefficients(&p, DEFAULT_MAX_LEVEL, DEFAULT_QUAD_NODES).unwrap();
        let dev = common::TruncatedOracle::new(&p, &table.modes, DEFAULT_MAX_LEVEL).max_deviation(&table);
        let mut odd_ok = true;
        for &(m, n) in MODE_PAIRS.iter() {
            for i in 0..=DEFAULT_MAX_LEVEL {
                for j in 0..=DEFAULT_MAX_LEVEL {
                    if (i + j + m + n) % 2 == 1 && table.get(m, n, i, j) != 0.0 {
                        odd_ok = false;
                    }
                }
            }
        }
        pass &= dev < 1e-6 && odd_ok;
        details.push(format!("(dw={dw}, g={g}) max dev {dev:.2e}, odd entries zero: {odd_ok}"));
    }
    outcome(pass, details.join("; "))
}

fn c8_ground_monotone(grid: &SearchGrid) -> Outcome {
    let mut prev: Option<[f64; 4]> = None;
    let mut violations = Vec::new();
    for k in 0..=10 {
        let g = 0.05 * k as f64;
        let table = table_for(0.0, g);
        let s = ground_from_table(&table).state.to_state().unwrap();
        let cur = [
            s.mutual_information(),
            diagonalizing_scheme(&s, grid).d,
            symmetrizing_scheme(&s, grid).d,
            entanglement_of_formation(&s),
        ];
        if let Some(p) = prev {
            for (q, name) in ["I", "Ddiag", "Dsym", "E"].iter().enumerate() {
                if cur[q] < p[q] - 1e-9 {
                    violations.push(format!("{name} at g={g:.2}"));
                }
            }
        }
        prev = Some(cur);
    }
    outcome(
        violations.is_empty(),
        format!("g in 0..0.5 step 0.05, decreasing steps: {violations:?}"),
    )
}

fn table_for(dw: f64, g: f64) -> OverlapTable {
    overlap_coefficients(&CircuitParams::new(dw, g, 0.0).unwrap(), DEFAULT_MAX_LEVEL, DEFAULT_QUAD_NODES).unwrap()
}

fn thermal(table: &OverlapTable, t: f64) -> TwoQubitState {
    thermal_from_table(table, t).unwrap().state.to_state().unwrap()
}

fn c9_resonance_symmetry(grid: &SearchGrid) -> Outcome {
    let table = table_for(0.0, 0.3);
    let mut pass = true;
    let mut details = Vec::new();
    for t in [0.1, 0.2, 0.3] {
        let s = thermal(&table, t);
        let da = canonical_discord(&s, Subsystem::A, grid).discord;
        let db = canonical_discord(&s, Subsystem::B, grid).discord;
        let d = quantum_asymmetry(&s).d_ab.unwrap_or(f64::NAN);
        pass &= (da - db).abs() < 1e-4 && d.abs() < 1e-6;
        details.push(format!("T={t}: |DA-DB|={:.1e} |dAB|={:.1e}", (da - db).abs(), d.abs()));
    }
    outcome(pass, details.join("; "))
}

fn c10_crossover(grid: &SearchGrid) -> Outcome {
    let table = table_for(0.0, 0.3);
    let temps: Vec<f64> = (0..=90).map(|k| 0.05 + 0.005 * k as f64).collect();
    let gaps: Vec<f64> = temps
        .iter()
        .map(|&t| {
            let x = thermal_from_table(&table, t).unwrap().state;
            let xo = x_optimal_discord(&x, grid);
            xo.diag.d - xo.sym.d
        })
        .collect();
    let mut crossings = Vec::new();
    for k in 1..gaps.len() {
        if gaps[k - 1].signum() != gaps[k].signum() {
            let f = gaps[k - 1] / (gaps[k - 1] - gaps[k]);
            crossings.push(temps[k - 1] + f * (temps[k] - temps[k - 1]));
        }
    }
    let pass = crossings.len() == 1 && (0.15..=0.30).contains(&crossings[0]);
    outcome(
        pass,
        format!("sign changes of Ddiag - Dsym on T in [0.05, 0.5] (step 0.005): {crossings:.4?} (want one in [0.15, 0.30])"),
    )
}

fn c11_detuning(grid: &SearchGrid) -> (Outcome, Outcome) {
    let mut bad_can = Vec::new();
    let (mut neg_signs, mut pos_signs) = (Vec::new(), Vec::new());
    let mut at_zero = f64::NAN;
    let mut max_d: f64 = f64::NEG_INFINITY;
    let mut max_at = f64::NAN;
    for k in -50..=100 {
        let dw = k as f64 / 100.0;
        let s = thermal(&table_for(dw, 0.3), 0.2);
        let d = quantum_asymmetry(&s).d_ab.unwrap_or(f64::NAN);
        if dw >= 0.3 && d > max_d {
            max_d = d;
            max_at = dw;
        }
        if k > 50 {
            continue;
        }
        let da = canonical_discord(&s, Subsystem::A, grid).discord;
        let db = canonical_discord(&s, Subsystem::B, grid).discord;
        if (dw < -0.02 && da <= db) || (dw > 0.02 && db <= da) {
            bad_can.push(dw);
        }
        match k {
            k if k < 0 => neg_signs.push(d.signum()),
            0 => at_zero = d,
            _ => pos_signs.push(d.signum()),
        }
    }
    let neg_uniform = neg_signs.windows(2).all(|w| w[0] == w[1]);
    let pos_uniform = pos_signs.windows(2).all(|w| w[0] == w[1]);
    let flips = neg_uniform && pos_uniform && neg_signs[0] != pos_signs[0];
    let c11 = outcome(
        bad_can.is_empty() && flips,
        format!(
            "dw in [-0.5, 0.5] step 0.01: canonical ordering violated at {bad_can:?}; dAB sign {} for dw<0, {} for dw>0, dAB(0)={at_zero:.1e}",
            if neg_uniform { format!("{:+}", neg_signs[0]) } else { "mixed".into() },
            if pos_uniform { format!("{:+}", pos_signs[0]) } else { "mixed".into() },
        ),
    );
    let c12 = outcome(
        max_d > 1.0,
        format!("max dAB over dw in [0.3, 1.0] step 0.01 is {max_d:.4} at dw={max_at:.2} (want > 1)"),
    );
    (c11, c12)
}

fn c13_properties(xs: &[XSample], ms: &[(TwoQubitState, XSample)], pure_d_opt: &[f64]) -> Outcome {
    let mut failures = Vec::new();

    // Tomogram normalization and non-negativity.
    let mut tom_cases = 0;
    for (k, (s, _)) in ms.iter().enumerate().take(1000) {
        let mut rng = Seed(4242).stream(k as u64);
        let u = MeasurementSetting::new(
            rng.random_range(0.0..std::f64::consts::PI),
            rng.random_range(0.0..std::f64::consts::TAU),
            rng.random_range(0.0..std::f64::consts::PI),
            rng.random_range(0.0..std::f64::consts::TAU),
        );
        let t = tomogram(s, &u);
        if (t.probs.iter().sum::<f64>() - 1.0).abs() > 1e-12 || t.probs.iter().any(|&p| p < 0.0) {
            failures.push(format!("tomogram {k}"));
        }
        tom_cases += 1;
    }

    // D^opt ≥ −1e-6.
    let all = xs.iter().chain(ms.iter().map(|(_, s)| s));
    let min_opt = all
        .clone()
        .map(|s| s.opt.d)
        .chain(pure_d_opt.iter().copied())
        .fold(f64::INFINITY, f64::min);
    if min_opt < -1e-6 {
        failures.push(format!("min Dopt {min_opt:e}"));
    }

    // d^sym = 0; sign(d^diag) = sign(d_AB) and d^diag / d_AB = J^diag / I.
    let (mut sym_cases, mut ratio_cases) = (0, 0);
    let mut worst_sym: f64 = 0.0;
    let mut worst_ratio: f64 = 0.0;
    for s in all {
        if let Some(d) = s.d_sym {
            worst_sym = worst_sym.max(d.abs());
            sym_cases += 1;
        }
        if let (Some(dd), Some(dq)) = (s.d_diag, s.d_q) {
            if s.i > 1e-6 {
                ratio_cases += 1;
                let expected = s.diag.j / s.i;
                let dev = if dq.abs() > 1e-6 { (dd / dq - expected).abs() } else { (dd - dq * expected).abs() };
                worst_ratio = worst_ratio.max(dev);
                if dq != 0.0 && dd != 0.0 && dd.signum() != dq.signum() && dq.abs() > 1e-12 {
                    failures.push(format!("sign(dDiag) != sign(dAB): {dd:e} vs {dq:e}"));
                }
            }
        }
    }
    if worst_sym > 1e-9 {
        failures.push(format!("max |dSym| {worst_sym:e}"));
    }
    if worst_ratio > 1e-9 {
        failures.push(format!("max ratio deviation {worst_ratio:e}"));
    }

    // Circuit outputs are X-shaped and alpha grows with T.
    let (mut x_cases, mut alpha_chains) = (0, 0);
    for k in 0..100 {
        let mut rng = SEED.stream(50_000 + k);
        let table = table_for(rng.random_range(-0.5..=0.5), rng.random_range(-0.9..=0.9));
        let ground = ground_from_table(&table).state.to_state().unwrap();
        x_cases += 1;
        if as_x_state(&ground, 1e-12).is_err() || ground.joint().eigenvalues()[3] < 1.0 - 1e-9 {
            failures.push(format!("ground {k} not a pure X-state"));
        }
        let mut last = f64::NEG_INFINITY;
        for q in 1..=10 {
            let th = thermal_from_table(&table, 0.05 * q as f64).unwrap();
            x_cases += 1;
            if as_x_state(&th.state.to_state().unwrap(), 1e-12).is_err() {
                failures.push(format!("thermal {k}/{q} not X-shaped"));
            }
            if th.alpha <= last {
                failures.push(format!("alpha not increasing at chain {k}, T={:.2}", 0.05 * q as f64));
            }
            last = th.alpha;
        }
        alpha_chains += 1;
    }

    let pass = failures.is_empty();
    outcome(
        pass,
        format!(
            "tomograms {tom_cases}, Dopt>=-1e-6 {} (min {min_opt:.1e}), dSym=0 {sym_cases} (max {worst_sym:.1e}), \
             dDiag/dAB ratio {ratio_cases} (max dev {worst_ratio:.1e}), circuit X-shape {x_cases}, alpha chains {alpha_chains}x10{}",
            xs.len() + ms.len() + pure_d_opt.len(),
            if pass { String::new() } else { format!("; failures: {:?}", &failures[..failures.len().min(8)]) }
        ),
    )
}

fn main() {
    let grid = SearchGrid::default();
    let suite_start = Instant::now();
    let mut results: Vec<(u32, &str, Outcome)> = Vec::new();

    let (xs, x_secs) = x_ensemble(&grid);
    results.push((1, "min-rule over random X-states", c1_min_rule(&xs, x_secs)));
    results.push((2, "X-state subclass separation", c2_subclasses(&xs)));
    let ms = mixed_ensemble(&grid);
    results.push((3, "general-state counterexamples", c3_counterexamples(&ms)));
    let (c4, pure_d_opt) = c4_pure_chain(&grid);
    results.push((4, "pure-state chain", c4));
    results.push((5, "exact anchors", c5_anchors(&grid)));
    results.push((6, "normal-mode invariants", c6_normal_modes()));
    results.push((7, "overlap oracle", c7_overlaps()));
    results.push((8, "ground-state monotonicity", c8_ground_monotone(&grid)));
    results.push((9, "thermal resonance symmetry", c9_resonance_symmetry(&grid)));
    results.push((10, "scheme crossover", c10_crossover(&grid)));
    let (c11, c12) = c11_detuning(&grid);
    results.push((11, "detuning asymmetry", c11));
    results.push((12, "super-classical asymmetry", c12));
    results.push((13, "property suite", c13_properties(&xs, &ms, &pure_d_opt)));

    let mut failed = 0;
    for (n, name, o) in &results {
        println!("criterion {n:02} {:4} {name}: {}", if o.pass { "PASS" } else { "FAIL" }, o.detail);
        failed += usize::from(!o.pass);
    }
    println!(
        "acceptance: {} passed, {failed} failed ({:.1} s)",
        results.len() - failed,
        suite_start.elapsed().as_secs_f64()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
