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

//! Derivative-free maximization over local measurement directions.
//!
//! Every search is a coarse grid followed by compass (coordinate) search
//! with step halving. A measurement direction and its antipode give the
//! same outcome statistics up to relabeling, so sphere grids only cover the
//! upper hemisphere when the φ grid contains φ + π for every φ.

use std::f64::consts::{PI, TAU};

use nalgebra::Vector3;

use crate::tomography::{binary_h, bloch_direction, joint_h, BlochForm};

/// Grid resolution and refinement tolerance shared by all searches.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SearchGrid {
    /// θ step is π / theta_divisions.
    pub theta_divisions: usize,
    /// φ step is 2π / phi_divisions.
    pub phi_divisions: usize,
    /// Refinement stops once every step is below this many radians.
    pub tolerance: f64,
    /// Number of best grid points refined.
    pub starts: usize,
}

impl Default for SearchGrid {
    fn default() -> Self {
        SearchGrid {
            theta_divisions: 60,
            phi_divisions: 60,
            tolerance: 1e-5,
            starts: 4,
        }
    }
}

impl SearchGrid {
    pub fn theta_step(&self) -> f64 {
        PI / self.theta_divisions as f64
    }

    pub fn phi_step(&self) -> f64 {
        TAU / self.phi_divisions as f64
    }

    /// Same grid with both step sizes halved.
    pub fn finer(&self) -> Self {
        SearchGrid {
            theta_divisions: self.theta_divisions * 2,
            phi_divisions: self.phi_divisions * 2,
            ..*self
        }
    }
}

/// The set of directions one side may be measured along.
#[derive(Debug, Clone, PartialEq)]
pub(crate) enum Space {
    Fixed(Vector3<f64>),
    /// Great circle `cos ψ e1 + sin ψ e2`, ψ ∈ [0, π).
    Circle { e1: Vector3<f64>, e2: Vector3<f64> },
    /// Whole Bloch sphere in (θ, φ).
    Sphere,
}

impl Space {
    /// Great circle orthogonal to `axis`; e1 is the projection of x̂ (or ŷ
    /// when `axis` is close to x̂) so that a z-axis gives the equator with
    /// ψ = 0 at φ = 0.
    pub(crate) fn circle_orthogonal_to(axis: &Vector3<f64>) -> Space {
        let a = axis.normalize();
        let x = Vector3::x();
        let seed = if a.cross(&x).norm() > 0.1 { x } else { Vector3::y() };
        let e1 = (seed - a * a.dot(&seed)).normalize();
        let e2 = a.cross(&e1);
        Space::Circle { e1, e2 }
    }

    fn dims(&self) -> usize {
        match self {
            Space::Fixed(_) => 0,
            Space::Circle { .. } => 1,
            Space::Sphere => 2,
        }
    }

    fn direction(&self, p: &[f64]) -> Vector3<f64> {
        match self {
            Space::Fixed(n) => *n,
            Space::Circle { e1, e2 } => {
                let (s, c) = p[0].sin_cos();
                e1 * c + e2 * s
            }
            Space::Sphere => bloch_direction(p[0], p[1]),
        }
    }

    fn steps(&self, g: &SearchGrid) -> Vec<f64> {
        match self {
            Space::Fixed(_) => vec![],
            Space::Circle { .. } => vec![g.theta_step()],
            Space::Sphere => vec![g.theta_step(), g.phi_step()],
        }
    }

    fn grid(&self, g: &SearchGrid) -> Vec<(Vec<f64>, Vector3<f64>)> {
        match self {
            Space::Fixed(n) => vec![(vec![], *n)],
            Space::Circle { .. } => (0..g.theta_divisions)
                .map(|k| {
                    let p = vec![k as f64 * g.theta_step()];
                    let n = self.direction(&p);
                    (p, n)
                })
                .collect(),
            Space::Sphere => {
                let nt = g.theta_divisions;
                // Antipodes are on the grid only when φ + π is.
                let last = if g.phi_divisions % 2 == 0 { nt / 2 } else { nt };
                let mut pts = Vec::with_capacity(1 + last * g.phi_divisions);
                for k in 0..=last {
                    let theta = k as f64 * g.theta_step();
                    let poles = k == 0 || k == nt;
                    let n_phi = if poles { 1 } else { g.phi_divisions };
                    for l in 0..n_phi {
                        let p = vec![theta, l as f64 * g.phi_step()];
                        let n = self.direction(&p);
                        pts.push((p, n));
                    }
                }
                pts
            }
        }
    }
}

/// Picks the upper-hemisphere representative of ±n.
pub(crate) fn hemisphere_representative(n: &Vector3<f64>) -> Vector3<f64> {
    let flip = n.z < 0.0 || (n.z == 0.0 && (n.y < 0.0 || (n.y == 0.0 && n.x < 0.0)));
    if flip {
        -n
    } else {
        *n
    }
}

/// Keeps the `k` largest values seen, first-seen wins ties.
struct TopK<T> {
    k: usize,
    items: Vec<(f64, T)>,
}

impl<T> TopK<T> {
    fn new(k: usize) -> Self {
        TopK {
            k: k.max(1),
            items: Vec::with_capacity(k + 1),
        }
    }

    #[inline]
    fn threshold(&self) -> f64 {
        if self.items.len() < self.k {
            f64::NEG_INFINITY
        } else {
            self.items[self.items.len() - 1].0
        }
    }

    /// Returns whether `item` was kept.
    #[inline]
    fn offer(&mut self, value: f64, item: T) -> bool {
        if !(value > self.threshold()) {
            return false;
        }
        let pos = self.items.iter().position(|(v, _)| value > *v).unwrap_or(self.items.len());
        self.items.insert(pos, (value, item));
        self.items.truncate(self.k);
        true
    }
}

/// Compass search maximizing `f` from `start`; halves all steps whenever no
/// single-coordinate move improves, until the largest step is below `tol`.
pub(crate) fn compass_maximize<F>(f: F, start: Vec<f64>, mut steps: Vec<f64>, tol: f64) -> (Vec<f64>, f64)
where
    F: Fn(&[f64]) -> f64,
{
    const MAX_EVALS: usize = 200_000;
    let mut x = start;
    let mut best = f(&x);
    if x.is_empty() {
        return (x, best);
    }
    let mut evals = 1;
    let mut trial = x.clone();
    loop {
        let mut improved = false;
        for d in 0..x.len() {
            for sign in [1.0, -1.0] {
                trial.copy_from_slice(&x);
                trial[d] += sign * steps[d];
                let v = f(&trial);
                evals += 1;
                if v > best {
                    best = v;
                    x.copy_from_slice(&trial);
                    improved = true;
                    break;
                }
            }
        }
        if evals >= MAX_EVALS {
            break;
        }
        if !improved {
            for s in steps.iter_mut() {
                *s *= 0.5;
            }
            if steps.iter().cloned().fold(0.0, f64::max) < tol {
                break;
            }
        }
    }
    (x, best)
}

/// Result of a maximization over one or two measurement directions.
#[derive(Debug, Clone, PartialEq)]
pub(crate) struct DirectionMax {
    pub a: Vector3<f64>,
    pub b: Vector3<f64>,
    pub value: f64,
}

/// Maximizes the tomographic mutual information over `space_a × space_b`.
///
/// `seeds` are extra (A, B) direction pairs refined alongside the best grid
/// points; a seed is only usable when each direction belongs to its space,
/// which the caller guarantees.
pub(crate) fn maximize_tomographic_mi(
    form: &BlochForm,
    space_a: &Space,
    space_b: &Space,
    grid: &SearchGrid,
    seeds: &[(Vec<f64>, Vec<f64>)],
) -> DirectionMax {
    let pts_a = space_a.grid(grid);
    let pts_b = space_b.grid(grid);
    let pre_b: Vec<(f64, f64, f64, Vector3<f64>)> = pts_b
        .iter()
        .map(|(_, n)| {
            let beta = form.s.dot(n);
            (beta, binary_h(beta), 1.0 - beta * beta, *n)
        })
        .collect();

    // For two binary outcomes J ≤ log2(1 + ρ²), ρ the outcome correlation
    // coefficient (KL ≤ ln(1 + χ²)). Points whose bound cannot beat the
    // current k-th best are skipped; the selected points are unchanged.
    let mut top = TopK::new(grid.starts);
    let mut rho_sq_floor = f64::NEG_INFINITY;
    for (ia, (_, na)) in pts_a.iter().enumerate() {
        let alpha = form.r.dot(na);
        let ha = binary_h(alpha);
        let var_a = 1.0 - alpha * alpha;
        let u = form.t.transpose() * na;
        for (ib, (beta, hb, var_b, nb)) in pre_b.iter().enumerate() {
            let gamma = u.dot(nb);
            let var = var_a * var_b;
            if var > 1e-12 {
                let cov = gamma - alpha * beta;
                if cov * cov <= rho_sq_floor * var {
                    continue;
                }
            }
            let j = ha + hb - joint_h(alpha, *beta, gamma);
            if top.offer(j, (ia, ib)) {
                let thr = top.threshold();
                // Margin keeps round-off from pruning a point that ties.
                rho_sq_floor = if thr.is_finite() { thr.exp2() - 1.0 - 1e-12 } else { f64::NEG_INFINITY };
            }
        }
    }

    let da = space_a.dims();
    let objective = |p: &[f64]| {
        let na = space_a.direction(&p[..da]);
        let nb = space_b.direction(&p[da..]);
        form.mutual_information(&na, &nb)
    };
    let mut steps = space_a.steps(grid);
    steps.extend(space_b.steps(grid));

    let mut starts: Vec<Vec<f64>> = top
        .items
        .iter()
        .map(|(_, (ia, ib))| {
            let mut p = pts_a[*ia].0.clone();
            p.extend_from_slice(&pts_b[*ib].0);
            p
        })
        .collect();
    for (sa, sb) in seeds {
        let mut p = sa.clone();
        p.extend_from_slice(sb);
        starts.push(p);
    }

    let mut best: Option<(Vec<f64>, f64)> = None;
    for start in starts {
        let (p, v) = compass_maximize(objective, start, steps.clone(), grid.tolerance);
        if best.as_ref().map_or(true, |(_, bv)| v > *bv) {
            best = Some((p, v));
        }
    }
    let (p, value) = best.expect("at least one start");
    DirectionMax {
        a: hemisphere_representative(&space_a.direction(&p[..da])),
        b: hemisphere_representative(&space_b.direction(&p[da..])),
        value,
    }
}

/// Maximizes `f` over the directions of a single space.
pub(crate) fn maximize_direction<F>(space: &Space, grid: &SearchGrid, f: F) -> (Vector3<f64>, f64)
where
    F: Fn(&Vector3<f64>) -> f64,
{
    let pts = space.grid(grid);
    let mut top = TopK::new(grid.starts);
    for (i, (_, n)) in pts.iter().enumerate() {
        top.offer(f(n), i);
    }
    let objective = |p: &[f64]| f(&space.direction(p));
    let steps = space.steps(grid);
    let mut best: Option<(Vec<f64>, f64)> = None;
    for (_, i) in &top.items {
        let (p, v) = compass_maximize(objective, pts[*i].0.clone(), steps.clone(), grid.tolerance);
        if best.as_ref().map_or(true, |(_, bv)| v > *bv) {
            best = Some((p, v));
        }
    }
    let (p, v) = best.expect("at least one grid point");
    (hemisphere_representative(&space.direction(&p)), v)
}

/// Sphere parameters (θ, φ) of a direction, for seeding searches.
pub(crate) fn sphere_params(n: &Vector3<f64>) -> Vec<f64> {
    let (t, p) = crate::tomography::angles_of(n);
    vec![t, p]
}
