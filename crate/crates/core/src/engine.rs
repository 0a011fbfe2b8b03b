//! Full enumeration over taut cable subsets with the four filtering steps.

use std::collections::BTreeMap;
use std::time::Instant;

use rayon::prelude::*;
use thiserror::Error;

use crate::constraints::{build_linear_system, LinearSystem};
use crate::cqp::{self, HeightInfeasible};
use crate::force::{self, TensionDiagnostic};
use crate::scene::{Configuration, Point2, RawScene, Scene, TautSet};
use crate::tol::Tolerances;

/// Options of a full solve.
#[derive(Clone, Debug)]
pub struct SolveOptions {
    pub tolerances: Tolerances,
    /// Preferred pivot cable; used for every taut set containing it,
    /// otherwise the smallest taut index. None: always smallest.
    pub pivot: Option<u32>,
    /// Solve taut sets on the rayon pool. Output is identical either way.
    pub parallel: bool,
    /// Attach a tension diagnostic to every accepted solution.
    pub with_tensions: bool,
}

impl Default for SolveOptions {
    fn default() -> Self {
        Self {
            tolerances: Tolerances::default(),
            pivot: None,
            parallel: true,
            with_tensions: true,
        }
    }
}

/// One accepted equilibrium.
#[derive(Clone, Debug)]
pub struct Solution {
    pub taut_set: TautSet,
    /// `(x_o, y_o, x_vo, y_vo)`, meters
    pub x: [f64; 4],
    /// object height, meters
    pub z_o: f64,
    /// potential energy `m g z_o`, joules
    pub energy: f64,
    /// rank of the taut system
    pub k1: usize,
    /// pivot cable used for the solve
    pub pivot: u32,
    /// slack cable indices, ascending
    pub slack_cables: Vec<u32>,
    /// slack margins (squared meters), aligned with `slack_cables`
    pub slack_margins: Vec<f64>,
    pub tensions: Option<TensionDiagnostic>,
}

impl Solution {
    pub fn p_o(&self) -> [f64; 3] {
        [self.x[0], self.x[1], self.z_o]
    }

    pub fn v_o(&self) -> Point2 {
        Point2::new(self.x[2], self.x[3])
    }

    pub fn r_o(&self) -> Point2 {
        Point2::new(self.x[0], self.x[1])
    }

    pub fn configuration(&self) -> Configuration {
        Configuration { x: self.x, z_o: self.z_o }
    }
}

/// Survivor counts of the four filtering steps plus diagnostics.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct StepStats {
    /// step 1: enumerated taut sets
    pub enumerated: u64,
    /// step 2: form closure feasible
    pub form_closure: u64,
    /// step 3: feasible `(x, z_o)` after slack margins and height bounds
    pub cqp_feasible: u64,
    /// step 4: force closure feasible (accepted)
    pub force_closure: u64,
    /// accepted solutions per taut cable count
    pub by_k: BTreeMap<usize, u64>,
    /// sets skipped on a singular saddle-point system
    pub schur_singular: u64,
    /// accepted solutions whose tension diagnostic failed
    pub tension_failures: u64,
    /// seconds
    pub wall_time: f64,
}

impl StepStats {
    pub fn counts(&self) -> [u64; 4] {
        [self.enumerated, self.form_closure, self.cqp_feasible, self.force_closure]
    }

    fn merge(mut self, other: StepStats) -> StepStats {
        self.enumerated += other.enumerated;
        self.form_closure += other.form_closure;
        self.cqp_feasible += other.cqp_feasible;
        self.force_closure += other.force_closure;
        self.schur_singular += other.schur_singular;
        self.tension_failures += other.tension_failures;
        for (k, v) in other.by_k {
            *self.by_k.entry(k).or_insert(0) += v;
        }
        self
    }
}

#[derive(Clone, Debug, Error, PartialEq)]
pub enum EngineError {
    #[error("empty solution set")]
    EmptySolutionSet,
    #[error("invalid radii: need 0 < r_f < r_s, got r_s={r_s}, r_f={r_f}")]
    InvalidRadii { r_s: f64, r_f: f64 },
}

/// Every subset of `{1..n}` with 3..=n elements, ordered by cardinality then
/// lexicographically by indices.
pub fn enumerate_taut_sets(n: usize) -> impl Iterator<Item = TautSet> {
    (3..=n).flat_map(move |k| Combinations::new(n, k).map(TautSet::from_sorted_unchecked))
}

/// Lexicographic k-combinations of `1..=n`.
struct Combinations {
    n: usize,
    current: Vec<u32>,
    done: bool,
}

impl Combinations {
    fn new(n: usize, k: usize) -> Self {
        Self {
            n,
            current: (1..=k as u32).collect(),
            done: k > n || k == 0,
        }
    }
}

impl Iterator for Combinations {
    type Item = Vec<u32>;

    fn next(&mut self) -> Option<Vec<u32>> {
        if self.done {
            return None;
        }
        let out = self.current.clone();
        let k = self.current.len();
        // advance
        let mut i = k;
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            if self.current[i] < (self.n - (k - 1 - i)) as u32 {
                self.current[i] += 1;
                for j in i + 1..k {
                    self.current[j] = self.current[j - 1] + 1;
                }
                break;
            }
        }
        Some(out)
    }
}

/// Per-set outcome of the filtering pipeline.
#[derive(Clone, Debug)]
pub enum SetOutcome {
    FormClosureFail,
    SchurSingular,
    HeightFail(HeightInfeasible),
    SlackFail,
    ForceClosureFail,
    Accepted(Box<Solution>),
}

fn pivot_for(taut: &TautSet, options: &SolveOptions) -> Option<u32> {
    options.pivot.filter(|p| taut.contains(*p))
}

/// Run steps 2..4 on one taut set.
pub fn solve_taut_set(scene: &Scene, taut: &TautSet, options: &SolveOptions) -> SetOutcome {
    let tol = &options.tolerances;
    let mut system: LinearSystem =
        build_linear_system(scene, taut, pivot_for(taut, options)).expect("pivot in taut set");
    let reduction = system.reduce(tol);
    if !reduction.consistent {
        return SetOutcome::FormClosureFail;
    }
    system.apply_reduction(&reduction);

    let objective = cqp::build_objective(scene, system.pivot());
    let solve = match cqp::solve_stationary(&objective, system.a11(), system.b11()) {
        Ok(s) => s,
        Err(cqp::CqpError::SchurSingular) => return SetOutcome::SchurSingular,
    };
    let z_o = match cqp::recover_height(&objective, &solve.x, scene.z_r(), tol) {
        Ok(z) => z,
        Err(reason) => return SetOutcome::HeightFail(reason),
    };
    let slack = cqp::check_slack_and_bounds(&system, &solve.x, z_o, scene.z_r(), tol);
    if !slack.ok {
        return SetOutcome::SlackFail;
    }
    if !force::force_closure_check(scene, taut, &solve.x, tol) {
        return SetOutcome::ForceClosureFail;
    }

    let tensions = if options.with_tensions {
        force::solve_tensions(scene, taut, &solve.x, z_o).ok()
    } else {
        None
    };
    SetOutcome::Accepted(Box::new(Solution {
        taut_set: taut.clone(),
        x: solve.x,
        z_o,
        energy: scene.object_mass() * scene.gravity() * z_o,
        k1: system.k1(),
        pivot: system.pivot(),
        slack_cables: system.a2_cables().to_vec(),
        slack_margins: slack.margins,
        tensions,
    }))
}

/// Enumerate all taut sets, apply the four filters, and collect every
/// equilibrium with per-step statistics. Output order is canonical
/// (cardinality, then lexicographic taut set) and identical across runs and
/// worker counts.
pub fn solve_fk(scene: &Scene, options: &SolveOptions) -> (Vec<Solution>, StepStats) {
    let start = Instant::now();
    let sets: Vec<TautSet> = enumerate_taut_sets(scene.n()).collect();

    let tally = |outcome: &SetOutcome| {
        let mut s = StepStats { enumerated: 1, ..StepStats::default() };
        match outcome {
            SetOutcome::FormClosureFail => {}
            SetOutcome::SchurSingular => {
                s.form_closure = 1;
                s.schur_singular = 1;
            }
            SetOutcome::HeightFail(_) | SetOutcome::SlackFail => {
                s.form_closure = 1;
            }
            SetOutcome::ForceClosureFail => {
                s.form_closure = 1;
                s.cqp_feasible = 1;
            }
            SetOutcome::Accepted(sol) => {
                s.form_closure = 1;
                s.cqp_feasible = 1;
                s.force_closure = 1;
                *s.by_k.entry(sol.taut_set.k()).or_insert(0) += 1;
                if options.with_tensions && sol.tensions.is_none() {
                    s.tension_failures = 1;
                }
            }
        }
        s
    };

    let (mut stats, solutions) = if options.parallel {
        sets.par_iter()
            .map(|taut| {
                let outcome = solve_taut_set(scene, taut, options);
                let s = tally(&outcome);
                let sol = match outcome {
                    SetOutcome::Accepted(sol) => vec![*sol],
                    _ => Vec::new(),
                };
                (s, sol)
            })
            .reduce(
                || (StepStats::default(), Vec::new()),
                |(sa, mut va), (sb, vb)| {
                    va.extend(vb);
                    (sa.merge(sb), va)
                },
            )
    } else {
        let mut acc = (StepStats::default(), Vec::new());
        for taut in &sets {
            let outcome = solve_taut_set(scene, taut, options);
            acc.0 = acc.0.merge(tally(&outcome));
            if let SetOutcome::Accepted(sol) = outcome {
                acc.1.push(*sol);
            }
        }
        acc
    };

    let mut solutions = solutions;
    solutions.sort_by(|a, b| {
        (a.taut_set.k(), a.taut_set.indices()).cmp(&(b.taut_set.k(), b.taut_set.indices()))
    });
    stats.wall_time = start.elapsed().as_secs_f64();
    (solutions, stats)
}

/// The most stable equilibrium: minimal `z_o`, ties (within 1e-9 m) broken
/// by cardinality then lexicographic taut set.
pub fn lowest_energy(solutions: &[Solution]) -> Result<&Solution, EngineError> {
    if solutions.is_empty() {
        return Err(EngineError::EmptySolutionSet);
    }
    let z_min = solutions.iter().map(|s| s.z_o).fold(f64::INFINITY, f64::min);
    let best = solutions
        .iter()
        .filter(|s| s.z_o <= z_min + 1e-9)
        .min_by(|a, b| {
            (a.taut_set.k(), a.taut_set.indices()).cmp(&(b.taut_set.k(), b.taut_set.indices()))
        })
        .expect("non-empty");
    Ok(best)
}

/// Regular-polygon scene: vertices on a circle of radius `r_s`, robots on a
/// concentric circle of radius `r_f`, vertex `i` and robot `i` at angle
/// `2 pi (i-1) / n`. Its unique equilibrium has every cable taut, the object
/// over the center at `z_o = z_r - sqrt(r_s^2 - r_f^2)`.
pub fn regular_polygon_scene(n: usize, r_s: f64, r_f: f64, z_r: f64) -> Result<Scene, EngineError> {
    if !(r_f > 0.0 && r_f < r_s && r_s.is_finite()) {
        return Err(EngineError::InvalidRadii { r_s, r_f });
    }
    let mut vertices = Vec::with_capacity(n);
    let mut robots = Vec::with_capacity(n);
    for i in 0..n {
        let angle = std::f64::consts::TAU * i as f64 / n as f64;
        let (sin, cos) = angle.sin_cos();
        vertices.push(Point2::new(r_s * cos, r_s * sin));
        robots.push(Point2::new(r_f * cos, r_f * sin));
    }
    Ok(RawScene::new(z_r, vertices, robots)
        .validate()
        .expect("a regular polygon scene with n >= 3, z_r > 0 and 0 < r_f < r_s is feasible"))
}
