//! Brute-force verification over the 4-D configuration space.
//!
//! For a contact point `v_o` and planar object position `r_o`, each cable
//! caps how low the object can hang: `z_i = z_r - sqrt(l_i(v_o)^2 -
//! |r_i - r_o|^2)`. The lowest feasible height is the pointwise maximum over
//! cables; static equilibria are local minima of that envelope. This module
//! scans a coarse grid, descends with a derivative-free pattern search, and
//! classifies solver output by probing a small shell around it. It shares no
//! code with the constraint/CQP path.

use rayon::prelude::*;

use crate::engine::Solution;
use crate::scene::{Point2, Scene};

/// Height envelope value at one configuration.
#[derive(Clone, Debug, PartialEq)]
pub struct EnvelopePoint {
    /// lowest feasible object height, meters
    pub z_min: f64,
    /// cables attaining the max within 1e-9 m (the taut cables there)
    pub active_set: Vec<u32>,
}

/// Configurations where some cable cannot span its planar distance.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EnvelopeInfeasible {
    /// first cable (1-based) whose length falls short
    pub cable: u32,
}

const ACTIVE_EPS: f64 = 1e-9;

/// Evaluate the envelope. The contact point is expected inside the sheet
/// polygon; feasibility of each cable is checked regardless.
pub fn envelope_at(
    scene: &Scene,
    v_o: Point2,
    r_o: Point2,
) -> Result<EnvelopePoint, EnvelopeInfeasible> {
    let mut z_min = f64::NEG_INFINITY;
    let n = scene.n();
    let mut bounds = Vec::with_capacity(n);
    for i in 1..=n {
        let l = scene.cable_length(v_o, i);
        let planar = scene.robot(i).dist(r_o);
        let slack_sq = l * l - planar * planar;
        if slack_sq < 0.0 {
            return Err(EnvelopeInfeasible { cable: i as u32 });
        }
        let z = scene.z_r() - slack_sq.sqrt();
        bounds.push(z);
        if z > z_min {
            z_min = z;
        }
    }
    let active_set = bounds
        .iter()
        .enumerate()
        .filter(|(_, &z)| z_min - z <= ACTIVE_EPS)
        .map(|(i, _)| i as u32 + 1)
        .collect();
    Ok(EnvelopePoint { z_min, active_set })
}

/// One envelope local minimum.
#[derive(Clone, Debug)]
pub struct Equilibrium {
    pub v_o: Point2,
    pub r_o: Point2,
    pub z_min: f64,
    /// active cables at the minimum
    pub active_set: Vec<u32>,
    /// the minimum lies at or below the ground plane
    pub ground_contact: bool,
}

struct Grid {
    lo: [f64; 4],
    step: [f64; 4],
    count: [usize; 4],
}

impl Grid {
    fn build(scene: &Scene, resolution: f64) -> Grid {
        let (vx, vy) = bbox(scene.vertices());
        let (rx, ry) = bbox(scene.robots());
        let spans = [rx, ry, vx, vy]; // order matches x = (x_o, y_o, x_vo, y_vo)
        let mut lo = [0.0; 4];
        let mut step = [0.0; 4];
        let mut count = [0usize; 4];
        for (d, (a, b)) in spans.iter().enumerate() {
            let span = b - a;
            let c = ((span / resolution).round() as usize + 1).clamp(2, 41);
            lo[d] = *a;
            step[d] = span / (c - 1) as f64;
            count[d] = c;
        }
        Grid { lo, step, count }
    }

    fn point(&self, idx: [usize; 4]) -> [f64; 4] {
        let mut p = [0.0; 4];
        for d in 0..4 {
            p[d] = self.lo[d] + self.step[d] * idx[d] as f64;
        }
        p
    }

    fn total(&self) -> usize {
        self.count.iter().product()
    }

    fn unflatten(&self, mut flat: usize) -> [usize; 4] {
        let mut idx = [0usize; 4];
        for d in (0..4).rev() {
            idx[d] = flat % self.count[d];
            flat /= self.count[d];
        }
        idx
    }

    fn flatten(&self, idx: [usize; 4]) -> usize {
        ((idx[0] * self.count[1] + idx[1]) * self.count[2] + idx[2]) * self.count[3] + idx[3]
    }
}

fn bbox(points: &[Point2]) -> ((f64, f64), (f64, f64)) {
    let mut xs = (f64::INFINITY, f64::NEG_INFINITY);
    let mut ys = (f64::INFINITY, f64::NEG_INFINITY);
    for p in points {
        xs = (xs.0.min(p.x), xs.1.max(p.x));
        ys = (ys.0.min(p.y), ys.1.max(p.y));
    }
    ((xs.0, xs.1), (ys.0, ys.1))
}

/// A sensible default coarse resolution: the longest bounding-box span
/// divided into 24 steps (at most 25 points per axis).
pub fn default_coarse_resolution(scene: &Scene) -> f64 {
    let (vx, vy) = bbox(scene.vertices());
    let (rx, ry) = bbox(scene.robots());
    let max_span = [rx, ry, vx, vy]
        .iter()
        .map(|(a, b)| b - a)
        .fold(0.0f64, f64::max);
    (max_span / 24.0).max(1e-3)
}

fn eval(scene: &Scene, p: &[f64; 4]) -> Option<f64> {
    let v_o = Point2::new(p[2], p[3]);
    if !scene.sheet_contains(v_o) {
        return None;
    }
    envelope_at(scene, v_o, Point2::new(p[0], p[1]))
        .ok()
        .map(|e| e.z_min)
}

/// All per-cable height bounds at a configuration, or None when infeasible.
fn cable_bounds(scene: &Scene, p: &[f64; 4]) -> Option<Vec<f64>> {
    let v_o = Point2::new(p[2], p[3]);
    if !scene.sheet_contains(v_o) {
        return None;
    }
    let r_o = Point2::new(p[0], p[1]);
    let mut out = Vec::with_capacity(scene.n());
    for i in 1..=scene.n() {
        let l = scene.cable_length(v_o, i);
        let planar = scene.robot(i).dist(r_o);
        let slack_sq = l * l - planar * planar;
        if slack_sq < 0.0 {
            return None;
        }
        out.push(scene.z_r() - slack_sq.sqrt());
    }
    Some(out)
}

/// Scan a coarse grid over the bounding boxes, run a shrinking-step compass
/// search from every grid-local minimum, and merge duplicates within 1e-4 m.
pub fn find_equilibria(scene: &Scene, coarse_resolution: f64) -> Vec<Equilibrium> {
    assert!(coarse_resolution > 0.0, "resolution must be positive");
    let grid = Grid::build(scene, coarse_resolution);
    let total = grid.total();

    let values: Vec<f64> = (0..total)
        .into_par_iter()
        .map(|flat| {
            let p = grid.point(grid.unflatten(flat));
            eval(scene, &p).unwrap_or(f64::INFINITY)
        })
        .collect();

    // grid-local minima: no finite axis neighbor below
    let seeds: Vec<[usize; 4]> = (0..total)
        .filter(|&flat| {
            let z = values[flat];
            if !z.is_finite() {
                return false;
            }
            let idx = grid.unflatten(flat);
            for d in 0..4 {
                for dir in [-1isize, 1] {
                    let q = idx[d] as isize + dir;
                    if q < 0 || q as usize >= grid.count[d] {
                        continue;
                    }
                    let mut nb = idx;
                    nb[d] = q as usize;
                    if values[grid.flatten(nb)] < z {
                        return false;
                    }
                }
            }
            true
        })
        .map(|flat| grid.unflatten(flat))
        .collect();

    let dirs = probe_directions();
    let mut found: Vec<([f64; 4], f64)> = seeds
        .par_iter()
        .filter_map(|&idx| {
            let start = grid.point(idx);
            let z = values[grid.flatten(idx)];
            let (p, z) = descend(scene, &dirs, start, z, coarse_resolution);
            // discard descent leftovers that are not local minima
            if is_local_minimum(scene, &dirs, &p, z) {
                Some((p, z))
            } else {
                None
            }
        })
        .collect();

    // merge duplicates, keeping the lower point: either within 1e-4 m in the
    // 4-D configuration space, or connected by an essentially flat feasible
    // path (the same shallow basin reached from different seeds)
    found.sort_by(|a, b| a.1.partial_cmp(&b.1).unwrap());
    let mut merged: Vec<([f64; 4], f64)> = Vec::new();
    for (p, z) in found {
        let dup = merged.iter().any(|(q, zq)| {
            let d2: f64 = p.iter().zip(q).map(|(a, b)| (a - b) * (a - b)).sum();
            d2.sqrt() < 1e-4 || flat_connected(scene, &p, z, q, *zq)
        });
        if !dup {
            merged.push((p, z));
        }
    }

    let mut out: Vec<Equilibrium> = merged
        .into_iter()
        .map(|(p, z)| {
            let v_o = Point2::new(p[2], p[3]);
            let r_o = Point2::new(p[0], p[1]);
            let active = envelope_at(scene, v_o, r_o).map(|e| e.active_set).unwrap_or_default();
            Equilibrium {
                v_o,
                r_o,
                z_min: z,
                active_set: active,
                ground_contact: z <= 0.0,
            }
        })
        .collect();
    out.sort_by(|a, b| {
        (a.z_min, a.v_o.x, a.v_o.y, a.r_o.x, a.r_o.y)
            .partial_cmp(&(b.z_min, b.v_o.x, b.v_o.y, b.r_o.x, b.r_o.y))
            .unwrap()
    });
    out
}

/// Deterministic direction generator (splitmix64 driven). The envelope is a
/// pointwise max with creases; fixed axis-aligned patterns stall inside
/// narrow descent cones, so each batch adds fresh pseudo-random unit
/// directions while staying reproducible.
fn random_directions(seed: u64, count: usize) -> Vec<[f64; 4]> {
    let mut state = seed.wrapping_add(0x9e3779b97f4a7c15);
    let mut next = move || {
        state = state.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    };
    let mut dirs = Vec::with_capacity(count);
    while dirs.len() < count {
        let mut v = [0.0f64; 4];
        let mut norm_sq = 0.0;
        for c in &mut v {
            // Box-Muller-free: uniform in [-1, 1], rejected outside the ball
            *c = next() as f64 / u64::MAX as f64 * 2.0 - 1.0;
            norm_sq += *c * *c;
        }
        if norm_sq > 1e-4 && norm_sq <= 1.0 {
            let norm = norm_sq.sqrt();
            for c in &mut v {
                *c /= norm;
            }
            dirs.push(v);
        }
    }
    dirs
}

/// Local descent: pattern search with step halving, then a Nelder-Mead
/// polish that breaks the stalls pattern search is known to hit on
/// multi-crease max-functions (near a k-fold crease the descent cone gets
/// too narrow for any fixed direction set). Alternate until neither phase
/// improves.
fn descend(
    scene: &Scene,
    dirs: &[[f64; 4]],
    mut p: [f64; 4],
    mut z: f64,
    start_step: f64,
) -> ([f64; 4], f64) {
    let mut scale = start_step;
    for _ in 0..6 {
        let (p1, z1) = pattern_search(scene, dirs, p, z, scale);
        let (p2, z2) = minimax_descent(scene, p1, z1);
        let (p3, z3) = nelder_mead(scene, p2, scale.max(1e-4), 1e-12, None);
        let improved = z3 < z - 1e-12;
        p = p3;
        z = z3.min(z2);
        if !improved {
            break;
        }
        scale = (scale * 0.25).max(1e-4);
    }
    // restarts with small simplices localize the bottom of shallow gutters
    let (p4, z4) = minimax_descent(scene, p, z);
    if z4 < z {
        p = p4;
        z = z4;
    }
    for init in [1e-4, 1e-5, 1e-6] {
        let (p5, z5) = nelder_mead(scene, p, init, 1e-15, None);
        if z5 < z {
            p = p5;
            z = z5;
        }
    }
    (p, z)
}

/// Steepest-descent step for the pointwise maximum: the descent direction is
/// the negated minimum-norm point of the convex hull of the near-active
/// bound gradients (finite differences of envelope evaluations only). This
/// follows the creases where direction-set searches stall.
fn minimax_descent(scene: &Scene, mut p: [f64; 4], mut z: f64) -> ([f64; 4], f64) {
    let mut step = 1e-2f64;
    for _ in 0..400 {
        let Some(grads) = active_gradients(scene, &p, z) else { break };
        if grads.is_empty() {
            break;
        }
        let g = min_norm_in_hull(&grads);
        let g_norm = (g.iter().map(|v| v * v).sum::<f64>()).sqrt();
        if g_norm < 1e-8 {
            break; // stationary in the Clarke sense
        }
        let dir = [-g[0] / g_norm, -g[1] / g_norm, -g[2] / g_norm, -g[3] / g_norm];
        let mut t = step;
        let mut moved = false;
        while t >= 1e-10 {
            let q = [
                p[0] + t * dir[0],
                p[1] + t * dir[1],
                p[2] + t * dir[2],
                p[3] + t * dir[3],
            ];
            if let Some(zq) = eval(scene, &q) {
                if zq < z - 1e-15 {
                    p = q;
                    z = zq;
                    moved = true;
                    break;
                }
            }
            t *= 0.5;
        }
        if !moved {
            break;
        }
        step = (t * 2.0).clamp(1e-8, 1e-2);
    }
    (p, z)
}

/// Finite-difference gradients of the cable bounds within 1e-6 m of the max.
fn active_gradients(scene: &Scene, p: &[f64; 4], z: f64) -> Option<Vec<[f64; 4]>> {
    const H: f64 = 1e-7;
    let active: Vec<usize> = cable_bounds(scene, p)?
        .iter()
        .enumerate()
        .filter(|(_, &b)| z - b <= 1e-6)
        .map(|(i, _)| i)
        .collect();
    let mut plus = Vec::with_capacity(4);
    let mut minus = Vec::with_capacity(4);
    for d in 0..4 {
        let mut qp = *p;
        qp[d] += H;
        let mut qm = *p;
        qm[d] -= H;
        plus.push(cable_bounds(scene, &qp)?);
        minus.push(cable_bounds(scene, &qm)?);
    }
    Some(
        active
            .iter()
            .map(|&i| std::array::from_fn(|d| (plus[d][i] - minus[d][i]) / (2.0 * H)))
            .collect(),
    )
}

/// Minimum-norm point of the convex hull of `vectors`
/// (Mitchell-Demyanov-Malozemov iteration).
fn min_norm_in_hull(vectors: &[[f64; 4]]) -> [f64; 4] {
    let m = vectors.len();
    let mut w = vec![1.0 / m as f64; m];
    let point = |w: &[f64]| -> [f64; 4] {
        let mut p = [0.0; 4];
        for (wi, v) in w.iter().zip(vectors) {
            for d in 0..4 {
                p[d] += wi * v[d];
            }
        }
        p
    };
    for _ in 0..300 {
        let p = point(&w);
        let dots: Vec<f64> = vectors
            .iter()
            .map(|v| v.iter().zip(&p).map(|(a, b)| a * b).sum())
            .collect();
        let i_min = (0..m).min_by(|&a, &b| dots[a].partial_cmp(&dots[b]).unwrap()).unwrap();
        let i_max = (0..m)
            .filter(|&i| w[i] > 1e-14)
            .max_by(|&a, &b| dots[a].partial_cmp(&dots[b]).unwrap())
            .unwrap();
        if dots[i_max] - dots[i_min] < 1e-14 {
            break;
        }
        // optimal transfer of weight from i_max to i_min along the segment
        let d: [f64; 4] = std::array::from_fn(|k| vectors[i_min][k] - vectors[i_max][k]);
        let dd: f64 = d.iter().map(|v| v * v).sum();
        if dd <= 0.0 {
            break;
        }
        let pd: f64 = p.iter().zip(&d).map(|(a, b)| a * b).sum();
        let t = (-pd / dd).clamp(0.0, w[i_max]);
        if t <= 0.0 {
            break;
        }
        w[i_max] -= t;
        w[i_min] += t;
    }
    point(&w)
}

/// Pattern search with step halving from the coarse resolution down to
/// 1e-6 m, probing the 80 axis-pattern directions plus a per-level batch of
/// seeded random directions.
fn pattern_search(
    scene: &Scene,
    dirs: &[[f64; 4]],
    mut p: [f64; 4],
    mut z: f64,
    start_step: f64,
) -> ([f64; 4], f64) {
    let mut step = start_step;
    let mut budget = 600_000u32;
    let mut level = 0u64;
    let mut extra = random_directions(level, 48);
    while step >= 1e-6 && budget > 0 {
        let mut improved = false;
        for dir in dirs.iter().chain(&extra) {
            budget = budget.saturating_sub(1);
            let mut q = p;
            for d in 0..4 {
                q[d] += dir[d] * step;
            }
            if let Some(zq) = eval(scene, &q) {
                if zq < z {
                    p = q;
                    z = zq;
                    improved = true;
                }
            }
        }
        if !improved {
            step *= 0.5;
            level += 1;
            extra = random_directions(level, 48);
        }
    }
    (p, z)
}

/// Nelder-Mead on the envelope (infeasible probes treated as +inf). When
/// `ball` is set, vertices may not leave that radius around the start point.
fn nelder_mead(
    scene: &Scene,
    start: [f64; 4],
    init_size: f64,
    f_tol: f64,
    ball: Option<f64>,
) -> ([f64; 4], f64) {
    let clampd = |q: [f64; 4]| -> [f64; 4] {
        let Some(r) = ball else { return q };
        let mut d2 = 0.0;
        for d in 0..4 {
            d2 += (q[d] - start[d]) * (q[d] - start[d]);
        }
        if d2.sqrt() <= r {
            q
        } else {
            let s = r / d2.sqrt();
            let mut out = start;
            for d in 0..4 {
                out[d] += (q[d] - start[d]) * s;
            }
            out
        }
    };
    let f = |q: &[f64; 4]| eval(scene, q).unwrap_or(f64::INFINITY);

    let mut simplex: Vec<([f64; 4], f64)> = Vec::with_capacity(5);
    simplex.push((start, f(&start)));
    for d in 0..4 {
        let mut q = start;
        q[d] += init_size;
        let q = clampd(q);
        simplex.push((q, f(&q)));
    }

    for _ in 0..4000 {
        simplex.sort_by(|a, b| a.1.partial_cmp(&b.1).unwrap());
        let spread = simplex[4].1 - simplex[0].1;
        let mut size = 0.0f64;
        for v in &simplex[1..] {
            let d2: f64 = v.0.iter().zip(&simplex[0].0).map(|(a, b)| (a - b) * (a - b)).sum();
            size = size.max(d2.sqrt());
        }
        if (spread.is_finite() && spread < f_tol && size < 1e-8) || size < 1e-10 {
            break;
        }
        let mut centroid = [0.0f64; 4];
        for v in &simplex[..4] {
            for d in 0..4 {
                centroid[d] += v.0[d] / 4.0;
            }
        }
        let worst = simplex[4];
        let mut refl = [0.0; 4];
        for d in 0..4 {
            refl[d] = centroid[d] + (centroid[d] - worst.0[d]);
        }
        let refl = clampd(refl);
        let f_refl = f(&refl);
        if f_refl < simplex[0].1 {
            let mut exp = [0.0; 4];
            for d in 0..4 {
                exp[d] = centroid[d] + 2.0 * (centroid[d] - worst.0[d]);
            }
            let exp = clampd(exp);
            let f_exp = f(&exp);
            simplex[4] = if f_exp < f_refl { (exp, f_exp) } else { (refl, f_refl) };
        } else if f_refl < simplex[3].1 {
            simplex[4] = (refl, f_refl);
        } else {
            let mut con = [0.0; 4];
            for d in 0..4 {
                con[d] = centroid[d] + 0.5 * (worst.0[d] - centroid[d]);
            }
            let con = clampd(con);
            let f_con = f(&con);
            if f_con < worst.1 {
                simplex[4] = (con, f_con);
            } else {
                // shrink toward the best vertex
                let best = simplex[0];
                for v in &mut simplex[1..] {
                    for d in 0..4 {
                        v.0[d] = best.0[d] + 0.5 * (v.0[d] - best.0[d]);
                    }
                    v.1 = f(&v.0);
                }
            }
        }
    }
    simplex.sort_by(|a, b| a.1.partial_cmp(&b.1).unwrap());
    simplex[0]
}

/// Two candidates count as one equilibrium when their heights agree within
/// 0.1 mm and the straight segment between them stays feasible without
/// rising more than 0.1 mm above the lower one: descent scatter along a
/// shallow gutter is one resting place, not several.
fn flat_connected(scene: &Scene, p: &[f64; 4], zp: f64, q: &[f64; 4], zq: f64) -> bool {
    const BAND: f64 = 1e-4;
    if (zp - zq).abs() > BAND {
        return false;
    }
    let dist: f64 = p
        .iter()
        .zip(q)
        .map(|(a, b)| (a - b) * (a - b))
        .sum::<f64>()
        .sqrt();
    if dist > 1.5e-2 {
        return false;
    }
    let floor = zp.min(zq);
    for s in 1..32 {
        let t = s as f64 / 32.0;
        let mut m = [0.0; 4];
        for d in 0..4 {
            m[d] = p[d] + t * (q[d] - p[d]);
        }
        match eval(scene, &m) {
            Some(zm) if zm <= floor + BAND => {}
            _ => return false,
        }
    }
    true
}

/// Final validity check of a descent endpoint: the minimax step, shell
/// probes, and a ball-constrained Nelder-Mead restart must all fail to find
/// anything meaningfully lower.
fn is_local_minimum(scene: &Scene, dirs: &[[f64; 4]], p: &[f64; 4], z: f64) -> bool {
    let (_, z_mm) = minimax_descent(scene, *p, z);
    if z_mm < z - 1e-7 {
        return false;
    }
    let dense = random_directions(0xace1, 176);
    for radius in [2e-6, 2e-5, 2e-4] {
        for dir in dirs.iter().chain(&dense) {
            let mut q = *p;
            for d in 0..4 {
                q[d] += radius * dir[d];
            }
            if let Some(zq) = eval(scene, &q) {
                if zq < z - 1e-7 {
                    return false;
                }
            }
        }
    }
    let (_, z_nm) = nelder_mead(scene, *p, 2e-4, 1e-13, Some(2e-3));
    z_nm >= z - 1e-7
}

/// Stability verdict of a solver solution, judged purely by the envelope.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Stability {
    StrictLocalMin,
    Saddle,
    Degenerate,
}

impl Stability {
    pub fn as_str(&self) -> &'static str {
        match self {
            Stability::StrictLocalMin => "strict_local_min",
            Stability::Saddle => "saddle",
            Stability::Degenerate => "degenerate",
        }
    }
}

/// Probe directions: the 80 sign patterns of axis subsets, normalized.
fn probe_directions() -> Vec<[f64; 4]> {
    let mut dirs = Vec::with_capacity(80);
    for mask in 1u32..16 {
        let axes: Vec<usize> = (0..4).filter(|&d| mask & (1 << d) != 0).collect();
        let combos = 1u32 << axes.len();
        for signs in 0..combos {
            let mut v = [0.0f64; 4];
            for (bit, &d) in axes.iter().enumerate() {
                v[d] = if signs & (1 << bit) != 0 { -1.0 } else { 1.0 };
            }
            let norm = (axes.len() as f64).sqrt();
            for c in &mut v {
                *c /= norm;
            }
            dirs.push(v);
        }
    }
    dirs
}

/// Probe the envelope on a shell of `probe_radius` around the solution.
/// Strict local minimum iff every feasible probe is higher by more than
/// 1e-9 m; any lower probe is a saddle; otherwise degenerate (flat within
/// tolerance, or no feasible probes). A ball-constrained Nelder-Mead
/// restart backs up the shell, since a saddle's descent cone can be too
/// narrow for fixed probes.
pub fn classify_solution(scene: &Scene, solution: &Solution, probe_radius: f64) -> Stability {
    let center = [solution.x[0], solution.x[1], solution.x[2], solution.x[3]];
    let Some(z0) = eval(scene, &center) else {
        return Stability::Degenerate;
    };
    let mut any_feasible = false;
    let mut any_equal = false;
    for dir in probe_directions().iter().chain(&random_directions(0xbeef, 176)) {
        let mut q = center;
        for d in 0..4 {
            q[d] += probe_radius * dir[d];
        }
        let Some(zq) = eval(scene, &q) else { continue };
        any_feasible = true;
        if zq < z0 - 1e-9 {
            return Stability::Saddle;
        }
        if zq <= z0 + 1e-9 {
            any_equal = true;
        }
    }
    if !any_feasible {
        return Stability::Degenerate;
    }
    let (_, z_nm) = nelder_mead(scene, center, probe_radius, 1e-13, Some(20.0 * probe_radius));
    if z_nm < z0 - 1e-9 {
        return Stability::Saddle;
    }
    if any_equal {
        Stability::Degenerate
    } else {
        Stability::StrictLocalMin
    }
}
