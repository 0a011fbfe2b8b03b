//! Linearized cable constraints for a taut set and the form-closure test.
//!
//! For a taut set with pivot cable `p`, subtracting the pivot's squared
//! length equality from cable `c`'s turns the quadratic constraints into
//! rows that are linear in `x = (x_o, y_o, x_vo, y_vo)`:
//!
//! ```text
//! a_c = (x_c - x_p,  y_c - y_p,  xv_p - xv_c,  yv_p - yv_c)
//! b_c = (xv_p^2 + yv_p^2 - xv_c^2 - yv_c^2 - x_p^2 - y_p^2 + x_c^2 + y_c^2) / 2
//! ```
//!
//! Taut cables give equalities `A1 x = b1`, slack cables strict inequalities
//! `A2 x > b2`. The taut system is solvable iff `rank(A1) = rank([A1 b1])`;
//! one row reduction answers that and selects a row-full-rank subsystem
//! `A11 x = b11` for the closed-form solve.

use crate::linalg::{self, Vec4};
use crate::scene::{Scene, TautSet};
use crate::tol::Tolerances;
use thiserror::Error;

pub use crate::linalg::Reduction;

#[derive(Clone, Copy, Debug, Error, PartialEq)]
pub enum ConstraintError {
    #[error("pivot cable {pivot} is not in the taut set")]
    PivotNotTaut { pivot: u32 },
}

/// The linearized system of one taut set.
#[derive(Clone, Debug)]
pub struct LinearSystem {
    pivot: u32,
    taut: TautSet,
    /// one row per non-pivot taut cable, in ascending cable order
    a1: Vec<Vec4>,
    b1: Vec<f64>,
    a1_cables: Vec<u32>,
    /// one row per slack cable, ascending
    a2: Vec<Vec4>,
    b2: Vec<f64>,
    a2_cables: Vec<u32>,
    /// row-full-rank subsystem, filled by [`extract_independent_rows`]
    a11: Vec<Vec4>,
    b11: Vec<f64>,
    row_map: Vec<usize>,
}

/// One constraint row of cable `c` against pivot `p` (both 1-based).
fn constraint_row(scene: &Scene, p: u32, c: u32) -> (Vec4, f64) {
    let rp = scene.robot(p as usize);
    let vp = scene.vertex(p as usize);
    let rc = scene.robot(c as usize);
    let vc = scene.vertex(c as usize);
    let a = [rc.x - rp.x, rc.y - rp.y, vp.x - vc.x, vp.y - vc.y];
    let b = 0.5
        * (vp.x * vp.x + vp.y * vp.y - vc.x * vc.x - vc.y * vc.y - rp.x * rp.x - rp.y * rp.y
            + rc.x * rc.x
            + rc.y * rc.y);
    (a, b)
}

/// Build the taut equalities and slack inequalities for a taut set.
/// `pivot` defaults to the smallest taut index.
pub fn build_linear_system(
    scene: &Scene,
    taut: &TautSet,
    pivot: Option<u32>,
) -> Result<LinearSystem, ConstraintError> {
    let pivot = pivot.unwrap_or_else(|| taut.first());
    if !taut.contains(pivot) {
        return Err(ConstraintError::PivotNotTaut { pivot });
    }
    let n = scene.n();
    let mut a1 = Vec::with_capacity(taut.k() - 1);
    let mut b1 = Vec::with_capacity(taut.k() - 1);
    let mut a1_cables = Vec::with_capacity(taut.k() - 1);
    for &c in taut.indices() {
        if c == pivot {
            continue;
        }
        let (a, b) = constraint_row(scene, pivot, c);
        a1.push(a);
        b1.push(b);
        a1_cables.push(c);
    }
    let slack = taut.slack_indices(n);
    let mut a2 = Vec::with_capacity(slack.len());
    let mut b2 = Vec::with_capacity(slack.len());
    for &c in &slack {
        let (a, b) = constraint_row(scene, pivot, c);
        a2.push(a);
        b2.push(b);
    }
    Ok(LinearSystem {
        pivot,
        taut: taut.clone(),
        a1,
        b1,
        a1_cables,
        a2,
        b2,
        a2_cables: slack,
        a11: Vec::new(),
        b11: Vec::new(),
        row_map: Vec::new(),
    })
}

impl LinearSystem {
    pub fn pivot(&self) -> u32 {
        self.pivot
    }

    pub fn taut(&self) -> &TautSet {
        &self.taut
    }

    pub fn a1(&self) -> &[Vec4] {
        &self.a1
    }

    pub fn b1(&self) -> &[f64] {
        &self.b1
    }

    /// Cable index of each `a1` row.
    pub fn a1_cables(&self) -> &[u32] {
        &self.a1_cables
    }

    pub fn a2(&self) -> &[Vec4] {
        &self.a2
    }

    pub fn b2(&self) -> &[f64] {
        &self.b2
    }

    /// Cable index of each `a2` row.
    pub fn a2_cables(&self) -> &[u32] {
        &self.a2_cables
    }

    /// Row-full-rank subsystem; empty until [`extract_independent_rows`].
    pub fn a11(&self) -> &[Vec4] {
        &self.a11
    }

    pub fn b11(&self) -> &[f64] {
        &self.b11
    }

    /// rank(A1) once extracted.
    pub fn k1(&self) -> usize {
        self.a11.len()
    }

    /// Which `a1` rows survived into `a11`.
    pub fn row_map(&self) -> &[usize] {
        &self.row_map
    }

    /// Taut cables whose rows were dropped as linearly dependent.
    pub fn redundant_cables(&self) -> Vec<u32> {
        (0..self.a1.len())
            .filter(|r| !self.row_map.contains(r))
            .map(|r| self.a1_cables[r])
            .collect()
    }

    /// One shared row reduction of `[A1 | b1]` serving both the form-closure
    /// test and the independent-row extraction.
    pub fn reduce(&self, tol: &Tolerances) -> Reduction {
        linalg::reduce_augmented(&self.a1, &self.b1, tol.rank)
    }

    /// Install `A11, b11` from a prior reduction.
    pub fn apply_reduction(&mut self, red: &Reduction) {
        self.a11 = red.pivot_rows.iter().map(|&r| self.a1[r]).collect();
        self.b11 = red.pivot_rows.iter().map(|&r| self.b1[r]).collect();
        self.row_map = red.pivot_rows.clone();
    }

    /// Slack margins `A2 x - b2`, one per slack cable in ascending order.
    pub fn slack_margins(&self, x: &Vec4) -> Vec<f64> {
        self.a2
            .iter()
            .zip(&self.b2)
            .map(|(a, b)| linalg::dot4(a, x) - b)
            .collect()
    }

    /// Residual `max |A1 x - b1|` over the full taut system.
    pub fn taut_residual(&self, x: &Vec4) -> f64 {
        self.a1
            .iter()
            .zip(&self.b1)
            .map(|(a, b)| (linalg::dot4(a, x) - b).abs())
            .fold(0.0, f64::max)
    }
}

/// Form closure: the taut equalities admit a solution,
/// `rank(A1) = rank([A1 b1])`.
pub fn form_closure_check(system: &LinearSystem, tol: &Tolerances) -> bool {
    system.reduce(tol).consistent
}

/// Select a maximal independent subset of the taut rows. Returns `k1`.
/// The solution set of `A11 x = b11` equals that of `A1 x = b1` whenever
/// form closure holds.
pub fn extract_independent_rows(system: &mut LinearSystem, tol: &Tolerances) -> usize {
    let red = system.reduce(tol);
    system.apply_reduction(&red);
    system.k1()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::regular_polygon_scene;
    use crate::scene::{Point2, RawScene};

    fn example1_scene() -> Scene {
        RawScene::new(
            0.8,
            vec![
                Point2::new(-0.32, -0.42),
                Point2::new(0.80, -0.38),
                Point2::new(0.75, 0.71),
                Point2::new(-0.37, 0.66),
            ],
            vec![
                Point2::new(0.21, 0.12),
                Point2::new(0.80, 0.04),
                Point2::new(0.90, 0.55),
                Point2::new(0.44, 0.72),
            ],
        )
        .validate()
        .unwrap()
    }

    #[test]
    fn example1_row_for_cable_2() {
        // direct arithmetic from the scene coordinates
        let scene = example1_scene();
        let taut = TautSet::new(vec![1, 2, 3], 4).unwrap();
        let ls = build_linear_system(&scene, &taut, None).unwrap();
        assert_eq!(ls.pivot(), 1);
        assert_eq!(ls.a1_cables(), &[2, 3]);
        let row = ls.a1()[0];
        let expect = [0.59, -0.08, -1.12, -0.04];
        for (got, want) in row.iter().zip(expect) {
            assert!((got - want).abs() < 1e-12, "{got} vs {want}");
        }
    }

    #[test]
    fn row_count_is_k_minus_one() {
        let scene = example1_scene();
        let taut = TautSet::new(vec![1, 2, 3], 4).unwrap();
        let ls = build_linear_system(&scene, &taut, None).unwrap();
        assert_eq!(ls.a1().len(), 2);
        assert_eq!(ls.a2().len(), 1);
        assert_eq!(ls.a2_cables(), &[4]);
    }

    #[test]
    fn pivot_must_be_taut() {
        let scene = example1_scene();
        let taut = TautSet::new(vec![1, 2, 3], 4).unwrap();
        assert_eq!(
            build_linear_system(&scene, &taut, Some(4)).unwrap_err(),
            ConstraintError::PivotNotTaut { pivot: 4 }
        );
    }

    #[test]
    fn regular_octagon_all_taut_has_rank_two_and_zero_rhs() {
        let scene = regular_polygon_scene(8, 0.9, 0.5, 1.0).unwrap();
        let taut = TautSet::new((1..=8).collect(), 8).unwrap();
        let mut ls = build_linear_system(&scene, &taut, None).unwrap();
        assert!(ls.b1().iter().all(|b| b.abs() < 1e-12));
        let tol = Tolerances::default();
        assert!(form_closure_check(&ls, &tol));
        assert_eq!(extract_independent_rows(&mut ls, &tol), 2);
        // third/fourth columns proportional to first/second by -r_s/r_f
        let ratio = -0.9 / 0.5;
        for row in ls.a1() {
            assert!((row[2] - ratio * row[0]).abs() < 1e-12);
            assert!((row[3] - ratio * row[1]).abs() < 1e-12);
        }
    }

    #[test]
    fn square_sheet_square_formation_k1_two() {
        let scene = regular_polygon_scene(4, 1.0, 0.5, 1.0).unwrap();
        let taut = TautSet::new(vec![1, 2, 3, 4], 4).unwrap();
        let mut ls = build_linear_system(&scene, &taut, None).unwrap();
        let tol = Tolerances::default();
        assert!(form_closure_check(&ls, &tol));
        assert_eq!(extract_independent_rows(&mut ls, &tol), 2);
        assert_eq!(ls.redundant_cables().len(), 1);
    }

    #[test]
    fn k_three_nondegenerate_k1_two() {
        let scene = example1_scene();
        let taut = TautSet::new(vec![1, 2, 3], 4).unwrap();
        let mut ls = build_linear_system(&scene, &taut, None).unwrap();
        assert_eq!(extract_independent_rows(&mut ls, &Tolerances::default()), 2);
    }

    #[test]
    fn generic_k_four_k1_three() {
        let scene = example1_scene();
        let taut = TautSet::new(vec![1, 2, 3, 4], 4).unwrap();
        let mut ls = build_linear_system(&scene, &taut, None).unwrap();
        assert_eq!(extract_independent_rows(&mut ls, &Tolerances::default()), 3);
        assert_eq!(ls.row_map(), &[0, 1, 2]);
    }

    #[test]
    fn form_closure_trivially_true_for_k3() {
        // any k = 3 set on a feasible scene: at most 2 independent rows in 4
        // unknowns, never inconsistent
        let scene = example1_scene();
        let tol = Tolerances::default();
        for set in [[1u32, 2, 3], [1, 2, 4], [1, 3, 4], [2, 3, 4]] {
            let taut = TautSet::new(set.to_vec(), 4).unwrap();
            let ls = build_linear_system(&scene, &taut, None).unwrap();
            assert!(form_closure_check(&ls, &tol));
        }
    }
}
