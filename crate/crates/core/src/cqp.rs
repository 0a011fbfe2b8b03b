//! The minimum-potential-energy solve.
//!
//! On the taut constraint manifold the squared hanging depth
//! `(z_r - z_o)^2` is a quadratic in `x`, so minimizing potential energy
//! means minimizing `f(x) = -(z_r - z_o)^2 = 1/2 x^T H x + c^T x + f0` with
//! the constant indefinite `H = diag(2, 2, -2, -2)`. With the row-full-rank
//! constraints `A11 x = b11` the first-order conditions form a saddle-point
//! system whose inverse has an explicit block form; `x` and the multipliers
//! come out in closed form.

use crate::constraints::LinearSystem;
use crate::linalg::{self, Vec4};
use crate::scene::Scene;
use crate::tol::Tolerances;
use thiserror::Error;

/// Diagonal of the constant objective Hessian.
pub const H_DIAG: Vec4 = [2.0, 2.0, -2.0, -2.0];
const H_INV_DIAG: Vec4 = [0.5, 0.5, -0.5, -0.5];

/// Quadratic objective `f(x) = 1/2 x^T H x + c^T x + f0` for a pivot cable.
#[derive(Clone, Copy, Debug)]
pub struct Objective {
    pub c: Vec4,
    pub f0: f64,
}

impl Objective {
    pub fn eval(&self, x: &Vec4) -> f64 {
        let mut quad = 0.0;
        for i in 0..4 {
            quad += 0.5 * H_DIAG[i] * x[i] * x[i];
        }
        quad + linalg::dot4(&self.c, x) + self.f0
    }
}

/// Build the objective from the pivot cable's robot and vertex.
pub fn build_objective(scene: &Scene, pivot: u32) -> Objective {
    let r = scene.robot(pivot as usize);
    let v = scene.vertex(pivot as usize);
    Objective {
        c: [-2.0 * r.x, -2.0 * r.y, 2.0 * v.x, 2.0 * v.y],
        f0: r.x * r.x + r.y * r.y - v.x * v.x - v.y * v.y,
    }
}

#[derive(Clone, Copy, Debug, Error, PartialEq)]
pub enum CqpError {
    /// `A11 H^-1 A11^T` is numerically singular. With the indefinite `H`
    /// this can happen for special full-row-rank constraint geometries; the
    /// caller records it instead of aborting the enumeration.
    #[error("saddle-point system singular: A11 H^-1 A11^T not invertible")]
    SchurSingular,
}

/// Blocks of the inverse saddle-point matrix
/// `[[H, -A11^T], [-A11, 0]]^-1 = [[B, -C^T], [-C, D]]`.
#[derive(Clone, Debug)]
pub struct KktBlocks {
    pub b: [[f64; 4]; 4],
    /// `k1 x 4`
    pub c: Vec<Vec4>,
    /// `k1 x k1`
    pub d: Vec<Vec<f64>>,
}

/// Compute the inverse blocks:
/// `B = H^-1 - H^-1 A11^T S^-1 A11 H^-1`, `C = S^-1 A11 H^-1`, `D = -S^-1`
/// with `S = A11 H^-1 A11^T`.
pub fn lagrange_block_inverse(a11: &[Vec4]) -> Result<KktBlocks, CqpError> {
    let k1 = a11.len();
    debug_assert!((1..=4).contains(&k1));

    // rows of A11 H^-1
    let ah: Vec<Vec4> = a11
        .iter()
        .map(|row| {
            let mut r = *row;
            for i in 0..4 {
                r[i] *= H_INV_DIAG[i];
            }
            r
        })
        .collect();

    let mut s = [[0.0f64; 4]; 4];
    for r in 0..k1 {
        for c in 0..k1 {
            s[r][c] = linalg::dot4(&ah[r], &a11[c]);
        }
    }
    if !linalg::invert_in_place(&mut s, k1, 1e-12) {
        return Err(CqpError::SchurSingular);
    }

    // C = S^-1 (A11 H^-1)
    let c_block: Vec<Vec4> = (0..k1)
        .map(|r| {
            let mut row = [0.0; 4];
            for t in 0..k1 {
                let w = s[r][t];
                for i in 0..4 {
                    row[i] += w * ah[t][i];
                }
            }
            row
        })
        .collect();

    // B = H^-1 - (A11 H^-1)^T S^-1 (A11 H^-1)
    let mut b = [[0.0f64; 4]; 4];
    for i in 0..4 {
        b[i][i] = H_INV_DIAG[i];
    }
    for r in 0..k1 {
        for i in 0..4 {
            let w = ah[r][i];
            if w != 0.0 {
                for j in 0..4 {
                    b[i][j] -= w * c_block[r][j];
                }
            }
        }
    }

    let d: Vec<Vec<f64>> = (0..k1).map(|r| (0..k1).map(|c| -s[r][c]).collect()).collect();
    Ok(KktBlocks { b, c: c_block, d })
}

/// Stationary point of the constrained objective.
#[derive(Clone, Debug)]
pub struct LagrangeSolve {
    pub x: Vec4,
    pub lambda: Vec<f64>,
    pub blocks: KktBlocks,
}

/// Solve the first-order conditions: `x = -B c + C^T b11`,
/// `lambda = C c - D b11`.
pub fn solve_stationary(
    objective: &Objective,
    a11: &[Vec4],
    b11: &[f64],
) -> Result<LagrangeSolve, CqpError> {
    debug_assert_eq!(a11.len(), b11.len());
    let blocks = lagrange_block_inverse(a11)?;
    let k1 = a11.len();

    let mut x = [0.0f64; 4];
    for i in 0..4 {
        let mut acc = 0.0;
        for j in 0..4 {
            acc -= blocks.b[i][j] * objective.c[j];
        }
        for r in 0..k1 {
            acc += blocks.c[r][i] * b11[r];
        }
        x[i] = acc;
    }
    let lambda: Vec<f64> = (0..k1)
        .map(|r| {
            let mut acc = linalg::dot4(&blocks.c[r], &objective.c);
            for t in 0..k1 {
                acc -= blocks.d[r][t] * b11[t];
            }
            acc
        })
        .collect();
    Ok(LagrangeSolve { x, lambda, blocks })
}

/// Why a stationary point yields no physical height.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum HeightInfeasible {
    /// `f(x) >= 0`: the object would sit at (or above) the holding height.
    ObjectAtHoldingHeight,
    /// `z_o <= 0`: the object reaches the ground.
    ObjectOnGround { z_o: f64 },
}

/// Recover the hanging height `z_o = z_r - sqrt(-f(x))`; feasible only for
/// `f(x) < 0` and `z_o > 0`.
pub fn recover_height(
    objective: &Objective,
    x: &Vec4,
    z_r: f64,
    tol: &Tolerances,
) -> Result<f64, HeightInfeasible> {
    let f = objective.eval(x);
    if f >= -tol.height_gap {
        return Err(HeightInfeasible::ObjectAtHoldingHeight);
    }
    let z_o = z_r - (-f).sqrt();
    if z_o <= tol.ground {
        return Err(HeightInfeasible::ObjectOnGround { z_o });
    }
    Ok(z_o)
}

/// Slack and bound check of a candidate.
#[derive(Clone, Debug)]
pub struct SlackCheck {
    pub ok: bool,
    /// margin per slack cable, ascending cable order, squared meters
    pub margins: Vec<f64>,
}

/// Every slack margin must clear `tol.slack` and the height must lie
/// strictly inside `(0, z_r)`.
pub fn check_slack_and_bounds(
    system: &LinearSystem,
    x: &Vec4,
    z_o: f64,
    z_r: f64,
    tol: &Tolerances,
) -> SlackCheck {
    let margins = system.slack_margins(x);
    let ok = z_o > tol.ground
        && z_o < z_r - tol.ground
        && margins.iter().all(|&m| m > tol.slack);
    SlackCheck { ok, margins }
}
