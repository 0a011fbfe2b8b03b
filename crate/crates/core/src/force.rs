//! Force closure: gravity must be balanced by nonnegative cable tensions.
//!
//! With a uniform holding height the tension directions of the taut cables
//! form a cone that contains the upward gravity vector iff the object's
//! planar position lies inside the convex hull of the taut robots, so the
//! accept/reject decision is a hull membership test. The explicit tension
//! distribution is computed as a diagnostic only.

use crate::scene::{cross, Point2, Scene, TautSet};
use crate::tol::Tolerances;
use thiserror::Error;

/// Convex hull (counterclockwise, no duplicate points) by monotone chain.
pub fn convex_hull(points: &[Point2]) -> Vec<Point2> {
    let mut pts: Vec<Point2> = points.to_vec();
    pts.sort_by(|a, b| (a.x, a.y).partial_cmp(&(b.x, b.y)).unwrap());
    pts.dedup_by(|a, b| a.x == b.x && a.y == b.y);
    if pts.len() <= 2 {
        return pts;
    }
    let build = |iter: &mut dyn Iterator<Item = Point2>| {
        let mut chain: Vec<Point2> = Vec::new();
        for p in iter {
            while chain.len() >= 2 && cross(chain[chain.len() - 2], chain[chain.len() - 1], p) <= 0.0 {
                chain.pop();
            }
            chain.push(p);
        }
        chain.pop();
        chain
    };
    let mut lower = build(&mut pts.iter().copied());
    let upper = build(&mut pts.iter().rev().copied());
    lower.extend(upper);
    lower
}

/// Signed distance of `p` to the hull boundary, positive inside. Returns
/// `-inf` for a degenerate hull with empty interior.
pub(crate) fn hull_interior_margin(points: &[Point2], p: Point2) -> f64 {
    let hull = convex_hull(points);
    if hull.len() < 3 {
        return f64::NEG_INFINITY;
    }
    let mut margin = f64::INFINITY;
    for i in 0..hull.len() {
        let a = hull[i];
        let b = hull[(i + 1) % hull.len()];
        let edge = a.dist(b);
        margin = margin.min(cross(a, b, p) / edge);
    }
    margin
}

/// Force closure test: the planar object position must lie strictly inside
/// the convex hull of the taut robots (boundary fails).
pub fn force_closure_check(scene: &Scene, taut: &TautSet, x: &[f64; 4], tol: &Tolerances) -> bool {
    let robots: Vec<Point2> = taut.indices().iter().map(|&i| scene.robot(i as usize)).collect();
    hull_interior_margin(&robots, Point2::new(x[0], x[1])) > tol.hull
}

#[derive(Clone, Copy, Debug, Error, PartialEq)]
pub enum ForceError {
    /// No nonnegative tension assignment balances gravity. After a passed
    /// hull test this indicates an internal inconsistency.
    #[error("no nonnegative tension solution (residual {residual:.3e} N)")]
    NoNonnegativeSolution { residual: f64 },
}

/// Nonnegative cable tensions balancing gravity.
#[derive(Clone, Debug)]
pub struct TensionDiagnostic {
    /// newtons, one per taut cable in ascending cable order
    pub tensions: Vec<f64>,
    /// force-balance residual, newtons
    pub residual: f64,
    /// determined system (k = 3 with independent directions)
    pub unique: bool,
}

/// Solve `sum_i F_i tau_i = (0, 0, m g)` with `F >= 0`, preferring the
/// minimum-norm tension distribution. `tau_i = (p_i - p_o) / l_i` are the
/// unit cable directions. Diagnostic only; the hull test gates acceptance.
pub fn solve_tensions(
    scene: &Scene,
    taut: &TautSet,
    x: &[f64; 4],
    z_o: f64,
) -> Result<TensionDiagnostic, ForceError> {
    let k = taut.k();
    let v_o = Point2::new(x[2], x[3]);
    let r_o = Point2::new(x[0], x[1]);
    let dz = scene.z_r() - z_o;
    // columns tau_i, dimensionless right-hand side (0, 0, 1)
    let mut dirs = Vec::with_capacity(k);
    for &i in taut.indices() {
        let len = scene.cable_length(v_o, i as usize);
        let r = scene.robot(i as usize);
        dirs.push([(r.x - r_o.x) / len, (r.y - r_o.y) / len, dz / len]);
    }
    let weight = scene.object_mass() * scene.gravity();

    let scaled = nnls_min_norm(&dirs);
    let residual_rel = balance_residual(&dirs, &scaled);
    if residual_rel > 1e-8 {
        return Err(ForceError::NoNonnegativeSolution {
            residual: residual_rel * weight,
        });
    }
    Ok(TensionDiagnostic {
        tensions: scaled.iter().map(|f| f * weight).collect(),
        residual: residual_rel * weight,
        unique: k == 3,
    })
}

fn balance_residual(dirs: &[[f64; 3]], f: &[f64]) -> f64 {
    let mut acc = [0.0f64, 0.0, -1.0];
    for (d, &fi) in dirs.iter().zip(f) {
        for c in 0..3 {
            acc[c] += d[c] * fi;
        }
    }
    (acc[0] * acc[0] + acc[1] * acc[1] + acc[2] * acc[2]).sqrt()
}

/// Minimum-norm nonnegative solution of `T f = (0,0,1)`.
///
/// Active-set iteration on the bound constraints: solve the equality
/// projection `T_S T_S^T y = w`, `f_S = T_S^T y` on the working support,
/// drop the most negative component while any `f_S < 0`, and re-admit an
/// excluded cable whose multiplier `tau_j . y` is positive. For a feasible
/// cone this terminates at the KKT point of `min |f|^2, T f = w, f >= 0`;
/// infeasibility surfaces as a nonzero balance residual at the caller.
fn nnls_min_norm(dirs: &[[f64; 3]]) -> Vec<f64> {
    let k = dirs.len();
    let mut support: Vec<usize> = (0..k).collect();
    let mut f = vec![0.0f64; k];
    let mut last_entered = usize::MAX;

    for _ in 0..6 * k + 12 {
        let y = loop {
            let Some(y) = solve_support(dirs, &support) else {
                // singular reduced system: shrink until solvable or give up
                if support.len() <= 1 {
                    return f;
                }
                support.pop();
                continue;
            };
            break y;
        };
        let cand: Vec<f64> = support
            .iter()
            .map(|&j| dirs[j][0] * y[0] + dirs[j][1] * y[1] + dirs[j][2] * y[2])
            .collect();
        if let Some((worst_pos, _)) = cand
            .iter()
            .enumerate()
            .filter(|(_, &v)| v < -1e-12)
            .min_by(|a, b| a.1.partial_cmp(b.1).unwrap())
        {
            // never immediately drop what was just admitted (anti-cycling)
            if support[worst_pos] == last_entered {
                break;
            }
            support.remove(worst_pos);
            if support.is_empty() {
                return f;
            }
            continue;
        }
        f = vec![0.0; k];
        for (pos, &j) in support.iter().enumerate() {
            f[j] = cand[pos].max(0.0);
        }
        // re-admit an excluded cable with positive multiplier
        let enter = (0..k)
            .filter(|j| !support.contains(j))
            .map(|j| (j, dirs[j][0] * y[0] + dirs[j][1] * y[1] + dirs[j][2] * y[2]))
            .filter(|(_, v)| *v > 1e-10)
            .max_by(|a, b| a.1.partial_cmp(&b.1).unwrap());
        match enter {
            Some((j, _)) => {
                last_entered = j;
                support.push(j);
                support.sort_unstable();
            }
            None => break,
        }
    }
    f
}

/// Solve `T_S T_S^T y = (0,0,1)` on the support. None when singular.
fn solve_support(dirs: &[[f64; 3]], support: &[usize]) -> Option<[f64; 3]> {
    let mut gram = vec![vec![0.0f64; 3]; 3];
    let mut rhs = vec![0.0, 0.0, 1.0];
    for r in 0..3 {
        for c in 0..3 {
            gram[r][c] = support.iter().map(|&j| dirs[j][r] * dirs[j][c]).sum();
        }
    }
    crate::linalg::solve_dense(&mut gram, &mut rhs).map(|y| [y[0], y[1], y[2]])
}
