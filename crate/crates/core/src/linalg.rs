//! Small dense linear algebra for the fixed-width systems of this crate.
//!
//! Every matrix here has at most four columns (the unknowns are always
//! `x = (x_o, y_o, x_vo, y_vo)`) or is a square system of order <= 20, so
//! plain slices and partial pivoting are enough.

pub type Vec4 = [f64; 4];

pub fn dot4(a: &Vec4, b: &Vec4) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + a[3] * b[3]
}

/// Outcome of reducing the augmented system `[A | b]`.
#[derive(Clone, Debug)]
pub struct Reduction {
    /// rank of the coefficient matrix `A`
    pub rank: usize,
    /// true iff `rank(A) == rank([A | b])` under the same tolerance
    pub consistent: bool,
    /// original indices of the rows chosen as pivots, ascending
    pub pivot_rows: Vec<usize>,
}

/// Row-reduce `[A | b]` with partial pivoting over the four coefficient
/// columns. A pivot candidate is rejected when `|entry| <= eps * max(1, n_r)`
/// where `n_r` is the 2-norm of that row's original `[a | b]` entries; the
/// same scale decides whether a leftover `b` entry makes the system
/// inconsistent.
///
/// The rows whose original indices land in `pivot_rows` are linearly
/// independent and span the row space of `A`, so selecting them from the
/// original matrix yields a row-full-rank subsystem with the same solution
/// set whenever the reduction reports consistency.
pub fn reduce_augmented(a: &[Vec4], b: &[f64], eps: f64) -> Reduction {
    debug_assert_eq!(a.len(), b.len());
    let m = a.len();
    let mut work: Vec<[f64; 5]> = a
        .iter()
        .zip(b)
        .map(|(row, &rhs)| [row[0], row[1], row[2], row[3], rhs])
        .collect();
    let norms: Vec<f64> = work
        .iter()
        .map(|r| r.iter().map(|v| v * v).sum::<f64>().sqrt().max(1.0))
        .collect();

    let mut pivot_rows = Vec::with_capacity(4);
    let mut unpivoted: Vec<usize> = (0..m).collect();
    for col in 0..4 {
        let mut best: Option<usize> = None;
        let mut best_val = 0.0;
        for &r in &unpivoted {
            let v = work[r][col].abs();
            if v > best_val {
                best = Some(r);
                best_val = v;
            }
        }
        let Some(p) = best else { continue };
        if best_val <= eps * norms[p] {
            continue;
        }
        pivot_rows.push(p);
        unpivoted.retain(|&r| r != p);
        let prow = work[p];
        for &r in &unpivoted {
            let factor = work[r][col] / prow[col];
            if factor != 0.0 {
                for c in 0..5 {
                    work[r][c] -= factor * prow[c];
                }
                work[r][col] = 0.0;
            }
        }
    }

    let consistent = unpivoted.iter().all(|&r| work[r][4].abs() <= eps * norms[r]);
    pivot_rows.sort_unstable();
    Reduction {
        rank: pivot_rows.len(),
        consistent,
        pivot_rows,
    }
}

/// Invert the leading `n x n` block of `m` in place by Gauss-Jordan with
/// partial pivoting. Returns false when a pivot falls below
/// `rel_eps * max(1, scale)` with `scale` the largest initial magnitude.
pub fn invert_in_place(m: &mut [[f64; 4]; 4], n: usize, rel_eps: f64) -> bool {
    debug_assert!(n <= 4);
    let scale = m
        .iter()
        .take(n)
        .flat_map(|row| row.iter().take(n))
        .fold(0.0f64, |acc, v| acc.max(v.abs()))
        .max(1.0);
    let threshold = rel_eps * scale;

    let mut aug = [[0.0f64; 8]; 4];
    for r in 0..n {
        for c in 0..n {
            aug[r][c] = m[r][c];
        }
        aug[r][n + r] = 1.0;
    }
    for col in 0..n {
        let mut p = col;
        for r in col + 1..n {
            if aug[r][col].abs() > aug[p][col].abs() {
                p = r;
            }
        }
        if aug[p][col].abs() <= threshold {
            return false;
        }
        aug.swap(col, p);
        let pv = aug[col][col];
        for c in 0..2 * n {
            aug[col][c] /= pv;
        }
        for r in 0..n {
            if r != col && aug[r][col] != 0.0 {
                let f = aug[r][col];
                for c in 0..2 * n {
                    aug[r][c] -= f * aug[col][c];
                }
            }
        }
    }
    for r in 0..n {
        for c in 0..n {
            m[r][c] = aug[r][n + c];
        }
    }
    true
}

/// Solve the square system `g * x = rhs` (order `n = rhs.len()`) by Gaussian
/// elimination with partial pivoting. Returns None when numerically singular
/// relative to the matrix scale.
pub fn solve_dense(g: &mut [Vec<f64>], rhs: &mut [f64]) -> Option<Vec<f64>> {
    let n = rhs.len();
    debug_assert!(g.len() == n && g.iter().all(|row| row.len() == n));
    let scale = g
        .iter()
        .flat_map(|r| r.iter())
        .fold(0.0f64, |acc, v| acc.max(v.abs()))
        .max(1.0);
    for col in 0..n {
        let mut p = col;
        for r in col + 1..n {
            if g[r][col].abs() > g[p][col].abs() {
                p = r;
            }
        }
        if g[p][col].abs() <= 1e-13 * scale {
            return None;
        }
        g.swap(col, p);
        rhs.swap(col, p);
        for r in col + 1..n {
            let f = g[r][col] / g[col][col];
            if f != 0.0 {
                for c in col..n {
                    g[r][c] -= f * g[col][c];
                }
                rhs[r] -= f * rhs[col];
            }
        }
    }
    let mut x = vec![0.0; n];
    for r in (0..n).rev() {
        let mut acc = rhs[r];
        for c in r + 1..n {
            acc -= g[r][c] * x[c];
        }
        x[r] = acc / g[r][r];
    }
    Some(x)
}
