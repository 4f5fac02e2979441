//! Linear feasibility kernels.
//!
//! * [`nnls`]: Lawson-Hanson active-set nonnegative least squares. Minimizes
//!   `|G a - b|` over `a >= 0`; used for conic membership.
//! * [`min_norm_point`]: Wolfe's minimum-norm-point algorithm over the convex
//!   hull of a finite point set; used for hull membership and projection.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::linalg::Vector;

/// Result of a nonnegative least-squares solve.
#[derive(Debug, Clone)]
pub struct NnlsSolution {
    pub coeffs: Vec<f64>,
    /// `G a`
    pub fitted: Vector,
    pub residual: f64,
    pub iterations: usize,
}

fn solve_least_squares(columns: &[&Vector], rhs: &Vector) -> Option<Vec<f64>> {
    let d = rhs.dim();
    let m = DMatrix::from_fn(d, columns.len(), |i, j| columns[j][i]);
    let b = DVector::from_column_slice(rhs.coords());
    let svd = m.svd(true, true);
    let smax = svd.singular_values.max();
    let eps = smax * 1e-13 * (d.max(columns.len()) as f64);
    svd.solve(&b, eps).ok().map(|x| x.iter().cloned().collect())
}

fn combine(columns: &[Vector], coeffs: &[f64], dim: usize) -> Vector {
    let mut acc = Vector::zeros(dim);
    for (g, a) in columns.iter().zip(coeffs) {
        if *a != 0.0 {
            acc = acc.add_scaled(*a, g);
        }
    }
    acc
}

/// Lawson-Hanson NNLS: `min |sum_j a_j g_j - b|` subject to `a >= 0`.
///
/// Returns [`Error::Indeterminate`] when `max_iter` inner steps are exhausted.
pub fn nnls(columns: &[Vector], b: &Vector, max_iter: usize) -> Result<NnlsSolution> {
    let dim = b.dim();
    let n = columns.len();
    for g in columns {
        g.check_dim(dim)?;
    }
    let mut x = vec![0.0; n];
    if n == 0 {
        return Ok(NnlsSolution {
            coeffs: x,
            fitted: Vector::zeros(dim),
            residual: b.norm(),
            iterations: 0,
        });
    }
    let col_scale = columns.iter().map(Vector::norm).fold(0.0_f64, f64::max);
    let grad_tol = 1e-12 * col_scale * b.norm().max(col_scale).max(1.0);
    let mut passive = vec![false; n];
    let mut blocked = vec![false; n];
    let mut iterations = 0;

    loop {
        let fitted = combine(columns, &x, dim);
        let resid = b - &fitted;
        let mut best: Option<(usize, f64)> = None;
        for j in 0..n {
            if passive[j] || blocked[j] {
                continue;
            }
            let w = columns[j].dot(&resid);
            if w > grad_tol && best.is_none_or(|(_, bw)| w > bw) {
                best = Some((j, w));
            }
        }
        let Some((enter, _)) = best else {
            let residual = resid.norm();
            return Ok(NnlsSolution {
                coeffs: x,
                fitted,
                residual,
                iterations,
            });
        };
        passive[enter] = true;

        // Inner loop: keep the passive least-squares solution feasible.
        let mut first_inner = true;
        loop {
            iterations += 1;
            if iterations > max_iter {
                return Err(Error::Indeterminate(format!(
                    "nonnegative least squares did not converge in {max_iter} steps"
                )));
            }
            let idx: Vec<usize> = (0..n).filter(|&j| passive[j]).collect();
            let cols: Vec<&Vector> = idx.iter().map(|&j| &columns[j]).collect();
            let Some(z) = solve_least_squares(&cols, b) else {
                return Err(Error::Indeterminate("least-squares subproblem failed".into()));
            };
            if first_inner {
                first_inner = false;
                let pos = idx.iter().position(|&j| j == enter).unwrap();
                if z[pos] <= 0.0 {
                    // Numerically degenerate entry; skip it until x changes.
                    passive[enter] = false;
                    blocked[enter] = true;
                    break;
                }
            }
            if z.iter().all(|v| *v > 0.0) {
                for (k, &j) in idx.iter().enumerate() {
                    x[j] = z[k];
                }
                blocked.iter_mut().for_each(|b| *b = false);
                break;
            }
            let mut alpha = f64::INFINITY;
            for (k, &j) in idx.iter().enumerate() {
                if z[k] <= 0.0 {
                    let denom = x[j] - z[k];
                    if denom > 0.0 {
                        alpha = alpha.min(x[j] / denom);
                    } else {
                        alpha = 0.0;
                    }
                }
            }
            let alpha = alpha.clamp(0.0, 1.0);
            for (k, &j) in idx.iter().enumerate() {
                x[j] += alpha * (z[k] - x[j]);
                if x[j] <= 1e-15 * (1.0 + z[k].abs()) {
                    x[j] = 0.0;
                    passive[j] = false;
                }
            }
            blocked.iter_mut().for_each(|b| *b = false);
            if idx.iter().all(|&j| !passive[j]) {
                break;
            }
        }
    }
}

/// Result of a minimum-norm-point computation.
#[derive(Debug, Clone)]
pub struct MinNormPoint {
    /// The minimum-norm point of the hull.
    pub point: Vector,
    /// Convex weights, one per input point (sparse in practice).
    pub weights: Vec<f64>,
    pub iterations: usize,
    /// Duality gap `|x|^2 - min_j <x, p_j>` at termination.
    pub gap: f64,
}

impl MinNormPoint {
    pub fn norm(&self) -> f64 {
        self.point.norm()
    }
}

/// Affine minimizer of the corral: weights summing to one that minimize the
/// norm of the combination.
fn affine_minimizer(corral: &[&Vector]) -> Option<Vec<f64>> {
    let k = corral.len();
    if k == 1 {
        return Some(vec![1.0]);
    }
    let base = corral[0];
    let d = base.dim();
    let m = DMatrix::from_fn(d, k - 1, |i, j| corral[j + 1][i] - base[i]);
    let rhs = DVector::from_iterator(d, base.coords().iter().map(|v| -v));
    let svd = m.svd(true, true);
    let smax = svd.singular_values.max();
    let eps = smax * 1e-12;
    let c = svd.solve(&rhs, eps).ok()?;
    let mut w = Vec::with_capacity(k);
    w.push(1.0 - c.iter().sum::<f64>());
    w.extend(c.iter().cloned());
    Some(w)
}

/// Wolfe's minimum-norm-point algorithm over `conv(points)`.
///
/// Stops early once the current iterate is within `stop_below` of the origin
/// (pass `0.0` to always run to optimality).
pub fn min_norm_point(points: &[Vector], max_iter: usize, stop_below: f64) -> Result<MinNormPoint> {
    let first = points
        .first()
        .ok_or(Error::EmptyInput("min-norm point of no points"))?;
    let dim = first.dim();
    for p in points {
        p.check_dim(dim)?;
    }
    let max_sq = points.iter().map(Vector::norm_sq).fold(0.0_f64, f64::max);
    let gap_tol = 1e-14 * max_sq.max(f64::MIN_POSITIVE);
    const DROP: f64 = 1e-12;

    let start = (0..points.len())
        .min_by(|&a, &b| points[a].norm_sq().total_cmp(&points[b].norm_sq()))
        .unwrap();
    let mut corral: Vec<usize> = vec![start];
    let mut lambda: Vec<f64> = vec![1.0];
    let mut x = points[start].clone();
    let mut iterations = 0;

    let finish = |x: Vector, corral: &[usize], lambda: &[f64], iterations: usize, gap: f64| {
        let mut weights = vec![0.0; points.len()];
        for (&i, &l) in corral.iter().zip(lambda) {
            weights[i] += l;
        }
        MinNormPoint {
            point: x,
            weights,
            iterations,
            gap,
        }
    };

    loop {
        let xx = x.norm_sq();
        let (j, xp) = points
            .iter()
            .enumerate()
            .map(|(j, p)| (j, x.dot(p)))
            .min_by(|a, b| a.1.total_cmp(&b.1))
            .unwrap();
        let gap = xx - xp;
        if gap <= gap_tol || xx.sqrt() <= stop_below || corral.contains(&j) {
            return Ok(finish(x, &corral, &lambda, iterations, gap.max(0.0)));
        }
        corral.push(j);
        lambda.push(0.0);

        loop {
            iterations += 1;
            if iterations > max_iter {
                return Err(Error::Indeterminate(format!(
                    "minimum-norm point did not converge in {max_iter} steps"
                )));
            }
            let pts: Vec<&Vector> = corral.iter().map(|&i| &points[i]).collect();
            let Some(alpha) = affine_minimizer(&pts) else {
                return Err(Error::Indeterminate("affine minimizer failed".into()));
            };
            if alpha.iter().all(|a| *a > DROP) {
                lambda = alpha;
                break;
            }
            // Move from lambda toward alpha until a weight hits zero.
            let mut theta = 1.0_f64;
            for (l, a) in lambda.iter().zip(&alpha) {
                if *a <= DROP && l - a > 0.0 {
                    theta = theta.min(l / (l - a));
                }
            }
            let theta = theta.clamp(0.0, 1.0);
            let mut keep_c = Vec::with_capacity(corral.len());
            let mut keep_l = Vec::with_capacity(corral.len());
            for ((&i, l), a) in corral.iter().zip(&lambda).zip(&alpha) {
                let v = theta * a + (1.0 - theta) * l;
                if v > DROP {
                    keep_c.push(i);
                    keep_l.push(v);
                }
            }
            if keep_c.is_empty() {
                // Cannot happen with exact arithmetic; keep the heaviest point.
                let (best, _) = lambda
                    .iter()
                    .enumerate()
                    .max_by(|a, b| a.1.total_cmp(b.1))
                    .unwrap();
                keep_c.push(corral[best]);
                keep_l.push(1.0);
            }
            let s: f64 = keep_l.iter().sum();
            keep_l.iter_mut().for_each(|v| *v /= s);
            corral = keep_c;
            lambda = keep_l;
        }
        let mut next = Vector::zeros(dim);
        for (&i, &l) in corral.iter().zip(&lambda) {
            next = next.add_scaled(l, &points[i]);
        }
        // A major cycle that does not decrease |x| is a rounding cycle.
        if next.norm_sq() >= xx - 1e-16 * max_sq {
            let x = if next.norm_sq() < xx { next } else { x };
            return Ok(finish(x, &corral, &lambda, iterations, gap.max(0.0)));
        }
        x = next;
    }
}
