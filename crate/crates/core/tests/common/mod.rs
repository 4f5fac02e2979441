//! Independent oracles and generators shared by the integration tests.
//!
//! Nothing here calls the library's solvers: feasibility uses a dense
//! phase-1 simplex with Bland's rule, projections enumerate faces, and the
//! star-polygon hull is computed from chord geometry.

#![allow(dead_code)]

use conecert::{ToleranceProfile, Vector};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

pub fn tol() -> ToleranceProfile {
    ToleranceProfile::default()
}

pub fn gaussian(dim: usize, rng: &mut ChaCha8Rng) -> Vector {
    Vector::new((0..dim).map(|_| rng.sample(StandardNormal)).collect()).unwrap()
}

pub fn unit(dim: usize, rng: &mut ChaCha8Rng) -> Vector {
    loop {
        if let Some(u) = gaussian(dim, rng).normalized() {
            return u;
        }
    }
}

/// Random generator list; with `pairs`, some generators also appear negated.
pub fn random_generators(dim: usize, count: usize, pairs: bool, rng: &mut ChaCha8Rng) -> Vec<Vector> {
    let mut gens: Vec<Vector> = Vec::new();
    while gens.len() < count {
        let g = gaussian(dim, rng);
        if pairs && gens.len() + 1 < count && rng.random_bool(0.4) {
            gens.push(-&g);
        }
        gens.push(g);
    }
    gens
}

/// Phase 1 of the simplex method: is `{ l >= 0 : A l = b }` nonempty?
/// `a` is row-major with `m` rows and `n` columns.
pub fn lp_feasible(a: &[Vec<f64>], b: &[f64], eps: f64) -> bool {
    let m = a.len();
    let n = if m > 0 { a[0].len() } else { 0 };
    // Tableau columns: n structural, m artificial, then the right-hand side.
    let width = n + m + 1;
    let mut t = vec![vec![0.0; width]; m];
    for i in 0..m {
        let sign = if b[i] < 0.0 { -1.0 } else { 1.0 };
        for j in 0..n {
            t[i][j] = sign * a[i][j];
        }
        t[i][n + i] = 1.0;
        t[i][width - 1] = sign * b[i];
    }
    let mut basis: Vec<usize> = (n..n + m).collect();
    let scale = 1.0 + b.iter().map(|v| v.abs()).fold(0.0, f64::max);
    let piv_eps = 1e-12;
    for _ in 0..10_000 {
        // Reduced costs of the phase-1 objective (sum of artificials).
        let mut entering = None;
        for j in 0..n + m {
            if basis.contains(&j) {
                continue;
            }
            let cost = if j >= n { 1.0 } else { 0.0 };
            let mut reduced = cost;
            for i in 0..m {
                if basis[i] >= n {
                    reduced -= t[i][j];
                }
            }
            if reduced < -1e-12 {
                entering = Some(j);
                break;
            }
        }
        let Some(e) = entering else { break };
        let mut leave = None;
        let mut best = f64::INFINITY;
        for i in 0..m {
            if t[i][e] > piv_eps {
                let ratio = t[i][width - 1] / t[i][e];
                if ratio < best - 1e-15 || (ratio <= best + 1e-15 && leave.map_or(true, |l: usize| basis[i] < basis[l])) {
                    best = ratio;
                    leave = Some(i);
                }
            }
        }
        let Some(r) = leave else { break };
        let p = t[r][e];
        for v in t[r].iter_mut() {
            *v /= p;
        }
        for i in 0..m {
            if i != r {
                let f = t[i][e];
                if f != 0.0 {
                    for j in 0..width {
                        t[i][j] -= f * t[r][j];
                    }
                }
            }
        }
        basis[r] = e;
    }
    let infeas: f64 = (0..m)
        .filter(|&i| basis[i] >= n)
        .map(|i| t[i][width - 1])
        .sum();
    infeas <= eps * scale
}

/// `x` in the convex hull of `points`.
pub fn hull_contains_lp(points: &[Vector], x: &Vector, eps: f64) -> bool {
    if points.is_empty() {
        return false;
    }
    let d = x.dim();
    let mut a: Vec<Vec<f64>> = (0..d).map(|i| points.iter().map(|p| p[i]).collect()).collect();
    a.push(vec![1.0; points.len()]);
    let mut b = x.coords().to_vec();
    b.push(1.0);
    lp_feasible(&a, &b, eps)
}

/// `x` in the cone generated by `gens`.
pub fn cone_contains_lp(gens: &[Vector], x: &Vector, eps: f64) -> bool {
    if gens.is_empty() {
        return x.norm() <= eps;
    }
    let d = x.dim();
    let a: Vec<Vec<f64>> = (0..d).map(|i| gens.iter().map(|g| g[i]).collect()).collect();
    lp_feasible(&a, x.coords(), eps)
}

/// Leave-one-out extreme-point oracle.
pub fn extreme_by_lp(points: &[Vector], k: usize) -> bool {
    let others: Vec<Vector> = points
        .iter()
        .enumerate()
        .filter(|(i, _)| *i != k)
        .map(|(_, p)| p.clone())
        .collect();
    !hull_contains_lp(&others, &points[k], 1e-10)
}

/// Solves the square system `m x = r` by Gaussian elimination with partial
/// pivoting; `None` when singular.
pub fn solve(mut m: Vec<Vec<f64>>, mut r: Vec<f64>) -> Option<Vec<f64>> {
    let n = r.len();
    for c in 0..n {
        let p = (c..n).max_by(|&a, &b| m[a][c].abs().total_cmp(&m[b][c].abs()))?;
        if m[p][c].abs() < 1e-13 {
            return None;
        }
        m.swap(c, p);
        r.swap(c, p);
        for i in c + 1..n {
            let f = m[i][c] / m[c][c];
            for j in c..n {
                m[i][j] -= f * m[c][j];
            }
            r[i] -= f * r[c];
        }
    }
    let mut x = vec![0.0; n];
    for i in (0..n).rev() {
        let s: f64 = (i + 1..n).map(|j| m[i][j] * x[j]).sum();
        x[i] = (r[i] - s) / m[i][i];
    }
    Some(x)
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Distance from `y` to the hull of `points`, by enumerating every simplex
/// of at most `d` vertices and keeping the affine projections with
/// nonnegative barycentric coordinates (exact for `y` outside the hull).
pub fn brute_force_distance(points: &[Vector], y: &Vector) -> f64 {
    let d = y.dim();
    let mut best = f64::INFINITY;
    for k in 1..=d.min(points.len()) {
        for s in subsets(points.len(), k) {
            let base = &points[s[0]];
            let dirs: Vec<Vector> = s[1..].iter().map(|&i| &points[i] - base).collect();
            let rhs: Vec<f64> = dirs.iter().map(|e| e.dot(&(y - base))).collect();
            let gram: Vec<Vec<f64>> = dirs.iter().map(|a| dirs.iter().map(|b| a.dot(b)).collect()).collect();
            let Some(c) = solve(gram, rhs) else { continue };
            if c.iter().any(|v| *v < -1e-12) || c.iter().sum::<f64>() > 1.0 + 1e-12 {
                continue;
            }
            let mut p = base.clone();
            for (ci, e) in c.iter().zip(&dirs) {
                p = p.add_scaled(*ci, e);
            }
            best = best.min(p.distance(y));
        }
    }
    best
}

/// Upper bound on the hull distance from a barycentric grid of step
/// `1/steps` over every pair and triple of points.
pub fn grid_distance_bound(points: &[Vector], y: &Vector, steps: usize) -> f64 {
    let mut best = points.iter().map(|p| p.distance(y)).fold(f64::INFINITY, f64::min);
    let h = 1.0 / steps as f64;
    for s in subsets(points.len(), 3.min(points.len())) {
        for i in 0..=steps {
            for j in 0..=steps - i {
                let (a, b) = (i as f64 * h, j as f64 * h);
                let c = 1.0 - a - b;
                let mut p = points[s[0]].scaled(a);
                if s.len() > 1 {
                    p = p.add_scaled(b, &points[s[1]]);
                }
                if s.len() > 2 {
                    p = p.add_scaled(c, &points[s[2]]);
                }
                best = best.min(p.distance(y));
            }
        }
    }
    best
}

/// Radius of the hull boundary of a star polygon along angle `theta`: the
/// spikes (radius `outer`, at angles `2 pi j / k`) are the hull vertices,
/// and between two spikes the boundary is their chord.
pub fn star_hull_radius(k: usize, outer: f64, theta: f64) -> f64 {
    let step = std::f64::consts::TAU / k as f64;
    let rel = theta.rem_euclid(step);
    let mid = step / 2.0;
    outer * (std::f64::consts::PI / k as f64).cos() / (rel - mid).cos()
}
