//! Dense real vectors, orthonormal subspaces and the tolerance policy.
//!
//! Everything here is double precision. Rank decisions use a singular-value
//! cutoff relative to the largest singular value, orthogonal bases are built
//! with twice-iterated modified Gram-Schmidt.

use std::fmt;
use std::ops::{Add, Index, Mul, Neg, Sub};

use nalgebra::DMatrix;

use crate::error::{check_dim, Error, Result};

/// Slack values shared by every numerical decision in the crate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ToleranceProfile {
    /// Membership slack, scaled by `1 + |x|` at the call site.
    pub tol_mem: f64,
    pub tol_ortho: f64,
    /// Relative singular-value cutoff.
    pub tol_rank: f64,
    /// Round-trip and fixed-point distance.
    pub tol_fix: f64,
    pub max_iter: usize,
}

impl Default for ToleranceProfile {
    fn default() -> Self {
        Self {
            tol_mem: 1e-7,
            tol_ortho: 1e-9,
            tol_rank: 1e-8,
            tol_fix: 1e-8,
            max_iter: 10_000,
        }
    }
}

impl ToleranceProfile {
    pub fn validate(&self) -> Result<()> {
        let all = [self.tol_mem, self.tol_ortho, self.tol_rank, self.tol_fix];
        if all.iter().any(|t| !(t.is_finite() && *t > 0.0)) {
            return Err(Error::Invariant(
                "tolerances must be finite and strictly positive".into(),
            ));
        }
        if self.max_iter == 0 {
            return Err(Error::Invariant("max_iter must be at least 1".into()));
        }
        Ok(())
    }

    /// Membership slack for a point of norm `scale`.
    #[inline]
    pub fn mem_slack(&self, scale: f64) -> f64 {
        self.tol_mem * (1.0 + scale)
    }
}

/// A point or direction in R^d with finite coordinates.
#[derive(Clone, PartialEq)]
pub struct Vector {
    coords: Vec<f64>,
}

impl Vector {
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::EmptyInput("vector needs at least one coordinate"));
        }
        if coords.iter().any(|c| !c.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(Self { coords })
    }

    /// Internal constructor for results of arithmetic on valid vectors.
    pub(crate) fn from_raw(coords: Vec<f64>) -> Self {
        debug_assert!(!coords.is_empty());
        Self { coords }
    }

    pub fn zeros(dim: usize) -> Self {
        Self::from_raw(vec![0.0; dim])
    }

    /// The `i`-th standard basis vector.
    pub fn unit(dim: usize, i: usize) -> Self {
        let mut coords = vec![0.0; dim];
        coords[i] = 1.0;
        Self::from_raw(coords)
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    #[inline]
    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<f64> {
        self.coords
    }

    #[inline]
    pub fn dot(&self, other: &Vector) -> f64 {
        debug_assert_eq!(self.dim(), other.dim());
        self.coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a * b)
            .sum()
    }

    #[inline]
    pub fn norm_sq(&self) -> f64 {
        self.dot(self)
    }

    #[inline]
    pub fn norm(&self) -> f64 {
        self.norm_sq().sqrt()
    }

    pub fn distance(&self, other: &Vector) -> f64 {
        self.coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| (a - b) * (a - b))
            .sum::<f64>()
            .sqrt()
    }

    pub fn scaled(&self, factor: f64) -> Vector {
        Vector::from_raw(self.coords.iter().map(|c| c * factor).collect())
    }

    /// `self + factor * other`
    pub fn add_scaled(&self, factor: f64, other: &Vector) -> Vector {
        Vector::from_raw(
            self.coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a + factor * b)
                .collect(),
        )
    }

    /// Unit vector in the same direction, or `None` for (near) zero vectors.
    pub fn normalized(&self) -> Option<Vector> {
        let n = self.norm();
        if n > f64::MIN_POSITIVE && n.is_finite() {
            Some(self.scaled(1.0 / n))
        } else {
            None
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| *c == 0.0)
    }

    pub(crate) fn check_dim(&self, dim: usize) -> Result<()> {
        check_dim(dim, self.dim())
    }
}

impl fmt::Debug for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.coords).finish()
    }
}

impl fmt::Display for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            // Adding zero maps -0 to 0.
            write!(f, "{}", c + 0.0)?;
        }
        Ok(())
    }
}

impl Index<usize> for Vector {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        &self.coords[i]
    }
}

/// Literal conversion. Panics on non-finite or empty input.
impl<const N: usize> From<[f64; N]> for Vector {
    fn from(coords: [f64; N]) -> Self {
        Vector::new(coords.to_vec()).expect("vector literal must be finite and non-empty")
    }
}

/// Literal conversion. Panics on non-finite or empty input.
impl From<&[f64]> for Vector {
    fn from(coords: &[f64]) -> Self {
        Vector::new(coords.to_vec()).expect("vector literal must be finite and non-empty")
    }
}

impl Add for &Vector {
    type Output = Vector;
    fn add(self, rhs: &Vector) -> Vector {
        self.add_scaled(1.0, rhs)
    }
}

impl Sub for &Vector {
    type Output = Vector;
    fn sub(self, rhs: &Vector) -> Vector {
        self.add_scaled(-1.0, rhs)
    }
}

impl Mul<f64> for &Vector {
    type Output = Vector;
    fn mul(self, rhs: f64) -> Vector {
        self.scaled(rhs)
    }
}

impl Neg for &Vector {
    type Output = Vector;
    fn neg(self) -> Vector {
        self.scaled(-1.0)
    }
}

/// Linear subspace of R^d with an orthonormal basis.
#[derive(Debug, Clone, PartialEq)]
pub struct Subspace {
    ambient_dim: usize,
    basis: Vec<Vector>,
}

impl Subspace {
    /// The trivial subspace `{0}`.
    pub fn zero(ambient_dim: usize) -> Self {
        Self {
            ambient_dim,
            basis: Vec::new(),
        }
    }

    pub fn full(ambient_dim: usize) -> Self {
        Self {
            ambient_dim,
            basis: (0..ambient_dim).map(|i| Vector::unit(ambient_dim, i)).collect(),
        }
    }

    /// Wraps a basis that is already orthonormal, checking it against `tol_ortho`.
    pub fn from_orthonormal(
        ambient_dim: usize,
        basis: Vec<Vector>,
        tol: &ToleranceProfile,
    ) -> Result<Self> {
        for b in &basis {
            b.check_dim(ambient_dim)?;
        }
        for (i, a) in basis.iter().enumerate() {
            for (j, b) in basis.iter().enumerate().skip(i) {
                let expected = if i == j { 1.0 } else { 0.0 };
                if (a.dot(b) - expected).abs() > tol.tol_ortho {
                    return Err(Error::Invariant(format!(
                        "basis vectors {i} and {j} are not orthonormal"
                    )));
                }
            }
        }
        Ok(Self { ambient_dim, basis })
    }

    #[inline]
    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    #[inline]
    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vector] {
        &self.basis
    }

    /// Orthogonal projection of `x` onto the subspace.
    pub fn project(&self, x: &Vector) -> Result<Vector> {
        x.check_dim(self.ambient_dim)?;
        Ok(self.project_unchecked(x))
    }

    pub(crate) fn project_unchecked(&self, x: &Vector) -> Vector {
        let mut p = Vector::zeros(self.ambient_dim);
        for b in &self.basis {
            p = p.add_scaled(x.dot(b), b);
        }
        p
    }

    /// Component of `x` orthogonal to the subspace.
    pub fn reject(&self, x: &Vector) -> Result<Vector> {
        Ok(x - &self.project(x)?)
    }

    pub fn orthogonal_complement(&self) -> Subspace {
        let n = self.ambient_dim;
        let mut basis = self.basis.clone();
        let mut found = Vec::with_capacity(n - self.rank());
        // Greedily adopt the standard basis vector with the largest residual.
        while basis.len() < n {
            let mut best: Option<(f64, Vector)> = None;
            for i in 0..n {
                let mut r = Vector::unit(n, i);
                for _ in 0..2 {
                    for b in &basis {
                        r = r.add_scaled(-r.dot(b), b);
                    }
                }
                let rn = r.norm();
                if best.as_ref().is_none_or(|(bn, _)| rn > *bn) {
                    best = Some((rn, r));
                }
            }
            let (rn, r) = best.expect("ambient dimension is positive");
            let u = r.scaled(1.0 / rn);
            basis.push(u.clone());
            found.push(u);
        }
        Subspace {
            ambient_dim: n,
            basis: found,
        }
    }

    /// Largest distance from a unit basis vector of either subspace to the
    /// other subspace. Zero iff the spans coincide.
    pub fn span_distance(&self, other: &Subspace) -> Result<f64> {
        check_dim(self.ambient_dim, other.ambient_dim)?;
        if self.rank() != other.rank() {
            return Ok(1.0);
        }
        let one_way = |a: &Subspace, b: &Subspace| {
            a.basis
                .iter()
                .map(|v| (v - &b.project_unchecked(v)).norm())
                .fold(0.0_f64, f64::max)
        };
        Ok(one_way(self, other).max(one_way(other, self)))
    }

    /// True when `x` lies in the subspace up to `tol_mem * (1 + |x|)`.
    pub fn contains(&self, x: &Vector, tol: &ToleranceProfile) -> Result<bool> {
        let r = self.reject(x)?;
        Ok(r.norm() <= tol.mem_slack(x.norm()))
    }
}

/// Orthonormal basis of the span of `vectors`.
///
/// Vectors whose residual after deflation falls below `tol_rank` times their
/// own norm (or below `tol_rank` absolutely) are dropped.
pub fn orthonormalize(
    ambient_dim: usize,
    vectors: &[Vector],
    tol: &ToleranceProfile,
) -> Result<Subspace> {
    let mut basis: Vec<Vector> = Vec::new();
    for v in vectors {
        v.check_dim(ambient_dim)?;
        if basis.len() == ambient_dim {
            continue;
        }
        let mut r = v.clone();
        for _ in 0..2 {
            for b in &basis {
                r = r.add_scaled(-r.dot(b), b);
            }
        }
        let rn = r.norm();
        if rn > tol.tol_rank * v.norm().max(1.0) {
            basis.push(r.scaled(1.0 / rn));
        }
    }
    Ok(Subspace { ambient_dim, basis })
}

/// Numerical rank of the columns, with singular values below
/// `tol_rank * sigma_max` treated as zero.
pub fn numerical_rank(ambient_dim: usize, columns: &[Vector], tol: &ToleranceProfile) -> usize {
    if columns.is_empty() {
        return 0;
    }
    let m = DMatrix::from_fn(ambient_dim, columns.len(), |i, j| columns[j][i]);
    let sv = m.singular_values();
    let smax = sv.iter().cloned().fold(0.0_f64, f64::max);
    let scale = columns.iter().map(Vector::norm).fold(1.0_f64, f64::max);
    if smax <= tol.tol_rank * scale {
        return 0;
    }
    sv.iter().filter(|s| **s > tol.tol_rank * smax).count()
}

/// Dimension of the affine hull of `points`.
pub fn affine_hull_dim(points: &[Vector], tol: &ToleranceProfile) -> Result<usize> {
    let first = points
        .first()
        .ok_or(Error::EmptyInput("affine hull of no points"))?;
    let d = first.dim();
    let mut diffs = Vec::with_capacity(points.len().saturating_sub(1));
    for p in &points[1..] {
        p.check_dim(d)?;
        diffs.push(p - first);
    }
    Ok(numerical_rank(d, &diffs, tol))
}

/// Arithmetic mean of a non-empty point list.
pub fn centroid(points: &[Vector]) -> Result<Vector> {
    let first = points.first().ok_or(Error::EmptyInput("centroid of no points"))?;
    let mut acc = Vector::zeros(first.dim());
    for p in points {
        p.check_dim(first.dim())?;
        acc = &acc + p;
    }
    Ok(acc.scaled(1.0 / points.len() as f64))
}
