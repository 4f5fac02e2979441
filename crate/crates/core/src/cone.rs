//! Finitely generated cones, their polars and the lineality decomposition.
//!
//! A [`PolyhedralCone`] is stored by generators (V-representation); its polar
//! is a [`HalfspaceCone`] whose normals are exactly those generators. There is
//! no general V/H conversion: cross-representation statements are checked by
//! membership agreement on probe sets.

use itertools::Itertools;
use nalgebra::DMatrix;

use crate::error::{check_dim, Error, Result};
use crate::feasibility::{min_norm_point, nnls, NnlsSolution};
use crate::linalg::{orthonormalize, Subspace, ToleranceProfile, Vector};
use crate::probes::signed_axes;

/// `{ sum_i a_i g_i : a_i >= 0 }`
#[derive(Debug, Clone, PartialEq)]
pub struct PolyhedralCone {
    ambient_dim: usize,
    generators: Vec<Vector>,
}

impl PolyhedralCone {
    /// Builds the cone, dropping generators whose norm is below `tol_rank`.
    pub fn new(ambient_dim: usize, generators: Vec<Vector>, tol: &ToleranceProfile) -> Result<Self> {
        if ambient_dim == 0 {
            return Err(Error::Invariant("ambient dimension must be positive".into()));
        }
        let mut kept = Vec::with_capacity(generators.len());
        for g in generators {
            g.check_dim(ambient_dim)?;
            if g.norm() > tol.tol_rank {
                kept.push(g);
            }
        }
        Ok(Self {
            ambient_dim,
            generators: kept,
        })
    }

    #[inline]
    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn generators(&self) -> &[Vector] {
        &self.generators
    }

    /// `-C`
    pub fn negated(&self) -> Self {
        Self {
            ambient_dim: self.ambient_dim,
            generators: self.generators.iter().map(|g| -g).collect(),
        }
    }

    /// `C + D`, generated by the union of both generator lists.
    pub fn sum(&self, other: &PolyhedralCone) -> Result<Self> {
        check_dim(self.ambient_dim, other.ambient_dim)?;
        let mut generators = self.generators.clone();
        generators.extend(other.generators.iter().cloned());
        Ok(Self {
            ambient_dim: self.ambient_dim,
            generators,
        })
    }

    /// Nonnegative least-squares fit of `x` by the generators.
    pub fn fit(&self, x: &Vector, tol: &ToleranceProfile) -> Result<NnlsSolution> {
        x.check_dim(self.ambient_dim)?;
        nnls(&self.generators, x, tol.max_iter)
    }

    /// Conic membership: some `a >= 0` reaches `x` within `tol_mem * (1 + |x|)`.
    pub fn contains(&self, x: &Vector, tol: &ToleranceProfile) -> Result<bool> {
        let fit = self.fit(x, tol)?;
        Ok(fit.residual <= tol.mem_slack(x.norm()))
    }

    fn negatable(&self, tol: &ToleranceProfile) -> impl Iterator<Item = Result<(usize, bool)>> + '_ {
        let tol = *tol;
        self.generators
            .iter()
            .enumerate()
            .map(move |(i, g)| self.contains(&-g, &tol).map(|m| (i, m)))
    }

    /// Sound shortcut for pointedness: if the normalized generators keep a
    /// margin `m` from the origin, `<f, g> <= -m |g|` for `f = -q/|q|`, so no
    /// `-g` can be fitted within the membership slack once
    /// `m > tol_mem (1 + 1/|g|)`.
    fn clearly_pointed(&self, tol: &ToleranceProfile) -> Result<bool> {
        if self.generators.is_empty() {
            return Ok(true);
        }
        let units: Vec<Vector> = self.generators.iter().filter_map(Vector::normalized).collect();
        let min_norm = self.generators.iter().map(Vector::norm).fold(f64::INFINITY, f64::min);
        let margin = 2.0 * tol.tol_mem * (1.0 + 1.0 / min_norm);
        let mnp = min_norm_point(&units, tol.max_iter, 0.0)?;
        Ok(mnp.norm() > margin)
    }

    /// Every `±e_i` is a member.
    fn is_whole_space(&self, tol: &ToleranceProfile) -> Result<bool> {
        for e in signed_axes(self.ambient_dim) {
            if !self.contains(&e, tol)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `C ∩ (-C)`, spanned by the generators whose negatives lie in `C`.
    pub fn lineality_space(&self, tol: &ToleranceProfile) -> Result<Subspace> {
        if self.clearly_pointed(tol)? {
            return Ok(Subspace::zero(self.ambient_dim));
        }
        if self.is_whole_space(tol)? {
            return Ok(Subspace::full(self.ambient_dim));
        }
        let mut lineal = Vec::new();
        for r in self.negatable(tol) {
            let (i, neg) = r?;
            if neg {
                lineal.push(self.generators[i].clone());
            }
        }
        orthonormalize(self.ambient_dim, &lineal, tol)
    }

    /// No generator can be negated inside the cone.
    pub fn is_pointed(&self, tol: &ToleranceProfile) -> Result<bool> {
        if self.clearly_pointed(tol)? {
            return Ok(true);
        }
        for r in self.negatable(tol) {
            if r?.1 {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// A unit normal `f` with `<f, g_i> <= tol_mem` for every generator, or
    /// `None` when the generators positively span the whole space.
    ///
    /// The normal lies in the orthogonal complement of the lineality space and
    /// is strictly negative on the pointed part: it is the negated
    /// minimum-norm point of the normalized pointed generators.
    pub fn proper_certificate(&self, tol: &ToleranceProfile) -> Result<Option<Vector>> {
        let structured = self.decompose(tol)?;
        let lin = structured.lineality();
        if lin.rank() == self.ambient_dim {
            return Ok(None);
        }
        let normal = if structured.pointed_generators().is_empty() {
            lin.orthogonal_complement().basis()[0].clone()
        } else {
            let units: Vec<Vector> = structured
                .pointed_generators()
                .iter()
                .filter_map(Vector::normalized)
                .collect();
            let mnp = min_norm_point(&units, tol.max_iter, 0.0)?;
            let q = lin.reject(&mnp.point)?;
            match q.normalized() {
                Some(u) if mnp.norm() > tol.tol_rank => -&u,
                _ => {
                    return Err(Error::Indeterminate(
                        "pointed part of the cone is numerically not pointed".into(),
                    ))
                }
            }
        };
        let slack = self.max_slack(&normal);
        if slack > tol.tol_mem {
            return Err(Error::Indeterminate(format!(
                "half-space certificate has slack {slack:e}"
            )));
        }
        Ok(Some(normal))
    }

    /// `max_i <f, g_i>`, or `-inf` without generators.
    pub fn max_slack(&self, f: &Vector) -> f64 {
        self.generators
            .iter()
            .map(|g| g.dot(f))
            .fold(f64::NEG_INFINITY, f64::max)
    }

    /// `C^p` in H-representation: the generators become the normals.
    pub fn polar(&self) -> HalfspaceCone {
        HalfspaceCone {
            ambient_dim: self.ambient_dim,
            normals: self.generators.clone(),
        }
    }

    /// `C = lin(C) + P_{lin(C)^⊥} C`.
    pub fn decompose(&self, tol: &ToleranceProfile) -> Result<StructuredCone> {
        let lineality = self.lineality_space(tol)?;
        let mut pointed = Vec::new();
        for g in &self.generators {
            let p = lineality.reject(g)?;
            if p.norm() > tol.tol_rank * g.norm().max(1.0) {
                pointed.push(p);
            }
        }
        Ok(StructuredCone {
            lineality,
            pointed_generators: pointed,
        })
    }
}

/// `{ x : <n_i, x> <= 0 for all i }`
#[derive(Debug, Clone, PartialEq)]
pub struct HalfspaceCone {
    ambient_dim: usize,
    normals: Vec<Vector>,
}

impl HalfspaceCone {
    pub fn new(ambient_dim: usize, normals: Vec<Vector>) -> Result<Self> {
        for n in &normals {
            n.check_dim(ambient_dim)?;
        }
        Ok(Self {
            ambient_dim,
            normals,
        })
    }

    #[inline]
    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn normals(&self) -> &[Vector] {
        &self.normals
    }

    /// Every inequality holds within `tol_mem * (1 + |x|)`.
    pub fn contains(&self, x: &Vector, tol: &ToleranceProfile) -> Result<bool> {
        x.check_dim(self.ambient_dim)?;
        let slack = tol.mem_slack(x.norm());
        Ok(self.normals.iter().all(|n| n.dot(x) <= slack))
    }

    /// Unit generators of this cone (lineality directions in both signs plus
    /// the extreme rays of the pointed part), enumerated combinatorially.
    ///
    /// Returns `None` when more than `max_subsets` candidate subsets would
    /// have to be inspected.
    pub fn enumerate_generators(
        &self,
        tol: &ToleranceProfile,
        max_subsets: usize,
    ) -> Result<Option<Vec<Vector>>> {
        let d = self.ambient_dim;
        let normals: Vec<Vector> = self
            .normals
            .iter()
            .filter(|n| n.norm() > tol.tol_rank)
            .cloned()
            .collect();
        let span = orthonormalize(d, &normals, tol)?;
        let lineality = span.orthogonal_complement();
        let r = span.rank();
        let mut out: Vec<Vector> = Vec::new();
        for b in lineality.basis() {
            out.push(b.clone());
            out.push(-b);
        }
        if r == 0 {
            return Ok(Some(out));
        }
        let subsets = binomial(normals.len(), r - 1);
        if subsets > max_subsets {
            return Ok(None);
        }
        let units: Vec<Vector> = normals.iter().filter_map(Vector::normalized).collect();
        let feasible = |f: &Vector| {
            units
                .iter()
                .all(|n| n.dot(f) <= tol.tol_mem)
        };
        for subset in (0..units.len()).combinations(r - 1) {
            // Rows: the tight normals plus the lineality basis (f must lie in span).
            let rows: Vec<&Vector> = subset
                .iter()
                .map(|&i| &units[i])
                .chain(lineality.basis().iter())
                .collect();
            let Some(f) = null_direction(d, &rows, tol) else {
                continue;
            };
            for cand in [f.clone(), -&f] {
                if feasible(&cand) && !out.iter().any(|o| o.distance(&cand) < 1e-9) {
                    out.push(cand);
                }
            }
        }
        Ok(Some(out))
    }
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > usize::MAX as u128 {
            return usize::MAX;
        }
    }
    acc as usize
}

/// Unit vector spanning the null space of `rows` when it is one-dimensional.
fn null_direction(d: usize, rows: &[&Vector], tol: &ToleranceProfile) -> Option<Vector> {
    if rows.is_empty() {
        return (d == 1).then(|| Vector::unit(1, 0));
    }
    // Pad to a square matrix so the SVD exposes the full right singular basis.
    let n = rows.len().max(d);
    let m = DMatrix::from_fn(n, d, |i, j| if i < rows.len() { rows[i][j] } else { 0.0 });
    let svd = m.svd(false, true);
    let vt = svd.v_t?;
    let sv = &svd.singular_values;
    let mut order: Vec<usize> = (0..sv.len()).collect();
    order.sort_by(|&a, &b| sv[b].total_cmp(&sv[a]));
    let smax = sv[order[0]];
    let cutoff = tol.tol_rank * smax.max(1.0);
    let rank = order.iter().filter(|&&i| sv[i] > cutoff).count();
    if rank != d - 1 {
        return None;
    }
    let last = order[d - 1];
    let f = Vector::from_raw(vt.row(last).iter().cloned().collect());
    f.normalized()
}

/// `L + K` with `L` a subspace and `K` a pointed cone inside `L^⊥`.
#[derive(Debug, Clone, PartialEq)]
pub struct StructuredCone {
    lineality: Subspace,
    pointed_generators: Vec<Vector>,
}

impl StructuredCone {
    /// Validates orthogonality of the pointed generators to `lineality` and
    /// pointedness of the cone they generate.
    pub fn new(
        lineality: Subspace,
        pointed_generators: Vec<Vector>,
        tol: &ToleranceProfile,
    ) -> Result<Self> {
        let d = lineality.ambient_dim();
        for (i, g) in pointed_generators.iter().enumerate() {
            g.check_dim(d)?;
            let leak = lineality.project(g)?.norm();
            if leak > tol.tol_ortho * g.norm().max(1.0) {
                return Err(Error::Precondition(format!(
                    "pointed generator {i} is not orthogonal to the lineality space (component {leak:e})"
                )));
            }
        }
        let cone = PolyhedralCone::new(d, pointed_generators, tol)?;
        if !cone.is_pointed(tol)? {
            return Err(Error::Precondition("pointed part is not a pointed cone".into()));
        }
        Ok(Self {
            lineality,
            pointed_generators: cone.generators,
        })
    }

    pub fn ambient_dim(&self) -> usize {
        self.lineality.ambient_dim()
    }

    pub fn lineality(&self) -> &Subspace {
        &self.lineality
    }

    pub fn pointed_generators(&self) -> &[Vector] {
        &self.pointed_generators
    }

    pub fn pointed_cone(&self) -> PolyhedralCone {
        PolyhedralCone {
            ambient_dim: self.ambient_dim(),
            generators: self.pointed_generators.clone(),
        }
    }

    /// `{±b : b in basis(L)} ∪ pointed generators` as a plain cone.
    pub fn flatten(&self) -> PolyhedralCone {
        let mut generators = Vec::new();
        for b in self.lineality.basis() {
            generators.push(b.clone());
            generators.push(-b);
        }
        generators.extend(self.pointed_generators.iter().cloned());
        PolyhedralCone {
            ambient_dim: self.ambient_dim(),
            generators,
        }
    }

    /// Componentwise criterion: the `L` component is free, the `L^⊥`
    /// component must lie in the pointed cone.
    pub fn contains(&self, x: &Vector, tol: &ToleranceProfile) -> Result<bool> {
        let orth = self.lineality.reject(x)?;
        let fit = nnls(&self.pointed_generators, &orth, tol.max_iter)?;
        Ok(fit.residual <= tol.mem_slack(x.norm()))
    }

    /// Polar membership computed as the polar of the pointed part taken
    /// inside `L^⊥`: `f` must be orthogonal to `L` and nonpositive on every
    /// pointed generator.
    pub fn polar_contains(&self, f: &Vector, tol: &ToleranceProfile) -> Result<bool> {
        let slack = tol.mem_slack(f.norm());
        if self.lineality.project(f)?.norm() > slack {
            return Ok(false);
        }
        Ok(self.pointed_generators.iter().all(|g| g.dot(f) <= slack))
    }
}

/// Checks that `F` is recovered as the lineality space of `F + cone(V)` and
/// that decomposing that cone gives back `cone(V)`.
///
/// Preconditions (reported as [`Error::Precondition`]): each `v` orthogonal
/// to `F` and `cone(V)` pointed.
pub fn reconstruct_lineality_check(
    f_basis: &Subspace,
    v_gens: &[Vector],
    tol: &ToleranceProfile,
) -> Result<bool> {
    let given = StructuredCone::new(f_basis.clone(), v_gens.to_vec(), tol)?;
    let flat = given.flatten();
    let lin = flat.lineality_space(tol)?;
    if lin.span_distance(f_basis)? >= tol.tol_fix {
        return Ok(false);
    }
    let rebuilt = flat.decompose(tol)?;
    let original = given.pointed_cone();
    let regenerated = rebuilt.pointed_cone();
    for p in structured_probes(f_basis, v_gens) {
        if original.contains(&p, tol)? != regenerated.contains(&p, tol)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Deterministic probes inside `F^⊥`: unit axes, generators, their sums and
/// differences, all projected off `F`.
fn structured_probes(f: &Subspace, v_gens: &[Vector]) -> Vec<Vector> {
    let d = f.ambient_dim();
    let mut raw: Vec<Vector> = Vec::new();
    for i in 0..d {
        raw.push(Vector::unit(d, i));
        raw.push(-&Vector::unit(d, i));
    }
    for (i, a) in v_gens.iter().enumerate() {
        raw.push(a.clone());
        raw.push(-a);
        for b in &v_gens[i + 1..] {
            raw.push(a + b);
            raw.push(a - b);
        }
    }
    raw.iter()
        .filter_map(|p| f.reject(p).ok().and_then(|q| q.normalized()))
        .collect()
}

/// `Δ = Γ + Ψ` for a (closed) subspace `Γ` and a pointed cone `Ψ ⊂ Γ^⊥`.
///
/// The polar of the result is available through
/// [`StructuredCone::polar_contains`].
pub fn delta_construction(
    gamma: &Subspace,
    psi_gens: &[Vector],
    tol: &ToleranceProfile,
) -> Result<StructuredCone> {
    StructuredCone::new(gamma.clone(), psi_gens.to_vec(), tol)
}

/// Compares membership in `C` with membership in `(C^p)^p` on every probe.
///
/// The outer polar is evaluated against explicitly enumerated generators of
/// `C^p`; when enumeration is too large the probes themselves (and the
/// negated generators) that fall inside `C^p` are used as sampled polar
/// directions instead.
pub fn double_polar_closure_check(
    c: &PolyhedralCone,
    probes: &[Vector],
    tol: &ToleranceProfile,
) -> Result<bool> {
    const MAX_SUBSETS: usize = 200_000;
    let polar = c.polar();
    let polar_gens = match polar.enumerate_generators(tol, MAX_SUBSETS)? {
        Some(g) => g,
        None => {
            let mut sampled = Vec::new();
            for p in probes.iter().chain(c.generators()) {
                for cand in [p.clone(), -p] {
                    if let Some(u) = cand.normalized() {
                        if polar.contains(&u, tol)? {
                            sampled.push(u);
                        }
                    }
                }
            }
            sampled
        }
    };
    for x in probes {
        x.check_dim(c.ambient_dim())?;
        let slack = tol.mem_slack(x.norm());
        let in_double_polar = polar_gens.iter().all(|f| f.dot(x) <= slack);
        if in_double_polar != c.contains(x, tol)? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tol() -> ToleranceProfile {
        ToleranceProfile::default()
    }

    fn cone(gens: &[&[f64]]) -> PolyhedralCone {
        let d = gens[0].len();
        PolyhedralCone::new(d, gens.iter().map(|g| Vector::from(*g)).collect(), &tol()).unwrap()
    }

    #[test]
    fn membership_in_quadrant() {
        let c = cone(&[&[1.0, 0.0], &[0.0, 1.0]]);
        assert!(c.contains(&[2.0, 3.0].into(), &tol()).unwrap());
        assert!(!c.contains(&[-1.0, 0.0].into(), &tol()).unwrap());
        assert!(c.contains(&Vector::zeros(2), &tol()).unwrap());
    }

    #[test]
    fn zero_generators_are_dropped() {
        let c = cone(&[&[0.0, 0.0], &[1.0, 0.0]]);
        assert_eq!(c.generators().len(), 1);
    }

    #[test]
    fn dimension_mismatch_is_an_error() {
        let c = cone(&[&[1.0, 0.0]]);
        assert!(matches!(
            c.contains(&[1.0, 0.0, 0.0].into(), &tol()),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn lineality_of_half_plane() {
        let c = cone(&[&[1.0, 0.0], &[-1.0, 0.0], &[0.0, 1.0]]);
        let l = c.lineality_space(&tol()).unwrap();
        assert_eq!(l.rank(), 1);
        assert!((l.basis()[0][0].abs() - 1.0).abs() < 1e-14);
        assert_eq!(cone(&[&[1.0, 0.0], &[0.0, 1.0]]).lineality_space(&tol()).unwrap().rank(), 0);
    }

    #[test]
    fn lineality_of_diagonal_cone() {
        let c = cone(&[&[1.0, 1.0], &[-1.0, -1.0], &[1.0, 0.0]]);
        let l = c.lineality_space(&tol()).unwrap();
        let diag = orthonormalize(2, &[[1.0, 1.0].into()], &tol()).unwrap();
        assert!(l.span_distance(&diag).unwrap() < 1e-12);
    }

    #[test]
    fn pointedness() {
        let orthant = cone(&[&[1.0, 0.0, 0.0], &[0.0, 1.0, 0.0], &[0.0, 0.0, 1.0]]);
        assert!(orthant.is_pointed(&tol()).unwrap());
        let plane = cone(&[&[1.0, 0.0], &[-1.0, 0.0], &[0.0, 1.0], &[0.0, -1.0]]);
        assert!(!plane.is_pointed(&tol()).unwrap());
    }

    #[test]
    fn proper_certificates() {
        let t = tol();
        let orthant = cone(&[&[1.0, 0.0], &[0.0, 1.0]]);
        let f = orthant.proper_certificate(&t).unwrap().unwrap();
        assert!((f.norm() - 1.0).abs() < 1e-12);
        assert!(orthant.max_slack(&f) < 0.0);
        let plane = cone(&[&[1.0, 0.0], &[-1.0, 0.0], &[0.0, 1.0], &[0.0, -1.0]]);
        assert!(plane.proper_certificate(&t).unwrap().is_none());
        let half = cone(&[&[1.0, 0.0], &[-1.0, 0.0], &[0.0, 1.0]]);
        let f = half.proper_certificate(&t).unwrap().unwrap();
        assert!(f.distance(&[0.0, -1.0].into()) < 1e-12);
        // A lone line: any normal orthogonal to it.
        let line = cone(&[&[1.0, 1.0], &[-1.0, -1.0]]);
        let f = line.proper_certificate(&t).unwrap().unwrap();
        assert!(f.dot(&[1.0, 1.0].into()).abs() < 1e-12);
    }

    #[test]
    fn polar_of_orthant() {
        let t = tol();
        let p = cone(&[&[1.0, 0.0], &[0.0, 1.0]]).polar();
        assert!(p.contains(&[-1.0, -2.0].into(), &t).unwrap());
        assert!(!p.contains(&[1.0, 0.0].into(), &t).unwrap());
        assert!(!p.contains(&[-1.0, 0.5].into(), &t).unwrap());
    }

    #[test]
    fn empty_halfspace_cone_is_everything() {
        let h = HalfspaceCone::new(3, vec![]).unwrap();
        assert!(h.contains(&[5.0, -2.0, 1.0].into(), &tol()).unwrap());
        let h = HalfspaceCone::new(2, vec![[1.0, 0.0].into()]).unwrap();
        assert!(!h.contains(&[1.0, 0.0].into(), &tol()).unwrap());
    }

    #[test]
    fn polar_of_subspace_is_complement() {
        let t = tol();
        let c = cone(&[&[1.0, 0.0, 0.0], &[-1.0, 0.0, 0.0]]);
        let p = c.polar();
        assert!(p.contains(&[0.0, 3.0, -2.0].into(), &t).unwrap());
        assert!(!p.contains(&[0.1, 3.0, -2.0].into(), &t).unwrap());
        assert!(!p.contains(&[-0.1, 3.0, -2.0].into(), &t).unwrap());
    }

    #[test]
    fn decompose_half_plane() {
        let c = cone(&[&[1.0, 0.0], &[-1.0, 0.0], &[0.0, 1.0]]);
        let s = c.decompose(&tol()).unwrap();
        assert_eq!(s.lineality().rank(), 1);
        assert_eq!(s.pointed_generators().len(), 1);
        assert!(s.pointed_generators()[0].distance(&[0.0, 1.0].into()) < 1e-14);
    }

    #[test]
    fn decompose_diagonal_cone() {
        let c = cone(&[&[1.0, 1.0], &[-1.0, -1.0], &[1.0, 0.0]]);
        let s = c.decompose(&tol()).unwrap();
        assert_eq!(s.pointed_generators().len(), 1);
        assert!(s.pointed_generators()[0].distance(&[0.5, -0.5].into()) < 1e-14);
    }

    #[test]
    fn decompose_pointed_is_fixed_point() {
        let c = cone(&[&[1.0, 0.0, 0.0], &[1.0, 1.0, 0.0], &[0.0, 1.0, 1.0]]);
        let s = c.decompose(&tol()).unwrap();
        assert_eq!(s.lineality().rank(), 0);
        assert_eq!(s.pointed_generators(), c.generators());
    }

    #[test]
    fn structured_membership() {
        let t = tol();
        let x = orthonormalize(2, &[[1.0, 0.0].into()], &t).unwrap();
        let s = StructuredCone::new(x, vec![[0.0, 1.0].into()], &t).unwrap();
        assert!(s.contains(&[-5.0, 2.0].into(), &t).unwrap());
        assert!(!s.contains(&[0.0, -1.0].into(), &t).unwrap());
    }

    #[test]
    fn structured_cone_rejects_bad_inputs() {
        let t = tol();
        let x = orthonormalize(2, &[[1.0, 0.0].into()], &t).unwrap();
        let err = StructuredCone::new(x.clone(), vec![[1.0, 1.0].into()], &t);
        assert!(matches!(err, Err(Error::Precondition(_))));
        let err = StructuredCone::new(Subspace::zero(2), vec![[1.0, 0.0].into(), [-1.0, 0.0].into()], &t);
        assert!(matches!(err, Err(Error::Precondition(_))));
    }

    #[test]
    fn reconstruct_simple_cases() {
        let t = tol();
        let f = orthonormalize(3, &[[1.0, 0.0, 0.0].into()], &t).unwrap();
        assert!(reconstruct_lineality_check(&f, &[[0.0, 1.0, 0.0].into()], &t).unwrap());
        let v: Vec<Vector> = vec![[1.0, 0.0, 0.0].into(), [0.0, 1.0, 1.0].into()];
        assert!(reconstruct_lineality_check(&Subspace::zero(3), &v, &t).unwrap());
        let bad = reconstruct_lineality_check(&f, &[[1.0, 1.0, 0.0].into()], &t);
        assert!(matches!(bad, Err(Error::Precondition(_))));
    }

    #[test]
    fn delta_polar_x_axis() {
        let t = tol();
        let gamma = orthonormalize(3, &[[1.0, 0.0, 0.0].into()], &t).unwrap();
        let delta = delta_construction(&gamma, &[[0.0, 1.0, 0.0].into()], &t).unwrap();
        // {x1 = 0, x2 <= 0}
        assert!(delta.polar_contains(&[0.0, -1.0, 4.0].into(), &t).unwrap());
        assert!(delta.polar_contains(&[0.0, 0.0, -4.0].into(), &t).unwrap());
        assert!(!delta.polar_contains(&[0.0, 1.0, 0.0].into(), &t).unwrap());
        assert!(!delta.polar_contains(&[0.5, -1.0, 0.0].into(), &t).unwrap());
    }

    #[test]
    fn enumerated_polar_generators_of_orthant() {
        let t = tol();
        let c = cone(&[&[1.0, 0.0, 0.0], &[0.0, 1.0, 0.0], &[0.0, 0.0, 1.0]]);
        let gens = c.polar().enumerate_generators(&t, 1000).unwrap().unwrap();
        assert_eq!(gens.len(), 3);
        for g in &gens {
            assert!(g.coords().iter().all(|v| *v <= 1e-12));
        }
    }

    #[test]
    fn double_polar_simple() {
        let t = tol();
        let c = cone(&[&[1.0, 0.0], &[0.0, 1.0]]);
        let probes: Vec<Vector> = vec![
            [1.0, 0.0].into(),
            [-1.0, 0.0].into(),
            [0.0, 1.0].into(),
            [0.0, -1.0].into(),
        ];
        assert!(double_polar_closure_check(&c, &probes, &t).unwrap());
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(12, 0), 1);
        assert_eq!(binomial(3, 4), 0);
    }
}
