//! Radially parameterized closed hypersurfaces.
//!
//! A [`SampledHypersurface`] stores one point per direction of a
//! [`SphereSampling`], each on its own ray from the origin. Convex bodies are
//! turned into such tables by casting rays from their interior point
//! ([`radial_homeo`]); the radial map is then extended from the sphere of
//! radius 2 to the whole ball by [`RadialMapTable::psi_extend`], with
//! [`RadialMapTable::psi_inverse`] as its inverse.

use std::fmt;

use rand::Rng;

use crate::error::{Error, Result};
use crate::linalg::{affine_hull_dim, ToleranceProfile, Vector};
use crate::probes::random_unit;
use crate::report::Record;
use crate::support::{ConvexBody, SampledSet, SupportCertificate};

/// Default minimum spread of a sampling: some pair of directions must be
/// more than 150 degrees apart.
pub const DEFAULT_MIN_SPREAD: f64 = 150.0 * std::f64::consts::PI / 180.0;

/// Slack on the closed radius bounds of the ψ domain and image.
const RADIUS_SLACK: f64 = 1e-12;

/// Relative distance within which a norm is rounded onto the branch
/// boundaries `|y| = 1` and `|y| = 2`, so unit inputs hit the exact branch.
const BRANCH_SNAP: f64 = 4.0 * f64::EPSILON;

fn angle_between(a: &Vector, b: &Vector) -> f64 {
    a.dot(b).clamp(-1.0, 1.0).acos()
}

/// Finite set of distinct unit directions.
#[derive(Debug, Clone, PartialEq)]
pub struct SphereSampling {
    ambient_dim: usize,
    directions: Vec<Vector>,
    resolution: f64,
}

impl SphereSampling {
    /// Validates unit norms, distinctness and spread; the lookup resolution
    /// defaults to the largest nearest-neighbour angle.
    pub fn new(directions: Vec<Vector>, tol: &ToleranceProfile) -> Result<Self> {
        Self::with_options(directions, None, DEFAULT_MIN_SPREAD, tol)
    }

    pub fn with_options(
        directions: Vec<Vector>,
        resolution: Option<f64>,
        min_spread: f64,
        tol: &ToleranceProfile,
    ) -> Result<Self> {
        let first = directions
            .first()
            .ok_or(Error::EmptyInput("a sphere sampling needs directions"))?;
        let ambient_dim = first.dim();
        for (i, u) in directions.iter().enumerate() {
            u.check_dim(ambient_dim)?;
            if (u.norm() - 1.0).abs() > tol.tol_ortho {
                return Err(Error::Invariant(format!("direction {i} is not a unit vector")));
            }
        }
        let n = directions.len();
        let mut nearest = vec![f64::INFINITY; n];
        let mut widest = 0.0_f64;
        for i in 0..n {
            for j in i + 1..n {
                let a = angle_between(&directions[i], &directions[j]);
                if a <= 0.0 || directions[i].distance(&directions[j]) <= tol.tol_fix {
                    return Err(Error::Invariant(format!("directions {i} and {j} coincide")));
                }
                nearest[i] = nearest[i].min(a);
                nearest[j] = nearest[j].min(a);
                widest = widest.max(a);
            }
        }
        if n < 2 || widest <= min_spread {
            return Err(Error::Invariant(
                "sampling is confined to a cap; hypersurfaces with boundary are not supported".into(),
            ));
        }
        let resolution = match resolution {
            Some(r) => r,
            None => nearest.iter().cloned().fold(0.0, f64::max),
        };
        Ok(Self {
            ambient_dim,
            directions,
            resolution,
        })
    }

    /// `n` equally spaced directions on the unit circle.
    pub fn circle(n: usize, tol: &ToleranceProfile) -> Result<Self> {
        let dirs = (0..n)
            .map(|k| {
                let a = std::f64::consts::TAU * k as f64 / n as f64;
                Vector::from_raw(vec![a.cos(), a.sin()])
            })
            .collect();
        Self::new(dirs, tol)
    }

    /// Fibonacci lattice of `n` directions on the 2-sphere.
    pub fn fibonacci(n: usize, tol: &ToleranceProfile) -> Result<Self> {
        let golden = std::f64::consts::PI * (3.0 - 5.0_f64.sqrt());
        let dirs = (0..n)
            .map(|k| {
                let z = 1.0 - 2.0 * (k as f64 + 0.5) / n as f64;
                let r = (1.0 - z * z).sqrt();
                let a = golden * k as f64;
                Vector::from_raw(vec![r * a.cos(), r * a.sin(), z])
                    .normalized()
                    .unwrap()
            })
            .collect();
        Self::new(dirs, tol)
    }

    /// `n` uniform random directions in R^dim.
    pub fn random<R: Rng + ?Sized>(
        dim: usize,
        n: usize,
        rng: &mut R,
        tol: &ToleranceProfile,
    ) -> Result<Self> {
        Self::new((0..n).map(|_| random_unit(dim, rng)).collect(), tol)
    }

    /// Deterministic default: a circle in R^2, a Fibonacci lattice in R^3,
    /// random directions otherwise.
    pub fn standard<R: Rng + ?Sized>(
        dim: usize,
        n: usize,
        rng: &mut R,
        tol: &ToleranceProfile,
    ) -> Result<Self> {
        match dim {
            2 => Self::circle(n, tol),
            3 => Self::fibonacci(n, tol),
            _ => Self::random(dim, n, rng, tol),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn directions(&self) -> &[Vector] {
        &self.directions
    }

    pub fn len(&self) -> usize {
        self.directions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.directions.is_empty()
    }

    /// Largest accepted angle between a query and its nearest direction.
    pub fn resolution(&self) -> f64 {
        self.resolution
    }

    /// Index and angle of the stored direction closest to `u` (unit).
    pub fn nearest(&self, u: &Vector) -> (usize, f64) {
        let (i, dot) = self
            .directions
            .iter()
            .enumerate()
            .map(|(i, d)| (i, d.dot(u)))
            .max_by(|a, b| a.1.total_cmp(&b.1).then(b.0.cmp(&a.0)))
            .unwrap();
        (i, dot.clamp(-1.0, 1.0).acos())
    }

    /// Nearest direction, failing when it is farther than the resolution.
    pub fn lookup(&self, u: &Vector) -> Result<usize> {
        u.check_dim(self.ambient_dim)?;
        let (i, angle) = self.nearest(u);
        if angle > self.resolution * (1.0 + 1e-9) {
            return Err(Error::Precondition(format!(
                "direction is {angle:.3e} rad from the sampling (resolution {:.3e})",
                self.resolution
            )));
        }
        Ok(i)
    }
}

/// One surface point per sampled direction, `points[i] = |points[i]| u_i`.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledHypersurface {
    sampling: SphereSampling,
    points: Vec<Vector>,
    min_radius: f64,
    max_radius: f64,
}

impl SampledHypersurface {
    /// Points `r_i u_i`; every radius must be positive and finite.
    pub fn from_radii(sampling: SphereSampling, radii: &[f64]) -> Result<Self> {
        if radii.len() != sampling.len() {
            return Err(Error::Invariant(format!(
                "{} radii for {} directions",
                radii.len(),
                sampling.len()
            )));
        }
        if let Some(i) = radii.iter().position(|r| !(r.is_finite() && *r > 0.0)) {
            return Err(Error::Invariant(format!("radius {i} must be positive")));
        }
        let points = sampling
            .directions()
            .iter()
            .zip(radii)
            .map(|(u, r)| u.scaled(*r))
            .collect();
        Ok(Self::assemble(sampling, points))
    }

    /// Checks that each point lies on its direction's ray within `tol_fix`.
    pub fn new(sampling: SphereSampling, points: Vec<Vector>, tol: &ToleranceProfile) -> Result<Self> {
        if points.len() != sampling.len() {
            return Err(Error::Invariant(format!(
                "{} points for {} directions",
                points.len(),
                sampling.len()
            )));
        }
        for (i, (p, u)) in points.iter().zip(sampling.directions()).enumerate() {
            p.check_dim(sampling.ambient_dim())?;
            let r = p.norm();
            if r <= 0.0 || p.distance(&u.scaled(r)) > tol.tol_fix || p.dot(u) <= 0.0 {
                return Err(Error::Invariant(format!("point {i} is not on its direction's ray")));
            }
        }
        Ok(Self::assemble(sampling, points))
    }

    fn assemble(sampling: SphereSampling, points: Vec<Vector>) -> Self {
        let radii = points.iter().map(Vector::norm);
        let (min_radius, max_radius) =
            radii.fold((f64::INFINITY, 0.0_f64), |(lo, hi), r| (lo.min(r), hi.max(r)));
        Self {
            sampling,
            points,
            min_radius,
            max_radius,
        }
    }

    pub fn sampling(&self) -> &SphereSampling {
        &self.sampling
    }

    pub fn points(&self) -> &[Vector] {
        &self.points
    }

    pub fn radii(&self) -> Vec<f64> {
        self.points.iter().map(Vector::norm).collect()
    }

    pub fn ambient_dim(&self) -> usize {
        self.sampling.ambient_dim()
    }

    pub fn min_radius(&self) -> f64 {
        self.min_radius
    }

    pub fn max_radius(&self) -> f64 {
        self.max_radius
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Largest distance between corresponding points.
    pub fn max_deviation(&self, other: &SampledHypersurface) -> f64 {
        self.points
            .iter()
            .zip(&other.points)
            .map(|(a, b)| a.distance(b))
            .fold(0.0, f64::max)
    }
}

/// Exit parameter `t*` of the ray `a + t u` from the hull of the body's
/// sample, where `a` is the interior point.
///
/// The ray is bracketed by `[0, 2R]` (`R` the body radius about `a`). The
/// bracket is then closed from outside with supporting hyperplanes: each
/// step projects the current outer point onto the hull and moves to where
/// the ray crosses the resulting supporting hyperplane, which never passes
/// the boundary. Bisection is the fallback if that stalls.
pub fn ray_exit_parameter(b: &ConvexBody, u: &Vector) -> Result<f64> {
    let tol = *b.tol();
    u.check_dim(b.ambient_dim())?;
    if (u.norm() - 1.0).abs() > tol.tol_ortho {
        return Err(Error::Precondition("ray direction must be a unit vector".into()));
    }
    let a = b.interior_point();
    let set = b.base();
    let radius = b.radius();
    let upper = 2.0 * radius;
    if set.hull_contains(&a.add_scaled(upper, u))? {
        return Err(Error::Invariant(
            "ray does not leave the body within twice its radius".into(),
        ));
    }
    let stop_dist = 1e-13 * (1.0 + radius);
    let mut t = upper;
    let mut converged = false;
    for _ in 0..tol.max_iter {
        let q = a.add_scaled(t, u);
        let proj = set.nearest_hull_point(&q)?;
        let gap = &q - &proj;
        let d = gap.norm();
        if d <= stop_dist {
            converged = true;
            break;
        }
        let n = gap.scaled(1.0 / d);
        let s = n.dot(u);
        if s <= 0.0 {
            break;
        }
        let next = n.dot(&(&proj - a)) / s;
        if !(next < t) || t - next <= 1e-15 * upper {
            t = t.min(next.max(0.0));
            converged = true;
            break;
        }
        t = next.max(0.0);
    }
    if converged && set.hull_contains(&a.add_scaled(t, u))? {
        return Ok(t);
    }
    // Bisection on the membership predicate.
    let (mut lo, mut hi) = (0.0, upper);
    while hi - lo > tol.tol_fix {
        let mid = 0.5 * (lo + hi);
        if set.hull_contains(&a.add_scaled(mid, u))? {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(lo)
}

/// The point where the ray from the interior point along `u` meets the
/// boundary of the hull.
pub fn ray_boundary_intersection(b: &ConvexBody, u: &Vector) -> Result<Vector> {
    let t = ray_exit_parameter(b, u)?;
    Ok(b.interior_point().add_scaled(t, u))
}

/// Boundary of the body as a radial table about its interior point:
/// `points[i] = t_i u_i` in coordinates centred at the interior point.
///
/// The inverse map is `z -> z/|z|`.
pub fn radial_homeo(b: &ConvexBody, sampling: &SphereSampling) -> Result<SampledHypersurface> {
    if sampling.ambient_dim() != b.ambient_dim() {
        return Err(Error::DimensionMismatch {
            expected: b.ambient_dim(),
            found: sampling.ambient_dim(),
        });
    }
    let radii = sampling
        .directions()
        .iter()
        .map(|u| ray_exit_parameter(b, u))
        .collect::<Result<Vec<_>>>()?;
    SampledHypersurface::from_radii(sampling.clone(), &radii)
}

/// Affine frame `x -> scale (x - center)` in which the radial map is
/// normalized.
#[derive(Debug, Clone, PartialEq)]
pub struct RadialFrame {
    pub center: Vector,
    pub scale: f64,
}

impl RadialFrame {
    pub fn to_frame(&self, x: &Vector) -> Vector {
        (x - &self.center).scaled(self.scale)
    }

    pub fn from_frame(&self, v: &Vector) -> Vector {
        self.center.add_scaled(1.0 / self.scale, v)
    }
}

/// Norms of `γ(u) = φ(2u)` per sampled direction, all greater than 2.
#[derive(Debug, Clone, PartialEq)]
pub struct RadialMapTable {
    sampling: SphereSampling,
    gamma_norms: Vec<f64>,
    frame: RadialFrame,
}

impl RadialMapTable {
    /// Table given directly in normalized coordinates.
    pub fn new(sampling: SphereSampling, gamma_norms: Vec<f64>) -> Result<Self> {
        if gamma_norms.len() != sampling.len() {
            return Err(Error::Invariant(format!(
                "{} norms for {} directions",
                gamma_norms.len(),
                sampling.len()
            )));
        }
        if let Some(i) = gamma_norms.iter().position(|g| !(g.is_finite() && *g > 2.0)) {
            return Err(Error::Invariant(format!(
                "gamma norm {i} must exceed 2 (the radius-2 ball must be interior)"
            )));
        }
        let d = sampling.ambient_dim();
        Ok(Self {
            sampling,
            gamma_norms,
            frame: RadialFrame {
                center: Vector::zeros(d),
                scale: 1.0,
            },
        })
    }

    /// Casts rays from the body's interior point and rescales so the
    /// smallest boundary radius exceeds `2 (1 + tol_mem)`.
    pub fn from_body(b: &ConvexBody, sampling: &SphereSampling) -> Result<Self> {
        let surface = radial_homeo(b, sampling)?;
        let radii = surface.radii();
        let floor = 2.0 * (1.0 + b.tol().tol_mem);
        let min_r = surface.min_radius();
        let scale = if min_r > floor { 1.0 } else { 1.25 * floor / min_r };
        let mut table = Self::new(
            sampling.clone(),
            radii.iter().map(|r| r * scale).collect(),
        )?;
        table.frame = RadialFrame {
            center: b.interior_point().clone(),
            scale,
        };
        Ok(table)
    }

    pub fn sampling(&self) -> &SphereSampling {
        &self.sampling
    }

    pub fn gamma_norms(&self) -> &[f64] {
        &self.gamma_norms
    }

    pub fn frame(&self) -> &RadialFrame {
        &self.frame
    }

    fn gamma_norm_along(&self, unit: &Vector) -> Result<f64> {
        Ok(self.gamma_norms[self.sampling.lookup(unit)?])
    }

    /// `γ(y)`: the boundary point on the ray of `y`, with its norm taken
    /// from the nearest sampled direction.
    pub fn gamma(&self, y: &Vector) -> Result<Vector> {
        let u = y
            .normalized()
            .ok_or_else(|| Error::Precondition("γ is undefined at the origin".into()))?;
        Ok(u.scaled(self.gamma_norm_along(&u)?))
    }

    /// `ψ(y) = (|y| - 1) γ(y) + (2 - |y|) y/|y|` for `1 <= |y| <= 2`, the
    /// identity for `|y| <= 1`.
    pub fn psi_extend(&self, y: &Vector) -> Result<Vector> {
        y.check_dim(self.sampling.ambient_dim())?;
        let n = y.norm();
        if n > 2.0 * (1.0 + RADIUS_SLACK) {
            return Err(Error::Precondition(format!(
                "|y| = {n} lies outside the radius-2 ball"
            )));
        }
        if n <= 1.0 + BRANCH_SNAP {
            return Ok(y.clone());
        }
        let u = y.scaled(1.0 / n);
        let g = self.gamma_norm_along(&u)?;
        if n >= 2.0 * (1.0 - BRANCH_SNAP) {
            return Ok(u.scaled(g));
        }
        Ok(u.scaled((n - 1.0) * g + (2.0 - n)))
    }

    /// `ψ⁻¹(z) = z/|z| (1 + (|z| - 1)/(|γ(z)| - 1))` for `1 <= |z| <= |γ(z)|`,
    /// the identity for `|z| <= 1`.
    pub fn psi_inverse(&self, z: &Vector) -> Result<Vector> {
        z.check_dim(self.sampling.ambient_dim())?;
        let n = z.norm();
        if n <= 1.0 + BRANCH_SNAP {
            return Ok(z.clone());
        }
        let u = z.scaled(1.0 / n);
        let g = self.gamma_norm_along(&u)?;
        if n > g * (1.0 + RADIUS_SLACK) {
            return Err(Error::Precondition(format!(
                "|z| = {n} exceeds the boundary radius {g} along its direction"
            )));
        }
        if n >= g * (1.0 - BRANCH_SNAP) {
            return Ok(u.scaled(2.0));
        }
        Ok(u.scaled(1.0 + (n - 1.0) / (g - 1.0)))
    }
}

/// Result of [`convexify`]: `omega` shares the input's sampling and
/// `correspondence` pairs input and output indices.
#[derive(Debug, Clone, PartialEq)]
pub struct Convexification {
    pub omega: SampledHypersurface,
    pub correspondence: Vec<(usize, usize)>,
}

impl Convexification {
    pub fn records(&self) -> Vec<Record> {
        self.correspondence
            .iter()
            .map(|(i, j)| {
                Record::new("correspondence")
                    .field("input", i)
                    .field("output", j)
                    .field("radius", self.omega.points()[*j].norm())
            })
            .collect()
    }
}

/// Boundary of the convex hull of the hypersurface, sampled on the same
/// directions.
///
/// Rays start at the parameterization centre (the origin), which must be
/// strictly interior to the hull so the output stays radial on the shared
/// sampling.
pub fn convexify(phi: &SampledHypersurface, tol: &ToleranceProfile) -> Result<Convexification> {
    let d = phi.ambient_dim();
    if affine_hull_dim(phi.points(), tol)? < d {
        return Err(Error::Precondition(
            "hull of the hypersurface has empty interior".into(),
        ));
    }
    let set = SampledSet::new(phi.points().to_vec(), *tol)?;
    let body = ConvexBody::new(set, Vector::zeros(d)).map_err(|e| match e {
        Error::Invariant(_) => Error::Precondition(
            "the parameterization centre is not interior to the hull".into(),
        ),
        other => other,
    })?;
    let omega = radial_homeo(&body, phi.sampling())?;
    let correspondence = (0..phi.len()).map(|i| (i, i)).collect();
    Ok(Convexification {
        omega,
        correspondence,
    })
}

/// Per-point support certificates of a hypersurface's sample.
#[derive(Debug, Clone, PartialEq)]
pub struct HypersurfaceConvexityReport {
    pub certificates: Vec<Option<SupportCertificate>>,
}

impl HypersurfaceConvexityReport {
    pub fn convex(&self) -> bool {
        self.certificates.iter().all(Option::is_some)
    }

    pub fn unsupported(&self) -> Vec<usize> {
        self.certificates
            .iter()
            .enumerate()
            .filter(|(_, c)| c.is_none())
            .map(|(i, _)| i)
            .collect()
    }

    pub fn records(&self) -> Vec<Record> {
        let mut out: Vec<Record> = self
            .certificates
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let r = Record::new("surface_point").field("index", i);
                match c {
                    Some(c) => r
                        .field("supported", true)
                        .vector("normal", &c.normal)
                        .field("slack", c.slack),
                    None => r.field("supported", false),
                }
            })
            .collect();
        out.push(
            Record::new("verdict")
                .field("convex", self.convex())
                .field("unsupported", self.unsupported().len()),
        );
        out
    }
}

impl fmt::Display for HypersurfaceConvexityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let bad = self.unsupported();
        writeln!(
            f,
            "hypersurface support check: {} points, {} without support",
            self.certificates.len(),
            bad.len()
        )?;
        for i in &bad {
            writeln!(f, "  point [{i}] has no supporting half-space")?;
        }
        writeln!(f, "verdict: {}", if self.convex() { "convex" } else { "not convex" })
    }
}

/// Runs a support certificate at every sample point.
pub fn is_convex_hypersurface(
    phi: &SampledHypersurface,
    tol: &ToleranceProfile,
) -> Result<HypersurfaceConvexityReport> {
    let set = SampledSet::new(phi.points().to_vec(), *tol)?;
    let certificates = phi
        .points()
        .iter()
        .map(|p| set.support_certificate(p))
        .collect::<Result<Vec<_>>>()?;
    Ok(HypersurfaceConvexityReport { certificates })
}

/// A compact convex hypersurface of R^n must affinely span R^n.
pub fn affine_extension_check(phi: &SampledHypersurface, tol: &ToleranceProfile) -> Result<bool> {
    Ok(affine_hull_dim(phi.points(), tol)? == phi.ambient_dim())
}
