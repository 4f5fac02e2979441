//! Tangent and normal cones of sampled sets, support certificates,
//! projection onto the hull, and the two convexity checks.
//!
//! A closed set is represented by a finite sample, so every tangent cone is
//! finitely generated: `T(x) = cone{c - x : c in sample}`.

use std::fmt;

use crate::cone::{HalfspaceCone, PolyhedralCone};
use crate::error::{Error, Result};
use crate::feasibility::{min_norm_point, MinNormPoint};
use crate::linalg::{ToleranceProfile, Vector};
use crate::probes::interior_test_directions;
use crate::report::Record;

/// Default angular resolution for translated-normal-cone membership, in
/// radians (5 degrees).
pub const DEFAULT_ANF_ANGLE: f64 = 5.0 * std::f64::consts::PI / 180.0;

/// Step used for strict-interior probing, as a multiple of `tol_mem`.
const INTERIOR_STEP_FACTOR: f64 = 100.0;

/// Finite sample of a closed set.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledSet {
    ambient_dim: usize,
    points: Vec<Vector>,
    tol: ToleranceProfile,
}

impl SampledSet {
    /// Rejects empty samples, mixed dimensions and duplicate points (closer
    /// than `tol_fix`).
    pub fn new(points: Vec<Vector>, tol: ToleranceProfile) -> Result<Self> {
        tol.validate()?;
        let first = points
            .first()
            .ok_or(Error::EmptyInput("a sampled set needs at least one point"))?;
        let ambient_dim = first.dim();
        for p in &points {
            p.check_dim(ambient_dim)?;
        }
        for (i, a) in points.iter().enumerate() {
            for (j, b) in points.iter().enumerate().skip(i + 1) {
                if a.distance(b) <= tol.tol_fix {
                    return Err(Error::Invariant(format!(
                        "sample points {i} and {j} coincide"
                    )));
                }
            }
        }
        Ok(Self {
            ambient_dim,
            points,
            tol,
        })
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn points(&self) -> &[Vector] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn tol(&self) -> &ToleranceProfile {
        &self.tol
    }

    /// Index of the sample within `tol_fix` of `x`.
    pub fn index_of(&self, x: &Vector) -> Option<usize> {
        self.points
            .iter()
            .position(|p| p.dim() == x.dim() && p.distance(x) <= self.tol.tol_fix)
    }

    fn require_sample(&self, x: &Vector) -> Result<usize> {
        x.check_dim(self.ambient_dim)?;
        self.index_of(x)
            .ok_or_else(|| Error::Precondition(format!("point {x} is not in the sample")))
    }

    /// Minimum-norm point of `conv(sample) - y`, shifted back to absolute
    /// coordinates.
    fn hull_projection(&self, y: &Vector, stop_below: f64) -> Result<MinNormPoint> {
        y.check_dim(self.ambient_dim)?;
        let shifted: Vec<Vector> = self.points.iter().map(|c| c - y).collect();
        let mut mnp = min_norm_point(&shifted, self.tol.max_iter, stop_below)?;
        mnp.point = &mnp.point + y;
        Ok(mnp)
    }

    /// Nearest point of the hull to `y`, without any certification.
    pub fn nearest_hull_point(&self, y: &Vector) -> Result<Vector> {
        Ok(self.hull_projection(y, 0.0)?.point)
    }

    /// Euclidean distance from `y` to the convex hull of the sample.
    pub fn hull_distance(&self, y: &Vector) -> Result<f64> {
        Ok(self.hull_projection(y, 0.0)?.point.distance(y))
    }

    /// Hull membership within `tol_mem * (1 + |y|)`.
    pub fn hull_contains(&self, y: &Vector) -> Result<bool> {
        let slack = self.tol.mem_slack(y.norm());
        let mnp = self.hull_projection(y, slack * 0.5)?;
        Ok(mnp.point.distance(y) <= slack)
    }

    /// `x ± δu` stays in the hull for every deterministic test direction `u`,
    /// with `δ = 100 tol_mem`.
    pub fn is_strictly_interior(&self, x: &Vector) -> Result<bool> {
        let delta = INTERIOR_STEP_FACTOR * self.tol.tol_mem;
        for u in interior_test_directions(self.ambient_dim) {
            if !self.hull_contains(&x.add_scaled(delta, &u))? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `cone{c - x}` over samples `c` other than `x`; `x` need not be a sample.
    pub fn tangent_cone_at(&self, x: &Vector) -> Result<PolyhedralCone> {
        x.check_dim(self.ambient_dim)?;
        let gens = self
            .points
            .iter()
            .filter(|c| c.distance(x) > self.tol.tol_fix)
            .map(|c| c - x)
            .collect();
        PolyhedralCone::new(self.ambient_dim, gens, &self.tol)
    }

    /// Tangent cone at a sample point.
    pub fn tangent_cone(&self, x: &Vector) -> Result<PolyhedralCone> {
        self.require_sample(x)?;
        self.tangent_cone_at(x)
    }

    /// Normal cone at a sample point: the polar of its tangent cone.
    pub fn normal_cone(&self, x: &Vector) -> Result<HalfspaceCone> {
        Ok(self.tangent_cone(x)?.polar())
    }

    /// A sample point is extreme iff its tangent cone is pointed.
    pub fn is_extreme_point(&self, x: &Vector) -> Result<bool> {
        self.tangent_cone(x)?.is_pointed(&self.tol)
    }

    /// Support certificate at a sample point, if the tangent cone is proper.
    pub fn support_certificate(&self, x: &Vector) -> Result<Option<SupportCertificate>> {
        self.require_sample(x)?;
        self.certificate_at(x)
    }

    /// Support certificate at an arbitrary point `x`, computed from
    /// `cone{c - x}`.
    pub fn certificate_at(&self, x: &Vector) -> Result<Option<SupportCertificate>> {
        let cone = self.tangent_cone_at(x)?;
        match cone.proper_certificate(&self.tol)? {
            None => Ok(None),
            Some(normal) => Ok(Some(SupportCertificate::new(self, x.clone(), normal)?)),
        }
    }

    /// Minimum-distance point of the hull from `y`, with the certificate
    /// normal `(y - p)/|y - p|` when `y` lies outside.
    pub fn project(&self, y: &Vector) -> Result<Projection> {
        if self.hull_contains(y)? {
            return Ok(Projection {
                point: y.clone(),
                certificate: None,
            });
        }
        let mnp = self.hull_projection(y, 0.0)?;
        let p = mnp.point;
        let gap = y - &p;
        let dist = gap.norm();
        let bound = self.tol.mem_slack(dist);
        let worst = self
            .points
            .iter()
            .map(|c| gap.dot(&(c - &p)))
            .fold(f64::NEG_INFINITY, f64::max);
        if worst > bound {
            return Err(Error::Indeterminate(format!(
                "projection variational inequality violated by {worst:e}"
            )));
        }
        let normal = gap.scaled(1.0 / dist);
        let certificate = SupportCertificate::new(self, p.clone(), normal)?;
        Ok(Projection {
            point: p,
            certificate: Some(certificate),
        })
    }

    /// `max_c <u, c - x> - sin(angle) |c - x|` with `u = (z - x)/|z - x|`.
    ///
    /// Nonpositive (up to `tol_mem`) means `z ∈ x + N(x)` at angular
    /// resolution `angle`.
    pub fn anf_slack(&self, x: &Vector, z: &Vector, angle: f64) -> Result<f64> {
        x.check_dim(self.ambient_dim)?;
        z.check_dim(self.ambient_dim)?;
        let Some(u) = (z - x).normalized() else {
            return Ok(f64::NEG_INFINITY);
        };
        let relax = angle.sin().max(0.0);
        Ok(self
            .points
            .iter()
            .map(|c| {
                let d = c - x;
                u.dot(&d) - relax * d.norm()
            })
            .fold(f64::NEG_INFINITY, f64::max))
    }
}

/// Boundary point with a unit outer normal whose half-space contains the
/// sample: `<normal, c - point> <= slack <= tol_mem` for all samples `c`.
#[derive(Debug, Clone, PartialEq)]
pub struct SupportCertificate {
    pub point: Vector,
    pub normal: Vector,
    pub slack: f64,
}

impl SupportCertificate {
    /// Normalizes `normal`, measures the slack and enforces `slack <= tol_mem`.
    pub fn new(set: &SampledSet, point: Vector, normal: Vector) -> Result<Self> {
        let tol = set.tol();
        let normal = normal
            .normalized()
            .ok_or_else(|| Error::Invariant("support normal must be nonzero".into()))?;
        let slack = set
            .points()
            .iter()
            .map(|c| normal.dot(&(c - &point)))
            .fold(0.0_f64, f64::max);
        if slack > tol.tol_mem {
            return Err(Error::Indeterminate(format!(
                "supporting half-space misses the sample by {slack:e}"
            )));
        }
        Ok(Self {
            point,
            normal,
            slack,
        })
    }

    /// `<normal, z - point>`; the half-space is where this is `<= tol_mem`.
    pub fn excess(&self, z: &Vector) -> f64 {
        self.normal.dot(&(z - &self.point))
    }

    pub fn half_space_contains(&self, z: &Vector, tol: &ToleranceProfile) -> bool {
        self.excess(z) <= tol.tol_mem
    }
}

/// A sampled set with a designated strictly interior point.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvexBody {
    base: SampledSet,
    interior_point: Vector,
}

impl ConvexBody {
    pub fn new(base: SampledSet, interior_point: Vector) -> Result<Self> {
        interior_point.check_dim(base.ambient_dim())?;
        if !base.is_strictly_interior(&interior_point)? {
            return Err(Error::Invariant(format!(
                "designated point {interior_point} is not interior to the hull"
            )));
        }
        Ok(Self {
            base,
            interior_point,
        })
    }

    pub fn base(&self) -> &SampledSet {
        &self.base
    }

    pub fn interior_point(&self) -> &Vector {
        &self.interior_point
    }

    pub fn ambient_dim(&self) -> usize {
        self.base.ambient_dim()
    }

    pub fn tol(&self) -> &ToleranceProfile {
        self.base.tol()
    }

    /// Largest distance from the interior point to a sample.
    pub fn radius(&self) -> f64 {
        self.base
            .points()
            .iter()
            .map(|c| c.distance(&self.interior_point))
            .fold(0.0, f64::max)
    }
}

/// Output of [`project_onto_hull`].
#[derive(Debug, Clone, PartialEq)]
pub struct Projection {
    pub point: Vector,
    /// `None` when the query already lies in the hull.
    pub certificate: Option<SupportCertificate>,
}

/// Minimum-distance projection of `y` onto the hull of the body's sample.
pub fn project_onto_hull(b: &ConvexBody, y: &Vector) -> Result<Projection> {
    b.base.project(y)
}

/// True when `z ∈ x + N(x)` at angular resolution `angle`. For `z == x` this
/// requires `x` to be a support point.
pub fn is_anf_witness(s: &SampledSet, x: &Vector, z: &Vector, angle: f64) -> Result<bool> {
    if z.distance(x) <= s.tol().tol_fix {
        return Ok(s.certificate_at(x)?.is_some());
    }
    Ok(s.anf_slack(x, z, angle)? <= s.tol().tol_mem)
}

/// Sample point whose translated normal cone contains a probe.
#[derive(Debug, Clone, PartialEq)]
pub struct AnfWitness {
    pub index: usize,
    pub point: Vector,
}

/// Finds a sample `x` with `z ∈ x + N(x)`.
///
/// Among several witnesses the one closest to `z` wins, then the lowest
/// sample index.
pub fn anf_membership(s: &SampledSet, z: &Vector, angle: f64) -> Result<Option<AnfWitness>> {
    z.check_dim(s.ambient_dim())?;
    let mut order: Vec<(f64, usize)> = s
        .points()
        .iter()
        .enumerate()
        .map(|(i, x)| (x.distance(z), i))
        .collect();
    order.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
    for (_, i) in order {
        let x = &s.points()[i];
        if is_anf_witness(s, x, z, angle)? {
            return Ok(Some(AnfWitness {
                index: i,
                point: x.clone(),
            }));
        }
    }
    Ok(None)
}

/// Probe outcome for [`translated_normal_cones_disjoint`].
#[derive(Debug, Clone, Default, PartialEq)]
pub struct DisjointnessReport {
    /// Probes strictly inside both translated normal cones.
    pub violations: Vec<usize>,
    /// Probes inside both cones only up to tolerance.
    pub ties: Vec<usize>,
}

impl DisjointnessReport {
    pub fn disjoint(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Scans `probes` for points lying in both `x1 + N(x1)` and `x2 + N(x2)`.
pub fn translated_normal_cones_disjoint(
    s: &SampledSet,
    x1: &Vector,
    x2: &Vector,
    probes: &[Vector],
) -> Result<DisjointnessReport> {
    let tol = s.tol();
    if x1.distance(x2) <= tol.tol_fix {
        return Err(Error::Precondition("the two support points coincide".into()));
    }
    for x in [x1, x2] {
        if s.support_certificate(x)?.is_none() {
            return Err(Error::Precondition(format!("{x} is not a support point")));
        }
    }
    let slack = |x: &Vector, z: &Vector| {
        let d = z - x;
        let m = s
            .points()
            .iter()
            .filter(|c| c.distance(x) > tol.tol_fix)
            .map(|c| d.dot(&(c - x)))
            .fold(f64::NEG_INFINITY, f64::max);
        (m, tol.mem_slack(d.norm()))
    };
    let mut report = DisjointnessReport::default();
    for (k, z) in probes.iter().enumerate() {
        z.check_dim(s.ambient_dim())?;
        let (s1, t1) = slack(x1, z);
        let (s2, t2) = slack(x2, z);
        if s1 <= t1 && s2 <= t2 {
            if s1 < -t1 && s2 < -t2 {
                report.violations.push(k);
            } else {
                report.ties.push(k);
            }
        }
    }
    Ok(report)
}

/// Per-point result of [`convexity_check_body`].
#[derive(Debug, Clone, PartialEq)]
pub struct BoundaryEntry {
    pub point: Vector,
    pub certificate: Option<SupportCertificate>,
}

/// Report of the boundary-support convexity check.
#[derive(Debug, Clone, PartialEq)]
pub struct BodyConvexityReport {
    pub entries: Vec<BoundaryEntry>,
    /// `(boundary index, sample index, excess)` for samples outside a
    /// certified half-space.
    pub sample_violations: Vec<(usize, usize, f64)>,
    /// Indices of deficit probes lying in every certified half-space.
    pub captured_deficits: Vec<usize>,
}

impl BodyConvexityReport {
    pub fn all_certified(&self) -> bool {
        self.entries.iter().all(|e| e.certificate.is_some())
    }

    pub fn convex_consistent(&self) -> bool {
        self.all_certified() && self.sample_violations.is_empty() && self.captured_deficits.is_empty()
    }

    pub fn records(&self) -> Vec<Record> {
        let mut out = Vec::new();
        for (i, e) in self.entries.iter().enumerate() {
            let mut r = Record::new("boundary").field("index", i).vector("point", &e.point);
            r = match &e.certificate {
                Some(c) => r
                    .field("certified", true)
                    .vector("normal", &c.normal)
                    .field("slack", c.slack),
                None => r.field("certified", false),
            };
            out.push(r);
        }
        for (b, s, ex) in &self.sample_violations {
            out.push(
                Record::new("sample_violation")
                    .field("boundary", b)
                    .field("sample", s)
                    .field("excess", ex),
            );
        }
        for k in &self.captured_deficits {
            out.push(Record::new("captured_deficit").field("probe", k));
        }
        out.push(
            Record::new("verdict")
                .field("convex_consistent", self.convex_consistent())
                .field("certified", self.entries.iter().filter(|e| e.certificate.is_some()).count())
                .field("boundary_points", self.entries.len()),
        );
        out
    }
}

impl fmt::Display for BodyConvexityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "boundary-support convexity check")?;
        for (i, e) in self.entries.iter().enumerate() {
            match &e.certificate {
                Some(c) => writeln!(
                    f,
                    "  [{i}] {}  supported, normal ({}), slack {:e}",
                    e.point, c.normal, c.slack
                )?,
                None => writeln!(f, "  [{i}] {}  NO SUPPORT", e.point)?,
            }
        }
        writeln!(
            f,
            "  samples outside a certified half-space: {}",
            self.sample_violations.len()
        )?;
        writeln!(
            f,
            "  deficit probes inside every certified half-space: {}",
            self.captured_deficits.len()
        )?;
        writeln!(
            f,
            "verdict: {}",
            if self.convex_consistent() {
                "convex-consistent"
            } else {
                "not convex-consistent"
            }
        )
    }
}

/// Certifies every boundary point, then checks that the certified
/// half-spaces contain the whole sample and that no deficit probe (a point
/// known to lie outside the set) survives their intersection.
pub fn convexity_check_body(
    b: &ConvexBody,
    boundary_sample: &[Vector],
    deficit_probes: &[Vector],
) -> Result<BodyConvexityReport> {
    let set = b.base();
    let tol = *set.tol();
    let mut entries = Vec::with_capacity(boundary_sample.len());
    for x in boundary_sample {
        entries.push(BoundaryEntry {
            point: x.clone(),
            certificate: set.certificate_at(x)?,
        });
    }
    let mut sample_violations = Vec::new();
    for (bi, e) in entries.iter().enumerate() {
        if let Some(cert) = &e.certificate {
            for (si, c) in set.points().iter().enumerate() {
                let ex = cert.excess(c);
                if ex > tol.tol_mem {
                    sample_violations.push((bi, si, ex));
                }
            }
        }
    }
    let mut captured_deficits = Vec::new();
    for (k, z) in deficit_probes.iter().enumerate() {
        z.check_dim(set.ambient_dim())?;
        let inside_all = entries
            .iter()
            .filter_map(|e| e.certificate.as_ref())
            .all(|c| c.half_space_contains(z, &tol));
        if inside_all {
            captured_deficits.push(k);
        }
    }
    Ok(BodyConvexityReport {
        entries,
        sample_violations,
        captured_deficits,
    })
}

/// Outcome for one probe of [`convexity_check_anf`].
#[derive(Debug, Clone, PartialEq)]
pub enum ProbeOutcome {
    /// Probe lies in the hull; not part of the criterion.
    InsideHull,
    Covered(AnfWitness),
    Uncovered,
}

/// Report of the translated-normal-cone (ANF) coverage check.
#[derive(Debug, Clone, PartialEq)]
pub struct AnfReport {
    pub probes: Vec<Vector>,
    pub outcomes: Vec<ProbeOutcome>,
    pub angle: f64,
}

impl AnfReport {
    pub fn uncovered(&self) -> Vec<usize> {
        self.outcomes
            .iter()
            .enumerate()
            .filter(|(_, o)| matches!(o, ProbeOutcome::Uncovered))
            .map(|(i, _)| i)
            .collect()
    }

    pub fn covered(&self) -> bool {
        self.uncovered().is_empty()
    }

    pub fn records(&self) -> Vec<Record> {
        let mut out = Vec::new();
        for (i, (z, o)) in self.probes.iter().zip(&self.outcomes).enumerate() {
            let r = Record::new("probe").field("index", i).vector("point", z);
            out.push(match o {
                ProbeOutcome::InsideHull => r.field("status", "inside"),
                ProbeOutcome::Covered(w) => r
                    .field("status", "covered")
                    .field("witness", w.index)
                    .vector("witness_point", &w.point),
                ProbeOutcome::Uncovered => r.field("status", "uncovered"),
            });
        }
        out.push(
            Record::new("verdict")
                .field("anf_covered", self.covered())
                .field("uncovered", self.uncovered().len())
                .field("probes", self.probes.len())
                .field("angle_rad", self.angle),
        );
        out
    }
}

impl fmt::Display for AnfReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let inside = self
            .outcomes
            .iter()
            .filter(|o| matches!(o, ProbeOutcome::InsideHull))
            .count();
        let uncovered = self.uncovered();
        writeln!(f, "translated normal cone coverage check")?;
        writeln!(
            f,
            "  probes: {} ({} inside the hull, {} uncovered), angular resolution {:.4} rad",
            self.probes.len(),
            inside,
            uncovered.len(),
            self.angle
        )?;
        for i in &uncovered {
            writeln!(f, "  uncovered probe [{i}] {}", self.probes[*i])?;
        }
        writeln!(
            f,
            "verdict: {}",
            if self.covered() { "ANF-covered" } else { "not ANF-covered" }
        )
    }
}

/// Every probe outside the hull must lie in some translated normal cone
/// `x + N(x)` of a sample point.
pub fn convexity_check_anf(s: &SampledSet, outside_probes: &[Vector], angle: f64) -> Result<AnfReport> {
    let tol = s.tol();
    for (i, a) in outside_probes.iter().enumerate() {
        a.check_dim(s.ambient_dim())?;
        for (j, b) in outside_probes.iter().enumerate().skip(i + 1) {
            if a.distance(b) <= tol.tol_fix {
                return Err(Error::Precondition(format!("probes {i} and {j} coincide")));
            }
        }
    }
    let mut outcomes = Vec::with_capacity(outside_probes.len());
    for z in outside_probes {
        outcomes.push(if s.hull_contains(z)? {
            ProbeOutcome::InsideHull
        } else {
            match anf_membership(s, z, angle)? {
                Some(w) => ProbeOutcome::Covered(w),
                None => ProbeOutcome::Uncovered,
            }
        });
    }
    Ok(AnfReport {
        probes: outside_probes.to_vec(),
        outcomes,
        angle,
    })
}
