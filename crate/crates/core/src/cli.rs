//! Command-line front end.
//!
//! Each command reads its input files, runs one library operation and
//! writes, under the output directory:
//!
//! * `<command>.report.txt`: human-readable report;
//! * `<command>.records.txt`: one `kind key=value ...` record per line;
//! * `<command>.<name>.csv`: plot data, only for inputs in R^2 and R^3;
//! * extra text artifacts such as `convexify.omega.txt`.
//!
//! Nothing written depends on anything but the configuration and the input
//! files, so equal configurations give byte-identical artifacts.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use rand::Rng;

use crate::cone::{double_polar_closure_check, PolyhedralCone};
use crate::error::{Error, Result};
use crate::hypersurface::{
    affine_extension_check, convexify, is_convex_hypersurface, radial_homeo, RadialMapTable,
    SampledHypersurface, SphereSampling,
};
use crate::io::{csv_table, parse_cone, parse_hypersurface, parse_point_cloud, write_hypersurface, PointCloud};
use crate::linalg::{centroid, ToleranceProfile, Vector};
use crate::probes::{cone_probes, random_unit, seeded, GENERATOR_NAME};
use crate::report::{render, Record};
use crate::support::{
    convexity_check_anf, convexity_check_body, ConvexBody, SampledSet, DEFAULT_ANF_ANGLE,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_INVARIANT: i32 = 3;
pub const EXIT_INDETERMINATE: i32 = 4;

/// Upper bound on inspected subsets when enumerating polar generators.
const MAX_POLAR_SUBSETS: usize = 200_000;

#[derive(Debug, Clone, Parser)]
#[command(name = "conecert", version, about = "Cone calculus and convexity certificates for sampled sets")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Membership slack, scaled by 1 + |x|.
    #[arg(long, global = true, env = "CONECERT_TOL_MEM")]
    pub tol_mem: Option<f64>,

    /// Round-trip and fixed-point tolerance.
    #[arg(long, global = true, env = "CONECERT_TOL_FIX")]
    pub tol_fix: Option<f64>,

    /// Orthogonality and unit-norm slack.
    #[arg(long, global = true, env = "CONECERT_TOL_ORTHO")]
    pub tol_ortho: Option<f64>,

    /// Relative singular-value cutoff for rank decisions.
    #[arg(long, global = true, env = "CONECERT_TOL_RANK")]
    pub tol_rank: Option<f64>,

    /// Iteration limit of the feasibility and projection solvers.
    #[arg(long, global = true, env = "CONECERT_MAX_ITER")]
    pub max_iter: Option<usize>,

    /// Seed of the probe generator.
    #[arg(long, global = true, env = "CONECERT_SEED", default_value_t = 0)]
    pub seed: u64,

    /// Number of random probes or samples.
    #[arg(long, global = true, env = "CONECERT_PROBES", default_value_t = 1000,
          value_parser = clap::value_parser!(u64).range(1..))]
    pub probes: u64,

    /// Directory receiving the artifacts.
    #[arg(long, global = true, env = "CONECERT_OUT", default_value = ".")]
    pub out: PathBuf,

    /// Angular resolution of the normal-fan test, in degrees.
    #[arg(long, global = true, env = "CONECERT_ANF_ANGLE")]
    pub anf_angle: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Subcommand)]
pub enum Command {
    /// Lineality space and pointed part of a cone.
    Decompose { cone: PathBuf },
    /// Polar cone, its generators and the double-polar check.
    Polar { cone: PathBuf },
    /// Extreme points and support certificates of a point cloud.
    Support { cloud: PathBuf },
    /// Projection of query points onto the hull of a point cloud.
    Project { cloud: PathBuf, queries: PathBuf },
    /// Boundary-support convexity check of a body with an interior point.
    ConvexityBody {
        cloud: PathBuf,
        /// Boundary points to certify; defaults to the non-interior samples.
        #[arg(long)]
        boundary: Option<PathBuf>,
        /// Points known to lie outside the set.
        #[arg(long)]
        deficits: Option<PathBuf>,
    },
    /// Normal-fan coverage check of a sample without interior.
    ConvexityAnf {
        cloud: PathBuf,
        /// Probe points; defaults to a seeded ring around the sample.
        #[arg(long)]
        probe_file: Option<PathBuf>,
    },
    /// Ray-boundary intersections of a body along sampled directions.
    RayMap {
        cloud: PathBuf,
        #[arg(long, default_value_t = 360)]
        directions: usize,
    },
    /// Round trips of the extension map and its inverse.
    PsiCheck {
        cloud: PathBuf,
        #[arg(long, default_value_t = 360)]
        directions: usize,
    },
    /// Convex hull boundary of a radial hypersurface.
    Convexify { surface: PathBuf },
    /// Support and affine-span report of a radial hypersurface.
    Report { surface: PathBuf },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Decompose { .. } => "decompose",
            Command::Polar { .. } => "polar",
            Command::Support { .. } => "support",
            Command::Project { .. } => "project",
            Command::ConvexityBody { .. } => "convexity-body",
            Command::ConvexityAnf { .. } => "convexity-anf",
            Command::RayMap { .. } => "ray-map",
            Command::PsiCheck { .. } => "psi-check",
            Command::Convexify { .. } => "convexify",
            Command::Report { .. } => "report",
        }
    }

    pub fn input_paths(&self) -> Vec<&Path> {
        match self {
            Command::Decompose { cone } | Command::Polar { cone } => vec![cone],
            Command::Support { cloud }
            | Command::RayMap { cloud, .. }
            | Command::PsiCheck { cloud, .. } => vec![cloud],
            Command::Project { cloud, queries } => vec![cloud, queries],
            Command::ConvexityBody {
                cloud,
                boundary,
                deficits,
            } => std::iter::once(cloud).chain(boundary).chain(deficits).map(PathBuf::as_path).collect(),
            Command::ConvexityAnf { cloud, probe_file } => {
                std::iter::once(cloud).chain(probe_file).map(PathBuf::as_path).collect()
            }
            Command::Convexify { surface } | Command::Report { surface } => vec![surface],
        }
    }
}

/// Everything a run depends on.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub tol: ToleranceProfile,
    pub seed: u64,
    pub probe_count: usize,
    pub output_dir: PathBuf,
    pub anf_angle: f64,
}

impl RunConfig {
    pub fn from_cli(cli: Cli) -> Result<Self> {
        let mut tol = ToleranceProfile::default();
        if let Some(t) = cli.tol_mem {
            tol.tol_mem = t;
        }
        if let Some(t) = cli.tol_fix {
            tol.tol_fix = t;
        }
        if let Some(t) = cli.tol_ortho {
            tol.tol_ortho = t;
        }
        if let Some(t) = cli.tol_rank {
            tol.tol_rank = t;
        }
        if let Some(n) = cli.max_iter {
            tol.max_iter = n;
        }
        tol.validate()?;
        let anf_angle = match cli.anf_angle {
            Some(deg) if deg.is_finite() && (0.0..90.0).contains(&deg) => deg.to_radians(),
            Some(deg) => {
                return Err(Error::Invariant(format!("ANF angle {deg} must lie in [0, 90) degrees")))
            }
            None => DEFAULT_ANF_ANGLE,
        };
        Ok(Self {
            command: cli.command,
            tol,
            seed: cli.seed,
            probe_count: cli.probes as usize,
            output_dir: cli.out,
            anf_angle,
        })
    }
}

/// Report text, records and auxiliary files of one command.
#[derive(Debug, Clone, Default)]
pub struct Outcome {
    pub report: String,
    pub records: Vec<Record>,
    /// `(file suffix, contents)` pairs written as `<command>.<suffix>`.
    pub files: Vec<(String, String)>,
    pub positive: bool,
}

impl Outcome {
    fn new(positive: bool) -> Self {
        Self {
            positive,
            ..Self::default()
        }
    }

    fn line(&mut self, text: impl AsRef<str>) {
        self.report.push_str(text.as_ref());
        self.report.push('\n');
    }

    fn plot(&mut self, dim: usize, name: &str, extra: &[&str], rows: &[(Vector, Vec<f64>)]) {
        if (2..=3).contains(&dim) {
            self.files.push((format!("{name}.csv"), csv_table(dim, extra, rows)));
        }
    }
}

pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Parse { .. } | Error::Io(_) => EXIT_PARSE,
        Error::Indeterminate(_) => EXIT_INDETERMINATE,
        Error::DimensionMismatch { .. }
        | Error::NonFinite
        | Error::EmptyInput(_)
        | Error::Precondition(_)
        | Error::Invariant(_) => EXIT_INVARIANT,
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn load_cloud(path: &Path) -> Result<PointCloud> {
    parse_point_cloud(&read(path)?)
}

fn load_set(path: &Path, tol: &ToleranceProfile) -> Result<(SampledSet, Option<Vector>)> {
    let cloud = load_cloud(path)?;
    Ok((SampledSet::new(cloud.points, *tol)?, cloud.interior))
}

fn load_body(path: &Path, tol: &ToleranceProfile) -> Result<ConvexBody> {
    let (set, interior) = load_set(path, tol)?;
    let interior = interior
        .ok_or_else(|| Error::Precondition(format!("{} has no `interior` line", path.display())))?;
    ConvexBody::new(set, interior)
}

fn load_points(path: &Path, dim: usize) -> Result<Vec<Vector>> {
    let cloud = load_cloud(path)?;
    if cloud.ambient_dim != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            found: cloud.ambient_dim,
        });
    }
    Ok(cloud.points)
}

fn rows(points: &[Vector]) -> Vec<(Vector, Vec<f64>)> {
    points.iter().map(|p| (p.clone(), Vec::new())).collect()
}

/// Runs the command without touching the file system beyond reading inputs.
pub fn execute(config: &RunConfig) -> Result<Outcome> {
    let tol = &config.tol;
    match &config.command {
        Command::Decompose { cone } => decompose(config, &parse_cone(&read(cone)?)?.to_cone(tol)?),
        Command::Polar { cone } => polar(config, &parse_cone(&read(cone)?)?.to_cone(tol)?),
        Command::Support { cloud } => support(&load_set(cloud, tol)?.0),
        Command::Project { cloud, queries } => {
            let (set, _) = load_set(cloud, tol)?;
            let queries = load_points(queries, set.ambient_dim())?;
            project(&set, &queries)
        }
        Command::ConvexityBody {
            cloud,
            boundary,
            deficits,
        } => {
            let body = load_body(cloud, tol)?;
            let d = body.ambient_dim();
            let boundary = match boundary {
                Some(p) => load_points(p, d)?,
                None => {
                    let mut out = Vec::new();
                    for x in body.base().points() {
                        if !body.base().is_strictly_interior(x)? {
                            out.push(x.clone());
                        }
                    }
                    out
                }
            };
            let deficits = match deficits {
                Some(p) => load_points(p, d)?,
                None => Vec::new(),
            };
            body_check(&body, &boundary, &deficits)
        }
        Command::ConvexityAnf { cloud, probe_file } => {
            let (set, _) = load_set(cloud, tol)?;
            let probes = match probe_file {
                Some(p) => load_points(p, set.ambient_dim())?,
                None => probe_ring(&set, config.probe_count, &mut seeded(config.seed))?,
            };
            anf_check(&set, &probes, config.anf_angle)
        }
        Command::RayMap { cloud, directions } => {
            let body = load_body(cloud, tol)?;
            let sampling = SphereSampling::standard(body.ambient_dim(), *directions, &mut seeded(config.seed), tol)?;
            ray_map(&body, &sampling, tol)
        }
        Command::PsiCheck { cloud, directions } => {
            let body = load_body(cloud, tol)?;
            let mut rng = seeded(config.seed);
            let sampling = SphereSampling::standard(body.ambient_dim(), *directions, &mut rng, tol)?;
            psi_check(&body, &sampling, config.probe_count, &mut rng, tol)
        }
        Command::Convexify { surface } => convexify_cmd(&parse_hypersurface(&read(surface)?, tol)?, tol),
        Command::Report { surface } => surface_report(&parse_hypersurface(&read(surface)?, tol)?, tol),
    }
}

fn header(config: &RunConfig) -> (String, Record) {
    let name = config.command.name();
    let inputs: Vec<String> = config
        .command
        .input_paths()
        .iter()
        .map(|p| p.display().to_string())
        .collect();
    let t = &config.tol;
    let mut text = String::new();
    let _ = writeln!(text, "conecert {name}");
    let _ = writeln!(text, "inputs: {}", inputs.join(" "));
    let _ = writeln!(
        text,
        "tolerances: tol_mem={:e} tol_ortho={:e} tol_rank={:e} tol_fix={:e} max_iter={}",
        t.tol_mem, t.tol_ortho, t.tol_rank, t.tol_fix, t.max_iter
    );
    let _ = writeln!(
        text,
        "generator: {GENERATOR_NAME} seed={} probes={}",
        config.seed, config.probe_count
    );
    text.push('\n');
    let record = Record::new("run")
        .field("command", name)
        .field("inputs", inputs.join(","))
        .field("tol_mem", t.tol_mem)
        .field("tol_fix", t.tol_fix)
        .field("generator", GENERATOR_NAME)
        .field("seed", config.seed)
        .field("probes", config.probe_count);
    (text, record)
}

/// Executes the command, writes its artifacts and returns the exit status.
pub fn run(config: &RunConfig) -> i32 {
    let (head, run_record) = header(config);
    let (code, outcome) = match execute(config) {
        Ok(o) => (if o.positive { EXIT_OK } else { EXIT_NEGATIVE }, o),
        Err(e) => {
            let code = exit_code(&e);
            let mut o = Outcome::new(false);
            o.line(format!("error: {e}"));
            o.records.push(Record::new("error").field("exit", code).field("message", format!("{e:?}").replace(' ', "_")));
            (code, o)
        }
    };
    let name = config.command.name();
    let mut records = vec![run_record];
    records.extend(outcome.records);
    records.push(Record::new("exit").field("status", code));
    let mut files = vec![
        ("report.txt".to_string(), format!("{head}{}exit status: {code}\n", outcome.report)),
        ("records.txt".to_string(), render(&records)),
    ];
    files.extend(outcome.files);
    if let Err(e) = write_artifacts(&config.output_dir, name, &files) {
        eprintln!("conecert: {e}");
        return EXIT_PARSE;
    }
    code
}

fn write_artifacts(dir: &Path, name: &str, files: &[(String, String)]) -> Result<()> {
    fs::create_dir_all(dir)?;
    for (suffix, contents) in files {
        fs::write(dir.join(format!("{name}.{suffix}")), contents)?;
    }
    Ok(())
}

fn decompose(config: &RunConfig, cone: &PolyhedralCone) -> Result<Outcome> {
    let tol = &config.tol;
    let d = cone.ambient_dim();
    let s = cone.decompose(tol)?;
    let mut o = Outcome::new(true);
    o.line(format!("ambient dimension: {d}, generators: {}", cone.generators().len()));
    o.line(format!("lineality space (rank {}):", s.lineality().rank()));
    for b in s.lineality().basis() {
        o.line(format!("  {b}"));
        o.records.push(Record::new("lineality_basis").vector("v", b));
    }
    o.line(format!("pointed part ({} generators):", s.pointed_generators().len()));
    for g in s.pointed_generators() {
        o.line(format!("  {g}"));
        o.records.push(Record::new("pointed_generator").vector("v", g));
    }
    let pointed_ok = s.pointed_cone().is_pointed(tol)?;
    let probes = cone_probes(d, cone.generators(), config.probe_count, &mut seeded(config.seed));
    let mut disagreements = 0;
    for p in &probes {
        if cone.contains(p, tol)? != s.contains(p, tol)? {
            disagreements += 1;
        }
    }
    o.line(format!("pointed part is pointed: {pointed_ok}"));
    o.line(format!(
        "round-trip membership disagreements: {disagreements} of {} probes",
        probes.len()
    ));
    o.records.push(
        Record::new("decomposition")
            .field("lineality_rank", s.lineality().rank())
            .field("pointed_generators", s.pointed_generators().len())
            .field("pointed", pointed_ok)
            .field("probes", probes.len())
            .field("disagreements", disagreements),
    );
    if !pointed_ok || disagreements > 0 {
        return Err(Error::Invariant(format!(
            "decomposition round trip failed on {disagreements} probes"
        )));
    }
    o.plot(d, "generators", &[], &rows(cone.generators()));
    o.plot(d, "lineality", &[], &rows(s.lineality().basis()));
    o.plot(d, "pointed", &[], &rows(s.pointed_generators()));
    Ok(o)
}

fn polar(config: &RunConfig, cone: &PolyhedralCone) -> Result<Outcome> {
    let tol = &config.tol;
    let d = cone.ambient_dim();
    let polar = cone.polar();
    let mut o = Outcome::new(true);
    o.line(format!("polar cone: {} half-spaces <n, x> <= 0", polar.normals().len()));
    for n in polar.normals() {
        o.records.push(Record::new("polar_normal").vector("n", n));
    }
    match polar.enumerate_generators(tol, MAX_POLAR_SUBSETS)? {
        Some(gens) => {
            o.line(format!("polar generators ({}):", gens.len()));
            for g in &gens {
                o.line(format!("  {g}"));
                o.records.push(Record::new("polar_generator").vector("v", g));
            }
            o.plot(d, "polar_generators", &[], &rows(&gens));
        }
        None => o.line("polar generators: enumeration skipped (too many subsets)"),
    }
    match cone.proper_certificate(tol)? {
        Some(f) => {
            o.line(format!("proper: yes, half-space normal ({f})"));
            o.records.push(Record::new("proper").field("proper", true).vector("normal", &f));
        }
        None => {
            o.line("proper: no (the cone is the whole space)");
            o.records.push(Record::new("proper").field("proper", false));
        }
    }
    let probes = cone_probes(d, cone.generators(), config.probe_count, &mut seeded(config.seed));
    let agrees = double_polar_closure_check(cone, &probes, tol)?;
    o.line(format!("double polar agrees with the cone on {} probes: {agrees}", probes.len()));
    o.records.push(Record::new("double_polar").field("probes", probes.len()).field("agrees", agrees));
    if !agrees {
        return Err(Error::Invariant("double polar membership disagrees with the cone".into()));
    }
    o.plot(d, "generators", &[], &rows(cone.generators()));
    Ok(o)
}

fn support(set: &SampledSet) -> Result<Outcome> {
    let d = set.ambient_dim();
    let mut o = Outcome::new(true);
    let mut halfspaces = Vec::new();
    let mut unsupported = 0;
    for (i, x) in set.points().iter().enumerate() {
        let extreme = set.is_extreme_point(x)?;
        let cert = set.support_certificate(x)?;
        let mut r = Record::new("point").field("index", i).field("extreme", extreme);
        match &cert {
            Some(c) => {
                o.line(format!("  [{i}] {x}  extreme={extreme} normal ({}) slack {:e}", c.normal, c.slack));
                r = r.field("supported", true).vector("normal", &c.normal).field("slack", c.slack);
                halfspaces.push((x.clone(), c.normal.coords().to_vec()));
            }
            None => {
                unsupported += 1;
                o.line(format!("  [{i}] {x}  extreme={extreme} no support"));
                r = r.field("supported", false);
            }
        }
        o.records.push(r);
    }
    o.positive = unsupported == 0;
    o.report.insert_str(0, "support certificates per sample point\n");
    o.line(format!(
        "verdict: {}",
        if o.positive { "every point is a support point" } else { "some points have no support" }
    ));
    o.records.push(Record::new("verdict").field("unsupported", unsupported));
    o.plot(d, "points", &[], &rows(set.points()));
    o.plot(d, "halfspaces", &normal_columns(d), &halfspaces);
    Ok(o)
}

fn normal_columns(d: usize) -> Vec<&'static str> {
    ["nx", "ny", "nz"][..d.min(3)].to_vec()
}

fn project(set: &SampledSet, queries: &[Vector]) -> Result<Outcome> {
    let d = set.ambient_dim();
    let mut o = Outcome::new(true);
    o.line("projections onto the hull");
    let mut segs = Vec::new();
    for (i, y) in queries.iter().enumerate() {
        let p = set.project(y)?;
        let dist = p.point.distance(y);
        let mut r = Record::new("projection")
            .field("index", i)
            .vector("query", y)
            .vector("point", &p.point)
            .field("distance", dist);
        match &p.certificate {
            Some(c) => {
                o.line(format!("  [{i}] {y} -> {}  distance {dist}", p.point));
                r = r.vector("normal", &c.normal);
            }
            None => o.line(format!("  [{i}] {y} lies in the hull")),
        }
        o.records.push(r);
        segs.push((y.clone(), p.point.coords().to_vec()));
    }
    let extra: Vec<&str> = ["px", "py", "pz"][..d.min(3)].to_vec();
    o.plot(d, "points", &[], &rows(set.points()));
    o.plot(d, "projections", &extra, &segs);
    Ok(o)
}

fn body_check(body: &ConvexBody, boundary: &[Vector], deficits: &[Vector]) -> Result<Outcome> {
    let d = body.ambient_dim();
    let report = convexity_check_body(body, boundary, deficits)?;
    let mut o = Outcome::new(report.convex_consistent());
    o.report.push_str(&report.to_string());
    o.records = report.records();
    let halfspaces: Vec<(Vector, Vec<f64>)> = report
        .entries
        .iter()
        .filter_map(|e| e.certificate.as_ref().map(|c| (e.point.clone(), c.normal.coords().to_vec())))
        .collect();
    o.plot(d, "points", &[], &rows(body.base().points()));
    o.plot(d, "halfspaces", &normal_columns(d), &halfspaces);
    Ok(o)
}

/// `n` seeded probes on the sphere of twice the sample radius about the
/// centroid.
pub fn probe_ring<R: Rng + ?Sized>(set: &SampledSet, n: usize, rng: &mut R) -> Result<Vec<Vector>> {
    let c = centroid(set.points())?;
    let radius = set.points().iter().map(|p| p.distance(&c)).fold(0.0, f64::max);
    let r = 2.0 * radius.max(set.tol().tol_fix);
    Ok((0..n).map(|_| c.add_scaled(r, &random_unit(set.ambient_dim(), rng))).collect())
}

fn anf_check(set: &SampledSet, probes: &[Vector], angle: f64) -> Result<Outcome> {
    let d = set.ambient_dim();
    let report = convexity_check_anf(set, probes, angle)?;
    let mut o = Outcome::new(report.covered());
    o.report.push_str(&report.to_string());
    o.records = report.records();
    let uncovered: Vec<Vector> = report.uncovered().iter().map(|&k| probes[k].clone()).collect();
    o.plot(d, "points", &[], &rows(set.points()));
    o.plot(d, "uncovered", &[], &rows(&uncovered));
    Ok(o)
}

fn ray_map(body: &ConvexBody, sampling: &SphereSampling, tol: &ToleranceProfile) -> Result<Outcome> {
    let d = body.ambient_dim();
    let surface = radial_homeo(body, sampling)?;
    let mut o = Outcome::new(true);
    let mut worst = 0.0_f64;
    for (i, (u, p)) in sampling.directions().iter().zip(surface.points()).enumerate() {
        let back = p.normalized().ok_or_else(|| Error::Invariant("zero boundary radius".into()))?;
        let err = back.distance(u);
        worst = worst.max(err);
        o.records.push(
            Record::new("ray")
                .field("index", i)
                .vector("direction", u)
                .field("radius", p.norm())
                .field("round_trip_error", err),
        );
    }
    o.line(format!("ray map about {} over {} directions", body.interior_point(), sampling.len()));
    o.line(format!(
        "radii: min {:e}, max {:e}",
        surface.min_radius(),
        surface.max_radius()
    ));
    o.line(format!("max direction round-trip error: {worst:e}"));
    if worst > tol.tol_fix {
        return Err(Error::Invariant(format!("direction round trip error {worst:e}")));
    }
    let absolute: Vec<Vector> = surface.points().iter().map(|p| p + body.interior_point()).collect();
    o.files.push(("surface.txt".into(), write_hypersurface(&surface)));
    o.plot(d, "points", &[], &rows(body.base().points()));
    o.plot(d, "boundary", &[], &rows(&absolute));
    Ok(o)
}

fn psi_check<R: Rng + ?Sized>(
    body: &ConvexBody,
    sampling: &SphereSampling,
    samples: usize,
    rng: &mut R,
    tol: &ToleranceProfile,
) -> Result<Outcome> {
    let table = RadialMapTable::from_body(body, sampling)?;
    let dirs = sampling.directions();
    let (mut fwd, mut back) = (0.0_f64, 0.0_f64);
    for _ in 0..samples {
        let i = rng.random_range(0..dirs.len());
        let y = dirs[i].scaled(rng.random_range(1.0..=2.0));
        let z = table.psi_extend(&y)?;
        fwd = fwd.max(table.psi_inverse(&z)?.distance(&y));
        let g = table.gamma_norms()[i];
        let w = dirs[i].scaled(rng.random_range(1.0..=g));
        back = back.max(table.psi_extend(&table.psi_inverse(&w)?)?.distance(&w));
    }
    let mut boundary = 0.0_f64;
    for (u, g) in dirs.iter().zip(table.gamma_norms()) {
        boundary = boundary
            .max(table.psi_extend(&u.scaled(2.0))?.distance(&u.scaled(*g)))
            .max(table.psi_extend(u)?.distance(u));
    }
    let ok = fwd <= tol.tol_fix && back <= tol.tol_fix && boundary <= tol.tol_fix;
    let mut o = Outcome::new(ok);
    o.line(format!(
        "extension map table: {} directions, frame scale {}",
        dirs.len(),
        table.frame().scale
    ));
    o.line(format!("max |psi_inv(psi(y)) - y|: {fwd:e}"));
    o.line(format!("max |psi(psi_inv(z)) - z|: {back:e}"));
    o.line(format!("max boundary branch error: {boundary:e}"));
    o.line(format!("verdict: {}", if ok { "round trips hold" } else { "round trips fail" }));
    o.records.push(
        Record::new("psi_check")
            .field("samples", samples)
            .field("forward_error", fwd)
            .field("backward_error", back)
            .field("boundary_error", boundary)
            .field("ok", ok),
    );
    Ok(o)
}

fn convexify_cmd(phi: &SampledHypersurface, tol: &ToleranceProfile) -> Result<Outcome> {
    let d = phi.ambient_dim();
    let conv = convexify(phi, tol)?;
    let again = convexify(&conv.omega, tol)?;
    let drift = again.omega.max_deviation(&conv.omega);
    let mut o = Outcome::new(true);
    o.line(format!("convexification of {} points", phi.len()));
    o.line(format!(
        "omega radii: min {:e}, max {:e}",
        conv.omega.min_radius(),
        conv.omega.max_radius()
    ));
    o.line(format!("max displacement from input: {:e}", conv.omega.max_deviation(phi)));
    o.line(format!("idempotence drift: {drift:e}"));
    o.records = conv.records();
    o.records.push(Record::new("idempotence").field("drift", drift));
    if drift > tol.tol_fix {
        return Err(Error::Invariant(format!("convexification is not idempotent ({drift:e})")));
    }
    o.files.push(("omega.txt".into(), write_hypersurface(&conv.omega)));
    o.plot(d, "input", &[], &rows(phi.points()));
    o.plot(d, "omega", &[], &rows(conv.omega.points()));
    Ok(o)
}

fn surface_report(phi: &SampledHypersurface, tol: &ToleranceProfile) -> Result<Outcome> {
    let d = phi.ambient_dim();
    let report = is_convex_hypersurface(phi, tol)?;
    let spans = affine_extension_check(phi, tol)?;
    let mut o = Outcome::new(report.convex() && spans);
    o.report.push_str(&report.to_string());
    o.line(format!("affine hull is the whole space: {spans}"));
    o.records = report.records();
    o.records.push(Record::new("affine_extension").field("full", spans));
    let halfspaces: Vec<(Vector, Vec<f64>)> = report
        .certificates
        .iter()
        .flatten()
        .map(|c| (c.point.clone(), c.normal.coords().to_vec()))
        .collect();
    o.plot(d, "points", &[], &rows(phi.points()));
    o.plot(d, "halfspaces", &normal_columns(d), &halfspaces);
    Ok(o)
}
