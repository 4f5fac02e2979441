//! Plain-text readers and writers.
//!
//! Every format starts with a `dim d` line; `#` starts a comment and blank
//! lines are ignored. Coordinates are whitespace separated decimals and are
//! written back with the shortest representation that round-trips.
//!
//! * cone file: one generator per line, or `[lineality]` / `[pointed]`
//!   sections holding the same vector lines;
//! * point cloud: one point per line, plus an optional
//!   `interior x_1 .. x_d` line;
//! * hypersurface: rows `u_1 .. u_d r` (unit direction, then radius).

use std::fmt::Write as _;

use crate::cone::{PolyhedralCone, StructuredCone};
use crate::error::{Error, Result};
use crate::hypersurface::{SampledHypersurface, SphereSampling};
use crate::linalg::{orthonormalize, ToleranceProfile, Vector};

/// Directions in a hypersurface file must be unit within this bound; they
/// are renormalized after reading.
const DIRECTION_NORM_SLACK: f64 = 1e-6;

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

/// Non-empty, comment-stripped lines with their 1-based numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let line = raw.split('#').next().unwrap_or("").trim();
        (!line.is_empty()).then_some((i + 1, line))
    })
}

fn parse_numbers(line_no: usize, tokens: &[&str]) -> Result<Vec<f64>> {
    tokens
        .iter()
        .map(|t| {
            let v: f64 = t
                .parse()
                .map_err(|_| parse_err(line_no, format!("not a number: {t:?}")))?;
            if v.is_finite() {
                Ok(v)
            } else {
                Err(parse_err(line_no, format!("non-finite value: {t:?}")))
            }
        })
        .collect()
}

fn parse_vector(line_no: usize, tokens: &[&str], dim: usize) -> Result<Vector> {
    if tokens.len() != dim {
        return Err(parse_err(
            line_no,
            format!("expected {dim} coordinates, found {}", tokens.len()),
        ));
    }
    Vector::new(parse_numbers(line_no, tokens)?).map_err(|e| parse_err(line_no, e.to_string()))
}

/// Reads the `dim d` header and returns the remaining lines.
fn header(text: &str) -> Result<(usize, Vec<(usize, &str)>)> {
    let mut lines = content_lines(text);
    let (n, first) = lines.next().ok_or_else(|| parse_err(1, "missing `dim d` header"))?;
    let tokens: Vec<&str> = first.split_whitespace().collect();
    let dim = match tokens.as_slice() {
        ["dim", d] => d
            .parse::<usize>()
            .ok()
            .filter(|d| *d > 0)
            .ok_or_else(|| parse_err(n, format!("invalid dimension {d:?}")))?,
        _ => return Err(parse_err(n, "first line must be `dim d`")),
    };
    Ok((dim, lines.collect()))
}

fn write_coords(out: &mut String, coords: &[f64]) {
    let joined = coords
        .iter()
        .map(|c| format!("{:?}", c + 0.0))
        .collect::<Vec<_>>()
        .join(" ");
    out.push_str(&joined);
}

fn write_vectors(out: &mut String, vectors: &[Vector]) {
    for v in vectors {
        write_coords(out, v.coords());
        out.push('\n');
    }
}

/// Contents of a cone file.
#[derive(Debug, Clone, PartialEq)]
pub enum ConeFile {
    Plain {
        ambient_dim: usize,
        generators: Vec<Vector>,
    },
    Structured {
        ambient_dim: usize,
        lineality: Vec<Vector>,
        pointed: Vec<Vector>,
    },
}

impl ConeFile {
    pub fn ambient_dim(&self) -> usize {
        match self {
            ConeFile::Plain { ambient_dim, .. } | ConeFile::Structured { ambient_dim, .. } => {
                *ambient_dim
            }
        }
    }

    /// All generators as a plain cone; lineality vectors enter with both
    /// signs.
    pub fn to_cone(&self, tol: &ToleranceProfile) -> Result<PolyhedralCone> {
        match self {
            ConeFile::Plain {
                ambient_dim,
                generators,
            } => PolyhedralCone::new(*ambient_dim, generators.clone(), tol),
            ConeFile::Structured {
                ambient_dim,
                lineality,
                pointed,
            } => {
                let mut gens = Vec::new();
                for b in lineality {
                    gens.push(b.clone());
                    gens.push(-b);
                }
                gens.extend(pointed.iter().cloned());
                PolyhedralCone::new(*ambient_dim, gens, tol)
            }
        }
    }

    /// Structured sections validated as `L + cone(P)`; plain files are
    /// decomposed.
    pub fn to_structured(&self, tol: &ToleranceProfile) -> Result<StructuredCone> {
        match self {
            ConeFile::Plain { .. } => self.to_cone(tol)?.decompose(tol),
            ConeFile::Structured {
                ambient_dim,
                lineality,
                pointed,
            } => {
                let lin = orthonormalize(*ambient_dim, lineality, tol)?;
                StructuredCone::new(lin, pointed.clone(), tol)
            }
        }
    }
}

pub fn parse_cone(text: &str) -> Result<ConeFile> {
    let (dim, lines) = header(text)?;
    #[derive(PartialEq)]
    enum Section {
        None,
        Lineality,
        Pointed,
    }
    let mut section = Section::None;
    let mut structured = false;
    let (mut plain, mut lineality, mut pointed) = (Vec::new(), Vec::new(), Vec::new());
    for (n, line) in lines {
        match line {
            "[lineality]" => {
                if !plain.is_empty() {
                    return Err(parse_err(n, "section header after plain generators"));
                }
                structured = true;
                section = Section::Lineality;
                continue;
            }
            "[pointed]" => {
                if !plain.is_empty() {
                    return Err(parse_err(n, "section header after plain generators"));
                }
                structured = true;
                section = Section::Pointed;
                continue;
            }
            _ if line.starts_with('[') => {
                return Err(parse_err(n, format!("unknown section {line:?}")));
            }
            _ => {}
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        let v = parse_vector(n, &tokens, dim)?;
        match section {
            Section::None => plain.push(v),
            Section::Lineality => lineality.push(v),
            Section::Pointed => pointed.push(v),
        }
    }
    Ok(if structured {
        ConeFile::Structured {
            ambient_dim: dim,
            lineality,
            pointed,
        }
    } else {
        ConeFile::Plain {
            ambient_dim: dim,
            generators: plain,
        }
    })
}

pub fn write_cone(file: &ConeFile) -> String {
    let mut out = format!("dim {}\n", file.ambient_dim());
    match file {
        ConeFile::Plain { generators, .. } => write_vectors(&mut out, generators),
        ConeFile::Structured {
            lineality, pointed, ..
        } => {
            out.push_str("[lineality]\n");
            write_vectors(&mut out, lineality);
            out.push_str("[pointed]\n");
            write_vectors(&mut out, pointed);
        }
    }
    out
}

/// Contents of a point-cloud file.
#[derive(Debug, Clone, PartialEq)]
pub struct PointCloud {
    pub ambient_dim: usize,
    pub points: Vec<Vector>,
    pub interior: Option<Vector>,
}

pub fn parse_point_cloud(text: &str) -> Result<PointCloud> {
    let (dim, lines) = header(text)?;
    let mut points = Vec::new();
    let mut interior = None;
    for (n, line) in lines {
        let tokens: Vec<&str> = line.split_whitespace().collect();
        if tokens[0] == "interior" {
            if interior.is_some() {
                return Err(parse_err(n, "duplicate `interior` line"));
            }
            interior = Some(parse_vector(n, &tokens[1..], dim)?);
        } else {
            points.push(parse_vector(n, &tokens, dim)?);
        }
    }
    Ok(PointCloud {
        ambient_dim: dim,
        points,
        interior,
    })
}

pub fn write_point_cloud(cloud: &PointCloud) -> String {
    let mut out = format!("dim {}\n", cloud.ambient_dim);
    if let Some(x) = &cloud.interior {
        out.push_str("interior ");
        write_coords(&mut out, x.coords());
        out.push('\n');
    }
    write_vectors(&mut out, &cloud.points);
    out
}

/// Reads `u r` rows into a hypersurface with points `r u`.
pub fn parse_hypersurface(text: &str, tol: &ToleranceProfile) -> Result<SampledHypersurface> {
    let (dim, lines) = header(text)?;
    let mut dirs = Vec::new();
    let mut radii = Vec::new();
    for (n, line) in lines {
        let tokens: Vec<&str> = line.split_whitespace().collect();
        if tokens.len() != dim + 1 {
            return Err(parse_err(
                n,
                format!("expected {} values (direction and radius), found {}", dim + 1, tokens.len()),
            ));
        }
        let values = parse_numbers(n, &tokens)?;
        let u = Vector::new(values[..dim].to_vec()).map_err(|e| parse_err(n, e.to_string()))?;
        if (u.norm() - 1.0).abs() > DIRECTION_NORM_SLACK {
            return Err(parse_err(n, "direction is not a unit vector"));
        }
        dirs.push(u.normalized().unwrap());
        radii.push(values[dim]);
    }
    let sampling = SphereSampling::new(dirs, tol)?;
    SampledHypersurface::from_radii(sampling, &radii)
}

pub fn write_hypersurface(h: &SampledHypersurface) -> String {
    let mut out = format!("dim {}\n", h.ambient_dim());
    for (u, p) in h.sampling().directions().iter().zip(h.points()) {
        write_coords(&mut out, u.coords());
        let _ = writeln!(out, " {:?}", p.norm());
    }
    out
}

/// Comma-separated coordinate table with a header row `x,y[,z]` plus any
/// extra named columns.
pub fn csv_table(dim: usize, extra: &[&str], rows: &[(Vector, Vec<f64>)]) -> String {
    let axes = ["x", "y", "z"];
    let mut cols: Vec<String> = (0..dim)
        .map(|i| axes.get(i).map_or_else(|| format!("x{i}"), |a| a.to_string()))
        .collect();
    cols.extend(extra.iter().map(|s| s.to_string()));
    let mut out = cols.join(",");
    out.push('\n');
    for (v, more) in rows {
        let line = v
            .coords()
            .iter()
            .chain(more)
            .map(|c| format!("{:?}", c + 0.0))
            .collect::<Vec<_>>()
            .join(",");
        out.push_str(&line);
        out.push('\n');
    }
    out
}
