//! Computational convex analysis on finite data.
//!
//! The crate works with three finite stand-ins for the objects of convex
//! analysis:
//!
//! * finitely generated cones ([`PolyhedralCone`]) with their polars
//!   ([`HalfspaceCone`]) and lineality decompositions ([`StructuredCone`]);
//! * finite samples of closed sets ([`SampledSet`], [`ConvexBody`]) with
//!   tangent and normal cones, support certificates, projections and the two
//!   convexity checks (via boundary support and via translated normal cones);
//! * radially parameterized closed hypersurfaces ([`SampledHypersurface`])
//!   with the radial homeomorphism onto a convex body boundary, its explicit
//!   extension to a ball, and convexification.
//!
//! All decisions are tolerance based; see [`ToleranceProfile`].

pub mod cli;
pub mod cone;
pub mod error;
pub mod feasibility;
pub mod hypersurface;
pub mod io;
pub mod linalg;
pub mod probes;
pub mod report;
pub mod support;

pub use cone::{
    delta_construction, double_polar_closure_check, reconstruct_lineality_check, HalfspaceCone,
    PolyhedralCone, StructuredCone,
};
pub use error::{Error, Result};
pub use hypersurface::{
    affine_extension_check, convexify, is_convex_hypersurface, radial_homeo,
    ray_boundary_intersection, Convexification, RadialMapTable, SampledHypersurface,
    SphereSampling,
};
pub use linalg::{affine_hull_dim, orthonormalize, Subspace, ToleranceProfile, Vector};
pub use support::{
    anf_membership, convexity_check_anf, convexity_check_body, is_anf_witness, project_onto_hull,
    translated_normal_cones_disjoint, ConvexBody, SampledSet, SupportCertificate,
};
