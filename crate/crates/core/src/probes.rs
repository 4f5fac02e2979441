//! Probe and direction generation.
//!
//! Library code never seeds a generator itself: callers pass an RNG. The CLI
//! and the test suites use [`seeded`], a ChaCha8 stream keyed by a `u64`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::linalg::Vector;

/// Name recorded in reports next to the seed.
pub const GENERATOR_NAME: &str = "ChaCha8Rng::seed_from_u64";

pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform direction on the unit sphere of R^dim.
pub fn random_unit<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> Vector {
    loop {
        let v = Vector::from_raw((0..dim).map(|_| rng.sample(StandardNormal)).collect());
        if let Some(u) = v.normalized() {
            return u;
        }
    }
}

/// Standard-normal vector scaled by `scale`.
pub fn random_gaussian<R: Rng + ?Sized>(dim: usize, scale: f64, rng: &mut R) -> Vector {
    Vector::from_raw(
        (0..dim)
            .map(|_| scale * rng.sample::<f64, _>(StandardNormal))
            .collect(),
    )
}

/// Uniform point in the cube `[-half, half]^dim`.
pub fn random_in_cube<R: Rng + ?Sized>(dim: usize, half: f64, rng: &mut R) -> Vector {
    Vector::from_raw((0..dim).map(|_| rng.random_range(-half..=half)).collect())
}

/// `±e_i` for every axis.
pub fn signed_axes(dim: usize) -> Vec<Vector> {
    let mut out = Vec::with_capacity(2 * dim);
    for i in 0..dim {
        out.push(Vector::unit(dim, i));
        out.push(-&Vector::unit(dim, i));
    }
    out
}

/// Default cone probe set: `±e_i`, the normalized generators and pairwise
/// generator sums, then `random_count` uniform unit vectors.
pub fn cone_probes<R: Rng + ?Sized>(
    dim: usize,
    generators: &[Vector],
    random_count: usize,
    rng: &mut R,
) -> Vec<Vector> {
    let mut out = signed_axes(dim);
    for (i, g) in generators.iter().enumerate() {
        out.extend(g.normalized());
        for h in &generators[i + 1..] {
            out.extend((g + h).normalized());
        }
    }
    out.extend((0..random_count).map(|_| random_unit(dim, rng)));
    out
}

/// Deterministic direction set used for strict-interior tests: `±e_i` and
/// `±(1, .., 1)/sqrt(d)`.
pub fn interior_test_directions(dim: usize) -> Vec<Vector> {
    let mut out = signed_axes(dim);
    if dim > 1 {
        let diag = Vector::from_raw(vec![1.0 / (dim as f64).sqrt(); dim]);
        out.push(-&diag);
        out.push(diag);
    }
    out
}
