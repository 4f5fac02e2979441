mod common;

use common::*;
use conecert::probes::{random_unit, seeded};
use conecert::{
    anf_membership, convexity_check_anf, convexity_check_body, is_anf_witness, project_onto_hull,
    translated_normal_cones_disjoint, ConvexBody, Error, SampledSet, Vector,
};
use proptest::prelude::*;
use rand::Rng;
use std::f64::consts::TAU;

fn v(c: &[f64]) -> Vector {
    Vector::new(c.to_vec()).unwrap()
}

fn square() -> SampledSet {
    SampledSet::new(
        vec![v(&[0.0, 0.0]), v(&[1.0, 0.0]), v(&[1.0, 1.0]), v(&[0.0, 1.0])],
        tol(),
    )
    .unwrap()
}

fn circle(n: usize, r: f64) -> Vec<Vector> {
    (0..n)
        .map(|k| {
            let a = TAU * k as f64 / n as f64;
            v(&[r * a.cos(), r * a.sin()])
        })
        .collect()
}

fn random_polytope(dim: usize, n: usize, rng: &mut rand_chacha::ChaCha8Rng) -> SampledSet {
    SampledSet::new((0..n).map(|_| gaussian(dim, rng)).collect(), tol()).unwrap()
}

#[test]
fn tangent_cone_examples() {
    let t = tol();
    let sq = square();
    let tc = sq.tangent_cone(&v(&[0.0, 0.0])).unwrap();
    assert!(tc.contains(&v(&[2.0, 3.0]), &t).unwrap());
    assert!(!tc.contains(&v(&[-1.0, 0.5]), &t).unwrap());
    let seg = SampledSet::new(vec![v(&[-1.0, 0.0]), v(&[0.0, 0.0]), v(&[1.0, 0.0])], t).unwrap();
    let tc = seg.tangent_cone(&v(&[0.0, 0.0])).unwrap();
    assert_eq!(tc.lineality_space(&t).unwrap().rank(), 1);
    assert!(!tc.contains(&v(&[0.0, 1.0]), &t).unwrap());
    assert!(matches!(sq.tangent_cone(&v(&[0.5, 0.5])), Err(Error::Precondition(_))));
}

#[test]
fn disk_normal_within_angular_step() {
    let n = 50;
    let s = SampledSet::new(circle(n, 1.0), tol()).unwrap();
    let step = TAU / n as f64;
    for x in s.points().to_vec() {
        let cert = s.support_certificate(&x).unwrap().expect("circle points are support points");
        let angle = cert.normal.dot(&x).clamp(-1.0, 1.0).acos();
        assert!(angle <= step, "normal off by {angle}");
        let normal = s.normal_cone(&x).unwrap();
        assert!(normal.contains(&x, &tol()).unwrap());
        assert!(!normal.contains(&-&x, &tol()).unwrap());
    }
}

#[test]
fn normal_cone_examples() {
    let t = tol();
    let sq = square();
    let n = sq.normal_cone(&v(&[0.0, 0.0])).unwrap();
    assert!(n.contains(&v(&[-1.0, -1.0]), &t).unwrap());
    assert!(!n.contains(&v(&[1.0, 0.0]), &t).unwrap());
    let face = SampledSet::new(
        vec![v(&[0.0, 0.0]), v(&[0.5, 0.0]), v(&[1.0, 0.0]), v(&[1.0, 1.0]), v(&[0.0, 1.0])],
        t,
    )
    .unwrap();
    let n = face.normal_cone(&v(&[0.5, 0.0])).unwrap();
    let mut rng = seeded(40);
    for _ in 0..500 {
        let f = random_unit(2, &mut rng);
        let on_ray = f[0].abs() < 1e-9 && f[1] < 0.0;
        if f[0].abs() > 1e-6 || on_ray {
            assert_eq!(n.contains(&f, &t).unwrap(), on_ray);
        }
    }
    assert!(n.contains(&v(&[0.0, -1.0]), &t).unwrap());
}

#[test]
fn normal_cone_agrees_with_projection() {
    let t = tol();
    let mut rng = seeded(41);
    for _ in 0..30 {
        let s = random_polytope(3, 12, &mut rng);
        let body = ConvexBody::new(s.clone(), conecert::linalg::centroid(s.points()).unwrap());
        let Ok(body) = body else { continue };
        let y = unit(3, &mut rng).scaled(6.0);
        let p = project_onto_hull(&body, &y).unwrap();
        if let Some(k) = s.index_of(&p.point) {
            let x = s.points()[k].clone();
            assert!(s.normal_cone(&x).unwrap().contains(&(&y - &x), &t).unwrap());
        }
    }
}

#[test]
fn extreme_points_match_leave_one_out() {
    let mut rng = seeded(42);
    let s = random_polytope(4, 100, &mut rng);
    for (k, x) in s.points().iter().enumerate() {
        assert_eq!(s.is_extreme_point(x).unwrap(), extreme_by_lp(s.points(), k), "point {k}");
        let pointed = s.tangent_cone(x).unwrap().is_pointed(&tol()).unwrap();
        assert_eq!(s.is_extreme_point(x).unwrap(), pointed);
    }
    let cube: Vec<Vector> = (0..8)
        .map(|m| v(&[(m & 1) as f64, ((m >> 1) & 1) as f64, ((m >> 2) & 1) as f64]))
        .chain([v(&[0.5, 0.0, 0.0])])
        .collect();
    let c = SampledSet::new(cube, tol()).unwrap();
    assert!(c.is_extreme_point(&v(&[0.0, 0.0, 0.0])).unwrap());
    assert!(!c.is_extreme_point(&v(&[0.5, 0.0, 0.0])).unwrap());
}

#[test]
fn support_certificate_examples() {
    let mut rng = seeded(43);
    let s = random_polytope(3, 30, &mut rng);
    for (k, x) in s.points().iter().enumerate() {
        if extreme_by_lp(s.points(), k) {
            assert!(s.support_certificate(x).unwrap().is_some());
        }
    }
    let mut pts = circle(6, 1.0);
    pts.push(v(&[0.0, 0.0]));
    let hex = SampledSet::new(pts, tol()).unwrap();
    assert!(hex.support_certificate(&v(&[0.0, 0.0])).unwrap().is_none());
}

#[test]
fn prism_ridge_normal_is_orthogonal_to_ridge() {
    let tri = [[0.0, 0.0], [2.0, 0.0], [0.0, 2.0]];
    let mut pts: Vec<Vector> = tri
        .iter()
        .flat_map(|p| [v(&[p[0], p[1], 0.0]), v(&[p[0], p[1], 1.0])])
        .collect();
    // Midpoint of the vertical edge over (2,0).
    let ridge = v(&[2.0, 0.0, 0.5]);
    pts.push(ridge.clone());
    let s = SampledSet::new(pts, tol()).unwrap();
    let tc = s.tangent_cone(&ridge).unwrap();
    assert!(!tc.is_pointed(&tol()).unwrap());
    assert!(!s.is_extreme_point(&ridge).unwrap());
    let cert = s.support_certificate(&ridge).unwrap().expect("ridge points are support points");
    assert!(cert.normal[2].abs() < 1e-9, "normal {}", cert.normal);
    // The normal lies between the two adjacent face normals (0,-1) and (1,1)/sqrt2.
    assert!(cert.normal[0] >= -1e-9 && cert.normal[0] + cert.normal[1] >= -1e-9);
}

#[test]
fn projection_examples() {
    let sq = square();
    let body = ConvexBody::new(sq, v(&[0.5, 0.5])).unwrap();
    let p = project_onto_hull(&body, &v(&[2.0, 0.5])).unwrap();
    assert!(p.point.distance(&v(&[1.0, 0.5])) < 1e-12);
    let p = project_onto_hull(&body, &v(&[2.0, 2.0])).unwrap();
    assert!(p.point.distance(&v(&[1.0, 1.0])) < 1e-12);
    let cert = p.certificate.unwrap();
    let s2 = std::f64::consts::FRAC_1_SQRT_2;
    assert!(cert.normal.distance(&v(&[s2, s2])) < 1e-12);
    let inside = project_onto_hull(&body, &v(&[0.2, 0.3])).unwrap();
    assert_eq!(inside.point, v(&[0.2, 0.3]));
    assert!(inside.certificate.is_none());
}

#[test]
fn projection_distance_matches_brute_force() {
    let mut rng = seeded(44);
    for _ in 0..100 {
        let n = rng.random_range(4..=8);
        let s = random_polytope(3, n, &mut rng);
        let y = unit(3, &mut rng).scaled(rng.random_range(2.0..5.0));
        if s.hull_contains(&y).unwrap() {
            continue;
        }
        let p = s.project(&y).unwrap();
        let exact = brute_force_distance(s.points(), &y);
        assert!((p.point.distance(&y) - exact).abs() < 1e-4, "{} vs {exact}", p.point.distance(&y));
    }
}

#[test]
fn anf_examples() {
    let sq = square();
    let corner = v(&[1.0, 0.0]);
    assert_eq!(anf_membership(&sq, &corner, 0.0).unwrap().unwrap().point, corner);
    assert_eq!(anf_membership(&sq, &v(&[2.0, 2.0]), 0.0).unwrap().unwrap().point, v(&[1.0, 1.0]));
}

#[test]
fn projection_point_is_anf_witness() {
    let mut rng = seeded(45);
    let s = random_polytope(3, 15, &mut rng);
    let body = ConvexBody::new(s.clone(), conecert::linalg::centroid(s.points()).unwrap()).unwrap();
    let mut checked = 0;
    while checked < 100 {
        let z = unit(3, &mut rng).scaled(rng.random_range(3.0..6.0));
        if s.hull_contains(&z).unwrap() {
            continue;
        }
        let p = project_onto_hull(&body, &z).unwrap().point;
        let mut pts = s.points().to_vec();
        if s.index_of(&p).is_none() {
            pts.push(p.clone());
        }
        let ctx = SampledSet::new(pts, tol()).unwrap();
        assert!(is_anf_witness(&ctx, &p, &z, 0.0).unwrap());
        let w = anf_membership(&ctx, &z, 0.0).unwrap().unwrap();
        assert!(w.point.distance(&p) < 1e-7, "{} vs {p}", w.point);
        checked += 1;
    }
}

#[test]
fn translated_normal_cones_examples() {
    let sq = square();
    let ring = circle(360, 3.0);
    let r = translated_normal_cones_disjoint(&sq, &v(&[0.0, 0.0]), &v(&[1.0, 0.0]), &ring).unwrap();
    assert!(r.disjoint());
    let same = translated_normal_cones_disjoint(&sq, &v(&[0.0, 0.0]), &v(&[0.0, 0.0]), &ring);
    assert!(matches!(same, Err(Error::Precondition(_))));

    let mut rng = seeded(46);
    for _ in 0..5 {
        let s = random_polytope(2, 8, &mut rng);
        let support: Vec<Vector> = s
            .points()
            .iter()
            .filter(|x| s.support_certificate(x).unwrap().is_some())
            .cloned()
            .collect();
        let probes: Vec<Vector> = (0..1000).map(|_| gaussian(2, &mut rng).scaled(4.0)).collect();
        for (i, a) in support.iter().enumerate() {
            for b in &support[i + 1..] {
                assert!(translated_normal_cones_disjoint(&s, a, b, &probes).unwrap().disjoint());
            }
        }
    }
}

#[test]
fn body_check_examples() {
    let mut cube: Vec<Vector> = (0..8)
        .map(|m| v(&[(m & 1) as f64, ((m >> 1) & 1) as f64, ((m >> 2) & 1) as f64]))
        .collect();
    for axis in 0..3 {
        for side in [0.0, 1.0] {
            let mut c = [0.5; 3];
            c[axis] = side;
            cube.push(v(&c));
        }
    }
    let s = SampledSet::new(cube.clone(), tol()).unwrap();
    let body = ConvexBody::new(s, v(&[0.5, 0.5, 0.5])).unwrap();
    assert!(convexity_check_body(&body, &cube, &[]).unwrap().convex_consistent());

    // Star polygon: reflex points are exactly the non-extreme ones.
    let k = 5;
    let star: Vec<Vector> = (0..2 * k)
        .map(|j| {
            let r = if j % 2 == 0 { 3.0 } else { 1.0 };
            let a = TAU * j as f64 / (2 * k) as f64;
            v(&[r * a.cos(), r * a.sin()])
        })
        .collect();
    let s = SampledSet::new(star.clone(), tol()).unwrap();
    let body = ConvexBody::new(s, v(&[0.0, 0.0])).unwrap();
    let report = convexity_check_body(&body, &star, &[]).unwrap();
    assert!(!report.convex_consistent());
    for (j, e) in report.entries.iter().enumerate() {
        assert_eq!(e.certificate.is_some(), extreme_by_lp(&star, j), "point {j}");
    }

    // Annulus: outer ring certifies, inner deficit probes survive every half-space.
    let mut pts = circle(24, 2.0);
    pts.extend(circle(12, 1.0));
    let outer = circle(24, 2.0);
    let s = SampledSet::new(pts, tol()).unwrap();
    let body = ConvexBody::new(s, v(&[1.5, 0.0])).unwrap();
    let without = convexity_check_body(&body, &outer, &[]).unwrap();
    assert!(without.all_certified() && without.convex_consistent());
    let holes = vec![v(&[0.0, 0.0]), v(&[0.3, -0.2])];
    let with = convexity_check_body(&body, &outer, &holes).unwrap();
    assert!(with.all_certified());
    assert!(!with.convex_consistent());
    assert_eq!(with.captured_deficits, vec![0, 1]);
}

#[test]
fn anf_check_examples() {
    let angle = conecert::support::DEFAULT_ANF_ANGLE;
    let ring = circle(72, 5.0);
    let seg = SampledSet::new((0..=10).map(|k| v(&[k as f64 / 10.0, 0.0])).collect(), tol()).unwrap();
    assert!(convexity_check_anf(&seg, &ring, angle).unwrap().covered());
    let tri = SampledSet::new(vec![v(&[0.0, 0.0]), v(&[1.0, 0.0]), v(&[0.0, 1.0])], tol()).unwrap();
    assert!(convexity_check_anf(&tri, &circle(72, 50.0), angle).unwrap().covered());
    // L-shaped polyline; the first probe faces the concavity, the last is in the hull.
    let mut l: Vec<Vector> = (0..=10).map(|k| v(&[k as f64 / 10.0, 0.0])).collect();
    l.extend((1..=10).map(|k| v(&[0.0, k as f64 / 10.0])));
    let l = SampledSet::new(l, tol()).unwrap();
    let probes = vec![v(&[0.6, 0.6]), v(&[-1.0, -1.0]), v(&[2.0, 0.0]), v(&[0.2, 0.2])];
    let report = convexity_check_anf(&l, &probes, angle).unwrap();
    assert!(!report.covered());
    assert_eq!(report.uncovered(), vec![0]);
}

fn cloud_strategy() -> impl Strategy<Value = Vec<Vector>> {
    prop::collection::vec(
        prop::collection::vec(-3.0f64..3.0, 3).prop_map(|c| Vector::new(c).unwrap()),
        5..12,
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn certificates_bound_the_sample(pts in cloud_strategy()) {
        let s = SampledSet::new(pts, tol()).unwrap();
        for x in s.points() {
            if let Some(c) = s.support_certificate(x).unwrap() {
                prop_assert!((c.normal.norm() - 1.0).abs() < 1e-12);
                for p in s.points() {
                    prop_assert!(c.half_space_contains(p, &tol()));
                }
            }
        }
    }

    #[test]
    fn projection_satisfies_variational_inequality(pts in cloud_strategy(), seed in any::<u64>()) {
        let s = SampledSet::new(pts, tol()).unwrap();
        let mut rng = seeded(seed);
        let y = unit(3, &mut rng).scaled(8.0);
        let p = s.project(&y).unwrap();
        let r = &y - &p.point;
        for c in s.points() {
            prop_assert!(r.dot(&(c - &p.point)) <= tol().tol_mem * (1.0 + r.norm()));
        }
        // No grid point is meaningfully closer.
        let bound = grid_distance_bound(s.points(), &y, 12);
        prop_assert!(r.norm() <= bound + tol().tol_fix);
        prop_assert!(hull_contains_lp(s.points(), &p.point, 1e-7));
    }
}
