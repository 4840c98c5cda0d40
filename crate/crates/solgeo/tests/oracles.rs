//! Cross-module consistency oracles: properties that tie the geodesic
//! solver, the translation-curve machinery and the isoptic closed forms
//! together.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use solgeo::{
    angle_between, classify_surface, geodesic_distance, geodesic_triangle_angles,
    inverse_translation, isoptic_value, solve_geodesic_bvp, stabilizer_elements,
    translation_angle_at, FiberDirection, GeodesicArc, GeodesicInitial, IsopticSpec,
    LimitExtrema, SolPoint, SurfaceKind,
};

const PI: f64 = std::f64::consts::PI;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn random_point(r: &mut ChaCha8Rng, span: f64, zspan: f64) -> SolPoint<f64> {
    SolPoint::new(
        r.gen_range(-span..span),
        r.gen_range(-span..span),
        r.gen_range(-zspan..zspan),
    )
}

#[test]
fn geodesic_distance_is_symmetric() {
    let mut r = rng(41);
    for _ in 0..25 {
        let p = random_point(&mut r, 1.5, 1.2);
        let q = random_point(&mut r, 1.5, 1.2);
        if p.model_distance(&q) < 0.05 {
            continue;
        }
        let d1 = geodesic_distance(&p, &q).unwrap();
        let d2 = geodesic_distance(&q, &p).unwrap();
        assert!((d1 - d2).abs() < 1e-7, "{d1} vs {d2} for {p:?} {q:?}");
    }
}

#[test]
fn geodesic_distance_is_dihedral_equivariant() {
    let elems = stabilizer_elements::<f64>();
    let mut r = rng(42);
    for _ in 0..10 {
        let p = random_point(&mut r, 1.5, 1.2);
        if p.model_distance(&SolPoint::origin()) < 0.05 {
            continue;
        }
        let d = geodesic_distance(&SolPoint::origin(), &p).unwrap();
        for e in &elems {
            let q = e.apply(&p);
            let dq = geodesic_distance(&SolPoint::origin(), &q).unwrap();
            assert!((d - dq).abs() < 1e-8, "stabilizer changed distance");
        }
    }
}

#[test]
fn bvp_shooting_matches_in_plane_closed_forms() {
    // run the general shooting machinery against targets the fast paths
    // solve exactly; answers must agree
    let opts = solgeo::BvpOptions::default();
    for (x, z) in [(1.0f64, 0.5f64), (-0.8, -0.7), (1.5, 0.0)] {
        let target = SolPoint::new(x, 0.0, z);
        let fast = solve_geodesic_bvp(&target).unwrap();
        let shot = solgeo::geodesic::solve_geodesic_bvp_shooting(&target, &opts).unwrap();
        assert!((fast.length - shot.length).abs() < 1e-8);
        assert!(shot.endpoint().model_distance(&target) < 1e-8);
    }
}

#[test]
fn triangle_angles_are_isometry_invariant() {
    let mut r = rng(43);
    let elems = stabilizer_elements::<f64>();
    for _ in 0..5 {
        let a1 = random_point(&mut r, 1.0, 0.8);
        let a2 = random_point(&mut r, 1.0, 0.8);
        let a3 = random_point(&mut r, 1.0, 0.8);
        let Ok(base) = geodesic_triangle_angles(&a1, &a2, &a3) else {
            continue;
        };
        // common left translation
        let shift = solgeo::translation_to(&SolPoint::new(0.4, -0.9, 0.6));
        let moved = geodesic_triangle_angles(
            &shift.apply(&a1),
            &shift.apply(&a2),
            &shift.apply(&a3),
        )
        .unwrap();
        for (x, y) in base.as_array().iter().zip(moved.as_array()) {
            assert!((x - y).abs() < 1e-8, "translation changed an angle");
        }
        // one nontrivial stabilizer element
        let e = &elems[3];
        let rotated =
            geodesic_triangle_angles(&e.apply(&a1), &e.apply(&a2), &e.apply(&a3)).unwrap();
        for (x, y) in base.as_array().iter().zip(rotated.as_array()) {
            assert!((x - y).abs() < 1e-8, "stabilizer changed an angle");
        }
    }
}

#[test]
fn random_arcs_round_trip_through_the_bvp() {
    let mut r = rng(44);
    for _ in 0..40 {
        let alpha: f64 = r.gen_range(-PI..PI);
        let theta: f64 = r.gen_range(-1.3..1.3);
        let len: f64 = r.gen_range(0.2..4.0);
        let arc = GeodesicArc::new(GeodesicInitial::new(alpha, theta), len);
        let target = arc.endpoint();
        let solved = solve_geodesic_bvp(&target).unwrap();
        assert!(solved.endpoint().model_distance(&target) < 1e-8);
        assert!(solved.length <= len + 1e-8);
    }
}

#[test]
fn isoptic_surface_points_subtend_the_requested_angle() {
    let mut r = rng(45);
    let mut found = 0;
    while found < 40 {
        let spec = loop {
            let a = r.gen_range(-1.0..1.0);
            let b = r.gen_range(-1.0..1.0);
            let c = r.gen_range(-1.0..1.0);
            if a * a + b * b + c * c > 0.1 {
                break IsopticSpec::new(a, b, c, r.gen_range(0.6..PI - 0.6)).unwrap();
            }
        };
        // march outward along a random ray from near the segment midpoint
        let dir = {
            let u: f64 = r.gen_range(-1.0..1.0);
            let v: f64 = r.gen_range(-1.0..1.0);
            let w: f64 = r.gen_range(-1.0..1.0);
            let n = (u * u + v * v + w * w).sqrt().max(1e-9);
            [u / n, v / n, w / n]
        };
        let field = |t: f64| {
            let p = SolPoint::new(dir[0] * t, dir[1] * t, dir[2] * t);
            isoptic_value(&spec, &p)
        };
        let mut bracket = None;
        let mut prev_t = 0.05;
        let Ok(mut prev) = field(prev_t) else { continue };
        let mut t = prev_t + 0.05;
        while t < 6.0 {
            match field(t) {
                Ok(v) => {
                    if v == 0.0 || v.signum() != prev.signum() {
                        bracket = Some((prev_t, t));
                        break;
                    }
                    prev = v;
                    prev_t = t;
                }
                Err(_) => {}
            }
            t += 0.05;
        }
        let Some((mut lo, mut hi)) = bracket else { continue };
        for _ in 0..70 {
            let mid = 0.5 * (lo + hi);
            let Ok(v) = field(mid) else { break };
            if v.signum() == field(lo).unwrap().signum() {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let root = 0.5 * (lo + hi);
        let p = SolPoint::new(dir[0] * root, dir[1] * root, dir[2] * root);
        let ang = translation_angle_at(&p, &spec.endpoint1(), &spec.endpoint2()).unwrap();
        assert!(
            (ang - spec.alpha).abs() < 1e-6,
            "angle {} vs alpha {}",
            ang,
            spec.alpha
        );
        found += 1;
    }
}

#[test]
fn infinite_classification_is_witnessed_by_high_roots() {
    // a configuration that escapes along the positive fiber keeps producing
    // surface points at arbitrarily large heights
    let spec = IsopticSpec::new(0.6, 0.4, 1.0, PI / 3.0).unwrap();
    let cl = classify_surface(&spec);
    assert!(matches!(
        cl.kind,
        SurfaceKind::InfinitePositiveFiber | SurfaceKind::InfiniteBoth
    ));
    let LimitExtrema::Triple { x2, x3, .. } = solgeo::limit_extrema(&spec, FiberDirection::Positive)
    else {
        panic!("expected triple extrema");
    };
    // the limit function dips below cos(alpha) near x3 and reaches 1 at x2,
    // so every horizontal slice at large z crosses the surface in between
    let ca = spec.alpha.cos();
    for z in [10.0, 20.0, 40.0] {
        let f = |x: f64| isoptic_value(&spec, &SolPoint::new(x, 0.0, z)).unwrap();
        let (mut lo, mut hi) = (x3, x2);
        assert!(
            f(lo) > 0.0 && f(hi) < 0.0,
            "slice z={z} lost the bracket: {} {}",
            f(lo),
            f(hi)
        );
        for _ in 0..60 {
            let mid = 0.5 * (lo + hi);
            if f(mid) > 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let root = 0.5 * (lo + hi);
        let ang = translation_angle_at(
            &SolPoint::new(root, 0.0, z),
            &spec.endpoint1(),
            &spec.endpoint2(),
        )
        .unwrap();
        assert!((ang.cos() - ca).abs() < 1e-6, "z={z}");
    }
}

#[test]
fn tangent_angles_agree_with_closed_quotient_through_origin_pullback() {
    // the same construction, expressed through the triangle-angle oracle
    let mut r = rng(46);
    let mut checked = 0;
    while checked < 100 {
        let a = r.gen_range(-1.0..1.0);
        let b = r.gen_range(-1.0..1.0);
        let c = r.gen_range(-1.0..1.0);
        if a * a + b * b + c * c < 0.1 {
            continue;
        }
        let spec = IsopticSpec::new(a, b, c, 1.0).unwrap();
        let p = random_point(&mut r, 2.0, 1.5);
        if p.model_distance(&spec.endpoint1()) < 0.05
            || p.model_distance(&spec.endpoint2()) < 0.05
        {
            continue;
        }
        let oracle = translation_angle_at(&p, &spec.endpoint1(), &spec.endpoint2()).unwrap();
        let quotient = 1.0f64.cos() - isoptic_value(&spec, &p).unwrap();
        assert!((quotient - oracle.cos()).abs() < 1e-9);
        checked += 1;
    }
}

#[test]
fn pulled_back_tangents_have_unit_angle_consistency() {
    // angle between geodesic initial tangents equals the angle the
    // triangle routine reports at a vertex
    let mut r = rng(47);
    for _ in 0..5 {
        let a1 = random_point(&mut r, 1.2, 0.9);
        let a2 = random_point(&mut r, 1.2, 0.9);
        let a3 = random_point(&mut r, 1.2, 0.9);
        let Ok(tri) = geodesic_triangle_angles(&a1, &a2, &a3) else {
            continue;
        };
        let pull = inverse_translation(&a1);
        let q2 = pull.apply(&a2);
        let q3 = pull.apply(&a3);
        let t2 = solve_geodesic_bvp(&q2).unwrap().tangent(0.0).unwrap();
        let t3 = solve_geodesic_bvp(&q3).unwrap().tangent(0.0).unwrap();
        let direct = angle_between(&t2, &t3).unwrap();
        assert!((direct - tri.omega1).abs() < 1e-10);
    }
}
