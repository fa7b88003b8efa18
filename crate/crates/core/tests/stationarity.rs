use brocard::centers::standard_centers;
use brocard::porism::{closure_residuals, dh_from_ru, vertices_at};
use brocard::{brocard_circle, Circle64, Error, Params64, Point64, Scene64};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn scene(r: f64, u: f64) -> Scene64 {
    Scene64::new(Params64::new(r, u).unwrap()).unwrap()
}

/// Every sampled member, measured from its vertices alone, reproduces the
/// scene's closed-form stationary points.
fn check_stationary(s: &Scene64, samples: usize, seed: u64) {
    let iso = dh_from_ru(&s.params);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut used = 0;
    while used < samples {
        let t = rng.gen_range(0.0..std::f64::consts::TAU);
        let tri = match vertices_at(&iso, t) {
            Ok(tri) => tri,
            Err(Error::ParametrizationSingularity { .. }) => continue,
            Err(e) => panic!("{e}"),
        };
        used += 1;
        assert!(closure_residuals(s, &tri).iter().all(|&r| r <= 1e-9));
        let c = standard_centers(&tri).unwrap();
        assert!((c.angle.cot - s.params.u).abs() <= 1e-10);
        for (name, got, want) in [
            ("omega1", c.brocard.omega1, s.omega1),
            ("omega2", c.brocard.omega2, s.omega2),
            ("x3", c.x3, s.x3),
            ("x6", c.x6, s.x6),
            ("x15", c.x15, s.x15),
            ("x16", c.x16, s.x16),
            ("x39", c.x39, s.x39),
            ("x182", c.x182, s.x182),
            ("x187", c.x187, s.x187),
            ("x574", c.x574, s.x574),
        ] {
            let scale = want.norm().max(1.0);
            assert!(
                got.distance(want) <= 1e-9 * scale,
                "{name} at t={t}: {got:?} vs {want:?}"
            );
        }
        let k = brocard_circle(&tri).unwrap();
        assert!(k.center.distance(s.brocard_circle.center) <= 1e-9);
        assert!((k.radius - s.brocard_circle.radius).abs() <= 1e-9);
    }
}

#[test]
fn fixture_members_are_stationary() {
    check_stationary(&scene(1.25, 1.75), 200, 1);
}

#[test]
fn assorted_scenes_are_stationary() {
    for (i, &(r, u)) in [(1.0, 2.0), (0.5, 3.5), (2.0, 1.8), (1.0, 6.0)]
        .iter()
        .enumerate()
    {
        check_stationary(&scene(r, u), 50, 10 + i as u64);
    }
}

#[test]
fn focal_separation() {
    for &(r, u) in &[(1.25, 1.75), (1.0, 2.0), (3.0, 4.0)] {
        let s = scene(r, u);
        let (a, b) = (s.inellipse.semi_major, s.inellipse.semi_minor);
        assert!((s.omega1.distance(s.omega2) - 2.0 * (a * a - b * b).sqrt()).abs() <= 1e-10);
        let (f1, f2) = s.inellipse.foci();
        assert!(f1.distance(s.omega2) < 1e-14 && f2.distance(s.omega1) < 1e-14);
    }
}

#[test]
fn isodynamic_beltrami_triangles_are_equilateral() {
    for &(r, u) in &[(1.25, 1.75), (1.0, 2.0), (3.0, 9.0)] {
        let s = scene(r, u);
        let rho = s.beltrami_radius;
        for x in [s.x15, s.x16] {
            let d = [
                x.distance(s.beltrami_p2),
                x.distance(s.beltrami_u2),
                s.beltrami_p2.distance(s.beltrami_u2),
            ];
            assert!(
                d.iter().all(|&v| (v - rho).abs() <= 1e-9 * rho.max(1.0)),
                "{d:?} vs {rho}"
            );
        }
    }
}

#[test]
fn beltrami_circles_carry_isodynamic_and_brocard_points() {
    let s = scene(1.25, 1.75);
    let c1 = Circle64::through(s.x15, s.x16, s.omega1).unwrap();
    assert!(c1.center.distance(Point64::new(-5.0, -8.75)) < 1e-9);
    assert!((c1.radius - 10.0).abs() < 1e-9);
    for (c, o) in [(s.beltrami_c1(), s.omega1), (s.beltrami_c2(), s.omega2)] {
        for p in [s.x15, s.x16, o] {
            assert!(c.distance_residual(p) <= 1e-9);
        }
    }
    // Beltrami points are the circumcircle inverses of the Brocard points
    let inv1 = s.circumcircle.invert(s.omega1).unwrap();
    let inv2 = s.circumcircle.invert(s.omega2).unwrap();
    assert!(inv2.distance(s.beltrami_p2) < 1e-12 && inv1.distance(s.beltrami_u2) < 1e-12);
}

#[test]
fn fixture_x574_two_routes() {
    let s = scene(1.25, 1.75);
    let want = -35.0 / 388.0;
    assert!((s.x574.y - want).abs() < 1e-11);
    assert!((want - -0.090_206_185).abs() < 1e-9);
    let tri = vertices_at(&dh_from_ru(&s.params), 1.0).unwrap();
    let c = standard_centers(&tri).unwrap();
    assert!(c.x574.distance(Point64::new(0.0, want)) < 1e-11);
}
