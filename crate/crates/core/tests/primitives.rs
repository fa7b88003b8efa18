use brocard::porism::{dh_from_ru, isosceles_foci, ru_from_dh, scene_for_isosceles};
use brocard::{
    brocard_points_by_construction, ru_from_axes, vertices_at, Circle32, Circle64, Params32,
    Params64, Point64, Pose64, Scene32, Triangle64,
};
use proptest::prelude::*;

fn point() -> impl Strategy<Value = Point64> {
    (-50.0f64..50.0, -50.0f64..50.0).prop_map(|(x, y)| Point64::new(x, y))
}

fn pose() -> impl Strategy<Value = Pose64> {
    (point(), -6.3f64..6.3, any::<bool>(), 0.1f64..10.0)
        .prop_map(|(t, r, m, s)| Pose64::new(t, r, m, s).unwrap())
}

proptest! {
    #[test]
    fn pose_inverse_round_trips(p in pose(), q in point()) {
        let back = p.inverse().apply(p.apply(q));
        prop_assert!(back.distance(q) <= 1e-10 * (1.0 + q.norm()));
    }

    #[test]
    fn pose_compose_is_sequential(a in pose(), b in pose(), q in point()) {
        let lhs = a.compose(&b).apply(q);
        let rhs = a.apply(b.apply(q));
        prop_assert!(lhs.distance(rhs) <= 1e-9 * (1.0 + rhs.norm()));
    }

    #[test]
    fn inversion_is_an_involution(c in point(), r in 0.1f64..20.0, q in point()) {
        let circle = Circle64::new(c, r).unwrap();
        prop_assume!(q.distance(c) > 1e-3);
        let back = circle.invert(circle.invert(q).unwrap()).unwrap();
        prop_assert!(back.distance(q) <= 1e-8 * (1.0 + q.norm()));
    }

    #[test]
    fn axes_round_trip(r in 1e-2f64..1e2, u in 1.7321f64..1e2) {
        let p = Params64::new(r, u).unwrap();
        let (a, b) = p.inellipse_axes();
        let q = ru_from_axes(a, b).unwrap();
        prop_assert!((q.r - r).abs() <= 1e-12 * r);
        prop_assert!((q.u - u).abs() <= 1e-12 * u);
    }

    #[test]
    fn dh_round_trip(r in 1e-2f64..1e2, u in 1.7321f64..1e2) {
        let p = Params64::new(r, u).unwrap();
        let q = ru_from_dh(&dh_from_ru(&p));
        prop_assert!((q.r - r).abs() <= 1e-12 * r);
        prop_assert!((q.u - u).abs() <= 1e-12 * u);
    }

    #[test]
    fn construction_matches_closed_form(d in 0.2f64..3.0, h in 0.2f64..3.0, t in 0.0f64..std::f64::consts::TAU) {
        let i = brocard::IsoscelesParams::new(d, h).unwrap();
        prop_assume!(i.u() > 3f64.sqrt() + 1e-3);
        let s = scene_for_isosceles(&i).unwrap();
        let (f1, f2) = isosceles_foci(&i);
        let Ok(tri) = vertices_at(&i, t) else { return Ok(()) };
        let bp = brocard_points_by_construction(&tri).unwrap();
        prop_assert!(bp.concurrency_defect <= 1e-9);
        prop_assert!(bp.omega1.distance(s.omega1) <= 1e-9 && bp.omega2.distance(s.omega2) <= 1e-9);
        prop_assert!(bp.omega1.distance(f1) <= 1e-9 && bp.omega2.distance(f2) <= 1e-9);
    }
}

#[test]
fn collinear_points_have_no_circle() {
    let p = |x: f64, y: f64| Point64::new(x, y);
    assert!(Circle64::through(p(0.0, 0.0), p(1.0, 1.0), p(2.0, 2.0)).is_err());
    assert!(Triangle64::new(p(0.0, 0.0), p(1.0, 1.0), p(2.0, 2.0)).is_err());
}

#[test]
fn single_precision_kernel() {
    let s = Scene32::new(Params32::new(1.25, 1.75).unwrap()).unwrap();
    assert!((s.omega1.x - 1.0 / 13.0).abs() < 1e-5);
    assert!((s.inellipse.semi_minor - 8.0 / 13.0).abs() < 1e-6);
    let c: Circle32 = s.beltrami_c1();
    assert!((c.radius - 10.0).abs() < 1e-3);
    let tri = vertices_at(&s.isosceles(), 0.7f32).unwrap();
    let bp = brocard_points_by_construction(&tri).unwrap();
    assert!(bp.omega1.distance(s.omega1) < 1e-4);
}
