use std::f64::consts::FRAC_PI_3;

use brocard::continuous::{
    e_field_directions, embed_step_cot_rational, envelope_residual, gamma_nesting_residual,
    measured_child, similarity_residual,
};
use brocard::{
    beltrami_midpoint_check, ellipse_et, embed_step, envelope_points, foci_on_arcs_check,
    nesting_residual, porism_bt, t_from_u, Params64, Point64,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn grid(n: usize, lo: f64, hi: f64) -> impl Iterator<Item = f64> {
    (0..n).map(move |i| lo + (hi - lo) * (i as f64 + 0.5) / n as f64)
}

#[test]
fn isodynamic_points_are_fixed() {
    let h = 3f64.sqrt() / 2.0;
    for t in grid(100, 0.0, FRAC_PI_3) {
        let s = porism_bt(t).unwrap().scene;
        assert!(s.x15.distance(Point64::new(0.0, -h)) <= 1e-10, "{t}");
        assert!(
            s.x16.distance(Point64::new(0.0, h)) <= 1e-10 * s.x16.norm().max(1.0),
            "{t}"
        );
        assert!(s.beltrami_p2.distance(Point64::new(-0.5, 0.0)) <= 1e-10);
        assert!(s.beltrami_u2.distance(Point64::new(0.5, 0.0)) <= 1e-10);
    }
}

#[test]
fn posed_scene_matches_closed_forms() {
    for t in grid(50, 0.0, FRAC_PI_3) {
        let b = porism_bt(t).unwrap();
        let s = b.scene;
        assert!(s.inellipse.center.distance(b.ellipse.center) <= 1e-10);
        assert!((s.inellipse.semi_major - b.ellipse.semi_major).abs() <= 1e-10);
        assert!((s.inellipse.semi_minor - b.ellipse.semi_minor).abs() <= 1e-10);
        assert!(s.omega1.distance(b.foci.0) <= 1e-10 && s.omega2.distance(b.foci.1) <= 1e-10);
        assert!(s.x3.distance(b.x3) <= 1e-10 * b.x3.norm().max(1.0));
        assert!(
            s.brocard_circle.center.distance(b.brocard_circle.center)
                <= 1e-10 * b.brocard_circle.radius.max(1.0)
        );
        assert!((b.eccentricity - s.inellipse.eccentricity()).abs() <= 1e-10);
        assert!((b.omega - s.params.omega()).abs() <= 1e-12);
    }
}

#[test]
fn members_of_bt_close_on_et() {
    let b = porism_bt(0.6).unwrap();
    for k in 0..40 {
        let Ok(tri) = b.scene.member(0.1 + k as f64 * 0.15) else {
            continue;
        };
        for l in tri.side_lines() {
            assert!(b.ellipse.tangency_residual(&l) <= 1e-9);
        }
        for v in tri.vertices() {
            assert!(b.gamma.distance_residual(v) <= 1e-10);
        }
    }
}

#[test]
fn second_brocard_triangles_land_in_the_embedded_member() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for _ in 0..50 {
        let t = rng.gen_range(0.05..FRAC_PI_3 - 0.05);
        let Ok((r, u)) = measured_child(t, rng.gen_range(0.0..std::f64::consts::TAU)) else {
            continue;
        };
        let next = porism_bt(embed_step(t).unwrap()).unwrap();
        assert!(
            (r - next.r).abs() <= 1e-8 && (u - next.u).abs() <= 1e-8,
            "{t}"
        );
        let tp = embed_step(t).unwrap();
        assert!(tp > t && tp < FRAC_PI_3);
        assert!((1.0 / tp.tan() - embed_step_cot_rational(t)).abs() <= 1e-11);
    }
}

#[test]
fn envelope_lies_on_isodynamic_ellipse() {
    let t0 = 0.6f64.acos();
    for t in grid(100, 0.0, t0) {
        let (p, q) = envelope_points(t).unwrap();
        assert!(envelope_residual(p).abs() <= 1e-10 && envelope_residual(q).abs() <= 1e-10);
        let e = ellipse_et(t).unwrap();
        assert!(e.implicit_residual(p).abs() <= 1e-9);
    }
}

#[test]
fn gamma_and_k_nesting_random_pairs() {
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    let (mut worst_g, mut worst_k) = (f64::INFINITY, f64::INFINITY);
    for _ in 0..200 {
        let a = rng.gen_range(1e-3..FRAC_PI_3);
        let b = rng.gen_range(1e-3..FRAC_PI_3);
        let (v, s) = if a < b { (a, b) } else { (b, a) };
        worst_g = worst_g.min(gamma_nesting_residual(s, v).unwrap());
        worst_k = worst_k.min(nesting_residual(s, v).unwrap());
    }
    assert!(worst_g >= -1e-12 && worst_k >= -1e-12);
}

#[test]
fn remark_identities_on_a_grid() {
    for t in grid(100, 0.0, FRAC_PI_3) {
        assert!(beltrami_midpoint_check(t).unwrap() <= 1e-9, "{t}");
        let (a, b) = foci_on_arcs_check(t).unwrap();
        assert!(a <= 1e-12 && b <= 1e-12);
    }
}

#[test]
fn shape_monotonicity_and_concavity() {
    let ts: Vec<f64> = grid(400, 0.0, FRAC_PI_3).collect();
    let es: Vec<_> = ts.iter().map(|&t| ellipse_et(t).unwrap()).collect();
    let a: Vec<f64> = es.iter().map(|e| e.semi_major).collect();
    let b: Vec<f64> = es.iter().map(|e| e.semi_minor).collect();
    let ecc: Vec<f64> = ts
        .iter()
        .map(|&t| porism_bt(t).unwrap().eccentricity)
        .collect();
    assert!(a.windows(2).all(|w| w[1] < w[0]));
    assert!(ecc.windows(2).all(|w| w[1] < w[0]));
    assert!(a.windows(3).all(|w| w[0] - 2.0 * w[1] + w[2] <= 1e-6));
    assert!(b.windows(3).all(|w| w[0] - 2.0 * w[1] + w[2] <= 1e-6));
    let imax = (0..b.len()).max_by(|&i, &j| b[i].total_cmp(&b[j])).unwrap();
    assert!(imax > 0 && imax < b.len() - 1);
}

/// The implicit ellipse-family form agrees with actual tangents of `E_t`.
#[test]
fn e_field_matches_ellipse_tangents() {
    for t in grid(12, 0.05, FRAC_PI_3 - 0.05) {
        let e = ellipse_et(t).unwrap();
        let (rx, ry) = e.extents();
        for k in 0..16 {
            let th = 0.1 + k as f64 * 0.39;
            let p = e.point_at(th);
            let tangent = Point64::new(-rx * th.sin(), ry * th.cos())
                .normalized()
                .unwrap();
            let dirs = e_field_directions(p);
            let best = dirs
                .iter()
                .map(|d| d.cross(tangent).abs())
                .fold(f64::INFINITY, f64::min);
            assert!(best <= 1e-7, "t={t} th={th}: {dirs:?} vs {tangent:?}");
        }
    }
}

#[test]
fn similarity() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for _ in 0..50 {
        let p = Params64::new(rng.gen_range(0.1..10.0), rng.gen_range(1.74..30.0)).unwrap();
        assert!(similarity_residual(p).unwrap() <= 1e-9);
    }
    assert!(t_from_u(1.5f64).is_err());
}
