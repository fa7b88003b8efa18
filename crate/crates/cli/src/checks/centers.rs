use std::f64::consts::{FRAC_PI_2, TAU};

use brocard::centers::{second_brocard_triangle, standard_centers, CenterFunction};
use brocard::porism::{isosceles_foci, scene_for_isosceles, vertices_at};
use brocard::scalar::{root_u_sq_minus_3, u_sq_minus_3};
use brocard::{
    brocard_points_by_construction, center_from_trilinear, Circle64, Isosceles64, Point64, Pose64,
    Scene64, Triangle64,
};
use rand::Rng;

use super::{random_member, random_scene, rel, Check, Ctx, Outcome, Tol};

fn construction(ctx: &Ctx) -> brocard::Result<Outcome> {
    let mut rng = ctx.rng();
    let mut out = Outcome::default();
    let n = ctx.samples(100);
    while out.samples < n {
        let i = Isosceles64::new(rng.gen_range(0.2..3.0), rng.gen_range(0.2..3.0))?;
        if i.u() <= 3f64.sqrt() + 1e-3 {
            continue;
        }
        let Ok(tri) = vertices_at(&i, rng.gen_range(0.0..TAU)) else {
            continue;
        };
        let s = scene_for_isosceles(&i)?;
        let (f1, f2) = isosceles_foci(&i);
        let bp = brocard_points_by_construction(&tri)?;
        out.add(
            bp.concurrency_defect
                .max(bp.omega1.distance(s.omega1))
                .max(bp.omega2.distance(s.omega2))
                .max(bp.omega1.distance(f1))
                .max(bp.omega2.distance(f2)),
        );
    }
    Ok(out)
}

/// Same agreement on members carried by a rigid motion or a mirror; a
/// mirror reverses the construction's labels.
fn posed(ctx: &Ctx) -> brocard::Result<Outcome> {
    let mut rng = ctx.rng();
    let mut out = Outcome::default();
    for _ in 0..ctx.samples(100) {
        let p = random_scene(&mut rng, 0.2..5.0, 1.75..8.0)?.params;
        let pose = Pose64::new(
            Point64::new(rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0)),
            FRAC_PI_2 * rng.gen_range(0..4) as f64,
            rng.gen_bool(0.5),
            rng.gen_range(0.5..2.0),
        )?;
        let s = Scene64::with_pose(p, pose)?;
        let tri = random_member(&s, &mut rng)?;
        let bp = brocard_points_by_construction(&tri)?;
        let (w1, w2) = s.construction_brocard_points();
        out.add(
            bp.concurrency_defect
                .max(rel(bp.omega1, w1))
                .max(rel(bp.omega2, w2)),
        );
    }
    Ok(out)
}

fn mirror(p: Point64) -> Point64 {
    Point64::new(-p.x, p.y)
}

/// The construction run on the mirror image returns the mirrored points
/// with their labels exchanged.
fn mirror_swap(ctx: &Ctx) -> brocard::Result<Outcome> {
    let mut rng = ctx.rng();
    let mut out = Outcome::default();
    for _ in 0..ctx.samples(100) {
        let s = random_scene(&mut rng, 0.2..5.0, 1.75..8.0)?;
        let tri = random_member(&s, &mut rng)?;
        let m = Triangle64::new(mirror(tri.a), mirror(tri.b), mirror(tri.c))?;
        let bp = brocard_points_by_construction(&tri)?;
        let bm = brocard_points_by_construction(&m)?;
        out.add(
            mirror(bm.omega1)
                .distance(bp.omega2)
                .max(mirror(bm.omega2).distance(bp.omega1)),
        );
    }
    Ok(out)
}

/// Isodynamic points against the crossings of Beltrami circles built from
/// the constructed Brocard points (centers at their circumcircle inverses).
fn beltrami_intersections(ctx: &Ctx) -> brocard::Result<Outcome> {
    let mut rng = ctx.rng();
    let mut out = Outcome::default();
    for _ in 0..ctx.samples(100) {
        let s = random_scene(&mut rng, 0.2..5.0, 1.8..8.0)?;
        let tri = random_member(&s, &mut rng)?;
        let c = standard_centers(&tri)?;
        let gamma = tri.circumcircle()?;
        let (o1, o2) = (c.brocard.omega1, c.brocard.omega2);
        let p2 = gamma.invert(o2)?;
        let u2 = gamma.invert(o1)?;
        let c1 = Circle64::new(p2, p2.distance(o1))?;
        let c2 = Circle64::new(u2, u2.distance(o2))?;
        let hits = c1.intersect_circle(&c2);
        if hits.len() != 2 {
            return Err(brocard::Error::InvalidGeometry(
                "Beltrami circles do not cross",
            ));
        }
        let direct = rel(hits[0], c.x15).max(rel(hits[1], c.x16));
        let swapped = rel(hits[1], c.x15).max(rel(hits[0], c.x16));
        out.add(direct.min(swapped));
    }
    Ok(out)
}

/// `X574` by inverting `X6` in the circumcircle and then in the Brocard
/// circle, against the closed form and the symmedian point of the second
/// Brocard triangle.
fn x574(ctx: &Ctx) -> brocard::Result<Outcome> {
    let mut rng = ctx.rng();
    let mut out = Outcome::default();
    for _ in 0..ctx.samples(100) {
        let s = random_scene(&mut rng, 0.2..5.0, 1.8..8.0)?;
        let tri = random_member(&s, &mut rng)?;
        let c = standard_centers(&tri)?;
        let child_x6 =
            center_from_trilinear(&second_brocard_triangle(&tri)?, CenterFunction::symmedian())?;
        out.add(rel(c.x574, s.x574).max(rel(child_x6, s.x574)));
    }
    Ok(out)
}

fn child_center_distance(ctx: &Ctx) -> brocard::Result<Outcome> {
    let mut rng = ctx.rng();
    let mut out = Outcome::default();
    for _ in 0..ctx.samples(100) {
        let s = random_scene(&mut rng, 0.2..5.0, 1.8..8.0)?;
        let tri = random_member(&s, &mut rng)?;
        let t2 = second_brocard_triangle(&tri)?;
        let x3 = t2.circumcircle()?.center;
        let x6 = center_from_trilinear(&t2, CenterFunction::symmedian())?;
        let (r, u) = (s.params.r, s.params.u);
        let k = root_u_sq_minus_3(u);
        let want = r * u_sq_minus_3(u) * k / (2.0 * u * (u * u + 3.0));
        out.add((x3.distance(x6) - want).abs() / r.max(1.0));
    }
    Ok(out)
}

pub(super) fn checks() -> Vec<Check> {
    vec![
        Check::new(
            "prop2.construction",
            "rotated-sides Brocard points match the closed forms",
            Tol::Fixed(1e-9),
            construction,
        ),
        Check::new(
            "prop2.posed",
            "construction matches closed forms under rigid motions and mirrors",
            Tol::Fixed(1e-9),
            posed,
        ),
        Check::new(
            "def1.mirror_swap",
            "reversing the rotation sense exchanges the two Brocard points",
            Tol::Fixed(1e-10),
            mirror_swap,
        ),
        Check::new(
            "prop5.beltrami_intersections",
            "isodynamic points are where the Beltrami circles cross",
            Tol::Fixed(1e-9),
            beltrami_intersections,
        ),
        Check::new(
            "lemma5.x574",
            "double inversion of X6 gives X574, the child symmedian point",
            Tol::Fixed(1e-10),
            x574,
        ),
        Check::new(
            "lemma10.child_center_distance",
            "child X3X6 distance is R(u²-3)^(3/2)/(2u(u²+3))",
            Tol::Fixed(1e-10),
            child_center_distance,
        ),
    ]
}
