use brocard::{Circle64, Ellipse64, Line64, MajorAxis, Point64, Triangle64};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::{Check, Ctx, Outcome, Tol};

fn point(rng: &mut ChaCha8Rng, span: f64) -> Point64 {
    Point64::new(rng.gen_range(-span..span), rng.gen_range(-span..span))
}

fn inversion_involution(ctx: &Ctx) -> brocard::Result<Outcome> {
    let mut rng = ctx.rng();
    let mut out = Outcome::default();
    for _ in 0..ctx.samples(200) {
        let c = Circle64::new(point(&mut rng, 10.0), rng.gen_range(0.1..10.0))?;
        let p = point(&mut rng, 20.0);
        if p.distance(c.center) < 1e-2 * c.radius {
            continue;
        }
        let back = c.invert(c.invert(p)?)?;
        out.add(back.distance(p) / p.norm().max(1.0));
    }
    Ok(out)
}

fn projection_idempotent(ctx: &Ctx) -> brocard::Result<Outcome> {
    let mut rng = ctx.rng();
    let mut out = Outcome::default();
    for _ in 0..ctx.samples(200) {
        let l = Line64::new(point(&mut rng, 10.0), point(&mut rng, 1.0))?;
        let once = l.project(point(&mut rng, 10.0));
        out.add(l.project(once).distance(once));
    }
    Ok(out)
}

fn tangent_residual(ctx: &Ctx) -> brocard::Result<Outcome> {
    let mut rng = ctx.rng();
    let mut out = Outcome::default();
    for _ in 0..ctx.samples(200) {
        let a = rng.gen_range(0.1..5.0);
        let b = a * rng.gen_range(0.05..1.0);
        let axis = if rng.gen_bool(0.5) {
            MajorAxis::Horizontal
        } else {
            MajorAxis::Vertical
        };
        let e = Ellipse64::new(point(&mut rng, 5.0), a, b, axis)?;
        let (rx, ry) = e.extents();
        let th = rng.gen_range(0.0..std::f64::consts::TAU);
        let tangent = Point64::new(-rx * th.sin(), ry * th.cos());
        out.add(e.tangency_residual(&Line64::new(e.point_at(th), tangent)?));
    }
    Ok(out)
}

fn circumcircle_permutation(ctx: &Ctx) -> brocard::Result<Outcome> {
    let mut rng = ctx.rng();
    let mut out = Outcome::default();
    for _ in 0..ctx.samples(200) {
        let (a, b, c) = (
            point(&mut rng, 5.0),
            point(&mut rng, 5.0),
            point(&mut rng, 5.0),
        );
        let Ok(t) = Triangle64::new(a, b, c) else {
            continue;
        };
        if t.area() < 1e-2 {
            continue;
        }
        let k0 = t.circumcircle()?;
        let mut worst = 0.0f64;
        for (p, q, r) in [(t.b, t.c, t.a), (t.c, t.a, t.b)] {
            let k = Triangle64::new(p, q, r)?.circumcircle()?;
            let scale = k0.radius.max(1.0);
            worst = worst
                .max(k.center.distance(k0.center) / scale)
                .max((k.radius - k0.radius).abs() / scale);
        }
        out.add(worst);
    }
    Ok(out)
}

pub(super) fn checks() -> Vec<Check> {
    vec![
        Check::new(
            "geom.inversion_involution",
            "inversion applied twice is the identity",
            Tol::Fixed(1e-11),
            inversion_involution,
        ),
        Check::new(
            "geom.projection_idempotent",
            "projecting onto a line twice changes nothing",
            Tol::Fixed(1e-13),
            projection_idempotent,
        ),
        Check::new(
            "geom.tangent_residual",
            "analytic ellipse tangents have zero tangency residual",
            Tol::Fixed(1e-11),
            tangent_residual,
        ),
        Check::new(
            "geom.circumcircle_permutation",
            "circumcircle is invariant under cyclic relabelling",
            Tol::Primitive,
            circumcircle_permutation,
        ),
    ]
}
