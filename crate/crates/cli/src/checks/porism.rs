use std::f64::consts::TAU;

use brocard::centers::{brocard_angle, standard_centers};
use brocard::porism::{dh_from_ru, vertices_at};
use brocard::{
    brocard_circle, closure_residuals, ru_from_dh, Error, Isosceles64, Params64, Point64, Scene64,
};
use rand::Rng;

use super::{random_scene, rel, Check, Ctx, Outcome, Tol};

fn fixture() -> brocard::Result<Scene64> {
    Scene64::new(ru_from_dh(&Isosceles64::new(1.0, 2.0)?))
}

/// Sampled members of the fixture and of a few seeded scenes.
fn sampled_members(
    ctx: &Ctx,
    mut each: impl FnMut(&Scene64, &brocard::Triangle64) -> brocard::Result<f64>,
) -> brocard::Result<Outcome> {
    let mut rng = ctx.rng();
    let mut scenes = vec![fixture()?];
    for _ in 0..3 {
        scenes.push(random_scene(&mut rng, 0.3..3.0, 1.8..6.0)?);
    }
    let mut out = Outcome::default();
    for (k, s) in scenes.iter().enumerate() {
        let n = if k == 0 {
            ctx.samples(200)
        } else {
            ctx.samples(50)
        };
        let iso = dh_from_ru(&s.params);
        let mut used = 0;
        while used < n {
            let tri = match vertices_at(&iso, rng.gen_range(0.0..TAU)) {
                Ok(t) => t,
                Err(Error::ParametrizationSingularity { .. }) => continue,
                Err(e) => return Err(e),
            };
            used += 1;
            out.add(each(s, &tri)?);
        }
    }
    Ok(out)
}

fn closure(ctx: &Ctx) -> brocard::Result<Outcome> {
    sampled_members(ctx, |s, tri| {
        Ok(closure_residuals(s, tri).into_iter().fold(0.0, f64::max))
    })
}

fn brocard_angle_invariance(ctx: &Ctx) -> brocard::Result<Outcome> {
    sampled_members(ctx, |s, tri| {
        Ok((brocard_angle(tri)?.omega - s.params.omega()).abs())
    })
}

fn stationary_centers(ctx: &Ctx) -> brocard::Result<Outcome> {
    sampled_members(ctx, |s, tri| {
        let c = standard_centers(tri)?;
        let k = brocard_circle(tri)?;
        Ok([
            rel(c.brocard.omega1, s.omega1),
            rel(c.brocard.omega2, s.omega2),
            rel(c.x6, s.x6),
            rel(c.x15, s.x15),
            rel(c.x16, s.x16),
            rel(c.x39, s.x39),
            rel(c.x182, s.x182),
            rel(k.center, s.brocard_circle.center),
            (k.radius - s.brocard_circle.radius).abs(),
        ]
        .into_iter()
        .fold(0.0, f64::max))
    })
}

/// Closed-form values of the `d = 1, h = 2` member, against constants
/// worked out by hand.
fn fixture_values(_: &Ctx) -> brocard::Result<Outcome> {
    let s = fixture()?;
    let p = |x: f64, y: f64| Point64::new(x, y);
    let (a, b) = s.params.inellipse_axes();
    let tri = vertices_at(&dh_from_ru(&s.params), 1.0)?;
    let chain = standard_centers(&tri)?.x574;
    let x574 = -35.0 / 388.0;
    let residuals = [
        (s.params.r - 1.25).abs(),
        (s.params.u - 1.75).abs(),
        (a - (5.0f64 / 13.0).sqrt()).abs(),
        (b - 8.0 / 13.0).abs(),
        s.omega1.distance(p(1.0 / 13.0, -7.0 / 52.0)),
        s.omega2.distance(p(-1.0 / 13.0, -7.0 / 52.0)),
        s.x6.distance(p(0.0, -5.0 / 28.0)),
        s.x182.distance(p(0.0, -5.0 / 56.0)),
        s.x574.distance(p(0.0, x574)),
        chain.distance(p(0.0, x574)),
        s.beltrami_p2.distance(p(-5.0, -8.75)),
        s.beltrami_u2.distance(p(5.0, -8.75)),
        (s.beltrami_radius - 10.0).abs(),
    ];
    Ok(Outcome::new(
        residuals.into_iter().fold(0.0, f64::max),
        residuals.len(),
    ))
}

fn focal_separation(ctx: &Ctx) -> brocard::Result<Outcome> {
    let mut rng = ctx.rng();
    let mut out = Outcome::default();
    for _ in 0..ctx.samples(100) {
        let s = random_scene(&mut rng, 0.1..5.0, 1.74..20.0)?;
        let (a, b) = (s.inellipse.semi_major, s.inellipse.semi_minor);
        out.add((s.omega1.distance(s.omega2) - 2.0 * (a * a - b * b).sqrt()).abs());
    }
    Ok(out)
}

fn equilateral(ctx: &Ctx) -> brocard::Result<Outcome> {
    let mut rng = ctx.rng();
    let mut out = Outcome::default();
    for _ in 0..ctx.samples(100) {
        let s = random_scene(&mut rng, 0.1..5.0, 1.8..20.0)?;
        let rho = s.beltrami_radius;
        let want = 2.0 * s.params.r / s.params.k();
        let mut worst = (rho - want).abs();
        for x in [s.x15, s.x16] {
            for d in [
                x.distance(s.beltrami_p2),
                x.distance(s.beltrami_u2),
                s.beltrami_p2.distance(s.beltrami_u2),
            ] {
                worst = worst.max((d - rho).abs() / rho.max(1.0));
            }
        }
        out.add(worst);
    }
    Ok(out)
}

fn beltrami_membership(ctx: &Ctx) -> brocard::Result<Outcome> {
    let mut rng = ctx.rng();
    let mut out = Outcome::default();
    for _ in 0..ctx.samples(100) {
        let s = random_scene(&mut rng, 0.1..5.0, 1.8..20.0)?;
        let (c1, c2) = (s.beltrami_c1(), s.beltrami_c2());
        let scale = c1.radius.max(1.0);
        let mut worst = 0.0f64;
        for (c, o) in [(c1, s.omega1), (c2, s.omega2)] {
            for q in [s.x15, s.x16, o] {
                worst = worst.max(c.distance_residual(q) / scale);
            }
        }
        // centers are the circumcircle inverses of the Brocard points
        worst = worst
            .max(s.circumcircle.invert(s.omega2)?.distance(s.beltrami_p2) / scale)
            .max(s.circumcircle.invert(s.omega1)?.distance(s.beltrami_u2) / scale);
        out.add(worst);
    }
    Ok(out)
}

fn chart_round_trip(ctx: &Ctx) -> brocard::Result<Outcome> {
    let mut rng = ctx.rng();
    let mut out = Outcome::default();
    for _ in 0..ctx.samples(100) {
        let p = Params64::new(rng.gen_range(0.01..100.0), rng.gen_range(1.7321..100.0))?;
        let q = ru_from_dh(&dh_from_ru(&p));
        let (a, b) = p.inellipse_axes();
        let w = brocard::ru_from_axes(a, b)?;
        out.add(
            ((q.r - p.r).abs() / p.r)
                .max((q.u - p.u).abs() / p.u)
                .max((w.r - p.r).abs() / p.r)
                .max((w.u - p.u).abs() / p.u),
        );
    }
    Ok(out)
}

pub(super) fn checks() -> Vec<Check> {
    vec![
        Check::new(
            "fig2.closure",
            "sampled members are tangent to the Brocard inellipse",
            Tol::Scene,
            closure,
        ),
        Check::new(
            "fig2.brocard_angle",
            "Brocard angle is constant over the porism",
            Tol::Fixed(1e-10),
            brocard_angle_invariance,
        ),
        Check::new(
            "fig2.stationarity",
            "Brocard points, X6, X15, X16, X39, X182 and K are stationary",
            Tol::Scene,
            stationary_centers,
        ),
        Check::new(
            "fixture.values",
            "isosceles d=1, h=2 reproduces its worked values",
            Tol::Fixed(1e-11),
            fixture_values,
        ),
        Check::new(
            "lemma2.focal_separation",
            "Brocard points are the inellipse foci",
            Tol::Fixed(1e-10),
            focal_separation,
        ),
        Check::new(
            "prop5.equilateral",
            "X15 and X16 form equilateral triangles with P2U2",
            Tol::Scene,
            equilateral,
        ),
        Check::new(
            "thm3.beltrami_membership",
            "Beltrami circles carry X15, X16 and a Brocard point",
            Tol::Scene,
            beltrami_membership,
        ),
        Check::new(
            "lemma9.chart_round_trip",
            "(R,u), (d,h) and (a,b) charts invert each other",
            Tol::Primitive,
            chart_round_trip,
        ),
    ]
}
