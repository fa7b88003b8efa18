use std::f64::consts::{FRAC_PI_6, TAU};

use brocard::centers::{brocard_angle, second_brocard_triangle};
use brocard::porism::{dh_from_ru, vertices_at};
use brocard::recurrence::{
    child_axes_from_parent, child_x182_closed_form, generations, Generation,
};
use brocard::{
    anti_scene, child_scene_with, orbit_with, step_backward, Direction, Params64, Scene64,
};
use rand::Rng;

use super::{non_decreasing_steps, random_scene, rel, Check, Ctx, Outcome, Tol};

const ROOTS: [(f64, f64); 3] = [(1.0, 10.0), (1.25, 1.75), (2.0, 40.0)];

/// Child `(R, cot ω)` measured on second Brocard triangles of sampled
/// members, against the step map.
fn two_route(ctx: &Ctx) -> brocard::Result<Outcome> {
    let map = ctx.config.step_map();
    let mut rng = ctx.rng();
    let mut out = Outcome::default();
    let n = ctx.samples(50);
    while out.samples < n {
        let p = Params64::new(rng.gen_range(0.2..5.0), rng.gen_range(1.8..8.0))?;
        let Ok(tri) = vertices_at(&dh_from_ru(&p), rng.gen_range(0.0..TAU)) else {
            continue;
        };
        let t2 = second_brocard_triangle(&tri)?;
        let c = (map.forward)(p);
        let r = t2.circumcircle()?.radius;
        out.add(((r - c.r).abs() / p.r).max((brocard_angle(&t2)?.cot - c.u).abs()));
    }
    Ok(out)
}

fn sampled_parents(
    ctx: &Ctx,
    mut each: impl FnMut(&Scene64, &Scene64) -> brocard::Result<f64>,
) -> brocard::Result<Outcome> {
    let map = ctx.config.step_map();
    let mut rng = ctx.rng();
    let mut out = Outcome::default();
    for _ in 0..ctx.samples(50) {
        let parent = random_scene(&mut rng, 0.2..5.0, 1.75..10.0)?;
        let child = child_scene_with(&parent, map)?;
        out.add(each(&parent, &child)?);
    }
    Ok(out)
}

fn child_circumcircle(ctx: &Ctx) -> brocard::Result<Outcome> {
    sampled_parents(ctx, |p, c| {
        let k = p.brocard_circle;
        Ok(c.circumcircle
            .center
            .distance(k.center)
            .max((c.circumcircle.radius - k.radius).abs()))
    })
}

fn x182(ctx: &Ctx) -> brocard::Result<Outcome> {
    sampled_parents(ctx, |p, c| Ok(c.x182.distance(child_x182_closed_form(p))))
}

fn beltrami(ctx: &Ctx) -> brocard::Result<Outcome> {
    sampled_parents(ctx, |p, c| {
        let scale = p.beltrami_radius.max(1.0);
        Ok((p.beltrami_c1().distance_residual(c.omega2) / scale)
            .max(p.beltrami_c2().distance_residual(c.omega1) / scale)
            .max(rel(c.x15, p.x15))
            .max(rel(c.x16, p.x16)))
    })
}

fn child_axes(ctx: &Ctx) -> brocard::Result<Outcome> {
    sampled_parents(ctx, |p, c| {
        let (a1, b1) = child_axes_from_parent(p.inellipse.semi_major, p.inellipse.semi_minor);
        Ok((a1 - c.inellipse.semi_major)
            .abs()
            .max((b1 - c.inellipse.semi_minor).abs()))
    })
}

fn anti_inverse(ctx: &Ctx) -> brocard::Result<Outcome> {
    let map = ctx.config.step_map();
    let mut rng = ctx.rng();
    let mut out = Outcome::default();
    for _ in 0..ctx.samples(50) {
        let s = random_scene(&mut rng, 0.1..5.0, 1.74..20.0)?;
        let back = child_scene_with(&anti_scene(&s)?, map)?;
        let mut worst = ((back.params.r - s.params.r).abs() / s.params.r)
            .max((back.params.u - s.params.u).abs() / s.params.u);
        for (a, b) in [
            (back.omega1, s.omega1),
            (back.omega2, s.omega2),
            (back.x6, s.x6),
            (back.x3, s.x3),
        ] {
            worst = worst.max(rel(a, b));
        }
        out.add(worst);
    }
    Ok(out)
}

fn each_generation(
    ctx: &Ctx,
    mut each: impl FnMut(&Scene64, &[Generation<f64>]) -> f64,
) -> brocard::Result<Outcome> {
    let map = ctx.config.step_map();
    let mut out = Outcome::default();
    for &(r, u) in &ROOTS {
        let root = Scene64::new(Params64::new(r, u)?)?;
        let gens = generations(&root, 6, map)?;
        out.add(each(&root, &gens));
    }
    Ok(out)
}

fn concyclicity(ctx: &Ctx) -> brocard::Result<Outcome> {
    each_generation(ctx, |root, gens| {
        let (c1, c2) = (root.beltrami_c1(), root.beltrami_c2());
        let scale = c1.radius.max(1.0);
        gens.iter()
            .enumerate()
            .map(|(k, g)| {
                let (o1, o2) = g.brocard_points();
                let (p, q) = if k % 2 == 0 { (o1, o2) } else { (o2, o1) };
                c1.distance_residual(p).max(c2.distance_residual(q)) / scale
            })
            .fold(0.0, f64::max)
    })
}

fn orthogonality(ctx: &Ctx) -> brocard::Result<Outcome> {
    each_generation(ctx, |root, gens| {
        let (c1, c2) = (root.beltrami_c1(), root.beltrami_c2());
        let scale = (c1.radius * c1.radius).max(1.0);
        gens.iter()
            .map(|g| {
                let k = g.brocard_circle();
                c1.orthogonality_residual(&k)
                    .max(c2.orthogonality_residual(&k))
                    / scale
            })
            .fold(0.0, f64::max)
    })
}

/// `max(0, −margin)` of each Brocard circle inside its parent's.
fn nesting(ctx: &Ctx) -> brocard::Result<Outcome> {
    each_generation(ctx, |_, gens| {
        gens.windows(2)
            .map(|w| {
                (-w[0]
                    .brocard_circle()
                    .containment_margin(&w[1].brocard_circle()))
                .max(0.0)
            })
            .fold(0.0, f64::max)
    })
}

/// Number of orbit steps where `R` or the eccentricity fails to drop, `ω`
/// fails to grow, or `ω` passes `π/6`.
fn monotonicity(ctx: &Ctx) -> brocard::Result<Outcome> {
    let map = ctx.config.step_map();
    let mut out = Outcome::default();
    for &(r, u) in &ROOTS {
        let tr = orbit_with(Params64::new(r, u)?, 6, Direction::Forward, map)?;
        let states: Vec<_> = tr
            .states
            .iter()
            .filter(|s| s.params.r > 0.0 && s.params.u > 3f64.sqrt())
            .collect();
        let radii: Vec<f64> = states.iter().map(|s| s.params.r).collect();
        let ecc: Vec<f64> = states.iter().map(|s| s.params.eccentricity()).collect();
        let neg_omega: Vec<f64> = states.iter().map(|s| -s.params.omega()).collect();
        let over = states
            .iter()
            .filter(|s| s.params.omega() > FRAC_PI_6)
            .count() as f64;
        out.add(
            non_decreasing_steps(&radii)
                + non_decreasing_steps(&ecc)
                + non_decreasing_steps(&neg_omega)
                + over,
        );
    }
    Ok(out)
}

/// `q(√3)` is `√3` exactly and `q(u) < u` everywhere above it.
fn fixed_point(ctx: &Ctx) -> brocard::Result<Outcome> {
    let map = ctx.config.step_map();
    let s3 = 3f64.sqrt();
    let mut out = Outcome::default();
    out.add(((map.forward)(Params64 { r: 1.0, u: s3 }).u - s3).abs());
    for k in 1..=ctx.samples(200) {
        let u = s3 + k as f64 * 0.05;
        let q = (map.forward)(Params64 { r: 1.0, u }).u;
        out.add(if q < u && q >= s3 { 0.0 } else { 1.0 });
    }
    Ok(out)
}

fn round_trip(ctx: &Ctx) -> brocard::Result<Outcome> {
    let map = ctx.config.step_map();
    let mut rng = ctx.rng();
    let mut out = Outcome::default();
    for _ in 0..ctx.samples(100) {
        let p = Params64::new(rng.gen_range(1e-3..1e3), rng.gen_range(1.7321..1e3))?;
        let back = step_backward((map.forward)(p))?;
        let fwd = (map.forward)(step_backward(p)?);
        out.add(
            ((back.r - p.r).abs() / p.r)
                .max((back.u - p.u).abs() / p.u)
                .max((fwd.r - p.r).abs() / p.r)
                .max((fwd.u - p.u).abs() / p.u),
        );
    }
    Ok(out)
}

/// `|u − √3|` after at most six steps from `(1, 3)`.
fn forward_convergence(ctx: &Ctx) -> brocard::Result<Outcome> {
    let tr = orbit_with(
        Params64::new(1.0, 3.0)?,
        6,
        Direction::Forward,
        ctx.config.step_map(),
    )?;
    Ok(Outcome::new(
        (tr.last().params.u - 3f64.sqrt()).abs(),
        tr.states.len(),
    ))
}

/// `e_{k+1}/e_k²` equals `1/(2u_k)`: the error squares each step.
fn quadratic_ratio(ctx: &Ctx) -> brocard::Result<Outcome> {
    let tr = orbit_with(
        Params64::new(1.0, 3.0)?,
        6,
        Direction::Forward,
        ctx.config.step_map(),
    )?;
    let ratios = &tr.convergence.ratio_diagnostic;
    if ratios.len() < 3 {
        return Err(brocard::Error::InvalidGeometry(
            "orbit too short to show its convergence order",
        ));
    }
    let mut out = Outcome::default();
    for (ratio, s) in ratios.iter().zip(&tr.states) {
        out.add((ratio * 2.0 * s.params.u - 1.0).abs());
    }
    Ok(out)
}

/// `max(0, 100 − u_8)` on the backward orbit from `(1, 2)`.
fn backward_unbounded(_: &Ctx) -> brocard::Result<Outcome> {
    let tr = orbit_with(
        Params64::new(1.0, 2.0)?,
        8,
        Direction::Backward,
        brocard::StepMap::standard(),
    )?;
    Ok(Outcome::new(
        (100.0 - tr.last().params.u).max(0.0),
        tr.states.len(),
    ))
}

/// Backward iterates keep `X15`, `X16` and `|P2U2|` while the inellipse
/// flattens onto the segment `P2U2`.
fn anti_iterates(_: &Ctx) -> brocard::Result<Outcome> {
    let mut out = Outcome::default();
    let mut s = Scene64::new(Params64::new(1.0, 2.0)?)?;
    let (x15, x16) = (s.x15, s.x16);
    let span = s.beltrami_p2.distance(s.beltrami_u2);
    let mut prev = (f64::INFINITY, f64::INFINITY);
    for _ in 0..10 {
        s = anti_scene(&s)?;
        let gap = (
            (2.0 * s.inellipse.semi_major - span).abs(),
            s.inellipse.semi_minor,
        );
        let shrinking = if gap.0 < prev.0 && gap.1 < prev.1 {
            0.0
        } else {
            1.0
        };
        prev = gap;
        out.add(
            rel(s.x15, x15)
                .max(rel(s.x16, x16))
                .max((s.beltrami_p2.distance(s.beltrami_u2) - span).abs())
                .max(shrinking),
        );
    }
    Ok(out)
}

pub(super) fn checks() -> Vec<Check> {
    vec![
        Check::new(
            "thm1.two_route",
            "second Brocard triangles measure the step map",
            Tol::Fixed(1e-8),
            two_route,
        ),
        Check::new(
            "thm1.child_circumcircle",
            "child circumcircle is the parent Brocard circle",
            Tol::Scene,
            child_circumcircle,
        ),
        Check::new(
            "thm1.x182",
            "child X182 closed form",
            Tol::Fixed(1e-10),
            x182,
        ),
        Check::new(
            "thm1.child_beltrami",
            "child Brocard points on parent Beltrami circles; X15, X16 shared",
            Tol::Scene,
            beltrami,
        ),
        Check::new(
            "thm1.anti_inverse",
            "child of the anti-porism is the original porism",
            Tol::Scene,
            anti_inverse,
        ),
        Check::new(
            "cor9.child_axes",
            "child inellipse axes from the parent axes",
            Tol::Fixed(1e-11),
            child_axes,
        ),
        Check::new(
            "thm3.concyclicity",
            "alternating Brocard points of six generations are concyclic",
            Tol::Scene,
            concyclicity,
        ),
        Check::new(
            "prop6.orthogonality",
            "every generation's Brocard circle is orthogonal to the Beltrami circles",
            Tol::Scene,
            orthogonality,
        ),
        Check::new(
            "thm2.nesting",
            "each Brocard circle lies inside its parent's",
            Tol::Fixed(1e-10),
            nesting,
        ),
        Check::new(
            "thm2.monotonicity",
            "R and eccentricity decrease, Brocard angle increases to pi/6",
            Tol::Fixed(0.0),
            monotonicity,
        ),
        Check::new(
            "prop14.fixed_point",
            "sqrt(3) is the only fixed point of the u-map",
            Tol::Fixed(0.0),
            fixed_point,
        ),
        Check::new(
            "prop14.round_trip",
            "backward step inverts the forward step",
            Tol::Primitive,
            round_trip,
        ),
        Check::new(
            "prop14.forward_convergence",
            "forward orbit from (1,3) reaches sqrt(3) in six steps",
            Tol::Fixed(1e-12),
            forward_convergence,
        ),
        Check::new(
            "prop14.quadratic_ratio",
            "forward error ratios e'/e^2 equal 1/(2u)",
            Tol::Fixed(1e-6),
            quadratic_ratio,
        ),
        Check::new(
            "prop14.backward_unbounded",
            "backward orbit from (1,2) passes u = 100 within eight steps",
            Tol::Fixed(0.0),
            backward_unbounded,
        ),
        Check::new(
            "prop4.anti_iterates",
            "anti-porisms keep X15, X16, |P2U2| and flatten onto P2U2",
            Tol::Scene,
            anti_iterates,
        ),
    ]
}
