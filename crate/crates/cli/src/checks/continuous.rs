use std::f64::consts::FRAC_PI_3;

use brocard::continuous::{
    e_field_directions, embed_step_cot_rational, envelope_residual, gamma_nesting_residual,
    measured_child, quartic_residual, similarity_residual,
};
use brocard::{
    beltrami_midpoint_check, ellipse_et, embed_step, envelope_points, family_extrema,
    family_measures, foci_on_arcs_check, kt_inellipse_intersection_check, nesting_residual,
    porism_bt, web_orthogonality_residuals, Params64, Point64,
};
use rand::Rng;

use super::{non_decreasing_steps, rel, Check, Ctx, Outcome, Tol};

/// `arccos(3/5)`, where the envelope closes and `u = 2`.
fn t0() -> f64 {
    0.6f64.acos()
}

/// Midpoint grid of `n` values on `(lo, hi)`.
fn grid(n: usize, lo: f64, hi: f64) -> impl Iterator<Item = f64> {
    (0..n).map(move |i| lo + (hi - lo) * (i as f64 + 0.5) / n as f64)
}

fn over_grid(
    n: usize,
    lo: f64,
    hi: f64,
    mut f: impl FnMut(f64) -> brocard::Result<f64>,
) -> brocard::Result<Outcome> {
    let mut out = Outcome::default();
    for t in grid(n, lo, hi) {
        out.add(f(t)?);
    }
    Ok(out)
}

fn isodynamic_fixed(ctx: &Ctx) -> brocard::Result<Outcome> {
    let h = 3f64.sqrt() / 2.0;
    over_grid(ctx.samples(100), 0.0, FRAC_PI_3, |t| {
        let s = porism_bt(t)?.scene;
        Ok(rel(s.x15, Point64::new(0.0, -h))
            .max(rel(s.x16, Point64::new(0.0, h)))
            .max(s.beltrami_p2.distance(Point64::new(-0.5, 0.0)))
            .max(s.beltrami_u2.distance(Point64::new(0.5, 0.0))))
    })
}

/// The posed canonical scene against the family's own closed forms.
fn posed_scene(ctx: &Ctx) -> brocard::Result<Outcome> {
    over_grid(ctx.samples(100), 0.0, FRAC_PI_3, |t| {
        let b = porism_bt(t)?;
        let s = b.scene;
        Ok(s.inellipse
            .center
            .distance(b.ellipse.center)
            .max((s.inellipse.semi_major - b.ellipse.semi_major).abs())
            .max((s.inellipse.semi_minor - b.ellipse.semi_minor).abs())
            .max(s.omega1.distance(b.foci.0))
            .max(s.omega2.distance(b.foci.1))
            .max(rel(s.x3, b.x3))
            .max(
                s.brocard_circle.center.distance(b.brocard_circle.center)
                    / b.brocard_circle.radius.max(1.0),
            )
            .max((s.brocard_circle.radius - b.brocard_circle.radius).abs())
            .max((b.omega - s.params.omega()).abs()))
    })
}

/// `B_t` at `t = arccos(3/5)` against values worked out by hand.
fn reference_member(_: &Ctx) -> brocard::Result<Outcome> {
    let b = porism_bt(t0())?;
    let p = |x: f64, y: f64| Point64::new(x, y);
    let e = b.ellipse;
    let residuals = [
        (b.u - 2.0).abs(),
        (b.r - 0.5).abs(),
        b.x3.distance(p(0.0, -1.0)),
        (e.semi_major - 5f64.sqrt() / 10.0).abs(),
        (e.semi_minor - 0.2).abs(),
        b.foci.0.distance(p(0.1, -0.8)),
        b.foci.1.distance(p(-0.1, -0.8)),
        b.brocard_circle.center.distance(p(0.0, -7.0 / 8.0)),
        (b.brocard_circle.radius - 1.0 / 8.0).abs(),
        p(0.0, e.center.y - e.semi_minor).distance(p(0.0, -1.0)),
    ];
    Ok(Outcome::new(
        residuals.into_iter().fold(0.0, f64::max),
        residuals.len(),
    ))
}

fn b_max(_: &Ctx) -> brocard::Result<Outcome> {
    let x = family_extrema::<f64>()?;
    Ok(Outcome::new((x.b_max - 0.25).abs(), 1))
}

fn extremal_parameters(_: &Ctx) -> brocard::Result<Outcome> {
    let x = family_extrema::<f64>()?;
    let r = (x.t_b - 0.75f64.acos())
        .abs()
        .max((x.t_lower_vertex - t0()).abs())
        .max(x.lower_vertex_min.distance(Point64::new(0.0, -1.0)));
    Ok(Outcome::new(r, 3))
}

fn envelope(ctx: &Ctx) -> brocard::Result<Outcome> {
    over_grid(ctx.samples(100), 0.0, t0(), |t| {
        let (p, q) = envelope_points(t)?;
        let e = ellipse_et(t)?;
        Ok(envelope_residual(p)
            .abs()
            .max(envelope_residual(q).abs())
            .max(e.implicit_residual(p).abs())
            .max(e.implicit_residual(q).abs()))
    })
}

fn kt_intersection(ctx: &Ctx) -> brocard::Result<Outcome> {
    over_grid(ctx.samples(100), 0.0, t0(), kt_inellipse_intersection_check)
}

fn embedding(ctx: &Ctx) -> brocard::Result<Outcome> {
    let mut rng = ctx.rng();
    let mut out = Outcome::default();
    for _ in 0..ctx.samples(50) {
        let t = rng.gen_range(0.05..FRAC_PI_3 - 0.05);
        let Ok((r, u)) = measured_child(t, rng.gen_range(0.0..std::f64::consts::TAU)) else {
            continue;
        };
        let tp = embed_step(t)?;
        let next = porism_bt(tp)?;
        let order = if t < tp && tp < FRAC_PI_3 { 0.0 } else { 1.0 };
        out.add((r - next.r).abs().max((u - next.u).abs()).max(order));
    }
    Ok(out)
}

fn cot_rational(ctx: &Ctx) -> brocard::Result<Outcome> {
    over_grid(ctx.samples(100), 0.0, FRAC_PI_3, |t| {
        Ok((1.0 / embed_step(t)?.tan() - embed_step_cot_rational(t)).abs())
    })
}

/// Normalized radius inner products at the four crossings of `K_t` with the
/// Beltrami circles, plus the crossings' membership residuals.
fn web_crossings(ctx: &Ctx) -> brocard::Result<Outcome> {
    let mut ts: Vec<f64> = grid(ctx.samples(20), 0.0, FRAC_PI_3).collect();
    ts.push(t0());
    let mut out = Outcome::default();
    for t in ts {
        let w = web_orthogonality_residuals(t, 4)?;
        out.add(w.inner_products.into_iter().fold(w.membership, f64::max));
    }
    Ok(out)
}

fn web_quartic(ctx: &Ctx) -> brocard::Result<Outcome> {
    let w = web_orthogonality_residuals(t0(), ctx.samples(200))?;
    Ok(Outcome::new(w.quartic_orthogonality, ctx.samples(200)))
}

fn web_axes(ctx: &Ctx) -> brocard::Result<Outcome> {
    let w = web_orthogonality_residuals(t0(), ctx.samples(200))?;
    Ok(Outcome::new(w.axis_parallelism, ctx.samples(200)))
}

fn quartic_landmarks(_: &Ctx) -> brocard::Result<Outcome> {
    let h = 3f64.sqrt() / 2.0;
    let pts = [
        Point64::new(0.0, -h),
        Point64::new(0.0, h),
        Point64::new(-0.5, 0.0),
        Point64::new(0.5, 0.0),
    ];
    Ok(Outcome::new(
        pts.iter()
            .map(|&p| quartic_residual(p).abs())
            .fold(0.0, f64::max),
        pts.len(),
    ))
}

/// Tangents of sampled `E_t` against the ellipse-family direction field.
fn e_field_tangents(ctx: &Ctx) -> brocard::Result<Outcome> {
    let mut out = Outcome::default();
    for t in grid(ctx.samples(12), 0.05, FRAC_PI_3 - 0.05) {
        let e = ellipse_et(t)?;
        let (rx, ry) = e.extents();
        for k in 0..16 {
            let th = 0.1 + k as f64 * 0.39;
            let tangent = Point64::new(-rx * th.sin(), ry * th.cos())
                .normalized()
                .ok_or(brocard::Error::InvalidGeometry("zero tangent"))?;
            let best = e_field_directions(e.point_at(th))
                .iter()
                .map(|d| d.cross(tangent).abs())
                .fold(f64::INFINITY, f64::min);
            out.add(best);
        }
    }
    Ok(out)
}

fn inversion_identity(ctx: &Ctx) -> brocard::Result<Outcome> {
    over_grid(ctx.samples(100), 0.0, FRAC_PI_3, beltrami_midpoint_check)
}

fn foci_arcs(ctx: &Ctx) -> brocard::Result<Outcome> {
    over_grid(ctx.samples(100), 0.0, FRAC_PI_3, |t| {
        let (a, b) = foci_on_arcs_check(t)?;
        Ok(a.max(b))
    })
}

fn random_pairs(ctx: &Ctx, f: fn(f64, f64) -> brocard::Result<f64>) -> brocard::Result<Outcome> {
    let mut rng = ctx.rng();
    let mut out = Outcome::default();
    for _ in 0..ctx.samples(200) {
        let a = rng.gen_range(1e-3..FRAC_PI_3);
        let b = rng.gen_range(1e-3..FRAC_PI_3);
        let (v, s) = if a < b { (a, b) } else { (b, a) };
        out.add((-f(s, v)?).max(0.0));
    }
    Ok(out)
}

fn gamma_nesting(ctx: &Ctx) -> brocard::Result<Outcome> {
    random_pairs(ctx, gamma_nesting_residual)
}

fn k_nesting(ctx: &Ctx) -> brocard::Result<Outcome> {
    random_pairs(ctx, nesting_residual)
}

/// Count of grid steps where `ε` or `a` fails to fall, plus the endpoint
/// values `|ε(0⁺) − 1|` and `ε(π/3)`.
fn eccentricity_shape(ctx: &Ctx) -> brocard::Result<Outcome> {
    let ts: Vec<f64> = grid(ctx.samples(400), 0.0, FRAC_PI_3).collect();
    let ms = ts
        .iter()
        .map(|&t| family_measures(t))
        .collect::<brocard::Result<Vec<_>>>()?;
    let ecc: Vec<f64> = ms.iter().map(|m| m.eccentricity).collect();
    let a: Vec<f64> = ms.iter().map(|m| m.a).collect();
    let ends = (family_measures::<f64>(1e-12)?.eccentricity - 1.0).abs()
        + family_measures::<f64>(FRAC_PI_3)?.eccentricity;
    Ok(Outcome::new(
        non_decreasing_steps(&ecc) + non_decreasing_steps(&a) + ends,
        ts.len(),
    ))
}

/// Largest second difference of `a` and `b`, or 1 if `b` peaks at an end.
fn axis_concavity(ctx: &Ctx) -> brocard::Result<Outcome> {
    let ts: Vec<f64> = grid(ctx.samples(400).max(3), 0.0, FRAC_PI_3).collect();
    let ms = ts
        .iter()
        .map(|&t| family_measures(t))
        .collect::<brocard::Result<Vec<_>>>()?;
    let mut worst = f64::NEG_INFINITY;
    for w in ms.windows(3) {
        worst = worst
            .max(w[0].a - 2.0 * w[1].a + w[2].a)
            .max(w[0].b - 2.0 * w[1].b + w[2].b);
    }
    let imax = (0..ms.len())
        .max_by(|&i, &j| ms[i].b.total_cmp(&ms[j].b))
        .unwrap_or(0);
    if imax == 0 || imax + 1 == ms.len() {
        worst = worst.max(1.0);
    }
    Ok(Outcome::new(worst.max(0.0), ts.len()))
}

fn similarity(ctx: &Ctx) -> brocard::Result<Outcome> {
    let mut rng = ctx.rng();
    let mut out = Outcome::default();
    for _ in 0..ctx.samples(50) {
        out.add(similarity_residual(Params64::new(
            rng.gen_range(0.1..10.0),
            rng.gen_range(1.74..30.0),
        )?)?);
    }
    Ok(out)
}

pub(super) fn checks() -> Vec<Check> {
    vec![
        Check::new(
            "thm4.isodynamic_fixed",
            "every member shares X15, X16 and the Beltrami points",
            Tol::Fixed(1e-10),
            isodynamic_fixed,
        ),
        Check::new(
            "thm4.posed_scene",
            "posed canonical scene reproduces E_t, its foci, X3 and K_t",
            Tol::Fixed(1e-10),
            posed_scene,
        ),
        Check::new(
            "thm4.reference_member",
            "member at t = arccos(3/5) reproduces its worked values",
            Tol::Fixed(1e-10),
            reference_member,
        ),
        Check::new(
            "cor12.b_max",
            "minor semi-axis peaks at 1/4",
            Tol::Fixed(1e-10),
            b_max,
        ),
        Check::new(
            "cor12.extremal_parameters",
            "b peaks at arccos(3/4); lower vertex bottoms out at (0,-1) at arccos(3/5)",
            Tol::Fixed(1e-8),
            extremal_parameters,
        ),
        Check::new(
            "prop8.envelope",
            "envelope points lie on E_t and on 4x^2 + y^2 = 1",
            Tol::Fixed(1e-10),
            envelope,
        ),
        Check::new(
            "prop9.kt_intersection",
            "K_t meets E_t at the envelope points",
            Tol::Scene,
            kt_intersection,
        ),
        Check::new(
            "thm5.embedding",
            "second Brocard triangles of B_t sweep B_t'",
            Tol::Fixed(1e-8),
            embedding,
        ),
        Check::new(
            "thm5.cot_rational",
            "cot t' equals its rational form in t",
            Tol::Fixed(1e-11),
            cot_rational,
        ),
        Check::new(
            "prop7.orthogonality",
            "K_t crosses both Beltrami circles at right angles",
            Tol::Scene,
            web_crossings,
        ),
        Check::new(
            "rem9.quartic_orthogonality",
            "the two direction fields are orthogonal on the quartic",
            Tol::Fixed(1e-7),
            web_quartic,
        ),
        Check::new(
            "rem9.axis_parallelism",
            "the two direction fields are parallel on the axes",
            Tol::Fixed(1e-7),
            web_axes,
        ),
        Check::new(
            "rem9.quartic_landmarks",
            "quartic passes through the isodynamic and Beltrami points",
            Tol::Primitive,
            quartic_landmarks,
        ),
        Check::new(
            "rem8.e_field_tangents",
            "ellipse-family direction field is tangent to E_t",
            Tol::Fixed(1e-7),
            e_field_tangents,
        ),
        Check::new(
            "rem5.inversion",
            "X6 inverts in the circumcircle to the midpoint of P2U2",
            Tol::Scene,
            inversion_identity,
        ),
        Check::new(
            "rem3.foci_arcs",
            "foci of E_t lie on unit circles about the Beltrami points",
            Tol::Primitive,
            foci_arcs,
        ),
        Check::new(
            "cor11.gamma_nesting",
            "circumcircles nest as t grows",
            Tol::Primitive,
            gamma_nesting,
        ),
        Check::new(
            "cor11.k_nesting",
            "Brocard circles nest as t grows",
            Tol::Primitive,
            k_nesting,
        ),
        Check::new(
            "prop10.eccentricity",
            "eccentricity and major axis fall from 1 and 1/2 to 0",
            Tol::Primitive,
            eccentricity_shape,
        ),
        Check::new(
            "prop10.concavity",
            "both semi-axes are concave, b with an interior maximum",
            Tol::Fixed(1e-6),
            axis_concavity,
        ),
        Check::new(
            "rem4.similarity",
            "any porism is similar to the family member with the same u",
            Tol::Scene,
            similarity,
        ),
    ]
}
