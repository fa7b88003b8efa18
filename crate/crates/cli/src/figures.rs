//! Figure emission. Every figure verifies the incidences it draws before it
//! produces any output.

use std::f64::consts::{FRAC_PI_3, TAU};

use brocard::centers::second_brocard_triangle;
use brocard::continuous::{envelope_residual, quartic_point, quartic_residual};
use brocard::recurrence::generations;
use brocard::{
    brocard_circle, brocard_points_by_construction, closure_residuals, ellipse_et, envelope_points,
    gamma_nesting_residual, porism_bt, scene_for_isosceles, Circle64, Isosceles64, Params64,
    Point64, Scene64, StepMap,
};

use crate::error::CliError;
use crate::svg::{Stroke, Svg};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FigureName {
    Fig2,
    Fig4,
    Fig5,
    Fig6,
    Fig7,
}

#[derive(Debug, Clone, Copy)]
pub struct FigureParams {
    pub d: f64,
    pub h: f64,
    pub r0: f64,
    pub u0: f64,
    /// Vertex parameter of the drawn member.
    pub t: f64,
    pub generations: usize,
    /// Number of family members drawn in fig6.
    pub members: usize,
    pub tolerance: f64,
}

impl Default for FigureParams {
    fn default() -> Self {
        FigureParams {
            d: 1.0,
            h: 2.0,
            r0: 1.0,
            u0: 3.0,
            t: 0.7,
            generations: 3,
            members: 8,
            tolerance: 1e-9,
        }
    }
}

/// Fails with a check error naming the first residual above `tol`.
fn require(what: &str, residual: f64, tol: f64) -> Result<(), CliError> {
    if residual <= tol {
        Ok(())
    } else {
        Err(CliError::Check(format!(
            "{what}: residual {residual:e} exceeds {tol:e}"
        )))
    }
}

pub fn render(name: FigureName, p: &FigureParams) -> Result<String, CliError> {
    if !(p.tolerance > 0.0) {
        return Err(CliError::Usage("tolerance must be positive".into()));
    }
    match name {
        FigureName::Fig2 => fig2(p),
        FigureName::Fig4 => fig4(p),
        FigureName::Fig5 => fig5(p),
        FigureName::Fig6 => fig6(p),
        FigureName::Fig7 => fig7(p),
    }
}

/// One member, its inellipse, circumcircle, Brocard circle and second
/// Brocard triangle.
fn fig2(p: &FigureParams) -> Result<String, CliError> {
    let s = scene_for_isosceles(&Isosceles64::new(p.d, p.h)?)?;
    let tri = s.member(p.t)?;
    let t2 = second_brocard_triangle(&tri)?;
    let k = brocard_circle(&tri)?;
    let bp = brocard_points_by_construction(&tri)?;
    let (w1, w2) = s.construction_brocard_points();
    require(
        "member tangency",
        closure_residuals(&s, &tri).into_iter().fold(0.0, f64::max),
        p.tolerance,
    )?;
    require(
        "second Brocard vertices on the Brocard circle",
        t2.vertices()
            .iter()
            .map(|&v| k.distance_residual(v))
            .fold(0.0, f64::max),
        p.tolerance,
    )?;
    require(
        "Brocard points at the foci",
        bp.omega1.distance(w1).max(bp.omega2.distance(w2)),
        p.tolerance,
    )?;

    let mut svg = Svg::new("Brocard porism member with its second Brocard triangle");
    svg.circle(&s.circumcircle, "circumcircle", Stroke::Solid);
    svg.ellipse(&s.inellipse, "inellipse");
    svg.circle(&s.brocard_circle, "brocard", Stroke::Solid);
    svg.triangle(&tri, Stroke::Solid);
    svg.triangle(&t2, Stroke::Dashed);
    for (q, label) in [
        (s.omega1, "Ω1"),
        (s.omega2, "Ω2"),
        (s.x3, "X3"),
        (s.x6, "X6"),
    ] {
        svg.point(q, label);
    }
    Ok(svg.finish())
}

/// Arc of `c` spanning the angles of `pts`, widened by a fifth on each side.
fn covering_arc(svg: &mut Svg, c: &Circle64, pts: &[Point64]) {
    let base = pts
        .first()
        .map_or(0.0, |q| (q.y - c.center.y).atan2(q.x - c.center.x));
    let offs: Vec<f64> = pts
        .iter()
        .map(|q| {
            let a = (q.y - c.center.y).atan2(q.x - c.center.x) - base;
            (a + std::f64::consts::PI).rem_euclid(TAU) - std::f64::consts::PI
        })
        .collect();
    let lo = offs.iter().copied().fold(0.0, f64::min);
    let hi = offs.iter().copied().fold(0.0, f64::max);
    let pad = 0.2 * (hi - lo).max(0.2);
    svg.arc(c, base + lo - pad, base + hi + pad, "arc");
}

/// Worst residual of a pair of Brocard points against the two Beltrami
/// circles, one point per circle, under the better assignment.
fn beltrami_residual(c1: &Circle64, c2: &Circle64, a: Point64, b: Point64) -> f64 {
    let scale = c1.radius.max(1.0);
    let direct = c1.distance_residual(a).max(c2.distance_residual(b));
    let swapped = c1.distance_residual(b).max(c2.distance_residual(a));
    direct.min(swapped) / scale
}

fn root_scene(p: &FigureParams) -> Result<Scene64, CliError> {
    Ok(Scene64::new(Params64::new(p.r0, p.u0)?)?)
}

/// A member and its iterated second Brocard triangles (dashed), with the
/// Beltrami arcs carrying all their Brocard points.
fn fig4(p: &FigureParams) -> Result<String, CliError> {
    let root = root_scene(p)?;
    let (c1, c2) = (root.beltrami_c1(), root.beltrami_c2());
    let mut tri = root.member(p.t)?;
    let mut svg = Svg::new("Iterated second Brocard triangles");
    svg.triangle(&tri, Stroke::Solid);
    let mut on_arcs = vec![root.omega1, root.omega2];
    for g in 1..=p.generations {
        tri = second_brocard_triangle(&tri)?;
        let bp = brocard_points_by_construction(&tri)?;
        require(
            &format!("generation {g} Brocard points on the Beltrami circles"),
            beltrami_residual(&c1, &c2, bp.omega1, bp.omega2),
            p.tolerance,
        )?;
        svg.triangle(&tri, Stroke::Dashed);
        on_arcs.extend([bp.omega1, bp.omega2]);
    }
    let near = |c: &Circle64| -> Vec<Point64> {
        on_arcs
            .iter()
            .copied()
            .filter(|&q| c.distance_residual(q) <= p.tolerance * c.radius.max(1.0))
            .collect()
    };
    covering_arc(&mut svg, &c1, &near(&c1));
    covering_arc(&mut svg, &c2, &near(&c2));
    for q in on_arcs {
        svg.point(q, "");
    }
    svg.point(root.x15, "X15");
    Ok(svg.finish())
}

/// Generations as porisms: nested Brocard circles, inellipses and the
/// alternating Brocard points on the Beltrami arcs.
fn fig5(p: &FigureParams) -> Result<String, CliError> {
    let root = root_scene(p)?;
    let (c1, c2) = (root.beltrami_c1(), root.beltrami_c2());
    let gens = generations(&root, p.generations + 1, StepMap::standard())?;
    let mut svg = Svg::new("Sequence of Brocard porisms and their Beltrami circles");
    let mut pts = Vec::new();
    for (k, g) in gens.iter().enumerate() {
        let (o1, o2) = g.brocard_points();
        require(
            &format!("generation {k} Brocard points on the Beltrami circles"),
            beltrami_residual(&c1, &c2, o1, o2),
            p.tolerance,
        )?;
        if let brocard::recurrence::Generation::Scene(s) = g {
            if k > 0 {
                let outer = gens[k - 1].brocard_circle();
                require(
                    &format!("generation {k} Brocard circle nesting"),
                    (-outer.containment_margin(&s.brocard_circle)).max(0.0),
                    p.tolerance,
                )?;
            }
            svg.circle(
                &s.brocard_circle,
                "brocard",
                if k == 0 {
                    Stroke::Solid
                } else {
                    Stroke::Dashed
                },
            );
            svg.ellipse(&s.inellipse, "inellipse");
        }
        pts.extend([o1, o2]);
    }
    let near = |c: &Circle64| -> Vec<Point64> {
        pts.iter()
            .copied()
            .filter(|&q| c.distance_residual(q) <= p.tolerance * c.radius.max(1.0))
            .collect()
    };
    covering_arc(&mut svg, &c1, &near(&c1));
    covering_arc(&mut svg, &c2, &near(&c2));
    for q in &pts {
        svg.point(*q, "");
    }
    svg.point(root.x15, "X15");
    Ok(svg.finish())
}

/// Members of the continuous family: inellipses, the focal arcs, and the
/// nested circumcircles.
fn fig6(p: &FigureParams) -> Result<String, CliError> {
    let n = p.members.max(2);
    let ts: Vec<f64> = (0..n)
        .map(|i| FRAC_PI_3 * (i as f64 + 0.5) / n as f64)
        .collect();
    for w in ts.windows(2) {
        require(
            "circumcircle nesting",
            (-gamma_nesting_residual(w[1], w[0])?).max(0.0),
            1e-12,
        )?;
    }
    let mut svg = Svg::new("Continuous family of Brocard porisms");
    let unit = |x: f64| Circle64::new(Point64::new(x, 0.0), 1.0);
    // foci travel from the Beltrami points down to X15
    let end = -FRAC_PI_3;
    svg.arc(&unit(-0.5)?, end, 0.0, "arc");
    svg.arc(
        &unit(0.5)?,
        std::f64::consts::PI,
        std::f64::consts::PI - end,
        "arc",
    );
    for &t in &ts {
        let b = porism_bt(t)?;
        let (f1, f2) = b.foci;
        require(
            "focus on its arc",
            (f1.distance(Point64::new(-0.5, 0.0)) - 1.0)
                .abs()
                .max((f2.distance(Point64::new(0.5, 0.0)) - 1.0).abs()),
            p.tolerance,
        )?;
        svg.ellipse(&b.ellipse, "inellipse");
        svg.circle(&b.gamma, "circumcircle", Stroke::Solid);
    }
    let h = 3f64.sqrt() / 2.0;
    svg.point(Point64::new(0.0, -h), "X15");
    svg.point(Point64::new(-0.5, 0.0), "P2");
    svg.point(Point64::new(0.5, 0.0), "U2");
    Ok(svg.finish())
}

/// Envelope of the inellipses, samples of the orthogonality quartic, and
/// the tangency of `K_t` with `E_t` at `t = arccos(3/5)`.
fn fig7(p: &FigureParams) -> Result<String, CliError> {
    let t0 = 0.6f64.acos();
    let n = 64;
    let mut right = Vec::with_capacity(n + 1);
    let mut left = Vec::with_capacity(n + 1);
    for i in 1..=n {
        let (a, b) = envelope_points(t0 * i as f64 / n as f64)?;
        require(
            "envelope point on 4x² + y² = 1",
            envelope_residual(a).abs().max(envelope_residual(b).abs()),
            1e-10,
        )?;
        right.push(a);
        left.push(b);
    }
    left.reverse();
    let envelope: Vec<Point64> = left.into_iter().chain(right).collect();

    let mut quartic = Vec::new();
    for i in 0..=n {
        let x = -0.5 + i as f64 / n as f64;
        for upper in [false, true] {
            let q = quartic_point(x, upper);
            require("quartic sample", quartic_residual(q).abs(), p.tolerance)?;
            quartic.push(q);
        }
    }

    let b = porism_bt(t0)?;
    let touch = Point64::new(0.0, -1.0);
    require(
        "K_t through (0, -1)",
        b.brocard_circle.distance_residual(touch),
        1e-10,
    )?;
    require(
        "E_t through (0, -1)",
        ellipse_et(t0)?.implicit_residual(touch).abs(),
        1e-10,
    )?;

    let mut svg = Svg::new("Envelope, orthogonality locus and tangency at t0");
    svg.polyline(&envelope, "envelope");
    for q in quartic {
        svg.point(q, "");
    }
    svg.ellipse(&b.ellipse, "inellipse");
    svg.circle(&b.brocard_circle, "brocard", Stroke::Solid);
    svg.circle(
        &Circle64::new(Point64::new(-0.5, 0.0), 1.0)?,
        "arc",
        Stroke::Dashed,
    );
    svg.circle(
        &Circle64::new(Point64::new(0.5, 0.0), 1.0)?,
        "arc",
        Stroke::Dashed,
    );
    svg.point(touch, "(0,-1)");
    Ok(svg.finish())
}
