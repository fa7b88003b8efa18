//! Tables behind `orbit`, `family` and `continuous`.

use std::f64::consts::{FRAC_PI_3, TAU};

use brocard::centers::brocard_angle;
use brocard::{
    closure_residuals, envelope_points, envelope_residual, family_measures, orbit,
    scene_for_isosceles, vertices_at, Direction, Error, Isosceles64, Params64, Point64,
};

use crate::error::CliError;
use crate::table::{Cell, Table};

pub const ORBIT_COLUMNS: [&str; 13] = [
    "generation",
    "R",
    "u",
    "u_error",
    "x3_x",
    "x3_y",
    "omega1_x",
    "omega1_y",
    "omega2_x",
    "omega2_y",
    "k_center_x",
    "k_center_y",
    "k_radius",
];

pub const FAMILY_COLUMNS: [&str; 9] = [
    "t",
    "ax",
    "ay",
    "bx",
    "by",
    "cx",
    "cy",
    "closure_residual_max",
    "brocard_angle_deviation",
];

pub const CONTINUOUS_COLUMNS: [&str; 11] = [
    "t",
    "a",
    "b",
    "eccentricity",
    "R_t",
    "x3_y",
    "k_center_y",
    "k_radius",
    "xi1_x",
    "xi1_y",
    "envelope_residual",
];

/// Forward or backward orbit, one row per state in the root's frame. A
/// state sitting exactly on the equilateral fixed point has its Brocard
/// points and zero-radius Brocard circle at its circumcenter.
pub fn orbit_table(
    r0: f64,
    u0: f64,
    steps: usize,
    direction: Direction,
) -> Result<Table, CliError> {
    let p0 = Params64::new(r0, u0).map_err(|e| CliError::Usage(e.to_string()))?;
    let trace = orbit(p0, steps, direction)?;
    let mut t = Table::new(&ORBIT_COLUMNS);
    for (state, err) in trace.states.iter().zip(&trace.convergence.errors_u) {
        let (x3, o1, o2, kc, kr) = match state.scene() {
            Ok(s) => (
                s.x3,
                s.omega1,
                s.omega2,
                s.brocard_circle.center,
                s.brocard_circle.radius,
            ),
            Err(Error::DegeneratePorism { .. }) => {
                let c = state.pose.apply(Point64::origin());
                (c, c, c, c, 0.0)
            }
            Err(e) => return Err(e.into()),
        };
        let mut row = vec![Cell::Int(state.generation as i64)];
        row.extend(
            [
                state.params.r,
                state.params.u,
                *err,
                x3.x,
                x3.y,
                o1.x,
                o1.y,
                o2.x,
                o2.y,
                kc.x,
                kc.y,
                kr,
            ]
            .map(Cell::Real),
        );
        t.push(row);
    }
    Ok(t)
}

/// Members on the uniform grid `t = 2πk/samples`; singular parameters are
/// skipped and returned as notes.
pub fn family_table(d: f64, h: f64, samples: usize) -> Result<(Table, Vec<String>), CliError> {
    let iso = Isosceles64::new(d, h).map_err(|e| CliError::Usage(e.to_string()))?;
    let scene = scene_for_isosceles(&iso).map_err(|e| CliError::Usage(e.to_string()))?;
    let omega = scene.params.omega();
    let mut t = Table::new(&FAMILY_COLUMNS);
    let mut notes = Vec::new();
    for k in 0..samples {
        let s = TAU * k as f64 / samples as f64;
        let tri = match vertices_at(&iso, s) {
            Ok(tri) => tri,
            Err(Error::ParametrizationSingularity { .. }) => {
                notes.push(format!("skipped singular t = {s}"));
                continue;
            }
            Err(e) => return Err(e.into()),
        };
        let closure = closure_residuals(&scene, &tri)
            .into_iter()
            .fold(0.0, f64::max);
        let dev = (brocard_angle(&tri)?.omega - omega).abs();
        t.push_reals(&[
            s, tri.a.x, tri.a.y, tri.b.x, tri.b.y, tri.c.x, tri.c.y, closure, dev,
        ]);
    }
    Ok((t, notes))
}

/// Family members on `samples` evenly spaced values from `t_min` to `t_max`
/// inclusive. Envelope columns are NaN past `arccos(3/5)`.
pub fn continuous_table(t_min: f64, t_max: f64, samples: usize) -> Result<Table, CliError> {
    if !(t_min > 0.0 && t_min < t_max && t_max <= FRAC_PI_3) {
        return Err(CliError::Usage(format!(
            "need 0 < t_min < t_max <= pi/3, got [{t_min}, {t_max}]"
        )));
    }
    let mut t = Table::new(&CONTINUOUS_COLUMNS);
    let n = samples.max(2);
    for k in 0..n {
        let s = if k + 1 == n {
            t_max
        } else {
            t_min + (t_max - t_min) * k as f64 / (n - 1) as f64
        };
        let m = family_measures(s)?;
        let (xi, res) = match envelope_points(s) {
            Ok((p, _)) => (p, envelope_residual(p)),
            Err(Error::NoRealEnvelope { .. }) => (Point64::new(f64::NAN, f64::NAN), f64::NAN),
            Err(e) => return Err(e.into()),
        };
        t.push_reals(&[
            s,
            m.a,
            m.b,
            m.eccentricity,
            m.r,
            m.x3_y,
            m.k_center_y,
            m.k_radius,
            xi.x,
            xi.y,
            res,
        ]);
    }
    Ok(t)
}
