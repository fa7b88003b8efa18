//! Brocard porisms: triangles inscribed in a circle and circumscribed about
//! their Brocard inellipse, the map sending a porism to the one swept by its
//! second Brocard triangles, and the continuous family that map embeds into.
//!
//! Everything is generic over [`Scalar`] (`f32` or `f64`); the `*64` / `*32`
//! aliases below fix the type.

#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::type_complexity)]

pub mod centers;
pub mod continuous;
pub mod error;
pub mod geom;
pub mod porism;
pub mod recurrence;
pub mod scalar;
pub mod tolerance;

pub use centers::{
    brocard_angle, brocard_circle, brocard_points_by_construction, center_from_trilinear,
    rotated_side_concurrence, second_brocard_circle, second_brocard_triangle, standard_centers,
    BrocardAngle, BrocardPoints, CenterFunction, StandardCenters,
};
pub use continuous::{
    beltrami_midpoint_check, ellipse_et, embed_step, envelope_points, envelope_residual,
    family_extrema, family_measures, foci_on_arcs_check, gamma_nesting_residual,
    kt_inellipse_intersection_check, nesting_residual, porism_bt, quartic_residual, t_from_u,
    u_from_t, web_orthogonality_residuals, ContinuousPorism, FamilyExtrema, FamilyMeasures,
    WebResiduals,
};
pub use error::{Error, Result};
pub use geom::{AxisAlignedEllipse, Circle, Line, MajorAxis, Point, Pose, Triangle};
pub use porism::{
    closure_residuals, dh_from_ru, isosceles_foci, isosceles_scene, ru_from_axes, ru_from_dh,
    scene_for_isosceles, scene_from_ru, vertices_at, IsoscelesParams, IsoscelesScene, PorismParams,
    PorismScene,
};
pub use recurrence::{
    alternating_brocard_sequence, anti_scene, apollonius_circles, child_scene, child_scene_with,
    orbit, orbit_with, step_backward, step_forward, Direction, OrbitState, OrbitTrace, StepMap,
};
pub use scalar::Scalar;
pub use tolerance::Tolerances;

pub type Point64 = Point<f64>;
pub type Line64 = Line<f64>;
pub type Circle64 = Circle<f64>;
pub type Ellipse64 = AxisAlignedEllipse<f64>;
pub type Triangle64 = Triangle<f64>;
pub type Pose64 = Pose<f64>;
pub type Params64 = PorismParams<f64>;
pub type Isosceles64 = IsoscelesParams<f64>;
pub type Scene64 = PorismScene<f64>;
pub type Continuous64 = ContinuousPorism<f64>;
pub type Orbit64 = OrbitTrace<f64>;

pub type Point32 = Point<f32>;
pub type Circle32 = Circle<f32>;
pub type Triangle32 = Triangle<f32>;
pub type Params32 = PorismParams<f32>;
pub type Scene32 = PorismScene<f32>;
