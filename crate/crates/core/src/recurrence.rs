//! The porism map `f(R, u) = (R√(u² − 3)/(2u), (u² + 3)/(2u))` sending a
//! porism to the one swept by its second Brocard triangles, its inverse, and
//! the generation-to-generation scene bookkeeping.
//!
//! A child scene lives in its parent's frame translated to `(0, −R')` and
//! mirrored in x, so every generation keeps the canonical sign convention and
//! the Brocard point labels swap at each step.

use crate::error::{Error, Result};
use crate::geom::{Circle, Line, Point, Pose};
use crate::porism::{scene_for_isosceles, IsoscelesParams, PorismParams, PorismScene};
use crate::scalar::{root_u_sq_minus_3, Scalar};

/// Forward map. `u' = √3 + (u − √3)²/(2u)` is the same quantity as
/// `(u² + 3)/(2u)` written without cancellation near the fixed point.
pub fn step_forward<T: Scalar>(p: PorismParams<T>) -> PorismParams<T> {
    let s3 = T::sqrt3();
    let two_u = T::two() * p.u;
    let e = p.u - s3;
    PorismParams {
        r: p.r * root_u_sq_minus_3(p.u) / two_u,
        u: s3 + e * e / two_u,
    }
}

/// Inverse map on the branch `u° ≥ √3`.
pub fn step_backward<T: Scalar>(p: PorismParams<T>) -> Result<PorismParams<T>> {
    if !(p.u >= T::sqrt3()) || !(p.r > T::zero()) {
        return Err(Error::OutOfRange {
            what: "u",
            value: p.u.as_f64(),
        });
    }
    let k = root_u_sq_minus_3(p.u);
    if k <= T::zero() {
        return Err(Error::FixedPointNoPreimage);
    }
    let up = p.u + k;
    Ok(PorismParams {
        r: T::two() * up * p.r / root_u_sq_minus_3(up),
        u: up,
    })
}

/// `u' = (u² − 3)/(2u)`: the forward map with one sign flipped. Exists only
/// so the verification suite can demonstrate that it notices.
pub fn step_forward_flipped<T: Scalar>(p: PorismParams<T>) -> PorismParams<T> {
    let two_u = T::two() * p.u;
    let s3 = T::sqrt3();
    PorismParams {
        r: p.r * root_u_sq_minus_3(p.u) / two_u,
        u: (p.u - s3) * (p.u + s3) / two_u,
    }
}

/// The forward map used by scene and orbit construction.
#[derive(Clone, Copy)]
pub struct StepMap<T> {
    pub forward: fn(PorismParams<T>) -> PorismParams<T>,
}

impl<T: Scalar> StepMap<T> {
    pub fn standard() -> Self {
        StepMap {
            forward: step_forward,
        }
    }

    pub fn flipped_sign() -> Self {
        StepMap {
            forward: step_forward_flipped,
        }
    }
}

impl<T: Scalar> Default for StepMap<T> {
    fn default() -> Self {
        Self::standard()
    }
}

impl<T> std::fmt::Debug for StepMap<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("StepMap").finish_non_exhaustive()
    }
}

/// Pose of a child's canonical frame inside its parent's canonical frame.
pub fn step_pose<T: Scalar>(child_r: T) -> Pose<T> {
    Pose {
        translation: Point::new(T::zero(), -child_r),
        rotation: T::zero(),
        reflect_x: true,
        scale: T::one(),
    }
}

pub fn child_scene<T: Scalar>(parent: &PorismScene<T>) -> Result<PorismScene<T>> {
    child_scene_with(parent, StepMap::standard())
}

pub fn child_scene_with<T: Scalar>(
    parent: &PorismScene<T>,
    map: StepMap<T>,
) -> Result<PorismScene<T>> {
    let params = checked((map.forward)(parent.params))?;
    PorismScene::with_pose(params, parent.pose.compose(&step_pose(params.r)))
}

/// The porism whose child is `scene`.
pub fn anti_scene<T: Scalar>(scene: &PorismScene<T>) -> Result<PorismScene<T>> {
    let params = step_backward(scene.params)?;
    PorismScene::with_pose(
        params,
        scene.pose.compose(&step_pose(scene.params.r).inverse()),
    )
}

fn checked<T: Scalar>(p: PorismParams<T>) -> Result<PorismParams<T>> {
    if !p.r.is_finite() || !(p.r >= T::zero()) {
        return Err(Error::OutOfRange {
            what: "R",
            value: p.r.as_f64(),
        });
    }
    if !(p.u >= T::sqrt3()) || !p.u.is_finite() {
        return Err(Error::OutOfRange {
            what: "u",
            value: p.u.as_f64(),
        });
    }
    Ok(p)
}

/// Child inellipse semi-axes from the parent's alone:
/// `a' = a√(a² − b²)/√(a² + 2b²)`, `b' = b√(a² − b²)√(4a² − b²)/(a² + 2b²)`.
pub fn child_axes_from_parent<T: Scalar>(a: T, b: T) -> (T, T) {
    let (a2, b2) = (a * a, b * b);
    let c = ((a - b) * (a + b)).sqrt();
    let m = a2 + T::two() * b2;
    (a * c / m.sqrt(), b * c * (T::lit(4.0) * a2 - b2).sqrt() / m)
}

/// The child's `X182` in closed form, `(0, −3R'(u² + 1)/(4u'u))` in the
/// parent's canonical frame, mapped to the parent's world frame.
pub fn child_x182_closed_form<T: Scalar>(parent: &PorismScene<T>) -> Point<T> {
    let PorismParams { u, .. } = parent.params;
    let c = step_forward(parent.params);
    let y = -T::lit(3.0) * c.r * (u * u + T::one()) / (T::lit(4.0) * c.u * u);
    parent.pose.apply(Point::new(T::zero(), y))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Forward,
    Backward,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OrbitState<T> {
    pub generation: usize,
    pub params: PorismParams<T>,
    /// Canonical frame of this generation in the frame of generation 0.
    pub pose: Pose<T>,
}

impl<T: Scalar> OrbitState<T> {
    pub fn scene(&self) -> Result<PorismScene<T>> {
        PorismScene::with_pose(self.params, self.pose)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Convergence<T> {
    /// `√3` forward, `+∞` backward.
    pub limit_u: T,
    /// `|u_k − √3|` per state.
    pub errors_u: Vec<T>,
    /// Forward: `e_{k+1}/e_k²`, reported while `e_{k+1}` is above the
    /// floating-point floor. Backward: growth ratio `u_{k+1}/u_k`.
    pub ratio_diagnostic: Vec<T>,
    /// The forward orbit reached `√3` to within floating-point resolution.
    pub converged: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct OrbitTrace<T> {
    pub states: Vec<OrbitState<T>>,
    pub direction: Direction,
    pub convergence: Convergence<T>,
}

impl<T: Scalar> OrbitTrace<T> {
    pub fn last(&self) -> &OrbitState<T> {
        self.states
            .last()
            .expect("orbit has at least its initial state")
    }
}

pub fn orbit<T: Scalar>(
    p0: PorismParams<T>,
    n: usize,
    direction: Direction,
) -> Result<OrbitTrace<T>> {
    orbit_with(p0, n, direction, StepMap::standard())
}

/// Up to `n` steps from `p0`. A forward orbit stops early once `u` equals
/// `√3` in floating point, since every further state has `R = 0`.
pub fn orbit_with<T: Scalar>(
    p0: PorismParams<T>,
    n: usize,
    direction: Direction,
    map: StepMap<T>,
) -> Result<OrbitTrace<T>> {
    let s3 = T::sqrt3();
    let floor = T::lit(8.0) * T::epsilon() * s3;
    let mut states = vec![OrbitState {
        generation: 0,
        params: PorismParams::new(p0.r, p0.u)?,
        pose: Pose::identity(),
    }];
    for g in 1..=n {
        let cur = states[g - 1];
        let (params, pose) = match direction {
            Direction::Forward => {
                if cur.params.u - s3 <= T::zero() {
                    break;
                }
                let next = checked((map.forward)(cur.params))?;
                if !(next.r > T::zero()) {
                    break;
                }
                (next, cur.pose.compose(&step_pose(next.r)))
            }
            Direction::Backward => {
                let next = step_backward(cur.params)?;
                if !next.r.is_finite() || !next.u.is_finite() {
                    break;
                }
                (next, cur.pose.compose(&step_pose(cur.params.r).inverse()))
            }
        };
        states.push(OrbitState {
            generation: g,
            params,
            pose,
        });
    }

    let errors_u: Vec<T> = states.iter().map(|s| (s.params.u - s3).abs()).collect();
    let (limit_u, ratio_diagnostic, converged) = match direction {
        Direction::Forward => {
            let ratios = errors_u
                .windows(2)
                .take_while(|w| w[1] > floor)
                .map(|w| w[1] / (w[0] * w[0]))
                .collect();
            (s3, ratios, *errors_u.last().unwrap() <= floor)
        }
        Direction::Backward => {
            let ratios = states
                .windows(2)
                .map(|w| w[1].params.u / w[0].params.u)
                .collect();
            (T::infinity(), ratios, false)
        }
    };
    Ok(OrbitTrace {
        states,
        direction,
        convergence: Convergence {
            limit_u,
            errors_u,
            ratio_diagnostic,
            converged,
        },
    })
}

/// One generation of a forward scene sequence. Once `u` has collapsed onto
/// `√3` in floating point the porism is the equilateral limit, whose
/// Brocard points, circumcenter and Brocard circle all shrink to one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Generation<T> {
    Scene(PorismScene<T>),
    Limit(Point<T>),
}

impl<T: Scalar> Generation<T> {
    /// World Brocard points in index order `(Ω1, Ω2)`.
    pub fn brocard_points(&self) -> (Point<T>, Point<T>) {
        match self {
            Generation::Scene(s) => (s.omega1, s.omega2),
            Generation::Limit(p) => (*p, *p),
        }
    }

    /// World Brocard circle; a zero-radius circle in the limit.
    pub fn brocard_circle(&self) -> Circle<T> {
        match self {
            Generation::Scene(s) => s.brocard_circle,
            Generation::Limit(p) => Circle {
                center: *p,
                radius: T::zero(),
            },
        }
    }
}

/// `n` generations starting at `root` (generation 0).
pub fn generations<T: Scalar>(
    root: &PorismScene<T>,
    n: usize,
    map: StepMap<T>,
) -> Result<Vec<Generation<T>>> {
    let mut out = Vec::with_capacity(n);
    let mut cur = Generation::Scene(*root);
    for _ in 0..n {
        out.push(cur);
        cur = match cur {
            Generation::Scene(s) => match child_scene_with(&s, map) {
                Ok(c) => Generation::Scene(c),
                Err(Error::DegeneratePorism { .. }) => Generation::Limit(s.x182),
                Err(e) => return Err(e),
            },
            limit => limit,
        };
    }
    Ok(out)
}

/// World Brocard points `(Ω1, Ω'2, Ω''1, …)` and `(Ω2, Ω'1, Ω''2, …)` over
/// `n` generations; the first lies on the root's first Beltrami circle, the
/// second on its second.
pub fn alternating_brocard_sequence<T: Scalar>(
    root: &PorismScene<T>,
    n: usize,
) -> Result<(Vec<Point<T>>, Vec<Point<T>>)> {
    if n == 0 {
        return Err(Error::OutOfRange {
            what: "n",
            value: 0.0,
        });
    }
    let gens = generations(root, n, StepMap::standard())?;
    Ok(gens
        .iter()
        .enumerate()
        .map(|(k, g)| {
            let (o1, o2) = g.brocard_points();
            if k % 2 == 0 {
                (o1, o2)
            } else {
                (o2, o1)
            }
        })
        .unzip())
}

/// The three circles through one vertex and both isodynamic points, for the
/// upright isosceles member. The apex one degenerates to the Brocard axis.
/// The circle through the left base vertex is the second Beltrami circle,
/// the one through the right base vertex the first.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ApolloniusCircles<T> {
    pub through_a: Circle<T>,
    pub through_b: Circle<T>,
    pub brocard_axis: Line<T>,
    /// Distance of the apex from the Brocard axis (zero up to rounding).
    pub apex_offset: T,
}

pub fn apollonius_circles<T: Scalar>(i: &IsoscelesParams<T>) -> Result<ApolloniusCircles<T>> {
    let scene = scene_for_isosceles(i)?;
    let base_y = (i.d * i.d - i.h * i.h) / (T::two() * i.h);
    let apex = Point::new(T::zero(), i.zeta() / (T::two() * i.h));
    let through_a = Circle::through(Point::new(-i.d, base_y), scene.x15, scene.x16)?;
    let through_b = Circle::through(Point::new(i.d, base_y), scene.x15, scene.x16)?;
    let brocard_axis = Line::through(scene.x15, scene.x16)?;
    Ok(ApolloniusCircles {
        through_a,
        through_b,
        brocard_axis,
        apex_offset: brocard_axis.distance(apex),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::Triangle;

    fn params(r: f64, u: f64) -> PorismParams<f64> {
        PorismParams::new(r, u).unwrap()
    }

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs().max(1e-300)
    }

    #[test]
    fn forward_examples() {
        let c = step_forward(params(1.0, 2.0));
        assert!(rel(c.r, 0.25) < 1e-15 && rel(c.u, 1.75) < 1e-15);
        let c = step_forward(params(1.25, 1.75));
        assert!(rel(c.r, 5.0 / 56.0) < 1e-15 && rel(c.u, 97.0 / 56.0) < 1e-15);
        let c = step_forward(params(3.0, 3f64.sqrt()));
        assert_eq!((c.r, c.u), (0.0, 3f64.sqrt()));
    }

    #[test]
    fn backward_examples() {
        let p = step_backward(params(0.25, 1.75)).unwrap();
        assert!(rel(p.r, 1.0) < 1e-15 && rel(p.u, 2.0) < 1e-15);
        let p = step_backward(params(1.0, 2.0)).unwrap();
        assert!(rel(p.r, 6f64.sqrt()) < 1e-15 && rel(p.u, 3.0) < 1e-15);
        let p = step_backward(p).unwrap();
        assert!(rel(p.u, 3.0 + 6f64.sqrt()) < 1e-15);
        assert_eq!(
            step_backward(params(1.0, 3f64.sqrt())).unwrap_err(),
            Error::FixedPointNoPreimage
        );
    }

    #[test]
    fn fixture_child_is_parent_brocard_circle() {
        let parent = PorismScene::new(params(1.25, 1.75)).unwrap();
        let child = child_scene(&parent).unwrap();
        assert!(
            child
                .circumcircle
                .center
                .distance(Point::new(0.0, -5.0 / 56.0))
                < 1e-15
        );
        assert!((child.circumcircle.radius - 5.0 / 56.0).abs() < 1e-15);
        assert!(child.x15.distance(parent.x15) < 1e-12);
        assert!(child.x16.distance(parent.x16) < 1e-9);
        assert!(child.x182.distance(child_x182_closed_form(&parent)) < 1e-15);
    }

    #[test]
    fn child_labels_swap_onto_beltrami_circles() {
        let parent = PorismScene::new(params(1.0, 2.5)).unwrap();
        let child = child_scene(&parent).unwrap();
        assert!(parent.beltrami_c1().distance_residual(child.omega2) < 1e-12);
        assert!(parent.beltrami_c2().distance_residual(child.omega1) < 1e-12);
    }

    #[test]
    fn axes_match_direct_child() {
        for &(r, u) in &[(1.0, 2.0), (1.25, 1.75), (0.3, 7.0)] {
            let p = params(r, u);
            let (a, b) = p.inellipse_axes();
            let (a1, b1) = child_axes_from_parent(a, b);
            let (a2, b2) = step_forward(p).inellipse_axes();
            assert!(rel(a1, a2) < 1e-12 && rel(b1, b2) < 1e-12);
        }
    }

    #[test]
    fn anti_scene_round_trip() {
        let s = PorismScene::new(params(0.25, 1.75)).unwrap();
        let anti = anti_scene(&s).unwrap();
        assert!(rel(anti.params.r, 1.0) < 1e-14 && rel(anti.params.u, 2.0) < 1e-14);
        let back = child_scene(&anti).unwrap();
        assert!(back.omega1.distance(s.omega1) < 1e-14);
        assert!(back.omega2.distance(s.omega2) < 1e-14);
        assert!(back.x6.distance(s.x6) < 1e-14);
        assert!(anti.x15.distance(s.x15) < 1e-12);
    }

    #[test]
    fn forward_orbit_from_one_three() {
        let tr = orbit(params(1.0, 3.0), 6, Direction::Forward).unwrap();
        assert!(tr.states.len() <= 7);
        assert!(tr.convergence.converged);
        assert!(*tr.convergence.errors_u.last().unwrap() < 1e-12);
        assert!(tr.convergence.ratio_diagnostic.len() >= 3);
        for (k, w) in tr.convergence.ratio_diagnostic.iter().enumerate() {
            let oracle = 1.0 / (2.0 * tr.states[k].params.u);
            assert!(
                (w - oracle).abs() < 1e-6 * oracle.max(1.0),
                "{w} vs {oracle}"
            );
        }
        assert!(tr.states.windows(2).all(|w| w[1].params.r < w[0].params.r));
    }

    #[test]
    fn backward_orbit_grows() {
        let tr = orbit(params(1.0, 2.0), 8, Direction::Backward).unwrap();
        assert_eq!(tr.states.len(), 9);
        assert!(tr.last().params.u > 100.0);
        assert!(tr
            .states
            .windows(2)
            .all(|w| w[1].params.u > w[0].params.u && w[1].params.r > w[0].params.r));
    }

    #[test]
    fn zero_step_orbit_echoes_input() {
        let tr = orbit(params(1.0, 3.0), 0, Direction::Forward).unwrap();
        assert_eq!(tr.states.len(), 1);
        assert_eq!(tr.states[0].params, params(1.0, 3.0));
    }

    #[test]
    fn flipped_map_leaves_the_domain() {
        let p = params(1.0, 3.0);
        assert!(orbit_with(p, 3, Direction::Forward, StepMap::flipped_sign()).is_err());
        let s = PorismScene::new(p).unwrap();
        assert!(child_scene_with(&s, StepMap::flipped_sign()).is_err());
    }

    #[test]
    fn fixture_alternating_sequence() {
        let root = PorismScene::new(params(1.25, 1.75)).unwrap();
        let (l1, l2) = alternating_brocard_sequence(&root, 6).unwrap();
        assert_eq!((l1[0], l2[0]), (root.omega1, root.omega2));
        let (c1, c2) = (root.beltrami_c1(), root.beltrami_c2());
        assert!(
            c1.center.distance(Point::new(-5.0, -8.75)) < 1e-13 && (c1.radius - 10.0).abs() < 1e-13
        );
        assert!(c2.center.distance(Point::new(5.0, -8.75)) < 1e-13);
        for q in &l1 {
            assert!(c1.distance_residual(*q) < 1e-9);
        }
        for q in &l2 {
            assert!(c2.distance_residual(*q) < 1e-9);
        }
        let (l1, _) = alternating_brocard_sequence(&root, 12).unwrap();
        assert!(l1.last().unwrap().distance(root.x15) < 1e-6);
    }

    #[test]
    fn apollonius_fixture() {
        let ap = apollonius_circles(&IsoscelesParams::new(1.0f64, 2.0).unwrap()).unwrap();
        // (cx + 1)² + 8² = cx² + 75 puts the circle through A at cx = +5.
        assert!(ap.through_a.center.distance(Point::new(5.0, -8.75)) < 1e-10);
        assert!((ap.through_a.radius - 10.0).abs() < 1e-10);
        assert!(ap.through_b.center.distance(Point::new(-5.0, -8.75)) < 1e-10);
        let s = PorismScene::new(PorismParams::new(1.25, 1.75).unwrap()).unwrap();
        assert!(ap.through_a.center.distance(s.beltrami_c2().center) < 1e-10);
        assert!(ap.through_b.center.distance(s.beltrami_c1().center) < 1e-10);
        assert!(ap.apex_offset < 1e-15);
        assert!(ap.brocard_axis.direction.x.abs() < 1e-15);
    }

    #[test]
    fn second_brocard_triangle_measures_the_child() {
        use crate::centers::{brocard_angle, second_brocard_triangle};
        use crate::porism::vertices_at;
        let i = crate::porism::dh_from_ru(&params(1.0, 2.0));
        let tri: Triangle<f64> = vertices_at(&i, 0.7).unwrap();
        let t2 = second_brocard_triangle(&tri).unwrap();
        let c = step_forward(params(1.0, 2.0));
        assert!((t2.circumcircle().unwrap().radius - c.r).abs() < 1e-12);
        assert!((brocard_angle(&t2).unwrap().cot - c.u).abs() < 1e-10);
    }
}
