//! The one-parameter family `B_t`, `t ∈ (0, π/3)`, of Brocard porisms that
//! share the isodynamic points `(0, ∓√3/2)` and the Beltrami points
//! `(∓1/2, 0)`.
//!
//! This module works in the family's own frame, where the Brocard inellipse
//! `E_t` is centered at `(0, −sin t)` and `X6` sits above `X3`. A canonical
//! scene reaches it through translation to `X3_t` followed by the mirror
//! `y → −y`.

use crate::centers::{brocard_angle, second_brocard_triangle};
use crate::error::{Error, Result};
use crate::geom::{AxisAlignedEllipse, Circle, MajorAxis, Point, Pose};
use crate::porism::{PorismParams, PorismScene};
use crate::recurrence::step_forward;
use crate::scalar::Scalar;

fn pi_3<T: Scalar>() -> T {
    T::FRAC_PI_3()
}

/// `2cos t − 1 = 4 sin((t + π/3)/2) sin((π/3 − t)/2)`, accurate at both ends.
fn two_cos_minus_one<T: Scalar>(t: T) -> T {
    let p = pi_3::<T>();
    T::lit(4.0) * ((t + p) * T::half()).sin() * ((p - t) * T::half()).sin()
}

/// `1 − cos t = 2 sin²(t/2)`.
fn one_minus_cos<T: Scalar>(t: T) -> T {
    let s = (t * T::half()).sin();
    T::two() * s * s
}

fn check_closed<T: Scalar>(t: T) -> Result<()> {
    if t > T::zero() && t <= pi_3() {
        Ok(())
    } else {
        Err(Error::OutOfRange {
            what: "t",
            value: t.as_f64(),
        })
    }
}

fn check_open<T: Scalar>(t: T) -> Result<()> {
    if !t.is_finite() || t < T::zero() || t > pi_3() {
        return Err(Error::OutOfRange {
            what: "t",
            value: t.as_f64(),
        });
    }
    if t == T::zero() || t == pi_3() {
        return Err(Error::DegenerateMember { t: t.as_f64() });
    }
    Ok(())
}

/// `E_t`: semi-axes `a = √(2cos t − 1)/2`, `b = √((2cos t − 1)(1 − cos t))/√2`,
/// center `(0, −sin t)`.
pub fn ellipse_et<T: Scalar>(t: T) -> Result<AxisAlignedEllipse<T>> {
    check_closed(t)?;
    let w = two_cos_minus_one(t).max(T::zero());
    let a = w.sqrt() * T::half();
    let b = (w * one_minus_cos(t) * T::half()).sqrt();
    AxisAlignedEllipse::new(
        Point::new(T::zero(), -t.sin()),
        a,
        b.min(a),
        MajorAxis::Horizontal,
    )
}

/// `u = cot(t/2)`.
pub fn u_from_t<T: Scalar>(t: T) -> Result<T> {
    check_closed(t)?;
    Ok(T::one() / (t * T::half()).tan())
}

/// `t = atan2(2u, u² − 1)`, the inverse of [`u_from_t`] on `u ≥ √3`.
pub fn t_from_u<T: Scalar>(u: T) -> Result<T> {
    if !(u >= T::sqrt3()) || !u.is_finite() {
        return Err(Error::OutOfRange {
            what: "u",
            value: u.as_f64(),
        });
    }
    Ok((T::two() * u).atan2(u.mul_add(u, -T::one())))
}

/// A member `B_t` of the family in the family frame, with the posed
/// canonical scene it comes from.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ContinuousPorism<T> {
    pub t: T,
    pub ellipse: AxisAlignedEllipse<T>,
    pub gamma: Circle<T>,
    pub brocard_circle: Circle<T>,
    pub x3: Point<T>,
    pub x15: Point<T>,
    pub x16: Point<T>,
    /// Brocard angle, `t/2`.
    pub omega: T,
    pub u: T,
    pub r: T,
    /// `√(2cos t − 1)`.
    pub eccentricity: T,
    /// `(±(cos t − 1/2), −sin t)`, `+x` first.
    pub foci: (Point<T>, Point<T>),
    pub scene: PorismScene<T>,
}

/// Pose taking a canonical `(R_t, u_t)` scene into the family frame.
pub fn family_pose<T: Scalar>(t: T) -> Pose<T> {
    let (s, _) = t.sin_cos();
    let x3 = Point::new(T::zero(), -s / (T::two() * one_minus_cos(t)));
    Pose {
        translation: x3,
        rotation: T::PI(),
        reflect_x: true,
        scale: T::one(),
    }
}

/// Scalar data of `B_t`, defined on the closed range `(0, π/3]`; at `π/3`
/// everything but `X3` collapses onto the isodynamic point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FamilyMeasures<T> {
    pub a: T,
    pub b: T,
    pub eccentricity: T,
    pub r: T,
    pub x3_y: T,
    pub k_center_y: T,
    pub k_radius: T,
}

pub fn family_measures<T: Scalar>(t: T) -> Result<FamilyMeasures<T>> {
    check_closed(t)?;
    let (s, c) = t.sin_cos();
    let two = T::two();
    let w = two_cos_minus_one(t).max(T::zero());
    let omc = one_minus_cos(t);
    let e = ellipse_et(t)?;
    Ok(FamilyMeasures {
        a: e.semi_major,
        b: e.semi_minor,
        eccentricity: w.sqrt(),
        r: (w / (two * omc)).sqrt(),
        x3_y: -s / (two * omc),
        k_center_y: (c - two) / (two * s),
        k_radius: w / (two * s),
    })
}

/// Closed-form `B_t`; `scene` is `scene_from_ru(R_t, cot(t/2))` under
/// [`family_pose`].
pub fn porism_bt<T: Scalar>(t: T) -> Result<ContinuousPorism<T>> {
    check_open(t)?;
    let m = family_measures(t)?;
    let s = t.sin();
    let u = T::one() / (t * T::half()).tan();
    let x3 = Point::new(T::zero(), m.x3_y);
    let focus = m.eccentricity * m.eccentricity * T::half();
    let h = T::lit(3.0).sqrt() * T::half();
    let scene = PorismScene::with_pose(PorismParams { r: m.r, u }, family_pose(t))?;
    Ok(ContinuousPorism {
        t,
        ellipse: ellipse_et(t)?,
        gamma: Circle::new(x3, m.r)?,
        brocard_circle: Circle::new(Point::new(T::zero(), m.k_center_y), m.k_radius)?,
        x3,
        x15: Point::new(T::zero(), -h),
        x16: Point::new(T::zero(), h),
        omega: t * T::half(),
        u,
        r: m.r,
        eccentricity: m.eccentricity,
        foci: (Point::new(focus, -s), Point::new(-focus, -s)),
        scene,
    })
}

/// `t'` of the member swept by the second Brocard triangles of `B_t`.
pub fn embed_step<T: Scalar>(t: T) -> Result<T> {
    check_open(t)?;
    let u = u_from_t(t)?;
    t_from_u(step_forward(PorismParams { r: T::one(), u }).u)
}

/// `(4 − 4cos t + cos 2t)/(4 sin t − sin 2t)`, the rational form of `cot t'`.
pub fn embed_step_cot_rational<T: Scalar>(t: T) -> T {
    let four = T::lit(4.0);
    let t2 = T::two() * t;
    (four - four * t.cos() + t2.cos()) / (four * t.sin() - t2.sin())
}

/// Envelope points `ξ = (±√(5cos t − 3)/(2√(cos t + 1)), −2 sin t/(cos t + 1))`,
/// `+x` first. Real only up to `t = arccos(3/5)`.
pub fn envelope_points<T: Scalar>(t: T) -> Result<(Point<T>, Point<T>)> {
    check_closed(t)?;
    let (s, c) = t.sin_cos();
    let disc = T::lit(5.0) * c - T::lit(3.0);
    if disc < -T::lit(16.0) * T::epsilon() {
        return Err(Error::NoRealEnvelope { t: t.as_f64() });
    }
    let x = disc.max(T::zero()).sqrt() / (T::two() * (c + T::one()).sqrt());
    let y = -T::two() * s / (c + T::one());
    Ok((Point::new(x, y), Point::new(-x, y)))
}

/// The envelope `4x² + y² = 1`, whose foci are the isodynamic points.
pub fn envelope_ellipse<T: Scalar>() -> AxisAlignedEllipse<T> {
    AxisAlignedEllipse {
        center: Point::origin(),
        semi_major: T::one(),
        semi_minor: T::half(),
        major_axis: MajorAxis::Vertical,
    }
}

/// `4x² + y² − 1`.
pub fn envelope_residual<T: Scalar>(p: Point<T>) -> T {
    T::lit(4.0) * p.x * p.x + p.y * p.y - T::one()
}

/// Containment margin of the coaxial circle `(inner_top, inner_bottom)`
/// inside `(outer_top, outer_bottom)`, each given by its extreme ordinates.
/// Equals `r_out − (|c_out − c_in| + r_in)`.
fn coaxial_margin<T: Scalar>(outer: (T, T), inner: (T, T)) -> T {
    (outer.0 - inner.0).min(inner.1 - outer.1)
}

/// Extreme ordinates of `K_t`: `−(3/2)tan(t/2)` and `−cot(t/2)/2`.
fn k_extremes<T: Scalar>(t: T) -> (T, T) {
    let tn = (t * T::half()).tan();
    (-T::lit(1.5) * tn, -T::half() / tn)
}

/// Extreme ordinates of `Γ_t`, rewritten without cancellation as `t → 0`.
fn gamma_extremes<T: Scalar>(t: T) -> (T, T) {
    let (sh, ch) = (t * T::half()).sin_cos();
    let q = two_cos_minus_one(t).max(T::zero()).sqrt() + ch;
    (-T::lit(1.5) * sh / q, -q / (T::two() * sh))
}

fn check_pair<T: Scalar>(s: T, v: T) -> Result<()> {
    check_closed(s)?;
    check_closed(v)?;
    if v > s {
        return Err(Error::OutOfRange {
            what: "v",
            value: v.as_f64(),
        });
    }
    Ok(())
}

/// `r_v − (|c_s − c_v| + r_s)` for the Brocard circles `K_s`, `K_v`,
/// `v ≤ s`; nonnegative exactly when `K_s ⊂ K_v`.
pub fn nesting_residual<T: Scalar>(s: T, v: T) -> Result<T> {
    check_pair(s, v)?;
    Ok(coaxial_margin(k_extremes(v), k_extremes(s)))
}

/// Same as [`nesting_residual`] for the circumcircles: `Γ_s ⊂ Γ_v` for `v ≤ s`.
pub fn gamma_nesting_residual<T: Scalar>(s: T, v: T) -> Result<T> {
    check_pair(s, v)?;
    Ok(coaxial_margin(gamma_extremes(v), gamma_extremes(s)))
}

/// The four points where `K_t` crosses the Beltrami circles
/// `(x ± 1/2)² + y² = 1`: `[p1−, p2−]` on the circle about `(−1/2, 0)`,
/// `[p1+, p2+]` on the one about `(1/2, 0)`.
pub fn web_intersections<T: Scalar>(t: T) -> [Point<T>; 4] {
    let (s, c) = t.sin_cos();
    let three = T::lit(3.0);
    let den = T::lit(5.0) - T::lit(4.0) * c;
    let w = two_cos_minus_one(t);
    let x1 = three * w / (T::two() * den);
    let y1 = -three * s / den;
    let x2 = T::half() - c;
    [
        Point::new(-x1, y1),
        Point::new(-x2, -s),
        Point::new(x1, y1),
        Point::new(x2, -s),
    ]
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WebResiduals<T> {
    /// Cosine of the angle between the two circles' radii at each
    /// intersection point, in [`web_intersections`] order.
    pub inner_products: [T; 4],
    /// Largest distance residual of the intersection points against
    /// `K_t` and their Beltrami circle.
    pub membership: T,
    /// Worst `|cos|` between the `K` direction and the nearer `E` direction
    /// over samples of the quartic `16x⁴ + 8x² + 4y² − 3 = 0`.
    pub quartic_orthogonality: T,
    /// Worst `|sin|` between the two fields on the axes `xy = 0`.
    pub axis_parallelism: T,
}

/// Directions `(dx, dy)` of the ellipse family through `p`: the real roots
/// of `A dx² + B dx dy + C dy² = 0` with `A = 16x²y²`, `B = −8xy(4x² − 1)`,
/// `C = 16x⁴ + 8x² + 4y² − 3`.
pub fn e_field_directions<T: Scalar>(p: Point<T>) -> Vec<Point<T>> {
    let (x, y) = (p.x, p.y);
    let (x2, y2) = (x * x, y * y);
    let a = T::lit(16.0) * x2 * y2;
    let b = -T::lit(8.0) * x * y * (T::lit(4.0) * x2 - T::one());
    let c = T::lit(16.0) * x2 * x2 + T::lit(8.0) * x2 + T::lit(4.0) * y2 - T::lit(3.0);
    let disc = b * b - T::lit(4.0) * a * c;
    if disc < T::zero() {
        return Vec::new();
    }
    let sign = if b < T::zero() { -T::one() } else { T::one() };
    let q = -(b + sign * disc.sqrt()) * T::half();
    [Point::new(q, a), Point::new(c, q)]
        .into_iter()
        .filter_map(|d| d.normalized())
        .collect()
}

/// Direction of the Brocard-circle family through `p`: `(4x² − 4y² + 3, 8xy)`.
pub fn k_field_direction<T: Scalar>(p: Point<T>) -> Option<Point<T>> {
    let four = T::lit(4.0);
    Point::new(
        four * p.x * p.x - four * p.y * p.y + T::lit(3.0),
        T::lit(8.0) * p.x * p.y,
    )
    .normalized()
}

/// Point of the quartic `16x⁴ + 8x² + 4y² − 3 = 0` above or below `x`,
/// `|x| < 1/2`: `y = ±√((1 − 4x²)(3 + 4x²))/2`.
pub fn quartic_point<T: Scalar>(x: T, upper: bool) -> Point<T> {
    let four = T::lit(4.0);
    let y = ((T::one() - four * x * x) * (T::lit(3.0) + four * x * x)).sqrt() * T::half();
    Point::new(x, if upper { y } else { -y })
}

/// `16x⁴ + 8x² + 4y² − 3`.
pub fn quartic_residual<T: Scalar>(p: Point<T>) -> T {
    let x2 = p.x * p.x;
    T::lit(16.0) * x2 * x2 + T::lit(8.0) * x2 + T::lit(4.0) * p.y * p.y - T::lit(3.0)
}

pub fn web_orthogonality_residuals<T: Scalar>(t: T, samples: usize) -> Result<WebResiduals<T>> {
    let fam = porism_bt(t)?;
    let k = fam.brocard_circle;
    let beltrami = [
        Point::new(-T::half(), T::zero()),
        Point::new(T::half(), T::zero()),
    ];
    let pts = web_intersections(t);
    let mut inner_products = [T::zero(); 4];
    let mut membership = T::zero();
    for (idx, p) in pts.iter().enumerate() {
        let cb = Circle {
            center: beltrami[idx / 2],
            radius: T::one(),
        };
        let r1 = (*p - cb.center)
            .normalized()
            .ok_or(Error::InvalidGeometry("intersection at a center"))?;
        let r2 = (*p - k.center)
            .normalized()
            .ok_or(Error::InvalidGeometry("intersection at a center"))?;
        inner_products[idx] = r1.dot(r2).abs();
        membership = membership
            .max(cb.distance_residual(*p))
            .max(k.distance_residual(*p));
    }

    let n = samples.max(2);
    let mut quartic_orthogonality = T::zero();
    let mut axis_parallelism = T::zero();
    for i in 0..n {
        // open grid on (−1/2, 1/2), skipping x = 0
        let x = (T::lit(i as f64 + 0.5) / T::lit(n as f64) - T::half()) * T::lit(0.98);
        if x == T::zero() {
            continue;
        }
        for upper in [false, true] {
            let p = quartic_point(x, upper);
            let kd = k_field_direction(p).ok_or(Error::InvalidGeometry("K field vanishes"))?;
            let worst = e_field_directions(p)
                .iter()
                .map(|d| d.dot(kd).abs())
                .fold(T::infinity(), T::min);
            quartic_orthogonality = quartic_orthogonality.max(worst);
        }
        // axis samples away from the isodynamic and Beltrami points
        let ax = x * T::lit(0.8);
        let ay = x * T::lit(1.6);
        for p in [Point::new(ax, T::zero()), Point::new(T::zero(), ay)] {
            let Some(kd) = k_field_direction(p) else {
                continue;
            };
            let best = e_field_directions(p)
                .iter()
                .map(|d| d.cross(kd).abs())
                .fold(T::infinity(), T::min);
            axis_parallelism = axis_parallelism.max(best);
        }
    }
    Ok(WebResiduals {
        inner_products,
        membership,
        quartic_orthogonality,
        axis_parallelism,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FamilyExtrema<T> {
    pub t_b: T,
    pub b_max: T,
    pub t_lower_vertex: T,
    pub lower_vertex_min: Point<T>,
}

fn semi_minor<T: Scalar>(t: T) -> T {
    (two_cos_minus_one(t).max(T::zero()) * one_minus_cos(t) * T::half()).sqrt()
}

fn lower_vertex_y<T: Scalar>(t: T) -> T {
    -semi_minor(t) - t.sin()
}

/// Critical point of `f` on `(lo, hi)` by central-difference derivative
/// sign change and bisection.
fn critical_point<T: Scalar>(f: impl Fn(T) -> T, lo: T, hi: T) -> Option<T> {
    let h = T::lit(1e-5);
    let df = |t: T| (f(t + h) - f(t - h)) / (T::two() * h);
    let n = 64;
    let step = (hi - lo) / T::lit(n as f64);
    let mut a = lo;
    for i in 1..=n {
        let b = lo + step * T::lit(i as f64);
        let (fa, fb) = (df(a), df(b));
        if fa == T::zero() {
            return Some(a);
        }
        if fa.signum() != fb.signum() {
            let (mut l, mut r, mut fl) = (a, b, fa);
            while r - l > T::lit(1e-13) {
                let m = (l + r) * T::half();
                let fm = df(m);
                if fm.signum() == fl.signum() {
                    l = m;
                    fl = fm;
                } else {
                    r = m;
                }
            }
            return Some((l + r) * T::half());
        }
        a = b;
    }
    None
}

/// Interior maximum of `b(t)` and minimum of the lower vertex ordinate
/// `−b(t) − sin t`, located numerically.
pub fn family_extrema<T: Scalar>() -> Result<FamilyExtrema<T>> {
    let lo = T::lit(1e-3);
    let hi = pi_3::<T>() - T::lit(1e-3);
    let t_b = critical_point(semi_minor, lo, hi)
        .ok_or(Error::InvalidGeometry("b(t) has no interior extremum"))?;
    let t_l = critical_point(lower_vertex_y, lo, hi).ok_or(Error::InvalidGeometry(
        "lower vertex has no interior extremum",
    ))?;
    Ok(FamilyExtrema {
        t_b,
        b_max: semi_minor(t_b),
        t_lower_vertex: t_l,
        lower_vertex_min: Point::new(T::zero(), lower_vertex_y(t_l)),
    })
}

/// `|inverse of X6 in Γ_t − midpoint(P2, U2)|` with `P2, U2 = (∓1/2, 0)`.
pub fn beltrami_midpoint_check<T: Scalar>(t: T) -> Result<T> {
    let fam = porism_bt(t)?;
    let inv = fam.scene.circumcircle.invert(fam.scene.x6)?;
    Ok(inv.norm())
}

/// Distances of the foci of `E_t` from the unit circles about `(−1/2, 0)`
/// and `(1/2, 0)`, minus one.
pub fn foci_on_arcs_check<T: Scalar>(t: T) -> Result<(T, T)> {
    let (left, right) = ellipse_et(t)?.foci();
    let h = T::half();
    let r1 = ((right - Point::new(-h, T::zero())).norm() - T::one()).abs();
    let r2 = ((left - Point::new(h, T::zero())).norm() - T::one()).abs();
    Ok((r1, r2))
}

/// Largest residual of the envelope points against `K_t` (distance) and
/// `E_t` (implicit equation), for `0 < t ≤ arctan(4/3)`.
pub fn kt_inellipse_intersection_check<T: Scalar>(t: T) -> Result<T> {
    let (x1, x2) = envelope_points(t)?;
    let fam = porism_bt(t)?;
    let mut worst = T::zero();
    for p in [x1, x2] {
        worst = worst
            .max(fam.brocard_circle.distance_residual(p))
            .max(fam.ellipse.implicit_residual(p).abs());
    }
    Ok(worst)
}

/// The similarity (with the `y → −y` mirror) sending a canonical scene's
/// `X15`, `X16` to `(0, ∓√3/2)`.
pub fn isodynamic_normalization<T: Scalar>(p: PorismParams<T>) -> Result<Pose<T>> {
    let s = PorismScene::new(p)?;
    let gap = s.x15.distance(s.x16);
    let scale = T::sqrt3() / gap;
    let mid = s.x15.midpoint(s.x16);
    Ok(Pose {
        translation: Point::new(T::zero(), scale * mid.y),
        rotation: T::PI(),
        reflect_x: true,
        scale,
    })
}

/// Largest deviation between a canonical scene moved by
/// [`isodynamic_normalization`] and the family member with the same `u`.
pub fn similarity_residual<T: Scalar>(p: PorismParams<T>) -> Result<T> {
    let moved = PorismScene::with_pose(p, isodynamic_normalization(p)?)?;
    let fam = porism_bt(t_from_u(p.u)?)?.scene;
    let mut worst = (moved.circumcircle.radius - fam.circumcircle.radius).abs();
    for (a, b) in [
        (moved.x3, fam.x3),
        (moved.x6, fam.x6),
        (moved.x15, fam.x15),
        (moved.x16, fam.x16),
        (moved.omega1, fam.omega1),
        (moved.omega2, fam.omega2),
        (moved.beltrami_p2, fam.beltrami_p2),
        (moved.beltrami_u2, fam.beltrami_u2),
    ] {
        worst = worst.max(a.distance(b));
    }
    worst = worst
        .max((moved.inellipse.semi_major - fam.inellipse.semi_major).abs())
        .max((moved.inellipse.semi_minor - fam.inellipse.semi_minor).abs());
    Ok(worst)
}

/// Measured `(R, cot ω)` of the second Brocard triangle of the member of
/// `B_t` at vertex parameter `s`.
pub fn measured_child<T: Scalar>(t: T, s: T) -> Result<(T, T)> {
    let fam = porism_bt(t)?;
    let t2 = second_brocard_triangle(&fam.scene.member(s)?)?;
    Ok((t2.circumcircle()?.radius, brocard_angle(&t2)?.cot))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t0() -> f64 {
        0.6f64.acos()
    }

    #[test]
    fn ellipse_examples() {
        let e = ellipse_et(t0()).unwrap();
        assert!((e.semi_major - 5f64.sqrt() / 10.0).abs() < 1e-15);
        assert!((e.semi_minor - 0.2).abs() < 1e-15);
        assert!(e.center.distance(Point::new(0.0, -0.8)) < 1e-15);
        let (l, r) = e.foci();
        assert!(
            l.distance(Point::new(-0.1, -0.8)) < 1e-14 && r.distance(Point::new(0.1, -0.8)) < 1e-14
        );

        let e = ellipse_et(std::f64::consts::FRAC_PI_3).unwrap();
        assert!(e.semi_major < 1e-8 && e.semi_minor < 1e-8);
        assert!(e.center.distance(Point::new(0.0, -3f64.sqrt() / 2.0)) < 1e-15);

        let e = ellipse_et(1e-9f64).unwrap();
        assert!((e.semi_major - 0.5).abs() < 1e-12 && e.semi_minor < 1e-8);
        assert!(ellipse_et(1.1).is_err() && ellipse_et(0.0).is_err());
    }

    #[test]
    fn porism_bt_at_t0() {
        let b = porism_bt(t0()).unwrap();
        assert!((b.u - 2.0).abs() < 1e-14 && (b.r - 0.5).abs() < 1e-14);
        assert!(b.x3.distance(Point::new(0.0, -1.0)) < 1e-14);
        assert!(b.brocard_circle.center.distance(Point::new(0.0, -0.875)) < 1e-14);
        assert!((b.brocard_circle.radius - 0.125).abs() < 1e-14);
        let s = b.scene;
        assert!(s.inellipse.center.distance(b.ellipse.center) < 1e-14);
        assert!((s.inellipse.semi_major - b.ellipse.semi_major).abs() < 1e-14);
        assert!((s.inellipse.semi_minor - b.ellipse.semi_minor).abs() < 1e-14);
        assert!(s.omega1.distance(b.foci.0) < 1e-14 && s.omega2.distance(b.foci.1) < 1e-14);
        assert!(s.x15.distance(b.x15) < 1e-14 && s.x16.distance(b.x16) < 1e-13);
        assert!(s.beltrami_p2.distance(Point::new(-0.5, 0.0)) < 1e-14);
        assert!(s.beltrami_u2.distance(Point::new(0.5, 0.0)) < 1e-14);
        assert!(s.x6.distance(Point::new(0.0, -0.75)) < 1e-14);
        assert!(porism_bt(std::f64::consts::FRAC_PI_3).is_err());
    }

    #[test]
    fn arctan_four_fifths_member() {
        let b = porism_bt((0.8f64).atan()).unwrap();
        assert!((b.u - (5.0 + 41f64.sqrt()) / 4.0).abs() < 1e-13);
    }

    #[test]
    fn t_u_charts() {
        assert!((u_from_t(std::f64::consts::FRAC_PI_3).unwrap() - 3f64.sqrt()).abs() < 1e-15);
        assert!((t_from_u(2.0).unwrap() - t0()).abs() < 1e-15);
        assert!((t_from_u(1.75f64).unwrap().tan() - 56.0 / 33.0).abs() < 1e-13);
        for k in 1..50 {
            let t = k as f64 * 1.04 / 50.0;
            assert!((t_from_u(u_from_t(t).unwrap()).unwrap() - t).abs() < 1e-12);
        }
    }

    #[test]
    fn embed_step_examples() {
        let tp = embed_step(t0()).unwrap();
        assert!((tp - 2.0 * (4f64 / 7.0).atan()).abs() < 1e-14);
        let cot = 1.0 / tp.tan();
        assert!((cot - 1.32 / 2.24).abs() < 1e-13);
        assert!((cot - embed_step_cot_rational(t0())).abs() < 1e-13);
        let near = std::f64::consts::FRAC_PI_3 - 1e-6;
        let tn = embed_step(near).unwrap();
        assert!(tn > near && tn <= std::f64::consts::FRAC_PI_3);
        let mut t = 0.2;
        for _ in 0..12 {
            t = embed_step(t).unwrap_or(t);
        }
        assert!((t - std::f64::consts::FRAC_PI_3).abs() < 1e-12);
    }

    #[test]
    fn envelope_examples() {
        let (a, b) = envelope_points(t0()).unwrap();
        assert!(a.distance(Point::new(0.0, -1.0)) < 1e-7 && b.distance(a) < 1e-7);
        let (a, _) = envelope_points(1e-8).unwrap();
        assert!(a.distance(Point::new(0.5, 0.0)) < 1e-7);
        for k in 1..=100 {
            let t = t0() * k as f64 / 100.0;
            let (p, q) = envelope_points(t).unwrap();
            assert!(envelope_residual(p).abs() < 1e-10 && envelope_residual(q).abs() < 1e-10);
        }
        assert!(matches!(
            envelope_points(t0() + 1e-6),
            Err(Error::NoRealEnvelope { .. })
        ));
        let (f1, f2) = envelope_ellipse::<f64>().foci();
        assert!(f1.distance(Point::new(0.0, -3f64.sqrt() / 2.0)) < 1e-15);
        assert!(f2.distance(Point::new(0.0, 3f64.sqrt() / 2.0)) < 1e-15);
    }

    #[test]
    fn nesting_examples() {
        assert_eq!(nesting_residual(0.7, 0.7).unwrap(), 0.0);
        assert!(nesting_residual(std::f64::consts::FRAC_PI_3 - 0.01, 0.3).unwrap() > 0.0);
        assert!(nesting_residual(0.3, 0.7).is_err());
        assert!(gamma_nesting_residual(0.9, 0.2).unwrap() > 0.0);
    }

    #[test]
    fn nesting_matches_direct_circles() {
        for &(s, v) in &[(0.9f64, 0.2f64), (1.0, 0.5), (0.4, 0.39)] {
            let (ks, kv) = (porism_bt(s).unwrap(), porism_bt(v).unwrap());
            let direct = kv.brocard_circle.containment_margin(&ks.brocard_circle);
            assert!((direct - nesting_residual(s, v).unwrap()).abs() < 1e-12);
            let direct = kv.gamma.containment_margin(&ks.gamma);
            assert!((direct - gamma_nesting_residual(s, v).unwrap()).abs() < 1e-12);
        }
    }

    #[test]
    fn web_residuals() {
        for &t in &[0.3, t0(), 1.0] {
            let w = web_orthogonality_residuals(t, 64).unwrap();
            assert!(w.inner_products.iter().all(|&x| x < 1e-9), "{w:?}");
            assert!(w.membership < 1e-12);
            assert!(
                w.quartic_orthogonality < 1e-7 && w.axis_parallelism < 1e-7,
                "{w:?}"
            );
        }
        let p = web_intersections(t0());
        assert!(p[1].distance(Point::new(0.1, -0.8)) < 1e-15);
        assert!(p[3].distance(Point::new(-0.1, -0.8)) < 1e-15);
    }

    #[test]
    fn quartic_through_isodynamic_and_beltrami_points() {
        assert!(quartic_residual(Point::new(0.0, -3f64.sqrt() / 2.0)).abs() < 1e-15);
        assert_eq!(quartic_residual(Point::new(0.5, 0.0)), 0.0);
        assert_eq!(quartic_residual(Point::new(-0.5, 0.0)), 0.0);
    }

    #[test]
    fn extrema() {
        let e = family_extrema::<f64>().unwrap();
        assert!((e.t_b - 0.75f64.acos()).abs() < 1e-8, "{e:?}");
        assert!((e.b_max - 0.25).abs() < 1e-10);
        assert!((e.t_lower_vertex - t0()).abs() < 1e-8);
        assert!(e.lower_vertex_min.distance(Point::new(0.0, -1.0)) < 1e-10);
    }

    #[test]
    fn remark_checks() {
        assert!(beltrami_midpoint_check(t0()).unwrap() < 1e-14);
        assert!(beltrami_midpoint_check(std::f64::consts::FRAC_PI_3 - 1e-7).unwrap() < 1e-8);
        let (a, b) = foci_on_arcs_check(t0()).unwrap();
        assert!(a < 1e-15 && b < 1e-15);
        let (a, b) = foci_on_arcs_check(std::f64::consts::FRAC_PI_3).unwrap();
        assert!(a < 1e-12 && b < 1e-12);
        assert!(kt_inellipse_intersection_check(0.5).unwrap() < 1e-9);
        assert!(kt_inellipse_intersection_check(t0()).unwrap() < 1e-9);
        assert!(kt_inellipse_intersection_check(t0() + 1e-6).is_err());
    }

    #[test]
    fn similarity_and_embedding() {
        for &(r, u) in &[(1.0, 2.0), (0.3, 5.0), (7.0, 1.8)] {
            let p = PorismParams::new(r, u).unwrap();
            assert!(similarity_residual(p).unwrap() < 1e-9);
        }
        for &t in &[0.2, t0(), 0.95] {
            let (r, u) = measured_child(t, 0.4).unwrap();
            let child = porism_bt(embed_step(t).unwrap()).unwrap();
            assert!(
                (r - child.r).abs() < 1e-8 && (u - child.u).abs() < 1e-8,
                "{t}: {r} {u} vs {} {}",
                child.r,
                child.u
            );
        }
    }
}
