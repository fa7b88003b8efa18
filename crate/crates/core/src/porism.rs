//! The canonical Brocard porism: a circle `Γ` and the Brocard inellipse `E`
//! between which every inscribed triangle has the same Brocard angle and the
//! same Brocard points (the foci of `E`).
//!
//! The canonical frame has the circumcenter `X3` at the origin and the
//! symmedian point `X6` on the negative y-axis. Other frames are reached
//! through a [`Pose`]; labelled points (`Ω1`, `Ω2`, `P2`, `U2`) are carried
//! as pose images of their canonical counterparts.

use crate::error::{Error, Result};
use crate::geom::{AxisAlignedEllipse, Circle, MajorAxis, Point, Pose, Triangle};
use crate::scalar::{root_u_sq_minus_3, Scalar};

/// Circumradius `R` and `u = cot ω`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PorismParams<T> {
    pub r: T,
    pub u: T,
}

impl<T: Scalar> PorismParams<T> {
    /// Requires `R > 0` and `u ≥ √3`.
    pub fn new(r: T, u: T) -> Result<Self> {
        if !(r > T::zero()) || !r.is_finite() {
            return Err(Error::OutOfRange {
                what: "R",
                value: r.as_f64(),
            });
        }
        if !(u >= T::sqrt3()) || !u.is_finite() {
            return Err(Error::OutOfRange {
                what: "u",
                value: u.as_f64(),
            });
        }
        Ok(PorismParams { r, u })
    }

    /// Brocard angle `ω = arccot u`.
    pub fn omega(&self) -> T {
        (T::one() / self.u).atan()
    }

    /// `√(u² − 3)`.
    pub fn k(&self) -> T {
        root_u_sq_minus_3(self.u)
    }

    /// Brocard inellipse semi-axes `(a, b) = R (1/√(1+u²), 2/(1+u²))`.
    pub fn inellipse_axes(&self) -> (T, T) {
        let n = self.u * self.u + T::one();
        (self.r / n.sqrt(), T::two() * self.r / n)
    }

    /// Inellipse eccentricity `√((u² − 3)/(u² + 1))`.
    pub fn eccentricity(&self) -> T {
        self.k() / (self.u * self.u + T::one()).sqrt()
    }

    fn require_nondegenerate(&self) -> Result<()> {
        if self.k() > T::zero() && self.r > T::zero() {
            Ok(())
        } else {
            Err(Error::DegeneratePorism { u: self.u.as_f64() })
        }
    }
}

/// Half base `d` and height `h` of the upright isosceles member.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IsoscelesParams<T> {
    pub d: T,
    pub h: T,
}

impl<T: Scalar> IsoscelesParams<T> {
    pub fn new(d: T, h: T) -> Result<Self> {
        if !(d > T::zero()) || !d.is_finite() {
            return Err(Error::OutOfRange {
                what: "d",
                value: d.as_f64(),
            });
        }
        if !(h > T::zero()) || !h.is_finite() {
            return Err(Error::OutOfRange {
                what: "h",
                value: h.as_f64(),
            });
        }
        Ok(IsoscelesParams { d, h })
    }

    /// `ζ = d² + h²`.
    pub fn zeta(&self) -> T {
        self.d * self.d + self.h * self.h
    }

    /// Brocard cotangent `(3d² + h²)/(2dh)`; always `≥ √3`.
    pub fn u(&self) -> T {
        (T::lit(3.0) * self.d * self.d + self.h * self.h) / (T::two() * self.d * self.h)
    }
}

pub fn ru_from_dh<T: Scalar>(i: &IsoscelesParams<T>) -> PorismParams<T> {
    PorismParams {
        r: i.zeta() / (T::two() * i.h),
        u: i.u(),
    }
}

/// Inverse of [`ru_from_dh`] on the branch `h/d = u + √(u² − 3)`, the
/// isosceles member whose base touches the top of the inellipse.
pub fn dh_from_ru<T: Scalar>(p: &PorismParams<T>) -> IsoscelesParams<T> {
    let (u, r, k) = (p.u, p.r, p.k());
    let n = u * u + T::one();
    IsoscelesParams {
        d: (T::two() * u - k) * r / n,
        h: (u * u + u * k + T::lit(3.0)) * r / n,
    }
}

/// Recovers `(R, u)` from the inellipse semi-axes: `R = 2a²/b`, `u = √(4a² − b²)/b`.
pub fn ru_from_axes<T: Scalar>(a: T, b: T) -> Result<PorismParams<T>> {
    if !(b > T::zero()) || !(b <= a) {
        return Err(Error::NotBrocardShape {
            a: a.as_f64(),
            b: b.as_f64(),
        });
    }
    let two_a = T::two() * a;
    Ok(PorismParams {
        r: T::two() * a * a / b,
        u: ((two_a - b) * (two_a + b)).sqrt() / b,
    })
}

/// A complete porism scene; every point is in the frame given by `pose`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PorismScene<T> {
    pub params: PorismParams<T>,
    pub pose: Pose<T>,
    pub circumcircle: Circle<T>,
    pub inellipse: AxisAlignedEllipse<T>,
    pub omega1: Point<T>,
    pub omega2: Point<T>,
    pub x3: Point<T>,
    pub x6: Point<T>,
    pub x15: Point<T>,
    pub x16: Point<T>,
    pub x39: Point<T>,
    pub x182: Point<T>,
    pub x187: Point<T>,
    pub x574: Point<T>,
    pub brocard_circle: Circle<T>,
    pub beltrami_p2: Point<T>,
    pub beltrami_u2: Point<T>,
    /// Common radius `ρ = 2R/√(u² − 3)` of the two Beltrami circles.
    pub beltrami_radius: T,
}

impl<T: Scalar> PorismScene<T> {
    /// Canonical scene (identity pose).
    pub fn new(params: PorismParams<T>) -> Result<Self> {
        Self::with_pose(params, Pose::identity())
    }

    pub fn with_pose(params: PorismParams<T>, pose: Pose<T>) -> Result<Self> {
        params.require_nondegenerate()?;
        let PorismParams { r, u } = params;
        let k = params.k();
        let n = u * u + T::one();
        let s3 = T::sqrt3();
        let (a, b) = params.inellipse_axes();
        let y = |v: T| Point::new(T::zero(), v);

        let x6 = y(-r * k / u);
        let x39 = y(-r * u * k / n);
        let focal = r * k / n;
        let omega1 = Point::new(focal, -u * focal);
        let omega2 = Point::new(-focal, -u * focal);
        // (√3 − u)/√(u² − 3) = −√((u − √3)/(u + √3))
        let x15 = y(-r * ((u - s3) / (u + s3)).sqrt());
        let x16 = y(-r * (s3 + u) / k);
        let x182 = x6 * T::half();
        let x187 = y(-r * u / k);
        let x574 = y(-r * u * k / (u * u + T::lit(3.0)));
        let p2 = Point::new(-r / k, -r * u / k);
        let u2 = Point::new(r / k, -r * u / k);

        let circumcircle = pose.apply_circle(&Circle::new(Point::origin(), r)?);
        let inellipse =
            pose.apply_ellipse(&AxisAlignedEllipse::new(x39, a, b, MajorAxis::Horizontal)?)?;
        let brocard_circle = pose.apply_circle(&Circle::new(x182, r * k / (T::two() * u))?);
        let m = |q: Point<T>| pose.apply(q);
        Ok(PorismScene {
            params,
            pose,
            circumcircle,
            inellipse,
            omega1: m(omega1),
            omega2: m(omega2),
            x3: m(Point::origin()),
            x6: m(x6),
            x15: m(x15),
            x16: m(x16),
            x39: m(x39),
            x182: m(x182),
            x187: m(x187),
            x574: m(x574),
            brocard_circle,
            beltrami_p2: m(p2),
            beltrami_u2: m(u2),
            beltrami_radius: T::two() * r / k * pose.scale,
        })
    }

    /// First Beltrami circle: centered at `P2`, through `Ω1`, `X15`, `X16`.
    pub fn beltrami_c1(&self) -> Circle<T> {
        Circle {
            center: self.beltrami_p2,
            radius: self.beltrami_radius,
        }
    }

    /// Second Beltrami circle: centered at `U2`, through `Ω2`, `X15`, `X16`.
    pub fn beltrami_c2(&self) -> Circle<T> {
        Circle {
            center: self.beltrami_u2,
            radius: self.beltrami_radius,
        }
    }

    pub fn isosceles(&self) -> IsoscelesParams<T> {
        dh_from_ru(&self.params)
    }

    /// Member triangle at parameter `t`, in this scene's frame (CCW).
    pub fn member(&self, t: T) -> Result<Triangle<T>> {
        let tri = vertices_at(&self.isosceles(), t)?;
        tri.map(|p| self.pose.apply(p))
            .map_err(|_| Error::ParametrizationSingularity { t: t.as_f64() })
    }

    /// Brocard points in the labelling the rotated-sides construction gives
    /// on CCW member triangles of this frame. Mirroring poses swap them.
    pub fn construction_brocard_points(&self) -> (Point<T>, Point<T>) {
        if self.pose.preserves_orientation() {
            (self.omega1, self.omega2)
        } else {
            (self.omega2, self.omega1)
        }
    }
}

pub fn scene_from_ru<T: Scalar>(p: PorismParams<T>) -> Result<PorismScene<T>> {
    PorismScene::new(p)
}

/// `A x² + B xy + C y² + D x + E y + F = 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ImplicitConic<T> {
    pub a: T,
    pub b: T,
    pub c: T,
    pub d: T,
    pub e: T,
    pub f: T,
}

impl<T: Scalar> ImplicitConic<T> {
    pub fn eval(&self, p: Point<T>) -> T {
        self.a * p.x * p.x
            + self.b * p.x * p.y
            + self.c * p.y * p.y
            + self.d * p.x
            + self.e * p.y
            + self.f
    }

    /// Center and axes of an ellipse without an `xy` term.
    pub fn to_axis_aligned(&self) -> Result<AxisAlignedEllipse<T>> {
        let scale = self.a.abs().max(self.c.abs());
        if self.b.abs() > T::lit(1e-12) * scale || !(self.a * self.c > T::zero()) {
            return Err(Error::InvalidGeometry(
                "conic is not an axis-aligned ellipse",
            ));
        }
        let center = Point::new(-self.d / (T::two() * self.a), -self.e / (T::two() * self.c));
        let shifted = self.f - self.a * center.x * center.x - self.c * center.y * center.y;
        let rx2 = -shifted / self.a;
        let ry2 = -shifted / self.c;
        if !(rx2 >= T::zero() && ry2 >= T::zero()) {
            return Err(Error::InvalidGeometry("conic has no real points"));
        }
        AxisAlignedEllipse::from_extents(center, rx2.sqrt(), ry2.sqrt())
    }
}

/// The upright isosceles member with its circumcircle and the implicit
/// equation of its Brocard inellipse.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IsoscelesScene<T> {
    pub triangle: Triangle<T>,
    pub circumcircle: Circle<T>,
    pub inellipse_conic: ImplicitConic<T>,
}

pub fn isosceles_scene<T: Scalar>(i: &IsoscelesParams<T>) -> Result<IsoscelesScene<T>> {
    let (d, h, z) = (i.d, i.h, i.zeta());
    let (d2, h2) = (d * d, h * h);
    let base_y = (d2 - h2) / (T::two() * h);
    let triangle = Triangle::new(
        Point::new(-d, base_y),
        Point::new(d, base_y),
        Point::new(T::zero(), z / (T::two() * h)),
    )?;
    let circumcircle = Circle::new(Point::origin(), z / (T::two() * h))?;
    let three = T::lit(3.0);
    let nine = T::lit(9.0);
    let four = T::lit(4.0);
    let inellipse_conic = ImplicitConic {
        a: -T::lit(64.0) * d2 * h2 * h2,
        b: T::zero(),
        c: -four * h2 * (nine * d2 + h2) * z,
        d: T::zero(),
        e: four * h * (three * d2 + h2) * (three * d2 - h2) * z,
        f: -(d2 - h2) * (nine * d2 - h2) * z * z,
    };
    Ok(IsoscelesScene {
        triangle,
        circumcircle,
        inellipse_conic,
    })
}

/// Closed-form Brocard points `(Ω1, Ω2)` of the isosceles scene:
/// `(∓d(3d² − h²)/(9d² + h²), (9d⁴ − h⁴)/(2h(9d² + h²)))`.
pub fn isosceles_foci<T: Scalar>(i: &IsoscelesParams<T>) -> (Point<T>, Point<T>) {
    let (d, h) = (i.d, i.h);
    let (d2, h2) = (d * d, h * h);
    let den = T::lit(9.0) * d2 + h2;
    let x = d * (T::lit(3.0) * d2 - h2) / den;
    let y = (T::lit(9.0) * d2 * d2 - h2 * h2) / (T::two() * h * den);
    (Point::new(-x, y), Point::new(x, y))
}

/// The scene in the frame of the `(d, h)` triangle. Tall triangles
/// (`h > √3 d`) sit in the canonical frame; flat ones have `X6` above `X3`
/// and see the canonical scene turned by `π`.
pub fn scene_for_isosceles<T: Scalar>(i: &IsoscelesParams<T>) -> Result<PorismScene<T>> {
    let pose = if i.h > T::sqrt3() * i.d {
        Pose::identity()
    } else {
        Pose {
            translation: Point::origin(),
            rotation: T::PI(),
            reflect_x: false,
            scale: T::one(),
        }
    };
    PorismScene::with_pose(ru_from_dh(i), pose)
}

/// Inellipse semi-axes of the isosceles scene,
/// `(d√ζ/√(9d² + h²), 4d²h/(9d² + h²))`.
pub fn isosceles_axes<T: Scalar>(i: &IsoscelesParams<T>) -> (T, T) {
    let (d, h) = (i.d, i.h);
    let den = T::lit(9.0) * d * d + h * h;
    (
        d * i.zeta().sqrt() / den.sqrt(),
        T::lit(4.0) * d * d * h / den,
    )
}

/// Member triangle at parameter `t`: `A = R(cos t, sin t)` and the two other
/// contacts of the tangents from `A` to the inellipse with the circumcircle.
pub fn vertices_at<T: Scalar>(i: &IsoscelesParams<T>, t: T) -> Result<Triangle<T>> {
    let (d, h, z) = (i.d, i.h, i.zeta());
    let (d2, h2) = (d * d, h * h);
    let (d4, h4) = (d2 * d2, h2 * h2);
    let (two, three, nine) = (T::two(), T::lit(3.0), T::lit(9.0));
    let (s, c) = t.sin_cos();
    let r = z / (two * h);

    let p = two * d * h * (three * d2 - h2);
    let q = nine * d4 - h4;
    let w = nine * d4 + two * d2 * h2 + h4;
    let den_b = p * c - q * s + w;
    let den_c = q * s + p * c - w;
    let scale = p.abs() + q.abs() + w;
    let tiny = T::lit(1e-13) * scale;
    if den_b.abs() < tiny || den_c.abs() < tiny {
        return Err(Error::ParametrizationSingularity { t: t.as_f64() });
    }

    let m = three * d2 + h2;
    let g = nine * d4 - two * d2 * h2 + h4;
    let a = Point::new(r * c, r * s);
    let b = Point::new(
        -z * d * (two * d * h * c + m * s - three * d2 + h2) / den_b,
        z * (two * d * h * m * c - g * s + q) / (two * h * den_b),
    );
    let cc = Point::new(
        -z * d * (-two * d * h * c + m * s - three * d2 + h2) / den_c,
        z * (two * d * h * m * c + g * s - q) / (two * h * den_c),
    );
    Triangle::new(a, b, cc).map_err(|_| Error::ParametrizationSingularity { t: t.as_f64() })
}

/// Tangency residual of each side (`AB`, `BC`, `CA`) against the scene's inellipse.
pub fn closure_residuals<T: Scalar>(scene: &PorismScene<T>, tri: &Triangle<T>) -> [T; 3] {
    tri.side_lines()
        .map(|l| scene.inellipse.tangency_residual(&l))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::centers::{brocard_angle, brocard_points_by_construction};

    type P = Point<f64>;

    fn p(x: f64, y: f64) -> P {
        Point::new(x, y)
    }

    #[test]
    fn fixture_scene_values() {
        let s = PorismScene::new(PorismParams::new(1.25, 1.75).unwrap()).unwrap();
        assert!((s.inellipse.semi_major - (5f64 / 13.0).sqrt()).abs() < 1e-15);
        assert!((s.inellipse.semi_minor - 8.0 / 13.0).abs() < 1e-15);
        assert!(s.omega1.distance(p(1.0 / 13.0, -7.0 / 52.0)) < 1e-15);
        assert!(s.omega2.distance(p(-1.0 / 13.0, -7.0 / 52.0)) < 1e-15);
        assert!(s.x6.distance(p(0.0, -5.0 / 28.0)) < 1e-15);
        assert!(s.beltrami_p2.distance(p(-5.0, -8.75)) < 1e-13);
        assert!(s.beltrami_u2.distance(p(5.0, -8.75)) < 1e-13);
        assert!((s.beltrami_radius - 10.0).abs() < 1e-13);
    }

    #[test]
    fn near_equilateral_scene_tends_to_incircle() {
        let s = PorismScene::new(PorismParams::new(1.0, 3f64.sqrt() + 1e-12).unwrap()).unwrap();
        assert!((s.inellipse.semi_major - 0.5).abs() < 1e-6);
        assert!((s.inellipse.semi_minor - 0.5).abs() < 1e-6);
        assert!(s.omega1.norm() < 1e-5);
    }

    #[test]
    fn degenerate_scene_is_rejected() {
        let eq = PorismParams::new(1.0, 3f64.sqrt()).unwrap();
        assert!(matches!(
            PorismScene::new(eq),
            Err(Error::DegeneratePorism { .. })
        ));
        assert!(PorismParams::new(1.0, 1.5).is_err());
        assert!(PorismParams::new(0.0, 2.0).is_err());
    }

    #[test]
    fn half_two_scene_values() {
        let s = PorismScene::new(PorismParams::new(0.5, 2.0).unwrap()).unwrap();
        assert!((s.inellipse.semi_major - 5f64.sqrt() / 10.0).abs() < 1e-15);
        assert!((s.inellipse.semi_minor - 0.2).abs() < 1e-15);
        assert!(s.inellipse.center.distance(p(0.0, -0.2)) < 1e-15);
    }

    #[test]
    fn ru_from_axes_examples() {
        let f = ru_from_axes((5f64 / 13.0).sqrt(), 8.0 / 13.0).unwrap();
        assert!((f.r - 1.25).abs() < 1e-14 && (f.u - 1.75).abs() < 1e-14);
        let eq = ru_from_axes(0.5f64, 0.5).unwrap();
        assert!((eq.r - 1.0).abs() < 1e-15 && (eq.u - 3f64.sqrt()).abs() < 1e-15);
        let m = ru_from_axes(5f64.sqrt() / 10.0, 0.2).unwrap();
        assert!((m.r - 0.5).abs() < 1e-15 && (m.u - 2.0).abs() < 1e-14);
        assert!(matches!(
            ru_from_axes(0.5, 0.6),
            Err(Error::NotBrocardShape { .. })
        ));
    }

    #[test]
    fn dh_chart_examples() {
        let ru = ru_from_dh(&IsoscelesParams::new(1.0f64, 2.0).unwrap());
        assert_eq!((ru.r, ru.u), (1.25, 1.75));
        let dh = dh_from_ru(&ru);
        assert!((dh.d - 1.0).abs() < 1e-15 && (dh.h - 2.0).abs() < 1e-15);

        let eq = dh_from_ru(&PorismParams {
            r: 1.0,
            u: 3f64.sqrt(),
        });
        assert!((eq.d - 3f64.sqrt() / 2.0).abs() < 1e-15);
        assert!((eq.h - 1.5).abs() < 1e-15);
        assert!((eq.zeta() / (2.0 * eq.h) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn isosceles_scene_examples() {
        let i = IsoscelesParams::new(1.0, 2.0).unwrap();
        let iso = isosceles_scene(&i).unwrap();
        let vs = iso.triangle.vertices();
        for q in [p(-1.0, -0.75), p(1.0, -0.75), p(0.0, 1.25)] {
            assert!(vs.iter().any(|v| v.distance(q) < 1e-15));
        }
        let e = iso.inellipse_conic.to_axis_aligned().unwrap();
        let s = PorismScene::new(ru_from_dh(&i)).unwrap();
        assert!(e.center.distance(s.inellipse.center) < 1e-10);
        assert!((e.semi_major - s.inellipse.semi_major).abs() < 1e-10);
        assert!((e.semi_minor - s.inellipse.semi_minor).abs() < 1e-10);

        let (f1, f2) = isosceles_foci(&i);
        assert!(f1.distance(p(1.0 / 13.0, -7.0 / 52.0)) < 1e-15);
        assert!(f2.distance(p(-1.0 / 13.0, -7.0 / 52.0)) < 1e-15);

        // flat branch: the same porism turned upside down
        let flat = IsoscelesParams::new(1.0, 1.5).unwrap();
        let s = scene_for_isosceles(&flat).unwrap();
        let (f1, f2) = isosceles_foci(&flat);
        assert!(s.omega1.distance(f1) < 1e-14 && s.omega2.distance(f2) < 1e-14);
        assert!(s.x6.y > s.x3.y);
        let tri = vertices_at(&flat, 0.3).unwrap();
        assert!(closure_residuals(&s, &tri).iter().all(|&r| r < 1e-12));
        let bp = brocard_points_by_construction(&tri).unwrap();
        assert!(bp.omega1.distance(f1) < 1e-12 && bp.omega2.distance(f2) < 1e-12);
        let (a, b) = isosceles_axes(&i);
        assert!((a - (5f64 / 13.0).sqrt()).abs() < 1e-15 && (b - 8.0 / 13.0).abs() < 1e-15);
    }

    #[test]
    fn vertices_at_quarter_turn_is_the_isosceles_member() {
        let i = IsoscelesParams::new(1.0, 2.0).unwrap();
        let t = vertices_at(&i, std::f64::consts::FRAC_PI_2).unwrap();
        for q in [p(0.0, 1.25), p(-1.0, -0.75), p(1.0, -0.75)] {
            assert!(t.vertices().iter().any(|v| v.distance(q) < 1e-14));
        }
    }

    #[test]
    fn members_are_closed_and_equibrocardal() {
        let i = IsoscelesParams::new(1.0, 2.0).unwrap();
        let s = PorismScene::new(ru_from_dh(&i)).unwrap();
        for k in 0..40 {
            let t = 0.05 + k as f64 * 0.157;
            let Ok(tri) = vertices_at(&i, t) else {
                continue;
            };
            for v in tri.vertices() {
                assert!(s.circumcircle.distance_residual(v) < 1e-10);
            }
            assert!(closure_residuals(&s, &tri).iter().all(|&r| r < 1e-9));
            assert!((brocard_angle(&tri).unwrap().cot - 1.75).abs() < 1e-10);
            let bp = brocard_points_by_construction(&tri).unwrap();
            assert!(bp.omega1.distance(s.omega1) < 1e-9 && bp.omega2.distance(s.omega2) < 1e-9);
        }
    }

    #[test]
    fn rotated_equilateral_is_not_a_member() {
        let s = PorismScene::new(PorismParams::new(1.0, 2.0).unwrap()).unwrap();
        let v = |k: f64| {
            let a = 0.2 + 2.0 * std::f64::consts::PI * k / 3.0;
            p(a.cos(), a.sin())
        };
        let tri = Triangle::new(v(0.0), v(1.0), v(2.0)).unwrap();
        assert!(closure_residuals(&s, &tri).iter().any(|&r| r > 1e-3));
    }
}
