//! Planar primitives: points, lines, circles, axis-aligned ellipses,
//! triangles and similarity poses, with the residual evaluators the rest of
//! the crate uses to certify incidences.

use std::ops::{Add, Div, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Relative area below which a triangle is treated as collinear.
pub const DEGENERATE_AREA_REL: f64 = 1e-14;

/// Relative discriminant band in which a line counts as tangent to a circle.
pub const TANGENCY_DISCRIMINANT_REL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Point<T> {
    pub x: T,
    pub y: T,
}

impl<T: Scalar> Point<T> {
    #[inline]
    pub fn new(x: T, y: T) -> Self {
        Point { x, y }
    }

    #[inline]
    pub fn origin() -> Self {
        Point::new(T::zero(), T::zero())
    }

    #[inline]
    pub fn dot(self, other: Self) -> T {
        self.x * other.x + self.y * other.y
    }

    /// z-component of the 3D cross product.
    #[inline]
    pub fn cross(self, other: Self) -> T {
        self.x * other.y - self.y * other.x
    }

    #[inline]
    pub fn norm_sq(self) -> T {
        self.dot(self)
    }

    #[inline]
    pub fn norm(self) -> T {
        self.x.hypot(self.y)
    }

    #[inline]
    pub fn distance(self, other: Self) -> T {
        (self - other).norm()
    }

    #[inline]
    pub fn midpoint(self, other: Self) -> Self {
        (self + other) * T::half()
    }

    /// Counterclockwise rotation about the origin.
    #[inline]
    pub fn rotated(self, angle: T) -> Self {
        let (s, c) = angle.sin_cos();
        Point::new(c * self.x - s * self.y, s * self.x + c * self.y)
    }

    /// Left-hand normal `(−y, x)`.
    #[inline]
    pub fn perp(self) -> Self {
        Point::new(-self.y, self.x)
    }

    pub fn normalized(self) -> Option<Self> {
        let n = self.norm();
        if n > T::zero() && n.is_finite() {
            Some(self / n)
        } else {
            None
        }
    }

    #[inline]
    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    pub fn cast<U: Scalar>(self) -> Point<U> {
        Point::new(U::lit(self.x.as_f64()), U::lit(self.y.as_f64()))
    }
}

impl<T: Scalar> Add for Point<T> {
    type Output = Self;
    #[inline]
    fn add(self, o: Self) -> Self {
        Point::new(self.x + o.x, self.y + o.y)
    }
}

impl<T: Scalar> Sub for Point<T> {
    type Output = Self;
    #[inline]
    fn sub(self, o: Self) -> Self {
        Point::new(self.x - o.x, self.y - o.y)
    }
}

impl<T: Scalar> Mul<T> for Point<T> {
    type Output = Self;
    #[inline]
    fn mul(self, k: T) -> Self {
        Point::new(self.x * k, self.y * k)
    }
}

impl<T: Scalar> Div<T> for Point<T> {
    type Output = Self;
    #[inline]
    fn div(self, k: T) -> Self {
        Point::new(self.x / k, self.y / k)
    }
}

impl<T: Scalar> Neg for Point<T> {
    type Output = Self;
    #[inline]
    fn neg(self) -> Self {
        Point::new(-self.x, -self.y)
    }
}

/// Infinite line through `base` with unit `direction`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Line<T> {
    pub base: Point<T>,
    pub direction: Point<T>,
}

impl<T: Scalar> Line<T> {
    /// Normalizes `direction`; fails on a zero or non-finite direction.
    pub fn new(base: Point<T>, direction: Point<T>) -> Result<Self> {
        let direction = direction
            .normalized()
            .ok_or(Error::InvalidGeometry("line direction must be nonzero"))?;
        Ok(Line { base, direction })
    }

    pub fn through(p: Point<T>, q: Point<T>) -> Result<Self> {
        Line::new(p, q - p)
    }

    #[inline]
    pub fn normal(&self) -> Point<T> {
        self.direction.perp()
    }

    #[inline]
    pub fn point_at(&self, s: T) -> Point<T> {
        self.base + self.direction * s
    }

    /// Unsigned distance from `p` to the line.
    #[inline]
    pub fn distance(&self, p: Point<T>) -> T {
        self.direction.cross(p - self.base).abs()
    }

    /// Foot of the perpendicular from `p`.
    #[inline]
    pub fn project(&self, p: Point<T>) -> Point<T> {
        self.point_at(self.direction.dot(p - self.base))
    }

    /// Intersection point, or `None` for parallel lines.
    pub fn intersect(&self, other: &Line<T>) -> Option<Point<T>> {
        let denom = self.direction.cross(other.direction);
        if denom.abs() <= T::epsilon() {
            return None;
        }
        let s = (other.base - self.base).cross(other.direction) / denom;
        Some(self.point_at(s))
    }

    /// Intersections with a circle: two points, one at tangency, or none.
    pub fn intersect_circle(&self, circle: &Circle<T>) -> Vec<Point<T>> {
        let w = self.base - circle.center;
        let half_b = self.direction.dot(w);
        let r2 = circle.radius * circle.radius;
        let disc = half_b * half_b - (w.norm_sq() - r2);
        let band = T::lit(TANGENCY_DISCRIMINANT_REL) * r2.max(T::epsilon());
        if disc.abs() <= band {
            vec![self.point_at(-half_b)]
        } else if disc < T::zero() {
            Vec::new()
        } else {
            let root = disc.sqrt();
            vec![self.point_at(-half_b - root), self.point_at(-half_b + root)]
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Circle<T> {
    pub center: Point<T>,
    pub radius: T,
}

impl<T: Scalar> Circle<T> {
    pub fn new(center: Point<T>, radius: T) -> Result<Self> {
        if !(radius > T::zero()) || !radius.is_finite() || !center.is_finite() {
            return Err(Error::InvalidGeometry(
                "circle radius must be positive and finite",
            ));
        }
        Ok(Circle { center, radius })
    }

    /// The circle through three points; collinear points are rejected.
    pub fn through(p: Point<T>, q: Point<T>, r: Point<T>) -> Result<Self> {
        let b = q - p;
        let c = r - p;
        let d = T::two() * b.cross(c);
        let scale = b.norm_sq().max(c.norm_sq()).max((r - q).norm_sq());
        if d.abs() <= T::lit(2.0 * DEGENERATE_AREA_REL) * scale || !d.is_finite() {
            return Err(Error::DegenerateTriangle);
        }
        let (b2, c2) = (b.norm_sq(), c.norm_sq());
        let off = Point::new(c.y * b2 - b.y * c2, b.x * c2 - c.x * b2) / d;
        Circle::new(p + off, off.norm())
    }

    /// `| |p − center| − radius |`.
    #[inline]
    pub fn distance_residual(&self, p: Point<T>) -> T {
        (p.distance(self.center) - self.radius).abs()
    }

    /// Image of `p` under inversion in this circle.
    pub fn invert(&self, p: Point<T>) -> Result<Point<T>> {
        let v = p - self.center;
        let n2 = v.norm_sq();
        if !(n2 > T::zero()) {
            return Err(Error::InversionPole);
        }
        Ok(self.center + v * (self.radius * self.radius / n2))
    }

    /// Intersections with another circle, ordered left of the center line
    /// first; one point at tangency, none if disjoint or concentric.
    pub fn intersect_circle(&self, other: &Circle<T>) -> Vec<Point<T>> {
        let v = other.center - self.center;
        let d = v.norm();
        if !(d > T::zero()) {
            return Vec::new();
        }
        let x = (d * d + self.radius * self.radius - other.radius * other.radius) / (T::two() * d);
        let h2 = self.radius * self.radius - x * x;
        let e = v / d;
        let foot = self.center + e * x;
        let band =
            T::lit(TANGENCY_DISCRIMINANT_REL) * (self.radius * self.radius).max(T::epsilon());
        if h2.abs() <= band {
            vec![foot]
        } else if h2 < T::zero() {
            Vec::new()
        } else {
            let h = h2.sqrt();
            vec![foot + e.perp() * h, foot - e.perp() * h]
        }
    }

    /// `|d² − r₁² − r₂²|`, zero exactly when the circles cross at right angles.
    pub fn orthogonality_residual(&self, other: &Circle<T>) -> T {
        let d2 = (self.center - other.center).norm_sq();
        (d2 - self.radius * self.radius - other.radius * other.radius).abs()
    }

    /// `r_self − (|Δcenter| + r_inner)`; nonnegative iff `inner` lies inside `self`.
    pub fn containment_margin(&self, inner: &Circle<T>) -> T {
        self.radius - (self.center.distance(inner.center) + inner.radius)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MajorAxis {
    Horizontal,
    Vertical,
}

/// Ellipse whose principal axes are parallel to the coordinate axes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AxisAlignedEllipse<T> {
    pub center: Point<T>,
    pub semi_major: T,
    pub semi_minor: T,
    pub major_axis: MajorAxis,
}

impl<T: Scalar> AxisAlignedEllipse<T> {
    pub fn new(
        center: Point<T>,
        semi_major: T,
        semi_minor: T,
        major_axis: MajorAxis,
    ) -> Result<Self> {
        if !(semi_minor >= T::zero()) || !(semi_major >= semi_minor) || !semi_major.is_finite() {
            return Err(Error::InvalidGeometry(
                "ellipse needs semi_major >= semi_minor >= 0",
            ));
        }
        Ok(AxisAlignedEllipse {
            center,
            semi_major,
            semi_minor,
            major_axis,
        })
    }

    /// Builds from the half-extents along x and y, picking the major axis.
    pub fn from_extents(center: Point<T>, half_x: T, half_y: T) -> Result<Self> {
        if half_x >= half_y {
            Self::new(center, half_x, half_y, MajorAxis::Horizontal)
        } else {
            Self::new(center, half_y, half_x, MajorAxis::Vertical)
        }
    }

    /// Half-extents `(along x, along y)`.
    pub fn extents(&self) -> (T, T) {
        match self.major_axis {
            MajorAxis::Horizontal => (self.semi_major, self.semi_minor),
            MajorAxis::Vertical => (self.semi_minor, self.semi_major),
        }
    }

    /// Center-to-focus distance `√(a² − b²)`.
    pub fn focal_distance(&self) -> T {
        let (a, b) = (self.semi_major, self.semi_minor);
        ((a - b) * (a + b)).max(T::zero()).sqrt()
    }

    pub fn eccentricity(&self) -> T {
        if self.semi_major > T::zero() {
            self.focal_distance() / self.semi_major
        } else {
            T::zero()
        }
    }

    /// Foci, ordered toward −x then +x (or −y then +y for a vertical major axis).
    pub fn foci(&self) -> (Point<T>, Point<T>) {
        let c = self.focal_distance();
        let off = match self.major_axis {
            MajorAxis::Horizontal => Point::new(c, T::zero()),
            MajorAxis::Vertical => Point::new(T::zero(), c),
        };
        (self.center - off, self.center + off)
    }

    /// `(x/rx)² + (y/ry)² − 1` in the principal frame.
    pub fn implicit_residual(&self, p: Point<T>) -> T {
        let (rx, ry) = self.extents();
        let q = p - self.center;
        (q.x / rx).powi(2) + (q.y / ry).powi(2) - T::one()
    }

    pub fn point_at(&self, angle: T) -> Point<T> {
        let (rx, ry) = self.extents();
        let (s, c) = angle.sin_cos();
        self.center + Point::new(rx * c, ry * s)
    }

    /// Tangency residual of a line, in units of the semi-major axis.
    ///
    /// With unit normal `n` and signed offset `δ` of the line from the
    /// center, the line is tangent iff `δ² = rx² nx² + ry² ny²`; the returned
    /// value is `| √(rx² nx² + ry² ny²) − |δ| | / a`.
    pub fn tangency_residual(&self, line: &Line<T>) -> T {
        let (rx, ry) = self.extents();
        let n = line.normal();
        let offset = n.dot(line.base - self.center).abs();
        let support = (rx * rx * n.x * n.x + ry * ry * n.y * n.y).sqrt();
        let scale = if self.semi_major > T::zero() {
            self.semi_major
        } else {
            T::one()
        };
        (support - offset).abs() / scale
    }
}

/// Triangle with vertices stored counterclockwise.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Triangle<T> {
    pub a: Point<T>,
    pub b: Point<T>,
    pub c: Point<T>,
}

impl<T: Scalar> Triangle<T> {
    /// Builds a CCW triangle, swapping `b` and `c` when given clockwise.
    pub fn new(a: Point<T>, b: Point<T>, c: Point<T>) -> Result<Self> {
        if !(a.is_finite() && b.is_finite() && c.is_finite()) {
            return Err(Error::DegenerateTriangle);
        }
        let twice = (b - a).cross(c - a);
        let scale = (b - a)
            .norm_sq()
            .max((c - a).norm_sq())
            .max((c - b).norm_sq());
        if twice.abs() <= T::lit(2.0 * DEGENERATE_AREA_REL) * scale || scale == T::zero() {
            return Err(Error::DegenerateTriangle);
        }
        Ok(if twice > T::zero() {
            Triangle { a, b, c }
        } else {
            Triangle { a, b: c, c: b }
        })
    }

    pub fn vertices(&self) -> [Point<T>; 3] {
        [self.a, self.b, self.c]
    }

    /// `(s1, s2, s3) = (|B − C|, |C − A|, |A − B|)`.
    pub fn side_lengths(&self) -> (T, T, T) {
        (
            self.b.distance(self.c),
            self.c.distance(self.a),
            self.a.distance(self.b),
        )
    }

    /// Sides as lines `AB`, `BC`, `CA`.
    pub fn side_lines(&self) -> [Line<T>; 3] {
        // vertices are distinct by construction
        [
            Line::through(self.a, self.b).expect("distinct vertices"),
            Line::through(self.b, self.c).expect("distinct vertices"),
            Line::through(self.c, self.a).expect("distinct vertices"),
        ]
    }

    pub fn area(&self) -> T {
        (self.b - self.a).cross(self.c - self.a) * T::half()
    }

    pub fn centroid(&self) -> Point<T> {
        (self.a + self.b + self.c) / T::lit(3.0)
    }

    pub fn circumcircle(&self) -> Result<Circle<T>> {
        Circle::through(self.a, self.b, self.c)
    }

    pub fn map(&self, f: impl Fn(Point<T>) -> Point<T>) -> Result<Self> {
        Triangle::new(f(self.a), f(self.b), f(self.c))
    }
}

/// Similarity `p ↦ translation + scale · Rot(rotation) · M(p)`, where `M`
/// mirrors `x → −x` when `reflect_x` is set.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Pose<T> {
    pub translation: Point<T>,
    pub rotation: T,
    pub reflect_x: bool,
    pub scale: T,
}

impl<T: Scalar> Default for Pose<T> {
    fn default() -> Self {
        Pose::identity()
    }
}

impl<T: Scalar> Pose<T> {
    pub fn identity() -> Self {
        Pose {
            translation: Point::origin(),
            rotation: T::zero(),
            reflect_x: false,
            scale: T::one(),
        }
    }

    pub fn translation(t: Point<T>) -> Self {
        Pose {
            translation: t,
            ..Pose::identity()
        }
    }

    pub fn new(translation: Point<T>, rotation: T, reflect_x: bool, scale: T) -> Result<Self> {
        if !(scale > T::zero()) || !scale.is_finite() {
            return Err(Error::InvalidGeometry("pose scale must be positive"));
        }
        Ok(Pose {
            translation,
            rotation,
            reflect_x,
            scale,
        })
    }

    /// Whether the map preserves orientation (no net mirror).
    pub fn preserves_orientation(&self) -> bool {
        !self.reflect_x
    }

    /// Applies only the linear part (mirror, rotation, scale).
    pub fn apply_vector(&self, v: Point<T>) -> Point<T> {
        let m = if self.reflect_x {
            Point::new(-v.x, v.y)
        } else {
            v
        };
        let r = if self.rotation == T::zero() {
            m
        } else {
            m.rotated(self.rotation)
        };
        r * self.scale
    }

    pub fn apply(&self, p: Point<T>) -> Point<T> {
        self.translation + self.apply_vector(p)
    }

    pub fn apply_circle(&self, c: &Circle<T>) -> Circle<T> {
        Circle {
            center: self.apply(c.center),
            radius: c.radius * self.scale,
        }
    }

    /// Maps an axis-aligned ellipse; the rotation must be a multiple of π/2.
    pub fn apply_ellipse(&self, e: &AxisAlignedEllipse<T>) -> Result<AxisAlignedEllipse<T>> {
        let (s, c) = self.rotation.sin_cos();
        let tol = T::lit(1e-12);
        let swap = if s.abs() <= tol {
            false
        } else if c.abs() <= tol {
            true
        } else {
            return Err(Error::InvalidGeometry(
                "pose rotation breaks axis alignment",
            ));
        };
        let major_axis = match (e.major_axis, swap) {
            (MajorAxis::Horizontal, false) | (MajorAxis::Vertical, true) => MajorAxis::Horizontal,
            _ => MajorAxis::Vertical,
        };
        Ok(AxisAlignedEllipse {
            center: self.apply(e.center),
            semi_major: e.semi_major * self.scale,
            semi_minor: e.semi_minor * self.scale,
            major_axis,
        })
    }

    /// `self ∘ inner`: apply `inner` first, then `self`.
    pub fn compose(&self, inner: &Pose<T>) -> Pose<T> {
        let inner_rot = if self.reflect_x {
            -inner.rotation
        } else {
            inner.rotation
        };
        Pose {
            translation: self.apply(inner.translation),
            rotation: self.rotation + inner_rot,
            reflect_x: self.reflect_x ^ inner.reflect_x,
            scale: self.scale * inner.scale,
        }
    }

    pub fn inverse(&self) -> Pose<T> {
        // p = t + s R M q  =>  q = M R⁻¹ (p − t) / s = (1/s) R' M' (p − t)
        let rotation = if self.reflect_x {
            self.rotation
        } else {
            -self.rotation
        };
        let linear = Pose {
            translation: Point::origin(),
            rotation,
            reflect_x: self.reflect_x,
            scale: T::one() / self.scale,
        };
        Pose {
            translation: linear.apply_vector(-self.translation),
            ..linear
        }
    }
}

/// Circumscribed circle of a triangle.
pub fn circumcircle<T: Scalar>(t: &Triangle<T>) -> Result<Circle<T>> {
    t.circumcircle()
}

pub fn invert_in_circle<T: Scalar>(c: &Circle<T>, p: Point<T>) -> Result<Point<T>> {
    c.invert(p)
}

pub fn line_circle_intersections<T: Scalar>(l: &Line<T>, c: &Circle<T>) -> Vec<Point<T>> {
    l.intersect_circle(c)
}

pub fn project_onto_line<T: Scalar>(l: &Line<T>, p: Point<T>) -> Point<T> {
    l.project(p)
}

pub fn circles_orthogonality_residual<T: Scalar>(c1: &Circle<T>, c2: &Circle<T>) -> T {
    c1.orthogonality_residual(c2)
}

pub fn ellipse_line_tangency_residual<T: Scalar>(e: &AxisAlignedEllipse<T>, l: &Line<T>) -> T {
    e.tangency_residual(l)
}

pub fn ellipse_foci<T: Scalar>(e: &AxisAlignedEllipse<T>) -> (Point<T>, Point<T>) {
    e.foci()
}
