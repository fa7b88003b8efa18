//! Triangle centers: Brocard angle and points, trilinear-to-Cartesian
//! conversion, the standard centers used along the Brocard axis, the Brocard
//! circles and the second Brocard triangle.

use crate::error::{Error, Result};
use crate::geom::{Circle, Line, Point, Triangle};
use crate::scalar::{root_u_sq_minus_3, u_sq_minus_3, Scalar};

/// Sidelengths, area, `λ = (s1 s2)² + (s2 s3)² + (s3 s1)²` and circumradius.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TriangleMetrics<T> {
    pub s1: T,
    pub s2: T,
    pub s3: T,
    pub area: T,
    pub lambda: T,
    pub circumradius: T,
}

impl<T: Scalar> TriangleMetrics<T> {
    pub fn of(t: &Triangle<T>) -> Self {
        let (s1, s2, s3) = t.side_lengths();
        let area = t.area();
        let lambda = (s1 * s2).powi(2) + (s2 * s3).powi(2) + (s3 * s1).powi(2);
        let circumradius = s1 * s2 * s3 / (T::lit(4.0) * area);
        TriangleMetrics {
            s1,
            s2,
            s3,
            area,
            lambda,
            circumradius,
        }
    }
}

/// A trilinear center function `f(a, b, c)`; only ratios matter.
#[derive(Clone, Copy)]
pub struct CenterFunction<T>(pub fn(T, T, T) -> T);

impl<T: Scalar> CenterFunction<T> {
    pub fn incenter() -> Self {
        CenterFunction(|_, _, _| T::one())
    }

    pub fn symmedian() -> Self {
        CenterFunction(|a, _, _| a)
    }

    pub fn circumcenter() -> Self {
        CenterFunction(|a, b, c| a * (b * b + c * c - a * a))
    }

    #[inline]
    pub fn eval(&self, a: T, b: T, c: T) -> T {
        (self.0)(a, b, c)
    }
}

/// Brocard angle `ω` and its cotangent `u`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BrocardAngle<T> {
    pub omega: T,
    pub cot: T,
}

/// `sin ω = 2Δ/√λ`. The cotangent is taken from the equivalent
/// `cot ω = (s1² + s2² + s3²)/(4Δ)`, which stays well conditioned at `ω = π/6`.
pub fn brocard_angle<T: Scalar>(t: &Triangle<T>) -> Result<BrocardAngle<T>> {
    let m = TriangleMetrics::of(t);
    if !(m.area > T::zero()) {
        return Err(Error::DegenerateTriangle);
    }
    let sin = (T::two() * m.area / m.lambda.sqrt()).min(T::one());
    let cot = (m.s1 * m.s1 + m.s2 * m.s2 + m.s3 * m.s3) / (T::lit(4.0) * m.area);
    Ok(BrocardAngle {
        omega: sin.asin(),
        cot,
    })
}

/// Concurrence point of three lines plus its defect (largest distance from
/// the reported point to any of the three lines).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Concurrence<T> {
    pub point: Point<T>,
    pub defect: T,
}

/// Lines through `v[i]` along `v[i+1] − v[i]`, rotated by `angle`, and their
/// concurrence.
pub fn rotated_side_concurrence<T: Scalar>(v: [Point<T>; 3], angle: T) -> Result<Concurrence<T>> {
    let line = |i: usize| Line::new(v[i], (v[(i + 1) % 3] - v[i]).rotated(angle));
    let lines = [line(0)?, line(1)?, line(2)?];
    let mut hits = Vec::with_capacity(3);
    for i in 0..3 {
        if let Some(p) = lines[i].intersect(&lines[(i + 1) % 3]) {
            hits.push(p);
        }
    }
    if hits.is_empty() {
        return Err(Error::DegenerateTriangle);
    }
    let n = T::lit(hits.len() as f64);
    let point = hits.iter().fold(Point::origin(), |acc, &p| acc + p) / n;
    let defect = lines
        .iter()
        .map(|l| l.distance(point))
        .fold(T::zero(), T::max);
    Ok(Concurrence { point, defect })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BrocardPoints<T> {
    pub omega1: Point<T>,
    pub omega2: Point<T>,
    /// Worse of the two concurrence defects.
    pub concurrency_defect: T,
}

/// Brocard points from the rotated-sides definition on the CCW triangle:
/// `Ω1` from AB, BC, CA rotated by `+ω` about A, B, C; `Ω2` from CB, BA, AC
/// rotated by `−ω` about C, B, A.
pub fn brocard_points_by_construction<T: Scalar>(t: &Triangle<T>) -> Result<BrocardPoints<T>> {
    let omega = brocard_angle(t)?.omega;
    let first = rotated_side_concurrence([t.a, t.b, t.c], omega)?;
    let second = rotated_side_concurrence([t.c, t.b, t.a], -omega)?;
    Ok(BrocardPoints {
        omega1: first.point,
        omega2: second.point,
        concurrency_defect: first.defect.max(second.defect),
    })
}

/// Cartesian point of the center with trilinears `f(a,b,c) : f(b,c,a) : f(c,a,b)`.
pub fn center_from_trilinear<T: Scalar>(t: &Triangle<T>, f: CenterFunction<T>) -> Result<Point<T>> {
    let (s1, s2, s3) = t.side_lengths();
    let w1 = s1 * f.eval(s1, s2, s3);
    let w2 = s2 * f.eval(s2, s3, s1);
    let w3 = s3 * f.eval(s3, s1, s2);
    let sum = w1 + w2 + w3;
    let scale = w1.abs() + w2.abs() + w3.abs();
    if !(sum.abs() > T::epsilon() * scale) {
        return Err(Error::CenterAtInfinity);
    }
    Ok((t.a * w1 + t.b * w2 + t.c * w3) / sum)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StandardCenters<T> {
    pub x3: Point<T>,
    pub x6: Point<T>,
    pub x15: Point<T>,
    pub x16: Point<T>,
    pub x39: Point<T>,
    pub x182: Point<T>,
    pub x187: Point<T>,
    pub x574: Point<T>,
    pub brocard: BrocardPoints<T>,
    pub angle: BrocardAngle<T>,
}

/// The centers along the Brocard axis, computed from the triangle alone.
///
/// `X15`, `X16` are the normalized affine combinations
/// `(√3·X3 ± u·X6)/(√3 ± u)`; `X187` is `X6` inverted in the circumcircle and
/// `X574` is `X187` inverted in the Brocard circle.
pub fn standard_centers<T: Scalar>(t: &Triangle<T>) -> Result<StandardCenters<T>> {
    let angle = brocard_angle(t)?;
    let u = angle.cot;
    let s3 = T::sqrt3();
    let gamma = t.circumcircle()?;
    let x3 = gamma.center;
    let x6 = center_from_trilinear(t, CenterFunction::symmedian())?;
    let brocard = brocard_points_by_construction(t)?;
    let x39 = brocard.omega1.midpoint(brocard.omega2);
    let x182 = x3.midpoint(x6);
    if !(u_sq_minus_3(u) > T::zero()) || x3.distance(x6) <= T::lit(1e-12) * gamma.radius {
        return Err(Error::EquilateralDegeneracy);
    }
    let x15 = (x3 * s3 + x6 * u) / (s3 + u);
    let x16 = (x3 * s3 - x6 * u) / (s3 - u);
    let x187 = gamma.invert(x6)?;
    let k = Circle::new(x182, x3.distance(x6) * T::half())?;
    let x574 = k.invert(x187)?;
    Ok(StandardCenters {
        x3,
        x6,
        x15,
        x16,
        x39,
        x182,
        x187,
        x574,
        brocard,
        angle,
    })
}

/// Circle on diameter `X3X6`; it carries both Brocard points.
pub fn brocard_circle<T: Scalar>(t: &Triangle<T>) -> Result<Circle<T>> {
    let gamma = t.circumcircle()?;
    let x3 = gamma.center;
    let x6 = center_from_trilinear(t, CenterFunction::symmedian())?;
    if x3.distance(x6) <= T::lit(1e-12) * gamma.radius {
        return Err(Error::EquilateralDegeneracy);
    }
    Circle::new(x3.midpoint(x6), x3.distance(x6) * T::half())
}

/// Circle about `X3` with radius `R√(1 − 4 sin²ω) = R√((u² − 3)/(u² + 1))`.
pub fn second_brocard_circle<T: Scalar>(t: &Triangle<T>) -> Result<Circle<T>> {
    let gamma = t.circumcircle()?;
    let u = brocard_angle(t)?.cot;
    let radius = gamma.radius * root_u_sq_minus_3(u) / (u * u + T::one()).sqrt();
    Circle::new(gamma.center, radius).map_err(|_| Error::EquilateralDegeneracy)
}

/// Second Brocard triangle: the second intersection of each symmedian cevian
/// with the Brocard circle, i.e. the foot of the perpendicular from `X3`
/// onto line `(V, X6)`. For a cevian through `X3` that foot is `X3` itself.
pub fn second_brocard_triangle<T: Scalar>(t: &Triangle<T>) -> Result<Triangle<T>> {
    let gamma = t.circumcircle()?;
    let x3 = gamma.center;
    let x6 = center_from_trilinear(t, CenterFunction::symmedian())?;
    if x3.distance(x6) <= T::lit(1e-12) * gamma.radius {
        return Err(Error::EquilateralDegeneracy);
    }
    let foot = |v: Point<T>| -> Result<Point<T>> {
        if v.distance(x6) <= T::epsilon() * gamma.radius {
            return Err(Error::CevianUndefined);
        }
        Ok(Line::through(v, x6)?.project(x3))
    };
    Triangle::new(foot(t.a)?, foot(t.b)?, foot(t.c)?)
}
