use thiserror::Error;

/// Failures raised by the geometric constructions.
///
/// Numeric payloads are carried as `f64` regardless of the scalar type the
/// computation ran in.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("degenerate triangle")]
    DegenerateTriangle,
    #[error("inversion pole: point coincides with the circle center")]
    InversionPole,
    #[error("center at infinity: trilinear weights sum to zero")]
    CenterAtInfinity,
    #[error("equilateral degeneracy")]
    EquilateralDegeneracy,
    #[error("degenerate porism: u = {u} must exceed sqrt(3)")]
    DegeneratePorism { u: f64 },
    #[error("not a Brocard inellipse shape: a = {a}, b = {b}")]
    NotBrocardShape { a: f64, b: f64 },
    #[error("parametrization singularity at t = {t}")]
    ParametrizationSingularity { t: f64 },
    #[error("cevian undefined: vertex coincides with the symmedian point")]
    CevianUndefined,
    #[error("fixed point has no preimage with larger u")]
    FixedPointNoPreimage,
    #[error("{what} = {value} is outside its valid range")]
    OutOfRange { what: &'static str, value: f64 },
    #[error("no real envelope at t = {t}")]
    NoRealEnvelope { t: f64 },
    #[error("degenerate member at t = {t}")]
    DegenerateMember { t: f64 },
    #[error("invalid geometry: {0}")]
    InvalidGeometry(&'static str),
}

pub type Result<T> = std::result::Result<T, Error>;
