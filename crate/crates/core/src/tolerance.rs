/// Residual thresholds used when judging constructions.
///
/// `scene` bounds residuals of composite constructions (member triangles,
/// stationary points, sequences of generations); `primitive` bounds single
/// closed-form evaluations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    pub scene: f64,
    pub primitive: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            scene: 1e-9,
            primitive: 1e-12,
        }
    }
}
