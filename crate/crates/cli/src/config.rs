use std::path::PathBuf;

use brocard::{StepMap, Tolerances};

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
    Svg,
}

/// Deliberate corruptions for negative-control runs of `verify`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Mutation {
    #[default]
    None,
    /// `u' = (u² − 3)/(2u)` in place of `(u² + 3)/(2u)`.
    FlipStepSign,
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub tolerance_scene: f64,
    pub tolerance_primitive: f64,
    pub samples: usize,
    pub seed: u64,
    pub output_format: OutputFormat,
    pub output_path: Option<PathBuf>,
    pub mutation: Mutation,
}

impl Default for RunConfig {
    fn default() -> Self {
        let t = Tolerances::default();
        RunConfig {
            tolerance_scene: t.scene,
            tolerance_primitive: t.primitive,
            samples: 200,
            seed: 0,
            output_format: OutputFormat::Csv,
            output_path: None,
            mutation: Mutation::None,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<(), CliError> {
        for (name, v) in [
            ("tolerance", self.tolerance_scene),
            ("primitive tolerance", self.tolerance_primitive),
        ] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(CliError::Usage(format!("{name} must be positive, got {v}")));
            }
        }
        if self.samples == 0 {
            return Err(CliError::Usage("samples must be at least 1".into()));
        }
        Ok(())
    }

    pub fn step_map(&self) -> StepMap<f64> {
        match self.mutation {
            Mutation::None => StepMap::standard(),
            Mutation::FlipStepSign => StepMap::flipped_sign(),
        }
    }

    /// `samples` scaled to a check's nominal share of the default 200.
    pub fn scaled_samples(&self, nominal: usize) -> usize {
        (self.samples * nominal / 200).max(1)
    }
}
