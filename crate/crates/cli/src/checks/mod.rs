//! The named invariant checks behind `verify`.
//!
//! Each check samples its own inputs from a generator seeded by the run seed
//! and its id, so reports do not depend on evaluation order.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::config::RunConfig;
use crate::error::CliError;
use crate::table::{Cell, Table};

mod centers;
mod continuous;
mod geom;
mod porism;
mod recurrence;

#[derive(Debug, Clone, PartialEq)]
pub struct CheckReport {
    pub check_id: String,
    /// What the check asserts, in a few words.
    pub paper_anchor: String,
    pub max_residual: f64,
    pub tolerance: f64,
    pub passed: bool,
    pub samples_used: usize,
    /// Set when the check aborted on a geometry error.
    pub note: Option<String>,
}

#[derive(Debug, Clone, Copy)]
pub enum Tol {
    Scene,
    Primitive,
    Fixed(f64),
}

/// Largest residual seen and the number of samples that produced it.
#[derive(Debug, Clone, Copy, Default)]
pub struct Outcome {
    pub residual: f64,
    pub samples: usize,
}

impl Outcome {
    pub fn new(residual: f64, samples: usize) -> Self {
        Outcome { residual, samples }
    }

    /// Folds in one residual; NaN poisons the maximum.
    pub fn add(&mut self, r: f64) {
        self.residual = if r.is_nan() || self.residual.is_nan() {
            f64::NAN
        } else {
            self.residual.max(r)
        };
        self.samples += 1;
    }
}

pub struct Ctx<'a> {
    pub config: &'a RunConfig,
    pub id: &'static str,
}

impl Ctx<'_> {
    pub fn rng(&self) -> ChaCha8Rng {
        // FNV-1a of the id keeps streams independent per check
        let h = self.id.bytes().fold(0xcbf2_9ce4_8422_2325u64, |h, b| {
            (h ^ b as u64).wrapping_mul(0x100_0000_01b3)
        });
        ChaCha8Rng::seed_from_u64(self.config.seed ^ h)
    }

    pub fn samples(&self, nominal: usize) -> usize {
        self.config.scaled_samples(nominal)
    }
}

pub type CheckFn = fn(&Ctx) -> brocard::Result<Outcome>;

pub struct Check {
    pub id: &'static str,
    pub anchor: &'static str,
    pub tol: Tol,
    pub run: CheckFn,
}

impl Check {
    pub const fn new(id: &'static str, anchor: &'static str, tol: Tol, run: CheckFn) -> Self {
        Check {
            id,
            anchor,
            tol,
            run,
        }
    }

    fn tolerance(&self, config: &RunConfig) -> f64 {
        match self.tol {
            Tol::Scene => config.tolerance_scene,
            Tol::Primitive => config.tolerance_primitive,
            Tol::Fixed(t) => t,
        }
    }

    pub fn execute(&self, config: &RunConfig) -> CheckReport {
        let tolerance = self.tolerance(config);
        let (max_residual, samples_used, note) = match (self.run)(&Ctx {
            config,
            id: self.id,
        }) {
            Ok(o) => (o.residual, o.samples, None),
            Err(e) => (f64::INFINITY, 0, Some(e.to_string())),
        };
        CheckReport {
            check_id: self.id.to_string(),
            paper_anchor: self.anchor.to_string(),
            max_residual,
            tolerance,
            passed: max_residual <= tolerance,
            samples_used,
            note,
        }
    }
}

pub fn registry() -> Vec<Check> {
    let mut all = Vec::new();
    all.extend(geom::checks());
    all.extend(centers::checks());
    all.extend(porism::checks());
    all.extend(recurrence::checks());
    all.extend(continuous::checks());
    all.sort_by(|a, b| a.id.cmp(b.id));
    all
}

/// Runs every check whose id starts with `filter`, in parallel, reporting
/// in id order.
pub fn run_checks(config: &RunConfig, filter: Option<&str>) -> Result<Vec<CheckReport>, CliError> {
    let selected: Vec<Check> = registry()
        .into_iter()
        .filter(|c| filter.is_none_or(|f| c.id.starts_with(f)))
        .collect();
    if selected.is_empty() {
        return Err(CliError::Usage(format!(
            "no check id starts with {:?}",
            filter.unwrap_or("")
        )));
    }
    let mut reports: Vec<CheckReport> = selected.par_iter().map(|c| c.execute(config)).collect();
    reports.sort_by(|a, b| a.check_id.cmp(&b.check_id));
    Ok(reports)
}

pub fn report_table(reports: &[CheckReport]) -> Table {
    let mut t = Table::new(&[
        "check_id",
        "paper_anchor",
        "max_residual",
        "tolerance",
        "passed",
        "samples_used",
        "note",
    ]);
    for r in reports {
        t.push(vec![
            Cell::Text(r.check_id.clone()),
            Cell::Text(r.paper_anchor.clone()),
            Cell::Real(r.max_residual),
            Cell::Real(r.tolerance),
            Cell::Bool(r.passed),
            Cell::Int(r.samples_used as i64),
            Cell::Text(r.note.clone().unwrap_or_default()),
        ]);
    }
    t
}

/// Relative distance `|p − q| / max(1, |q|)`.
pub(crate) fn rel(p: brocard::Point64, q: brocard::Point64) -> f64 {
    p.distance(q) / q.norm().max(1.0)
}

pub(crate) fn random_scene(
    rng: &mut ChaCha8Rng,
    r: std::ops::Range<f64>,
    u: std::ops::Range<f64>,
) -> brocard::Result<brocard::Scene64> {
    use rand::Rng;
    brocard::Scene64::new(brocard::Params64::new(rng.gen_range(r), rng.gen_range(u))?)
}

/// A member at a random parameter, redrawing at the isolated singular ones.
pub(crate) fn random_member(
    scene: &brocard::Scene64,
    rng: &mut ChaCha8Rng,
) -> brocard::Result<brocard::Triangle64> {
    use rand::Rng;
    for _ in 0..64 {
        match scene.member(rng.gen_range(0.0..std::f64::consts::TAU)) {
            Err(brocard::Error::ParametrizationSingularity { .. }) => continue,
            other => return other,
        }
    }
    Err(brocard::Error::InvalidGeometry("no regular member found"))
}

/// Count of windows that are not strictly decreasing.
pub(crate) fn non_decreasing_steps(v: &[f64]) -> f64 {
    v.windows(2).filter(|w| !(w[1] < w[0])).count() as f64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_are_unique_and_grouped() {
        let r = registry();
        let mut ids: Vec<_> = r.iter().map(|c| c.id).collect();
        ids.dedup();
        assert_eq!(ids.len(), r.len());
        assert!(ids.iter().all(|id| id.contains('.')));
    }

    #[test]
    fn unknown_filter_is_a_usage_error() {
        let err = run_checks(&RunConfig::default(), Some("nope.")).unwrap_err();
        assert_eq!(err.exit_code(), 2);
    }

    #[test]
    fn failing_geometry_fails_the_check() {
        let c = Check::new("x.fail", "always errors", Tol::Scene, |_| {
            Err(brocard::Error::DegenerateTriangle)
        });
        let r = c.execute(&RunConfig::default());
        assert!(!r.passed && r.note.is_some());
    }
}
