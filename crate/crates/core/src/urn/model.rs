//! Quadratic fit to the with-replacement expectation curve.

use super::dist::TypeDistribution;
use super::expect::expected_types_with_replacement;
use crate::regress::{fit_counts, LogBase, LogLogFit, Model};
use crate::{Error, Result};

/// Token counts at which the expectation is sampled before fitting.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum FitGrid {
    /// Every integer in `[t_min, t_max]`.
    Integer,
    /// `ln T` evenly spaced from `ln t_min` by `step` while `T <= t_max`,
    /// so that each stretch of log-scale carries equal weight.
    LogUniform { step: f64 },
}

impl Default for FitGrid {
    fn default() -> Self {
        FitGrid::LogUniform { step: 0.1 }
    }
}

impl FitGrid {
    pub fn points(&self, t_min: f64, t_max: f64) -> Result<Vec<f64>> {
        if !(t_min >= 1.0 && t_max > t_min) {
            return Err(Error::InvalidParameter(format!(
                "need 1 <= t_min < t_max, got {t_min}..{t_max}"
            )));
        }
        Ok(match *self {
            FitGrid::Integer => {
                let lo = t_min.ceil() as u64;
                let hi = t_max.floor() as u64;
                (lo..=hi).map(|t| t as f64).collect()
            }
            FitGrid::LogUniform { step } => {
                if step.is_nan() || step <= 0.0 {
                    return Err(Error::InvalidParameter("grid step must be positive".into()));
                }
                let span = (t_max / t_min).ln();
                let n = (span / step + 1e-9).floor() as usize;
                (0..=n).map(|i| t_min * (i as f64 * step).exp()).collect()
            }
        })
    }
}

/// Evaluates the expectation on `grid` over `[t_min, t_max]` and fits the
/// quadratic log-log model in natural log.
pub fn model_curve_fit(dist: &TypeDistribution, t_min: f64, t_max: f64, grid: FitGrid) -> Result<LogLogFit> {
    let ts = grid.points(t_min, t_max)?;
    let vs: Vec<f64> = ts.iter().map(|&t| expected_types_with_replacement(dist, t)).collect();
    fit_counts(&ts, &vs, Model::Quadratic, LogBase::E)
}
