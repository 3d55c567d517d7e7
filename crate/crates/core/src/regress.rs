//! Linear and quadratic least squares in log-log space.
//!
//! The quadratic model is `log V = c0 + alpha log T + beta (log T)^2`; the
//! linear model is the same with `beta = 0`. Both are solved by Householder
//! QR on a centred design matrix.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::curves::TypeTokenCurve;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Model {
    Linear,
    Quadratic,
}

impl Model {
    /// Number of non-intercept regressors.
    pub fn regressors(self) -> usize {
        match self {
            Model::Linear => 1,
            Model::Quadratic => 2,
        }
    }
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Model::Linear => "linear",
            Model::Quadratic => "quadratic",
        })
    }
}

impl FromStr for Model {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "linear" => Ok(Model::Linear),
            "quadratic" => Ok(Model::Quadratic),
            other => Err(Error::Parse(format!("unknown model {other:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub enum LogBase {
    #[default]
    #[serde(rename = "e")]
    E,
    #[serde(rename = "10")]
    Ten,
}

impl LogBase {
    pub fn value(self) -> f64 {
        match self {
            LogBase::E => std::f64::consts::E,
            LogBase::Ten => 10.0,
        }
    }

    pub fn log(self, v: f64) -> f64 {
        match self {
            LogBase::E => v.ln(),
            LogBase::Ten => v.log10(),
        }
    }

    pub fn pow(self, x: f64) -> f64 {
        match self {
            LogBase::E => x.exp(),
            LogBase::Ten => 10f64.powf(x),
        }
    }
}

impl fmt::Display for LogBase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LogBase::E => "e",
            LogBase::Ten => "10",
        })
    }
}

impl FromStr for LogBase {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "e" => Ok(LogBase::E),
            "10" => Ok(LogBase::Ten),
            other => Err(Error::Parse(format!("unknown log base {other:?}"))),
        }
    }
}

/// Fitted log-log model with goodness-of-fit metrics.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LogLogFit {
    pub model: Model,
    pub log_base: LogBase,
    pub c0: f64,
    pub alpha: f64,
    /// Zero for the linear model.
    pub beta: f64,
    pub n: usize,
    pub p: usize,
    pub rss: f64,
    pub tss: f64,
    pub r2: f64,
    pub r2_adj: f64,
    pub aic: f64,
}

impl LogLogFit {
    /// Fitted `log V` at `x = log T`.
    pub fn predict_log(&self, x: f64) -> f64 {
        self.c0 + self.alpha * x + self.beta * x * x
    }

    /// `alpha + beta log T`: the exponent in `V = c T^(alpha + beta log T)`.
    pub fn effective_exponent(&self, tokens: f64) -> f64 {
        self.alpha + self.beta * self.log_base.log(tokens)
    }

    /// `alpha + 2 beta log T`: the local log-log slope of the fitted curve.
    pub fn elasticity_at(&self, tokens: f64) -> f64 {
        self.alpha + 2.0 * self.beta * self.log_base.log(tokens)
    }

    /// Token count at which the fitted slope reaches zero, `base^(alpha / (2|beta|))`.
    pub fn turning_point(&self) -> Result<f64> {
        if self.beta.is_nan() || self.beta >= 0.0 {
            return Err(Error::NoTurningPoint(self.beta));
        }
        Ok(self.log_base.pow(self.alpha / (2.0 * self.beta.abs())))
    }

    pub fn report(&self, source_id: &str, scheme: &str) -> FitReport {
        FitReport {
            source_id: source_id.to_string(),
            scheme: scheme.to_string(),
            model: self.model,
            log_base: self.log_base,
            n: self.n,
            c0: self.c0,
            alpha: self.alpha,
            beta: self.beta,
            r2: self.r2,
            r2_adj: self.r2_adj,
            aic: self.aic,
        }
    }
}

/// Flat record emitted by the `fit` command.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FitReport {
    pub source_id: String,
    pub scheme: String,
    pub model: Model,
    pub log_base: LogBase,
    pub n: usize,
    pub c0: f64,
    pub alpha: f64,
    pub beta: f64,
    pub r2: f64,
    pub r2_adj: f64,
    pub aic: f64,
}

/// Fits a type-token curve: `x = log T`, `y = log V`.
pub fn fit(curve: &TypeTokenCurve, model: Model, log_base: LogBase) -> Result<LogLogFit> {
    let (tokens, types): (Vec<f64>, Vec<f64>) = curve.points.iter().map(|p| (p.tokens as f64, p.types)).unzip();
    fit_counts(&tokens, &types, model, log_base)
}

/// Fits raw (T, V) pairs; both must be at least 1.
pub fn fit_counts(tokens: &[f64], types: &[f64], model: Model, log_base: LogBase) -> Result<LogLogFit> {
    if tokens.len() != types.len() {
        return Err(Error::InvalidParameter("tokens and types lengths differ".into()));
    }
    if tokens.iter().chain(types).any(|&v| v.is_nan() || v < 1.0) {
        return Err(Error::InvalidParameter("token and type counts must be >= 1".into()));
    }
    let xs: Vec<f64> = tokens.iter().map(|&t| log_base.log(t)).collect();
    let ys: Vec<f64> = types.iter().map(|&v| log_base.log(v)).collect();
    fit_xy(&xs, &ys, model, log_base)
}

/// Least squares on already-logged data.
pub fn fit_xy(xs: &[f64], ys: &[f64], model: Model, log_base: LogBase) -> Result<LogLogFit> {
    if xs.len() != ys.len() {
        return Err(Error::InvalidParameter("x and y lengths differ".into()));
    }
    let n = xs.len();
    let p = model.regressors();
    if n <= p + 1 {
        return Err(Error::InsufficientPoints { n, p });
    }
    let nf = n as f64;
    let x_mean = xs.iter().sum::<f64>() / nf;
    let y_mean = ys.iter().sum::<f64>() / nf;

    // Centring x keeps the quadratic column well conditioned.
    let cols: Vec<Vec<f64>> = (0..=p)
        .map(|j| xs.iter().map(|&x| (x - x_mean).powi(j as i32)).collect())
        .collect();
    let coef = least_squares(cols, ys)?;
    let (a, b, c) = (coef[0], coef[1], coef.get(2).copied().unwrap_or(0.0));
    let c0 = a - b * x_mean + c * x_mean * x_mean;
    let alpha = b - 2.0 * c * x_mean;
    let beta = c;

    let rss: f64 = xs
        .iter()
        .zip(ys)
        .map(|(&x, &y)| {
            let d = x - x_mean;
            let r = y - (a + b * d + c * d * d);
            r * r
        })
        .sum();
    let tss: f64 = ys.iter().map(|&y| (y - y_mean) * (y - y_mean)).sum();
    let r2 = if tss > 0.0 { 1.0 - rss / tss } else { 1.0 };
    let r2_adj = 1.0 - (1.0 - r2) * (nf - 1.0) / (nf - p as f64 - 1.0);
    let aic = nf * (rss / nf).ln() + 2.0 * p as f64;

    Ok(LogLogFit {
        model,
        log_base,
        c0,
        alpha,
        beta,
        n,
        p,
        rss,
        tss,
        r2,
        r2_adj,
        aic,
    })
}

/// Householder QR solve of `min |A b - y|` with `A` given column-wise.
fn least_squares(mut cols: Vec<Vec<f64>>, ys: &[f64]) -> Result<Vec<f64>> {
    let n = ys.len();
    let m = cols.len();
    let mut y = ys.to_vec();
    let scale: Vec<f64> = cols.iter().map(|c| norm(c)).collect();
    for k in 0..m {
        let alpha = norm(&cols[k][k..]);
        // Rank test relative to the original column norm.
        if alpha.is_nan() || alpha <= 1e-12 * scale[k].max(f64::MIN_POSITIVE) {
            return Err(Error::DegenerateAbscissa);
        }
        let alpha = if cols[k][k] > 0.0 { -alpha } else { alpha };
        let mut v: Vec<f64> = cols[k][k..].to_vec();
        v[0] -= alpha;
        let vv: f64 = v.iter().map(|e| e * e).sum();
        let reflect = |target: &mut [f64]| {
            let dot: f64 = v.iter().zip(target.iter()).map(|(a, b)| a * b).sum();
            let f = 2.0 * dot / vv;
            for (t, vi) in target.iter_mut().zip(&v) {
                *t -= f * vi;
            }
        };
        for col in cols.iter_mut().skip(k) {
            reflect(&mut col[k..n]);
        }
        reflect(&mut y[k..n]);
    }
    let mut coef = vec![0.0; m];
    for k in (0..m).rev() {
        let s: f64 = (k + 1..m).map(|j| cols[j][k] * coef[j]).sum();
        coef[k] = (y[k] - s) / cols[k][k];
    }
    Ok(coef)
}

fn norm(v: &[f64]) -> f64 {
    v.iter().map(|e| e * e).sum::<f64>().sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quad_data(c0: f64, a: f64, b: f64) -> (Vec<f64>, Vec<f64>) {
        (1..=400)
            .map(|t| {
                let x = (t as f64).ln();
                (x, c0 + a * x + b * x * x)
            })
            .unzip()
    }

    #[test]
    fn recovers_exact_quadratic() {
        let (xs, ys) = quad_data(0.5, 1.07, -0.024);
        let f = fit_xy(&xs, &ys, Model::Quadratic, LogBase::E).unwrap();
        assert!((f.c0 - 0.5).abs() < 1e-9);
        assert!((f.alpha - 1.07).abs() < 1e-9);
        assert!((f.beta + 0.024).abs() < 1e-9);
        assert!((f.r2 - 1.0).abs() < 1e-12);
        assert_eq!((f.n, f.p), (400, 2));
    }

    #[test]
    fn linear_on_power_law() {
        let (tokens, types): (Vec<f64>, Vec<f64>) = (1..=100).map(|t| (t as f64, 2.0 * (t as f64).powf(0.7))).unzip();
        let f = fit_counts(&tokens, &types, Model::Linear, LogBase::Ten).unwrap();
        assert!((f.alpha - 0.7).abs() < 1e-12);
        assert_eq!(f.beta, 0.0);
        assert!((f.r2 - 1.0).abs() < 1e-12);
        assert_eq!(f.p, 1);
    }

    #[test]
    fn errors() {
        let same = vec![1.0; 5];
        let ys = vec![0.1, 0.2, 0.3, 0.4, 0.5];
        assert!(matches!(
            fit_xy(&same, &ys, Model::Linear, LogBase::E),
            Err(Error::DegenerateAbscissa)
        ));
        // Two distinct x values cannot carry a quadratic.
        let two = vec![1.0, 1.0, 2.0, 2.0, 2.0];
        assert!(matches!(
            fit_xy(&two, &ys, Model::Quadratic, LogBase::E),
            Err(Error::DegenerateAbscissa)
        ));
        assert!(fit_xy(&two, &ys, Model::Linear, LogBase::E).is_ok());
        assert!(matches!(
            fit_xy(&[1.0, 2.0, 3.0], &[1.0, 2.0, 3.0], Model::Quadratic, LogBase::E),
            Err(Error::InsufficientPoints { n: 3, p: 2 })
        ));
        assert!(matches!(
            fit_xy(&[1.0, 2.0], &[1.0, 2.0], Model::Linear, LogBase::E),
            Err(Error::InsufficientPoints { .. })
        ));
    }

    #[test]
    fn metrics_follow_definitions() {
        let xs: Vec<f64> = (0..20).map(|i| i as f64 * 0.3).collect();
        let ys: Vec<f64> = xs
            .iter()
            .enumerate()
            .map(|(i, x)| 1.0 + 0.8 * x + 0.05 * ((i * 7 % 5) as f64 - 2.0))
            .collect();
        let f = fit_xy(&xs, &ys, Model::Linear, LogBase::E).unwrap();
        assert!((f.r2 - (1.0 - f.rss / f.tss)).abs() < 1e-15);
        assert!((f.r2_adj - (1.0 - (1.0 - f.r2) * 19.0 / 18.0)).abs() < 1e-15);
        assert!((f.aic - (20.0 * (f.rss / 20.0).ln() + 2.0)).abs() < 1e-12);
    }

    #[test]
    fn effective_exponent_and_elasticity() {
        let mut f = fit_xy(&[0.0, 1.0, 2.0], &[0.0, 1.0, 2.0], Model::Linear, LogBase::E).unwrap();
        for t in [1.0, 10.0, 1e6] {
            assert!((f.effective_exponent(t) - f.alpha).abs() < 1e-12);
            assert!((f.elasticity_at(t) - f.alpha).abs() < 1e-12);
        }
        f.alpha = 1.07;
        f.beta = -0.024;
        assert!((f.effective_exponent(10f64.exp()) - 0.83).abs() < 1e-12);
        f.alpha = 1.0;
        f.beta = -0.02;
        assert!((f.elasticity_at(5f64.exp()) - 0.8).abs() < 1e-12);
        f.alpha = 1.05;
        f.beta = -0.023;
        let e: Vec<f64> = [10.0, 100.0, 1e4, 1e6]
            .iter()
            .map(|&t| f.effective_exponent(t))
            .collect();
        assert!(e.windows(2).all(|w| w[1] < w[0]));
    }

    #[test]
    fn turning_point_values() {
        let mut f = fit_xy(&[0.0, 1.0, 2.0], &[0.0, 1.0, 2.0], Model::Linear, LogBase::E).unwrap();
        assert!(matches!(f.turning_point(), Err(Error::NoTurningPoint(_))));
        f.alpha = 1.0;
        f.beta = -0.5;
        assert!((f.turning_point().unwrap() - std::f64::consts::E).abs() < 1e-12);
        f.alpha = 1.07;
        f.beta = -0.024;
        let t = f.turning_point().unwrap();
        assert!((t / 4.8e9 - 1.0).abs() < 0.02, "{t}");
        assert!(f.elasticity_at(t).abs() < 1e-9);
        f.beta = 0.01;
        assert!(f.turning_point().is_err());
    }

    #[test]
    fn report_serializes_exact_fields() {
        let (xs, ys) = quad_data(0.5, 1.07, -0.024);
        let f = fit_xy(&xs, &ys, Model::Quadratic, LogBase::E).unwrap();
        let r = f.report("2600", "logsample");
        let v = serde_json::to_value(&r).unwrap();
        let keys: Vec<&str> = v.as_object().unwrap().keys().map(|s| s.as_str()).collect();
        let mut expect = vec![
            "source_id",
            "scheme",
            "model",
            "log_base",
            "n",
            "c0",
            "alpha",
            "beta",
            "r2",
            "r2_adj",
            "aic",
        ];
        expect.sort_unstable();
        let mut keys = keys;
        keys.sort_unstable();
        assert_eq!(keys, expect);
        assert_eq!(v["model"], "quadratic");
        assert_eq!(v["log_base"], "e");
    }
}
