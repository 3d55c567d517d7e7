//! Curvature sweep over Zipf exponents at a fixed dictionary size.

use std::io::Write;
use std::thread;

use dashu_ratio::RBig;

use super::arith::DEFAULT_PRECISION_BITS;
use super::dist::{moment_f64, parse_exponent, zipf_distribution};
use super::model::{model_curve_fit, FitGrid};
use super::pseudo::{spectrum_summary, Precision};
use crate::format::sig6;
use crate::{Error, Result};

#[derive(Clone, Debug)]
pub struct SweepConfig {
    /// Zipf exponents as typed; kept as text so the CSV echoes them verbatim.
    pub exponents: Vec<String>,
    pub dict_size: usize,
    /// Token counts at which half the pseudo-variance is reported.
    pub tokens: Vec<usize>,
    pub t_min: f64,
    pub t_max: f64,
    pub grid: FitGrid,
    pub precision_bits: usize,
}

impl Default for SweepConfig {
    fn default() -> Self {
        Self {
            exponents: ["1.01", "1.05", "1.1", "1.15", "1.2"].map(String::from).to_vec(),
            dict_size: 50,
            tokens: vec![50, 80],
            t_min: 20.0,
            t_max: 402.0,
            grid: FitGrid::default(),
            precision_bits: DEFAULT_PRECISION_BITS,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepRow {
    pub exponent: String,
    pub dict_size: usize,
    pub m2: f64,
    /// `pseudo_variance / 2` at each of [`SweepConfig::tokens`].
    pub half_pv: Vec<f64>,
    pub beta_fit: f64,
    pub unstable: bool,
}

fn sweep_row(cfg: &SweepConfig, label: &str, a: &RBig) -> Result<SweepRow> {
    let dist = zipf_distribution(cfg.dict_size, a, cfg.precision_bits)?;
    let mut half_pv = Vec::with_capacity(cfg.tokens.len());
    let mut unstable = false;
    for &t in &cfg.tokens {
        let s = spectrum_summary(&dist, t, Precision::auto(t, cfg.precision_bits))?;
        half_pv.push(s.pseudo_variance / 2.0);
        unstable |= s.unstable;
    }
    let fit = model_curve_fit(&dist, cfg.t_min, cfg.t_max, cfg.grid)?;
    Ok(SweepRow {
        exponent: label.to_string(),
        dict_size: cfg.dict_size,
        m2: moment_f64(&dist, 2),
        half_pv,
        beta_fit: fit.beta,
        unstable,
    })
}

/// One row per exponent, computed in parallel, returned in input order.
pub fn zipf_sweep(cfg: &SweepConfig) -> Result<Vec<SweepRow>> {
    if cfg.exponents.is_empty() {
        return Err(Error::InvalidParameter("no Zipf exponents".into()));
    }
    let parsed = cfg
        .exponents
        .iter()
        .map(|s| parse_exponent(s).map(|a| (s.trim(), a)))
        .collect::<Result<Vec<_>>>()?;
    thread::scope(|scope| {
        let handles: Vec<_> = parsed
            .iter()
            .map(|(label, a)| scope.spawn(move || sweep_row(cfg, label, a)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("sweep worker panicked"))
            .collect()
    })
}

/// Writes `a,K,M2,halfpv_T<t>...,beta_fit,unstable`.
pub fn write_sweep_csv<W: Write>(cfg: &SweepConfig, rows: &[SweepRow], w: W) -> Result<()> {
    let mut out = csv::Writer::from_writer(w);
    let mut header = vec!["a".to_string(), "K".into(), "M2".into()];
    header.extend(cfg.tokens.iter().map(|t| format!("halfpv_T{t}")));
    header.extend(["beta_fit".to_string(), "unstable".into()]);
    out.write_record(&header)?;
    for r in rows {
        let mut rec = vec![r.exponent.clone(), r.dict_size.to_string(), sig6(r.m2)];
        rec.extend(r.half_pv.iter().map(|&v| sig6(v)));
        rec.extend([sig6(r.beta_fit), r.unstable.to_string()]);
        out.write_record(&rec)?;
    }
    out.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_type_row() {
        let cfg = SweepConfig {
            exponents: vec!["1.1".into()],
            dict_size: 1,
            tokens: vec![3],
            ..Default::default()
        };
        let rows = zipf_sweep(&cfg).unwrap();
        assert_eq!(rows[0].m2, 1.0);
        let mut buf = Vec::new();
        write_sweep_csv(&cfg, &rows, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(
            text.starts_with("a,K,M2,halfpv_T3,beta_fit,unstable\n1.1,1,1,"),
            "{text}"
        );
    }

    #[test]
    fn bad_exponent() {
        let cfg = SweepConfig {
            exponents: vec!["x".into()],
            ..Default::default()
        };
        assert!(zipf_sweep(&cfg).is_err());
    }
}
