//! Expected number of distinct types after `T` draws.

use std::collections::BTreeMap;
use std::io::Write;

use dashu_int::{IBig, UBig};
use dashu_ratio::RBig;
use statrs::function::gamma::ln_gamma;

use super::arith::sum_rationals;
use super::dist::TypeDistribution;
use crate::corpus::TypeCensus;
use crate::format::sig6;
use crate::{Error, Result};

/// `K - sum_i (1 - p_i)^t`, with `t` real so it can be differentiated.
pub fn expected_types_with_replacement(dist: &TypeDistribution, t: f64) -> f64 {
    if t <= 0.0 {
        return 0.0;
    }
    // 1 - (1 - p)^t = -expm1(t ln(1 - p)) keeps precision for small p.
    dist.probs_f64().iter().map(|&p| -(t * (-p).ln_1p()).exp_m1()).sum()
}

/// Same as [`expected_types_with_replacement`] in exact rationals.
pub fn expected_types_exact(dist: &TypeDistribution, t: u32) -> RBig {
    let k = RBig::from(dist.len());
    let missed: Vec<RBig> = dist
        .probs()
        .iter()
        .map(|p| {
            let q = RBig::ONE - p;
            RBig::from_parts(q.numerator().pow(t as usize), q.denominator().pow(t as usize))
        })
        .collect();
    k - sum_rationals(&missed)
}

/// `sum_i (1 - exp(-t p_i))`.
pub fn poisson_approx(dist: &TypeDistribution, t: f64) -> f64 {
    dist.probs_f64().iter().map(|&p| -(-t * p).exp_m1()).sum()
}

fn check_sample(t: u64, total: u64) -> Result<()> {
    if t > total {
        Err(Error::SampleTooLarge { t, total })
    } else {
        Ok(())
    }
}

/// `V_tot - sum_i C(T_tot - T_i, t) / C(T_tot, t)` for a sample of `t`
/// tokens drawn without replacement from the text behind `census`.
pub fn expected_types_without_replacement(census: &TypeCensus, t: u64) -> Result<f64> {
    expected_types_without_replacement_from_counts(&census.count_vector(), t)
}

/// Float path: binomial ratios through log-gamma differences, grouped by count.
pub fn expected_types_without_replacement_from_counts(counts: &[u64], t: u64) -> Result<f64> {
    let total: u64 = counts.iter().sum();
    check_sample(t, total)?;
    let mut groups: BTreeMap<u64, u64> = BTreeMap::new();
    for &c in counts {
        *groups.entry(c).or_default() += 1;
    }
    let n = total as f64;
    let tf = t as f64;
    let base = ln_gamma(n - tf + 1.0) - ln_gamma(n + 1.0);
    let missed: f64 = groups
        .iter()
        .filter(|(&m, _)| total - m >= t)
        .map(|(&m, &mult)| {
            let rest = (total - m) as f64;
            mult as f64 * (ln_gamma(rest + 1.0) - ln_gamma(rest - tf + 1.0) + base).exp()
        })
        .sum();
    Ok(counts.len() as f64 - missed)
}

/// Exact path with big-integer falling factorials; meant for small texts.
pub fn expected_types_without_replacement_exact(counts: &[u64], t: u64) -> Result<RBig> {
    let total: u64 = counts.iter().sum();
    check_sample(t, total)?;
    let falling = |n: u64| -> UBig { (0..t).map(|j| UBig::from(n - j)).product() };
    let den = falling(total);
    let mut groups: BTreeMap<u64, u64> = BTreeMap::new();
    for &c in counts {
        *groups.entry(c).or_default() += 1;
    }
    let missed: UBig = groups
        .iter()
        .filter(|(&m, _)| total - m >= t)
        .map(|(&m, &mult)| UBig::from(mult) * falling(total - m))
        .sum();
    Ok(RBig::from(counts.len()) - RBig::from_parts(IBig::from(missed), den))
}

/// Writes `T,expected_types` rows.
pub fn write_expectation_csv<W: Write>(rows: &[(u64, f64)], w: W) -> Result<()> {
    let mut out = csv::Writer::from_writer(w);
    out.write_record(["T", "expected_types"])?;
    for (t, v) in rows {
        out.write_record([t.to_string(), sig6(*v)])?;
    }
    out.flush()?;
    Ok(())
}
