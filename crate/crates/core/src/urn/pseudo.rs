//! Polynomial expansion of the with-replacement expectation.
//!
//! Expanding `(1 - p)^T` binomially and rewriting the falling factorials with
//! signed Stirling numbers of the first kind gives
//!
//! ```text
//! E[V(T)] = sum_{k=1..T} beta_k(T) T^k
//! beta_k(T) = sum_{j=k..T} (-1)^(j+1) c(j,k) M_j / j!
//! ```
//!
//! where `c(j,k)` are the coefficients of `T(T-1)...(T-j+1)` and `M_j` the
//! moments of the type distribution. Normalizing the terms gives the
//! pseudo-weights `pi_k = beta_k T^k / E[V]`; they sum to one but alternate in
//! sign with magnitudes that grow quickly in `T`. The pseudo-mean
//! `sum k pi_k` is the log-log slope of the expansion and the pseudo-variance
//! `sum k^2 pi_k - (sum k pi_k)^2` its log-log curvature (`2 beta` of the
//! quadratic model).
//!
//! The expansion is exact only at integer `T`, so its slope and curvature
//! differ from those of `K - sum (1 - p_i)^t` by a remainder of order
//! `max p_i^(T+1)`. For a single type (`p = 1`) the remainder dominates and
//! the pseudo-mean is `(-1)^(T+1)`.

use dashu_int::IBig;

use super::arith::{Arithmetic, Exact, Float};
use super::dist::{moments, MomentVector, TypeDistribution};
use super::stirling::stirling_table;
use crate::{Error, Result};

/// Cancellation ratios above this are flagged as unstable in float mode.
pub const INSTABILITY_THRESHOLD: f64 = 1e12;

/// `beta_1(T)..beta_T(T)` (0-based: `beta[k - 1]`).
pub fn beta_coeffs<A: Arithmetic>(arith: &A, m: &MomentVector<A::Num>, t: usize) -> Result<Vec<A::Num>> {
    if t == 0 {
        return Err(Error::InvalidParameter("token count must be >= 1".into()));
    }
    if m.k_max() < t {
        return Err(Error::InvalidParameter(format!(
            "need moments up to order {t}, have {}",
            m.k_max()
        )));
    }
    let stirling = stirling_table(t);
    // a_j = (-1)^(j+1) M_j / j!
    let mut factorial = IBig::ONE;
    let a: Vec<A::Num> = (1..=t)
        .map(|j| {
            factorial *= IBig::from(j);
            let v = arith.div(m.get(j), &arith.int(&factorial));
            if j % 2 == 0 {
                arith.sub(&arith.zero(), &v)
            } else {
                v
            }
        })
        .collect();
    Ok((1..=t)
        .map(|k| {
            (k..=t).fold(arith.zero(), |acc, j| {
                let c = &stirling[j][k];
                if *c == IBig::ZERO {
                    acc
                } else {
                    arith.add(&acc, &arith.mul(&arith.int(c), &a[j - 1]))
                }
            })
        })
        .collect())
}

/// Normalized series terms.
#[derive(Clone, Debug)]
pub struct PseudoWeights<N> {
    /// `pi_1..pi_T` (0-based).
    pub pi: Vec<N>,
    /// `sum_k beta_k T^k`, which equals `E[V(T)]`.
    pub total: N,
    /// `max_k |beta_k T^k| / |total|`.
    pub cancellation: f64,
}

/// `pi_k = beta_k T^k / sum_j beta_j T^j`.
pub fn pseudo_weights<A: Arithmetic>(arith: &A, beta: &[A::Num], t: usize) -> Result<PseudoWeights<A::Num>> {
    let t_num = arith.int(&IBig::from(t));
    let mut power = arith.small(1);
    let terms: Vec<A::Num> = beta
        .iter()
        .map(|b| {
            power = arith.mul(&power, &t_num);
            arith.mul(b, &power)
        })
        .collect();
    let total = terms.iter().fold(arith.zero(), |s, v| arith.add(&s, v));
    if arith.is_zero(&total) {
        return Err(Error::ZeroDenominator);
    }
    let largest = terms.iter().map(|v| arith.to_f64(v).abs()).fold(0.0, f64::max);
    let cancellation = largest / arith.to_f64(&total).abs();
    let pi = terms.iter().map(|v| arith.div(v, &total)).collect();
    Ok(PseudoWeights {
        pi,
        total,
        cancellation,
    })
}

/// `sum_k k pi_k`, the log-log slope.
pub fn pseudo_mean<A: Arithmetic>(arith: &A, pi: &[A::Num]) -> A::Num {
    weighted_power_sum(arith, pi, 1)
}

/// `sum_k k^2 pi_k - (sum_k k pi_k)^2`, the log-log curvature.
pub fn pseudo_variance<A: Arithmetic>(arith: &A, pi: &[A::Num]) -> A::Num {
    let mean = pseudo_mean(arith, pi);
    let second = weighted_power_sum(arith, pi, 2);
    arith.sub(&second, &arith.mul(&mean, &mean))
}

fn weighted_power_sum<A: Arithmetic>(arith: &A, pi: &[A::Num], power: u32) -> A::Num {
    pi.iter().enumerate().fold(arith.zero(), |acc, (i, p)| {
        let k = arith.small((i as i64 + 1).pow(power));
        arith.add(&acc, &arith.mul(&k, p))
    })
}

/// Everything the series yields at one token count.
#[derive(Clone, Debug)]
pub struct PseudoSpectrum<N> {
    pub tokens: usize,
    pub beta: Vec<N>,
    pub pi: Vec<N>,
    pub expected_types: N,
    pub pseudo_mean: N,
    pub pseudo_variance: N,
    pub cancellation: f64,
    /// Set only for approximate arithmetic with cancellation above
    /// [`INSTABILITY_THRESHOLD`].
    pub unstable: bool,
}

/// Runs moments, `beta_k`, `pi_k`, pseudo-mean and pseudo-variance at `t`.
pub fn pseudo_spectrum<A: Arithmetic>(arith: &A, dist: &TypeDistribution, t: usize) -> Result<PseudoSpectrum<A::Num>> {
    let m = moments(arith, dist, t);
    let beta = beta_coeffs(arith, &m, t)?;
    let w = pseudo_weights(arith, &beta, t)?;
    let pseudo_mean = pseudo_mean(arith, &w.pi);
    let pseudo_variance = pseudo_variance(arith, &w.pi);
    let unstable = arith.is_approximate() && (w.cancellation.is_nan() || w.cancellation > INSTABILITY_THRESHOLD);
    Ok(PseudoSpectrum {
        tokens: t,
        beta,
        pi: w.pi,
        expected_types: w.total,
        pseudo_mean,
        pseudo_variance,
        cancellation: w.cancellation,
        unstable,
    })
}

/// Arithmetic back-end choice for [`spectrum_summary`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Precision {
    Exact,
    Float { bits: usize },
}

impl Precision {
    /// Largest `T` for which [`Precision::auto`] picks exact rationals.
    pub const EXACT_MAX_T: usize = 200;

    /// Exact rationals up to [`Self::EXACT_MAX_T`], floats with `bits` beyond.
    pub fn auto(t: usize, bits: usize) -> Self {
        if t <= Self::EXACT_MAX_T {
            Precision::Exact
        } else {
            Precision::Float { bits }
        }
    }
}

/// [`PseudoSpectrum`] reduced to doubles for reporting.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpectrumSummary {
    pub tokens: usize,
    pub expected_types: f64,
    pub pseudo_mean: f64,
    pub pseudo_variance: f64,
    pub cancellation: f64,
    pub unstable: bool,
}

impl SpectrumSummary {
    fn from_spectrum<A: Arithmetic>(arith: &A, s: &PseudoSpectrum<A::Num>) -> Self {
        Self {
            tokens: s.tokens,
            expected_types: arith.to_f64(&s.expected_types),
            pseudo_mean: arith.to_f64(&s.pseudo_mean),
            pseudo_variance: arith.to_f64(&s.pseudo_variance),
            cancellation: s.cancellation,
            unstable: s.unstable,
        }
    }
}

pub fn spectrum_summary(dist: &TypeDistribution, t: usize, precision: Precision) -> Result<SpectrumSummary> {
    match precision {
        Precision::Exact => Ok(SpectrumSummary::from_spectrum(
            &Exact,
            &pseudo_spectrum(&Exact, dist, t)?,
        )),
        Precision::Float { bits } => {
            let f = Float { bits };
            Ok(SpectrumSummary::from_spectrum(&f, &pseudo_spectrum(&f, dist, t)?))
        }
    }
}

/// Closed forms at `T = 3`.
#[derive(Clone, Debug, PartialEq)]
pub struct ClosedFormT3<N> {
    pub pi: [N; 3],
    pub pseudo_variance: N,
}

/// Pseudo-weights and pseudo-variance at `T = 3` from `M_2` and `M_3` alone:
///
/// ```text
/// D    = 1 - M2 + M3/3
/// pi_1 = (1 + M2/2 + M3/3) / D
/// pi_2 = -(3 M2/2 + 3 M3/2) / D
/// pi_3 = (3 M3/2) / D
/// var  = (1 - 11/2 M2 + 47/6 M3) / D - ((1 - 5/2 M2 + 11/6 M3) / D)^2
/// ```
pub fn closed_form_t3<A: Arithmetic>(arith: &A, m: &MomentVector<A::Num>) -> Result<ClosedFormT3<A::Num>> {
    if m.k_max() < 3 {
        return Err(Error::InvalidParameter("need M_2 and M_3".into()));
    }
    let (m2, m3) = (m.get(2), m.get(3));
    let frac = |n: i64, d: i64| arith.div(&arith.small(n), &arith.small(d));
    let one = arith.small(1);
    // c0 + c2 * M2 + c3 * M3
    let lin = |c0: &A::Num, c2: &A::Num, c3: &A::Num| arith.add(&arith.add(c0, &arith.mul(c2, m2)), &arith.mul(c3, m3));
    let zero = arith.zero();
    let d = lin(&one, &frac(-1, 1), &frac(1, 3));
    if arith.is_zero(&d) {
        return Err(Error::ZeroDenominator);
    }
    let over_d = |v: A::Num| arith.div(&v, &d);
    let pi1 = over_d(lin(&one, &frac(1, 2), &frac(1, 3)));
    let pi2 = over_d(lin(&zero, &frac(-3, 2), &frac(-3, 2)));
    let pi3 = over_d(lin(&zero, &zero, &frac(3, 2)));
    let second = over_d(lin(&one, &frac(-11, 2), &frac(47, 6)));
    let mean = over_d(lin(&one, &frac(-5, 2), &frac(11, 6)));
    let pseudo_variance = arith.sub(&second, &arith.mul(&mean, &mean));
    Ok(ClosedFormT3 {
        pi: [pi1, pi2, pi3],
        pseudo_variance,
    })
}
