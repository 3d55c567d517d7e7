//! Type probability vectors and their moments.

use std::str::FromStr;

use dashu_float::DBig;
use dashu_int::{IBig, UBig};
use dashu_ratio::RBig;

use super::arith::{sum_rationals, Arithmetic, BigFloat};
use crate::{Error, Result};

/// Probabilities `p_1..p_K` over a fixed dictionary, held as rationals.
///
/// Distributions built from counts or from a Zipf law with integer exponent
/// are exact. A Zipf law with a non-integer exponent has irrational weights;
/// those are rounded to rationals over a common power-of-two denominator and
/// [`TypeDistribution::approximation_error`] bounds the rounding.
#[derive(Clone, Debug, PartialEq)]
pub struct TypeDistribution {
    probs: Vec<RBig>,
    probs_f64: Vec<f64>,
    approximation_error: f64,
}

impl TypeDistribution {
    /// Validates that every `p_i > 0` and that they sum to exactly one.
    pub fn from_rationals(probs: Vec<RBig>) -> Result<Self> {
        Self::with_error(probs, 0.0)
    }

    fn with_error(probs: Vec<RBig>, approximation_error: f64) -> Result<Self> {
        if probs.is_empty() {
            return Err(Error::InvalidDistribution("empty dictionary".into()));
        }
        if probs.iter().any(|p| *p <= RBig::ZERO) {
            return Err(Error::InvalidDistribution("probabilities must be positive".into()));
        }
        let total = sum_rationals(&probs);
        if total != RBig::ONE {
            return Err(Error::InvalidDistribution(format!(
                "probabilities sum to {} instead of 1",
                total.to_f64().value()
            )));
        }
        let probs_f64 = probs.iter().map(|p| p.to_f64().value()).collect();
        Ok(Self {
            probs,
            probs_f64,
            approximation_error,
        })
    }

    /// `p_i = T_i / sum(T)`.
    pub fn from_counts(counts: &[u64]) -> Result<Self> {
        if counts.contains(&0) {
            return Err(Error::InvalidDistribution("zero count".into()));
        }
        let total: UBig = counts.iter().map(|&c| UBig::from(c)).sum();
        let probs = counts
            .iter()
            .map(|&c| RBig::from_parts(IBig::from(c), total.clone()))
            .collect();
        Self::from_rationals(probs)
    }

    pub fn uniform(k: usize) -> Result<Self> {
        Self::from_counts(&vec![1; k])
    }

    /// Dictionary size K.
    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }

    pub fn probs(&self) -> &[RBig] {
        &self.probs
    }

    pub fn probs_f64(&self) -> &[f64] {
        &self.probs_f64
    }

    /// Upper bound on `|p_i - exact p_i|`; zero for exact distributions.
    pub fn approximation_error(&self) -> f64 {
        self.approximation_error
    }

    pub fn max_prob(&self) -> f64 {
        self.probs_f64.iter().copied().fold(0.0, f64::max)
    }
}

/// Parses a decimal (`1.01`) or fraction (`101/100`) into an exact rational.
pub fn parse_exponent(s: &str) -> Result<RBig> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a number: {s:?}"));
    if s.contains('/') {
        return RBig::from_str(s).map_err(|_| bad());
    }
    let d = DBig::from_str(s).map_err(|_| bad())?;
    RBig::try_from(d).map_err(|_| bad())
}

/// Zipf law `p_(r) = c / r^a` for ranks `r = 1..=k`.
///
/// Integer `a` gives exact rationals. Otherwise the weights are evaluated
/// with `precision_bits` of mantissa (plus guard bits) and rounded to
/// multiples of `2^-precision_bits` that still sum to one.
pub fn zipf_distribution(k: usize, a: &RBig, precision_bits: usize) -> Result<TypeDistribution> {
    if k == 0 {
        return Err(Error::InvalidParameter("dictionary size must be >= 1".into()));
    }
    if *a <= RBig::ZERO {
        return Err(Error::InvalidParameter("Zipf exponent must be positive".into()));
    }
    if *a.denominator() == UBig::ONE {
        if let Ok(exp) = usize::try_from(a.numerator()) {
            return zipf_exact(k, exp);
        }
    }
    zipf_rounded(k, a, precision_bits)
}

fn zipf_exact(k: usize, exp: usize) -> Result<TypeDistribution> {
    let weights: Vec<RBig> = (1..=k)
        .map(|r| RBig::from_parts(IBig::ONE, UBig::from(r).pow(exp)))
        .collect();
    let total = sum_rationals(&weights);
    TypeDistribution::from_rationals(weights.into_iter().map(|w| w / &total).collect())
}

fn zipf_rounded(k: usize, a: &RBig, precision_bits: usize) -> Result<TypeDistribution> {
    if precision_bits < 16 {
        return Err(Error::InvalidParameter("precision must be at least 16 bits".into()));
    }
    let work = precision_bits + 64;
    let a_f: BigFloat = a.to_float(work).value();
    let weights: Vec<BigFloat> = (1..=k)
        .map(|r| {
            let r = BigFloat::from(r).with_precision(work).value();
            (-(&a_f * r.ln())).exp()
        })
        .collect();
    let total: BigFloat = weights
        .iter()
        .fold(BigFloat::ZERO.with_precision(work).value(), |s, w| s + w);
    let scale = BigFloat::from(UBig::ONE << precision_bits).with_precision(work).value();

    let probs_f: Vec<BigFloat> = weights.iter().map(|w| w / &total).collect();
    let mut numerators: Vec<IBig> = probs_f.iter().map(|p| (p * &scale).round().to_int().value()).collect();
    // Push the rounding residue onto the largest weight so the sum is exactly one.
    let target = IBig::from(UBig::ONE << precision_bits);
    let residue = &target - numerators.iter().sum::<IBig>();
    numerators[0] += &residue;
    if numerators.iter().any(|n| *n <= IBig::ZERO) {
        return Err(Error::InvalidParameter(format!(
            "{precision_bits} bits cannot represent the smallest Zipf probability"
        )));
    }
    let denominator = UBig::ONE << precision_bits;
    let probs: Vec<RBig> = numerators
        .into_iter()
        .map(|n| RBig::from_parts(n, denominator.clone()))
        .collect();
    let error = probs
        .iter()
        .zip(&probs_f)
        .map(|(q, p)| {
            let q: BigFloat = q.to_float(work).value();
            (q - p).to_f64().value().abs()
        })
        .fold(0.0, f64::max);
    TypeDistribution::with_error(probs, error)
}

/// `M[k] = sum_i p_i^k` for `k = 1..=k_max` (stored 0-based: `values[k - 1]`).
#[derive(Clone, Debug, PartialEq)]
pub struct MomentVector<N> {
    values: Vec<N>,
}

impl<N> MomentVector<N> {
    /// Wraps `M_1..M_n`.
    pub fn from_values(values: Vec<N>) -> Self {
        Self { values }
    }

    /// Highest available order.
    pub fn k_max(&self) -> usize {
        self.values.len()
    }

    /// `M_k`, 1-based.
    pub fn get(&self, k: usize) -> &N {
        &self.values[k - 1]
    }

    pub fn values(&self) -> &[N] {
        &self.values
    }
}

/// Power sums of the distribution, by direct summation in the chosen arithmetic.
pub fn moments<A: Arithmetic>(arith: &A, dist: &TypeDistribution, k_max: usize) -> MomentVector<A::Num> {
    let probs: Vec<A::Num> = dist.probs().iter().map(|p| arith.ratio(p)).collect();
    let mut powers = probs.clone();
    let mut values = Vec::with_capacity(k_max);
    for k in 1..=k_max {
        if k > 1 {
            for (pw, p) in powers.iter_mut().zip(&probs) {
                *pw = arith.mul(pw, p);
            }
        }
        let sum = powers.iter().fold(arith.zero(), |s, v| arith.add(&s, v));
        values.push(sum);
    }
    MomentVector { values }
}

/// `M_k` in double precision; adequate for reporting, not for the series.
pub fn moment_f64(dist: &TypeDistribution, k: i32) -> f64 {
    dist.probs_f64().iter().map(|p| p.powi(k)).sum()
}
