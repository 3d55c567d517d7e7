//! Number back-ends for the pseudo-weight series.
//!
//! The series `sum_k beta_k(T) T^k` cancels catastrophically, so it is never
//! evaluated in `f64`. [`Exact`] uses big rationals; [`Float`] uses binary
//! floats with a configurable mantissa.

use std::fmt::Debug;

use dashu_float::round::mode::HalfEven;
use dashu_float::FBig;
use dashu_int::IBig;
use dashu_ratio::RBig;

pub type BigFloat = FBig<HalfEven, 2>;

/// Default mantissa for the float back-end.
pub const DEFAULT_PRECISION_BITS: usize = 256;

/// Field operations over one number representation.
pub trait Arithmetic {
    type Num: Clone + Debug;

    fn int(&self, v: &IBig) -> Self::Num;
    fn ratio(&self, v: &RBig) -> Self::Num;
    fn add(&self, a: &Self::Num, b: &Self::Num) -> Self::Num;
    fn sub(&self, a: &Self::Num, b: &Self::Num) -> Self::Num;
    fn mul(&self, a: &Self::Num, b: &Self::Num) -> Self::Num;
    /// Callers check `is_zero(b)` first.
    fn div(&self, a: &Self::Num, b: &Self::Num) -> Self::Num;
    fn is_zero(&self, a: &Self::Num) -> bool;
    fn to_f64(&self, a: &Self::Num) -> f64;
    /// True for back-ends whose results carry rounding error.
    fn is_approximate(&self) -> bool;

    fn zero(&self) -> Self::Num {
        self.int(&IBig::ZERO)
    }

    fn small(&self, v: i64) -> Self::Num {
        self.int(&IBig::from(v))
    }
}

/// Exact big-rational arithmetic.
#[derive(Clone, Copy, Debug, Default)]
pub struct Exact;

impl Arithmetic for Exact {
    type Num = RBig;

    fn int(&self, v: &IBig) -> RBig {
        RBig::from(v.clone())
    }
    fn ratio(&self, v: &RBig) -> RBig {
        v.clone()
    }
    fn add(&self, a: &RBig, b: &RBig) -> RBig {
        a + b
    }
    fn sub(&self, a: &RBig, b: &RBig) -> RBig {
        a - b
    }
    fn mul(&self, a: &RBig, b: &RBig) -> RBig {
        a * b
    }
    fn div(&self, a: &RBig, b: &RBig) -> RBig {
        a / b
    }
    fn is_zero(&self, a: &RBig) -> bool {
        *a == RBig::ZERO
    }
    fn to_f64(&self, a: &RBig) -> f64 {
        a.to_f64().value()
    }
    fn is_approximate(&self) -> bool {
        false
    }
}

/// Binary floating point with `bits` of mantissa.
#[derive(Clone, Copy, Debug)]
pub struct Float {
    pub bits: usize,
}

impl Default for Float {
    fn default() -> Self {
        Self {
            bits: DEFAULT_PRECISION_BITS,
        }
    }
}

impl Arithmetic for Float {
    type Num = BigFloat;

    fn int(&self, v: &IBig) -> BigFloat {
        BigFloat::from(v.clone()).with_precision(self.bits).value()
    }
    fn ratio(&self, v: &RBig) -> BigFloat {
        v.to_float(self.bits).value()
    }
    fn add(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a + b
    }
    fn sub(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a - b
    }
    fn mul(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a * b
    }
    fn div(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a / b
    }
    fn is_zero(&self, a: &BigFloat) -> bool {
        *a == BigFloat::ZERO
    }
    fn to_f64(&self, a: &BigFloat) -> f64 {
        a.to_f64().value()
    }
    fn is_approximate(&self) -> bool {
        true
    }
}

/// `RBig` has no `Sum` impl.
pub fn sum_rationals<'a>(values: impl IntoIterator<Item = &'a RBig>) -> RBig {
    values.into_iter().fold(RBig::ZERO, |acc, v| acc + v)
}
