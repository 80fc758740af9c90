//! Scalar abstraction shared by every module.
//!
//! [`Scalar`] is the ordered-field interface (exact rationals, `f64` and the
//! multiprecision [`Mpf`]); [`Real`] adds the transcendental functions needed
//! for logarithms of units, covolumes and the diagonal flow.

use std::cell::Cell;
use std::fmt::{self, Debug, Display};
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rug::float::Round;
use rug::ops::Pow;
use rug::Float;

/// Default mantissa size for multiprecision work.
pub const DEFAULT_BITS: u32 = 256;

pub trait Scalar:
    Clone
    + Debug
    + PartialOrd
    + Send
    + Sync
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + AddAssign
    + SubAssign
    + MulAssign
{
    fn from_i64(v: i64) -> Self;
    fn from_f64(v: f64) -> Self;
    fn to_f64(&self) -> f64;
    fn abs(&self) -> Self;
    /// Mantissa bits carried by values of this type (`u32::MAX` for exact types).
    fn precision_bits() -> u32;
    /// Working tolerance `2^(-bits/2)`; zero for exact arithmetic.
    fn tolerance() -> Self;
    fn round_to_i128(&self) -> Option<i128>;

    fn from_i128(v: i128) -> Self {
        match i64::try_from(v) {
            Ok(small) => Self::from_i64(small),
            Err(_) => {
                let hi = v >> 32;
                let lo = v - (hi << 32);
                Self::from_i128(hi) * Self::from_i64(1i64 << 32) + Self::from_i64(lo as i64)
            }
        }
    }

    fn from_bigint(v: &BigInt) -> Self {
        match v.to_i128() {
            Some(small) => Self::from_i128(small),
            None => {
                let shift = BigInt::from(1u64 << 62);
                let (hi, lo) = (v / &shift, v % &shift);
                Self::from_bigint(&hi) * Self::from_i64(1i64 << 62) + Self::from_bigint(&lo)
            }
        }
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        Self::from_i64(num) / Self::from_i64(den)
    }

    fn max_of(self, other: Self) -> Self {
        if other > self {
            other
        } else {
            self
        }
    }

    fn min_of(self, other: Self) -> Self {
        if other < self {
            other
        } else {
            self
        }
    }

    fn is_negative_value(&self) -> bool {
        *self < Self::zero()
    }
}

pub trait Real: Scalar {
    fn sqrt(&self) -> Self;
    fn exp(&self) -> Self;
    fn ln(&self) -> Self;
    fn powf(&self, e: &Self) -> Self;
    fn is_finite_value(&self) -> bool;
    /// Decimal rendering with `digits` significant digits.
    fn to_decimal(&self, digits: usize) -> String;
    fn parse_decimal(s: &str) -> Option<Self>;

    fn powi(&self, e: i32) -> Self {
        let mut acc = Self::one();
        let base = if e < 0 { Self::one() / self.clone() } else { self.clone() };
        for _ in 0..e.unsigned_abs() {
            acc = acc * base.clone();
        }
        acc
    }

    fn root(&self, k: u32) -> Self {
        self.powf(&(Self::one() / Self::from_i64(i64::from(k))))
    }
}

// ---------------------------------------------------------------------------
// f64

impl Scalar for f64 {
    fn from_i64(v: i64) -> Self {
        v as f64
    }
    fn from_f64(v: f64) -> Self {
        v
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn abs(&self) -> Self {
        f64::abs(*self)
    }
    fn precision_bits() -> u32 {
        f64::MANTISSA_DIGITS
    }
    fn tolerance() -> Self {
        (2.0f64).powi(-(f64::MANTISSA_DIGITS as i32) / 2)
    }
    fn round_to_i128(&self) -> Option<i128> {
        if self.is_finite() && f64::abs(*self) < 1.0e36 {
            Some(self.round() as i128)
        } else {
            None
        }
    }
}

impl Real for f64 {
    fn sqrt(&self) -> Self {
        f64::sqrt(*self)
    }
    fn exp(&self) -> Self {
        f64::exp(*self)
    }
    fn ln(&self) -> Self {
        f64::ln(*self)
    }
    fn powf(&self, e: &Self) -> Self {
        f64::powf(*self, *e)
    }
    fn is_finite_value(&self) -> bool {
        self.is_finite()
    }
    fn to_decimal(&self, digits: usize) -> String {
        format!("{:.*e}", digits.saturating_sub(1), self)
    }
    fn parse_decimal(s: &str) -> Option<Self> {
        s.trim().parse().ok()
    }
    fn powi(&self, e: i32) -> Self {
        f64::powi(*self, e)
    }
}

// ---------------------------------------------------------------------------
// exact rationals

impl Scalar for BigRational {
    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }
    fn from_f64(v: f64) -> Self {
        BigRational::from_float(v).expect("finite float")
    }
    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
    fn abs(&self) -> Self {
        Signed::abs(self)
    }
    fn precision_bits() -> u32 {
        u32::MAX
    }
    fn tolerance() -> Self {
        BigRational::zero()
    }
    fn round_to_i128(&self) -> Option<i128> {
        self.round().to_integer().to_i128()
    }
    fn from_bigint(v: &BigInt) -> Self {
        BigRational::from_integer(v.clone())
    }
}

// ---------------------------------------------------------------------------
// multiprecision

thread_local! {
    static WORKING_BITS: Cell<u32> = const { Cell::new(DEFAULT_BITS) };
}

/// Mantissa size used when new [`Mpf`] values are created on this thread.
pub fn working_precision() -> u32 {
    WORKING_BITS.with(Cell::get)
}

/// Runs `f` with the thread's working precision set to `bits`, restoring the
/// previous value afterwards (also on unwind).
pub fn with_precision<R>(bits: u32, f: impl FnOnce() -> R) -> R {
    struct Restore(u32);
    impl Drop for Restore {
        fn drop(&mut self) {
            WORKING_BITS.with(|c| c.set(self.0));
        }
    }
    let previous = WORKING_BITS.with(|c| c.replace(bits));
    let _restore = Restore(previous);
    f()
}

/// MPFR-backed float. Values carry their own precision; constructors use the
/// thread's working precision (see [`with_precision`]).
#[derive(Clone, PartialEq, PartialOrd)]
pub struct Mpf(pub Float);

impl Mpf {
    pub fn new(v: impl Into<f64>) -> Self {
        Mpf(Float::with_val(working_precision(), v.into()))
    }

    pub fn from_integer(v: &BigInt) -> Self {
        let parsed = rug::Integer::from_str_radix(&v.to_str_radix(16), 16).expect("valid integer");
        Mpf(Float::with_val(working_precision(), parsed))
    }

    pub fn prec(&self) -> u32 {
        self.0.prec()
    }

    pub fn inner(&self) -> &Float {
        &self.0
    }
}

impl Debug for Mpf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_decimal(20))
    }
}

impl Display for Mpf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_decimal(30))
    }
}

macro_rules! mpf_binop {
    ($trait:ident, $method:ident, $assign_trait:ident, $assign_method:ident) => {
        impl $trait for Mpf {
            type Output = Mpf;
            fn $method(self, rhs: Mpf) -> Mpf {
                let prec = self.0.prec().max(rhs.0.prec());
                let mut out = self.0;
                out.set_prec(prec);
                Mpf($trait::$method(out, &rhs.0))
            }
        }
        impl $assign_trait for Mpf {
            fn $assign_method(&mut self, rhs: Mpf) {
                let prec = self.0.prec().max(rhs.0.prec());
                self.0.set_prec(prec);
                $assign_trait::$assign_method(&mut self.0, &rhs.0);
            }
        }
    };
}

mpf_binop!(Add, add, AddAssign, add_assign);
mpf_binop!(Sub, sub, SubAssign, sub_assign);
mpf_binop!(Mul, mul, MulAssign, mul_assign);

impl Div for Mpf {
    type Output = Mpf;
    fn div(self, rhs: Mpf) -> Mpf {
        let prec = self.0.prec().max(rhs.0.prec());
        let mut out = self.0;
        out.set_prec(prec);
        Mpf(out / &rhs.0)
    }
}

impl Neg for Mpf {
    type Output = Mpf;
    fn neg(self) -> Mpf {
        Mpf(-self.0)
    }
}

impl Zero for Mpf {
    fn zero() -> Self {
        Mpf(Float::new(working_precision()))
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

impl One for Mpf {
    fn one() -> Self {
        Mpf(Float::with_val(working_precision(), 1))
    }
}

impl Scalar for Mpf {
    fn from_i64(v: i64) -> Self {
        Mpf(Float::with_val(working_precision(), v))
    }
    fn from_i128(v: i128) -> Self {
        Mpf(Float::with_val(working_precision(), v))
    }
    fn from_f64(v: f64) -> Self {
        Mpf(Float::with_val(working_precision(), v))
    }
    fn from_bigint(v: &BigInt) -> Self {
        Mpf::from_integer(v)
    }
    fn to_f64(&self) -> f64 {
        self.0.to_f64()
    }
    fn abs(&self) -> Self {
        Mpf(self.0.clone().abs())
    }
    fn precision_bits() -> u32 {
        working_precision()
    }
    fn tolerance() -> Self {
        let bits = working_precision() as i32;
        Mpf(Float::with_val(working_precision(), 2).pow(-(bits / 2)))
    }
    fn round_to_i128(&self) -> Option<i128> {
        if !self.0.is_finite() {
            return None;
        }
        self.0.to_integer_round(Round::Nearest).and_then(|(i, _)| i.to_i128())
    }
}

impl Real for Mpf {
    fn sqrt(&self) -> Self {
        Mpf(self.0.clone().sqrt())
    }
    fn exp(&self) -> Self {
        Mpf(self.0.clone().exp())
    }
    fn ln(&self) -> Self {
        Mpf(self.0.clone().ln())
    }
    fn powf(&self, e: &Self) -> Self {
        Mpf(self.0.clone().pow(&e.0))
    }
    fn is_finite_value(&self) -> bool {
        self.0.is_finite()
    }
    fn to_decimal(&self, digits: usize) -> String {
        let digits = digits.max(1);
        match self.0.to_f64() {
            v if v == 0.0 && self.0.is_zero() => "0".to_string(),
            _ => {
                let s = self.0.to_string_radix(10, Some(digits));
                s.replace('@', "")
            }
        }
    }
    fn parse_decimal(s: &str) -> Option<Self> {
        let parsed = Float::parse(s.trim()).ok()?;
        Some(Mpf(Float::with_val(working_precision(), parsed)))
    }
}

/// Significant digits written to reports: `bits / 3`, a little more than the
/// mantissa carries, so a round trip loses nothing.
pub fn report_digits(bits: u32) -> usize {
    (bits as usize / 3).max(17)
}

/// Number of significant decimal digits carried by `bits` mantissa bits.
pub fn decimal_digits_for(bits: u32) -> usize {
    ((f64::from(bits) * std::f64::consts::LOG10_2).ceil() as usize).max(17)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tolerance_follows_half_mantissa_rule() {
        let t = with_precision(256, Mpf::tolerance);
        assert_eq!(t.prec(), 256);
        assert!((t.to_f64() - 2f64.powi(-128)).abs() < 1e-50);
        assert!(f64::tolerance() < 1e-7 && f64::tolerance() > 1e-9);
        assert!(BigRational::tolerance().is_zero());
    }

    #[test]
    fn precision_scope_restores() {
        with_precision(512, || {
            assert_eq!(Mpf::from_i64(3).prec(), 512);
            with_precision(128, || assert_eq!(Mpf::one().prec(), 128));
            assert_eq!(working_precision(), 512);
        });
        assert_eq!(working_precision(), DEFAULT_BITS);
    }

    #[test]
    fn mixed_precision_ops_widen() {
        let a = with_precision(128, || Mpf::from_i64(1));
        let b = with_precision(512, || Mpf::from_i64(3));
        assert_eq!((a / b).prec(), 512);
    }

    #[test]
    fn decimal_roundtrip_keeps_digits() {
        with_precision(256, || {
            let x = Mpf::from_i64(2).sqrt();
            let s = x.to_decimal(decimal_digits_for(256));
            let y = Mpf::parse_decimal(&s).unwrap();
            assert!((x - y).abs().to_f64() < 1e-70);
        });
    }

    #[test]
    fn rounding_to_integers() {
        assert_eq!(2.6f64.round_to_i128(), Some(3));
        assert_eq!(with_precision(256, || Mpf::from_f64(-7.4).round_to_i128()), Some(-7));
        let big = with_precision(256, || Mpf::from_i128(1i128 << 100));
        assert_eq!(big.round_to_i128(), Some(1i128 << 100));
    }
}
