//! Arbitrary-precision real numbers.
//!
//! [`Real`] wraps an `astro_float::BigFloat` together with the precision (in
//! bits) it was created at. Every constructor takes the precision explicitly;
//! binary operations produce a result at the larger of the two operand
//! precisions. Nothing here reads global precision state. The only shared
//! state is a per-thread constants cache used by the transcendental
//! functions.

use std::cell::RefCell;
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use astro_float::{BigFloat, Consts, RoundingMode, Sign};
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::Result;
use crate::exactmath::rational::parse_rational;

const RM: RoundingMode = RoundingMode::ToEven;
const WORD_BITS: usize = 64;

thread_local! {
    static CONSTS: RefCell<Consts> =
        RefCell::new(Consts::new().expect("allocating the astro-float constants cache"));
}

fn with_consts<R>(f: impl FnOnce(&mut Consts) -> R) -> R {
    CONSTS.with(|cc| f(&mut cc.borrow_mut()))
}

/// A real value held at an explicit binary precision.
#[derive(Clone)]
pub struct Real {
    v: BigFloat,
    bits: usize,
}

impl Real {
    fn wrap(v: BigFloat, bits: usize) -> Self {
        debug_assert!(!v.is_nan(), "Real produced NaN: {:?}", v.err());
        Real { v, bits }
    }

    pub fn zero(bits: usize) -> Self {
        Self::wrap(BigFloat::from_u8(0, bits), bits)
    }

    pub fn one(bits: usize) -> Self {
        Self::wrap(BigFloat::from_u8(1, bits), bits)
    }

    pub fn from_i64(v: i64, bits: usize) -> Self {
        Self::wrap(BigFloat::from_i64(v, bits), bits)
    }

    pub fn from_u64(v: u64, bits: usize) -> Self {
        Self::wrap(BigFloat::from_u64(v, bits), bits)
    }

    /// Exact binary value of `f`, rounded to `bits` if needed.
    pub fn from_f64(f: f64, bits: usize) -> Self {
        Self::wrap(BigFloat::from_f64(f, bits.max(64)), bits.max(64)).with_bits(bits)
    }

    /// Correctly rounded conversion of an exact integer.
    pub fn from_bigint(n: &BigInt, bits: usize) -> Self {
        let words = n.magnitude().to_u64_digits();
        if words.is_empty() {
            return Self::zero(bits);
        }
        let sign = if n.is_negative() { Sign::Neg } else { Sign::Pos };
        let e = (words.len() * WORD_BITS) as i32;
        let mut v = BigFloat::from_words(&words, sign, e);
        v.set_precision(bits, RM).expect("valid precision");
        Self::wrap(v, bits)
    }

    pub fn from_biguint(n: &BigUint, bits: usize) -> Self {
        Self::from_bigint(&BigInt::from(n.clone()), bits)
    }

    /// Rational to real: numerator and denominator are rounded at
    /// `bits + 64` and divided at `bits`.
    pub fn from_rational(q: &BigRational, bits: usize) -> Self {
        if q.denom().is_one() {
            return Self::from_bigint(q.numer(), bits);
        }
        let wide = bits + WORD_BITS;
        let n = Self::from_bigint(q.numer(), wide);
        let d = Self::from_bigint(q.denom(), wide);
        Self::wrap(n.v.div(&d.v, bits, RM), bits)
    }

    pub fn from_ratio(num: i64, den: i64, bits: usize) -> Self {
        Self::from_rational(&BigRational::new(num.into(), den.into()), bits)
    }

    /// Parses a decimal (`-0.25`, `1e-30`) or fraction (`1/3`) literal.
    pub fn parse(s: &str, bits: usize) -> Result<Self> {
        Ok(Self::from_rational(&parse_rational(s)?, bits))
    }

    /// `2^e`, exact.
    pub fn pow2(e: i64, bits: usize) -> Self {
        let mut v = BigFloat::from_u8(1, bits);
        v.set_exponent((e + 1) as i32);
        Self::wrap(v, bits)
    }

    /// Library-provided pi, correctly rounded.
    pub fn pi(bits: usize) -> Self {
        Self::wrap(with_consts(|cc| cc.pi(bits, RM)), bits)
    }

    pub fn bits(&self) -> usize {
        self.bits
    }

    /// Rounds or extends to `bits`.
    pub fn with_bits(&self, bits: usize) -> Self {
        let mut v = self.v.clone();
        v.set_precision(bits, RM).expect("valid precision");
        Self::wrap(v, bits)
    }

    pub fn is_zero(&self) -> bool {
        self.v.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        !self.v.is_zero() && self.v.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        !self.v.is_zero() && self.v.is_positive()
    }

    pub fn is_finite(&self) -> bool {
        !self.v.is_nan() && !self.v.is_inf()
    }

    pub fn signum(&self) -> i32 {
        if self.is_zero() {
            0
        } else if self.v.is_negative() {
            -1
        } else {
            1
        }
    }

    pub fn abs(&self) -> Self {
        Self::wrap(self.v.abs(), self.bits)
    }

    pub fn recip(&self) -> Self {
        Self::wrap(self.v.reciprocal(self.bits, RM), self.bits)
    }

    pub fn sqrt(&self) -> Self {
        Self::wrap(self.v.sqrt(self.bits, RM), self.bits)
    }

    pub fn ln(&self) -> Self {
        let bits = self.bits;
        Self::wrap(with_consts(|cc| self.v.ln(bits, RM, cc)), bits)
    }

    pub fn exp(&self) -> Self {
        let bits = self.bits;
        Self::wrap(with_consts(|cc| self.v.exp(bits, RM, cc)), bits)
    }

    pub fn atan(&self) -> Self {
        let bits = self.bits;
        Self::wrap(with_consts(|cc| self.v.atan(bits, RM, cc)), bits)
    }

    /// Integer power. `x^0 == 1` for every `x`, zero included.
    pub fn powi(&self, n: i64) -> Self {
        if n == 0 {
            return Self::one(self.bits);
        }
        let p = Self::wrap(self.v.powi(n.unsigned_abs() as usize, self.bits, RM), self.bits);
        if n < 0 {
            p.recip()
        } else {
            p
        }
    }

    /// Real power. Integer exponents go through [`Real::powi`]; otherwise the
    /// base must be positive.
    pub fn powf(&self, exponent: &Real) -> Self {
        let bits = self.bits.max(exponent.bits);
        if let Some(n) = exponent.to_small_int() {
            return self.with_bits(bits).powi(n);
        }
        debug_assert!(self.is_positive(), "powf of non-positive base with non-integer exponent");
        Self::wrap(with_consts(|cc| self.v.pow(&exponent.v, bits, RM, cc)), bits)
    }

    /// The value as an `i64` when it is an integer of magnitude below 2^31.
    pub fn to_small_int(&self) -> Option<i64> {
        if self.is_zero() {
            return Some(0);
        }
        if !self.v.is_int() || self.log2_abs() > 31.0 {
            return None;
        }
        let n = self.round_to_bigint();
        i64::try_from(n).ok()
    }

    /// Approximate `log2 |self|`; `-inf` for zero.
    pub fn log2_abs(&self) -> f64 {
        match self.v.as_raw_parts() {
            Some((m, _, _, e, _)) if !self.is_zero() => {
                let top = *m.last().unwrap_or(&0) as f64;
                e as f64 - WORD_BITS as f64 + top.log2()
            }
            _ => f64::NEG_INFINITY,
        }
    }

    /// Nearest `f64` (for diagnostics and metadata only).
    pub fn to_f64(&self) -> f64 {
        match self.v.as_raw_parts() {
            Some((m, _, s, e, _)) if !self.is_zero() => {
                let top = *m.last().unwrap_or(&0) as f64;
                let mag = top * 2f64.powi(e - WORD_BITS as i32);
                if s == Sign::Neg {
                    -mag
                } else {
                    mag
                }
            }
            _ => 0.0,
        }
    }

    /// Nearest integer, ties away from zero.
    pub fn round_to_bigint(&self) -> BigInt {
        let Some((m, _, s, e, _)) = self.v.as_raw_parts() else {
            return BigInt::zero();
        };
        if self.is_zero() {
            return BigInt::zero();
        }
        let mant = BigUint::from_slice(
            &m.iter()
                .flat_map(|w| [*w as u32, (*w >> 32) as u32])
                .collect::<Vec<_>>(),
        );
        let shift = e as i64 - (m.len() * WORD_BITS) as i64;
        let mag = if shift >= 0 {
            mant << (shift as usize)
        } else {
            let down = (-shift) as usize;
            if down > m.len() * WORD_BITS + 1 {
                BigUint::zero()
            } else {
                (mant + (BigUint::one() << (down - 1))) >> down
            }
        };
        let n = BigInt::from(mag);
        if s == Sign::Neg {
            -n
        } else {
            n
        }
    }

    /// Splits `|self|` into `sig` significant decimal digits and a decimal
    /// exponent `e` such that `|self| ~ d.ddd x 10^e`.
    fn decimal_parts(&self, sig: usize) -> (String, i64) {
        let sig = sig.max(1);
        if self.is_zero() {
            return ("0".repeat(sig), 0);
        }
        let wide = self.bits + 2 * WORD_BITS + (sig as f64 * 3.33) as usize;
        let mag = self.abs().with_bits(wide);
        let mut e10 = (self.log2_abs() * std::f64::consts::LOG10_2).floor() as i64;
        let upper = num_traits::pow(BigInt::from(10), sig);
        let lower = num_traits::pow(BigInt::from(10), sig - 1);
        for _ in 0..4 {
            let k = sig as i64 - 1 - e10;
            let scale = Real::from_bigint(&num_traits::pow(BigInt::from(10), k.unsigned_abs() as usize), wide);
            let scaled = if k >= 0 { &mag * &scale } else { &mag / &scale };
            let n = scaled.round_to_bigint();
            if n >= upper {
                e10 += 1;
            } else if n < lower {
                e10 -= 1;
            } else {
                return (n.to_string(), e10);
            }
        }
        unreachable!("decimal exponent estimate did not settle")
    }

    /// Scientific notation with `sig` significant digits, e.g. `1.2346e-7`.
    pub fn to_sci_string(&self, sig: usize) -> String {
        let (digits, e10) = self.decimal_parts(sig);
        let sign = if self.is_negative() { "-" } else { "" };
        let (head, tail) = digits.split_at(1);
        if tail.is_empty() {
            format!("{sign}{head}e{e10}")
        } else {
            format!("{sign}{head}.{tail}e{e10}")
        }
    }

    /// Positional notation with `sig` significant digits when the decimal
    /// exponent lies in `[-6, 20]`; scientific notation otherwise.
    pub fn to_decimal_string(&self, sig: usize) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let (digits, e10) = self.decimal_parts(sig);
        if !(-6..=20).contains(&e10) {
            return self.to_sci_string(sig);
        }
        let sign = if self.is_negative() { "-" } else { "" };
        let body = if e10 >= 0 {
            let int_len = e10 as usize + 1;
            if digits.len() <= int_len {
                format!("{digits}{}", "0".repeat(int_len - digits.len()))
            } else {
                format!("{}.{}", &digits[..int_len], &digits[int_len..])
            }
        } else {
            format!("0.{}{digits}", "0".repeat((-e10 - 1) as usize))
        };
        format!("{sign}{body}")
    }

    pub fn max(self, other: Real) -> Real {
        if other > self {
            other
        } else {
            self
        }
    }
}

impl fmt::Debug for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Real({}, {} bits)", self.to_sci_string(20), self.bits)
    }
}

impl fmt::Display for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = f
            .precision()
            .unwrap_or(((self.bits as f64) * std::f64::consts::LOG10_2) as usize);
        f.write_str(&self.to_decimal_string(digits.max(1)))
    }
}

impl PartialEq for Real {
    fn eq(&self, other: &Self) -> bool {
        self.v.cmp(&other.v) == Some(0)
    }
}

impl PartialOrd for Real {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.v.cmp(&other.v).map(|c| c.cmp(&0))
    }
}

macro_rules! binop {
    ($tr:ident, $method:ident, $inner:ident) => {
        impl $tr<&Real> for &Real {
            type Output = Real;
            fn $method(self, rhs: &Real) -> Real {
                let bits = self.bits.max(rhs.bits);
                Real::wrap(self.v.$inner(&rhs.v, bits, RM), bits)
            }
        }
        impl $tr<Real> for Real {
            type Output = Real;
            fn $method(self, rhs: Real) -> Real {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&Real> for Real {
            type Output = Real;
            fn $method(self, rhs: &Real) -> Real {
                (&self).$method(rhs)
            }
        }
        impl $tr<Real> for &Real {
            type Output = Real;
            fn $method(self, rhs: Real) -> Real {
                self.$method(&rhs)
            }
        }
    };
}

binop!(Add, add, add);
binop!(Sub, sub, sub);
binop!(Mul, mul, mul);
binop!(Div, div, div);

impl AddAssign<&Real> for Real {
    fn add_assign(&mut self, rhs: &Real) {
        *self = &*self + rhs;
    }
}

impl AddAssign<Real> for Real {
    fn add_assign(&mut self, rhs: Real) {
        *self = &*self + &rhs;
    }
}

impl SubAssign<&Real> for Real {
    fn sub_assign(&mut self, rhs: &Real) {
        *self = &*self - rhs;
    }
}

impl SubAssign<Real> for Real {
    fn sub_assign(&mut self, rhs: Real) {
        *self = &*self - &rhs;
    }
}

impl MulAssign<Real> for Real {
    fn mul_assign(&mut self, rhs: Real) {
        *self = &*self * &rhs;
    }
}

impl MulAssign<&Real> for Real {
    fn mul_assign(&mut self, rhs: &Real) {
        *self = &*self * rhs;
    }
}

impl Neg for Real {
    type Output = Real;
    fn neg(self) -> Real {
        Real::wrap(self.v.neg(), self.bits)
    }
}

impl Neg for &Real {
    type Output = Real;
    fn neg(self) -> Real {
        Real::wrap(self.v.clone().neg(), self.bits)
    }
}

/// Smallest precision whose unit roundoff is below `err`.
pub fn bits_for_error(err: &Real) -> usize {
    if err.is_zero() || !err.is_finite() {
        return 64;
    }
    (-err.log2_abs()).ceil().max(1.0) as usize
}
