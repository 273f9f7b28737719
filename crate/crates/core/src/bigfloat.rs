use std::fmt;

use num_bigint::{BigInt, Sign as BigSign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::rational::Rational;

/// Largest number of fractional bits for which `2^-bits` is a normal `f64`.
pub const MAX_BITS: u32 = 1000;

/// Relative slack applied to every bound so that `f64` rounding never makes
/// it optimistic.
const SLACK: f64 = 1.0 + 1e-12;

pub fn ulp(bits: u32) -> f64 {
    2f64.powi(-(bits as i32))
}

/// Fixed-point number `mant · 2^-bits` with an absolute error bound `err`:
/// the exact quantity lies within `err` of the represented value.
#[derive(Clone, Debug, PartialEq)]
pub struct BigFloat {
    mant: BigInt,
    bits: u32,
    err: f64,
}

fn shr_round(x: &BigInt, s: u32) -> BigInt {
    if s == 0 {
        return x.clone();
    }
    let half = BigInt::one() << (s - 1);
    (x + half) >> s
}

fn div_round(x: &BigInt, d: &BigInt) -> BigInt {
    let (q, r) = x.div_mod_floor(d);
    if (r << 1u32) >= *d {
        q + 1
    } else {
        q
    }
}

impl BigFloat {
    pub fn zero(bits: u32) -> Self {
        BigFloat { mant: BigInt::zero(), bits, err: 0.0 }
    }

    pub fn one(bits: u32) -> Self {
        BigFloat { mant: BigInt::one() << bits, bits, err: 0.0 }
    }

    pub fn from_raw(mant: BigInt, bits: u32, err: f64) -> Self {
        BigFloat { mant, bits, err }
    }

    pub fn from_rational(q: &Rational, bits: u32) -> Self {
        let num = q.numer() << bits;
        let exact = (&num % q.denom()).is_zero();
        let mant = div_round(&num, q.denom());
        BigFloat { mant, bits, err: if exact { 0.0 } else { ulp(bits) } }
    }

    pub fn from_int(n: i64, bits: u32) -> Self {
        BigFloat { mant: BigInt::from(n) << bits, bits, err: 0.0 }
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.mant
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn err(&self) -> f64 {
        self.err
    }

    pub fn with_extra_error(mut self, e: f64) -> Self {
        self.err = (self.err + e) * SLACK;
        self
    }

    pub fn to_f64(&self) -> f64 {
        let shift = (self.mant.bits() as i64 - 64).max(0);
        let m = &self.mant >> shift as usize;
        m.to_f64().unwrap_or(f64::NAN) * 2f64.powi((shift - self.bits as i64) as i32)
    }

    pub fn abs_f64(&self) -> f64 {
        self.to_f64().abs()
    }

    /// Upper bound on the magnitude of the exact quantity.
    pub fn magnitude_bound(&self) -> f64 {
        (self.abs_f64() + self.err) * SLACK
    }

    pub fn is_negative(&self) -> bool {
        self.mant.sign() == BigSign::Minus
    }

    pub fn abs(&self) -> Self {
        BigFloat { mant: self.mant.abs(), bits: self.bits, err: self.err }
    }

    pub fn add(&self, o: &BigFloat) -> BigFloat {
        debug_assert_eq!(self.bits, o.bits);
        BigFloat { mant: &self.mant + &o.mant, bits: self.bits, err: (self.err + o.err) * SLACK }
    }

    pub fn sub(&self, o: &BigFloat) -> BigFloat {
        debug_assert_eq!(self.bits, o.bits);
        BigFloat { mant: &self.mant - &o.mant, bits: self.bits, err: (self.err + o.err) * SLACK }
    }

    pub fn neg(&self) -> BigFloat {
        BigFloat { mant: -&self.mant, bits: self.bits, err: self.err }
    }

    pub fn mul(&self, o: &BigFloat) -> BigFloat {
        debug_assert_eq!(self.bits, o.bits);
        let mant = shr_round(&(&self.mant * &o.mant), self.bits);
        let (a, b) = (self.abs_f64(), o.abs_f64());
        let err = a * o.err + b * self.err + self.err * o.err + ulp(self.bits);
        BigFloat { mant, bits: self.bits, err: err * SLACK }
    }

    pub fn mul_rational(&self, q: &Rational) -> BigFloat {
        let num = &self.mant * q.numer();
        let exact = (&num % q.denom()).is_zero();
        let mant = div_round(&num, q.denom());
        let qa = crate::rational::rational_to_f64(&q.abs());
        let round = if exact { 0.0 } else { ulp(self.bits) };
        BigFloat { mant, bits: self.bits, err: (self.err * qa + round) * SLACK }
    }

    pub fn div_int(&self, d: u64) -> BigFloat {
        self.mul_rational(&Rational::new(BigInt::one(), BigInt::from(d)))
    }

    pub fn powi(&self, n: u32) -> BigFloat {
        (0..n).fold(BigFloat::one(self.bits), |acc, _| acc.mul(self))
    }

    pub fn sum<'a, I: IntoIterator<Item = &'a BigFloat>>(items: I, bits: u32) -> BigFloat {
        items.into_iter().fold(BigFloat::zero(bits), |acc, x| acc.add(x))
    }

    /// Rounded decimal text with `digits` fractional digits.
    pub fn to_decimal(&self, digits: usize) -> String {
        let scale = num_traits::pow(BigInt::from(10), digits);
        let scaled = shr_round(&(&self.mant * &scale), self.bits);
        let neg = scaled.is_negative();
        let s = scaled.abs().to_string();
        let s = if s.len() <= digits { format!("{}{}", "0".repeat(digits + 1 - s.len()), s) } else { s };
        let (ip, fp) = s.split_at(s.len() - digits);
        let sign = if neg { "-" } else { "" };
        if digits == 0 {
            format!("{sign}{ip}")
        } else {
            format!("{sign}{ip}.{fp}")
        }
    }

    /// Decimal digits justified by the error bound, at most `max_digits`.
    pub fn to_decimal_auto(&self, max_digits: usize) -> String {
        let justified = if self.err > 0.0 { (-self.err.log10()).floor().max(1.0) as usize } else { max_digits };
        self.to_decimal(justified.min(max_digits))
    }
}

impl fmt::Display for BigFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = (self.bits as f64 * std::f64::consts::LOG10_2) as usize;
        write!(f, "{}", self.to_decimal_auto(digits))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn rational_round_trip() {
        let x = BigFloat::from_rational(&rat(1, 3), 100);
        assert!((x.to_f64() - 1.0 / 3.0).abs() < 1e-16);
        assert!(x.err() <= ulp(100));
        let y = BigFloat::from_rational(&rat(3, 4), 100);
        assert_eq!(y.err(), 0.0);
    }

    #[test]
    fn arithmetic_bounds_hold() {
        let bits = 80;
        let a = BigFloat::from_rational(&rat(1, 3), bits);
        let b = BigFloat::from_rational(&rat(2, 7), bits);
        let p = a.mul(&b);
        let exact = BigFloat::from_rational(&rat(2, 21), bits);
        let diff = p.sub(&exact).abs_f64();
        assert!(diff <= p.err() + exact.err());
        let q = a.mul_rational(&rat(-5, 11));
        let exact = BigFloat::from_rational(&rat(-5, 33), bits);
        assert!(q.sub(&exact).abs_f64() <= q.err() + exact.err());
    }

    #[test]
    fn decimal_text() {
        let x = BigFloat::from_rational(&rat(-1, 8), 64);
        assert_eq!(x.to_decimal(3), "-0.125");
        assert_eq!(BigFloat::from_int(2, 64).to_decimal(2), "2.00");
        assert_eq!(BigFloat::from_rational(&rat(1, 1000), 64).to_decimal(4), "0.0010");
    }
}
