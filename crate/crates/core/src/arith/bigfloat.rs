//! Binary floating point with arbitrary precision and principal complex roots.
//!
//! A value is `mant · 2^exp`. Every operation takes the working precision
//! in bits and rounds its result to nearest at that precision.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, Sign};
use num_traits::{Signed, ToPrimitive, Zero};

use super::gauss::{GaussRational, Rational};

/// Bits needed for `digits` decimal digits plus guard bits.
pub fn bits_for_digits(digits: u32) -> u64 {
    (f64::from(digits) * std::f64::consts::LOG2_10).ceil() as u64 + 32
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BigFloat {
    mant: BigInt,
    exp: i64,
}

fn nbits(m: &BigInt) -> u64 {
    m.bits()
}

impl BigFloat {
    pub fn zero() -> Self {
        BigFloat { mant: BigInt::zero(), exp: 0 }
    }

    pub fn from_int(n: i64) -> Self {
        BigFloat { mant: BigInt::from(n), exp: 0 }.round(u64::MAX)
    }

    pub fn from_bigint(n: BigInt) -> Self {
        BigFloat { mant: n, exp: 0 }.round(u64::MAX)
    }

    pub fn from_rational(r: &Rational, prec: u64) -> Self {
        BigFloat::from_bigint(r.numer().clone()).div(&BigFloat::from_bigint(r.denom().clone()), prec)
    }

    pub fn from_f64(x: f64) -> Self {
        if x == 0.0 || !x.is_finite() {
            return Self::zero();
        }
        let bits = x.to_bits();
        let sign = if bits >> 63 == 0 { 1i64 } else { -1 };
        let exponent = ((bits >> 52) & 0x7ff) as i64;
        let mantissa = if exponent == 0 { (bits & 0xfffffffffffff) << 1 } else { (bits & 0xfffffffffffff) | 0x10000000000000 };
        BigFloat { mant: BigInt::from(sign) * BigInt::from(mantissa), exp: exponent - 1075 }.round(u64::MAX)
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.mant.is_negative()
    }

    pub fn neg(&self) -> Self {
        BigFloat { mant: -self.mant.clone(), exp: self.exp }
    }

    pub fn abs(&self) -> Self {
        BigFloat { mant: self.mant.abs(), exp: self.exp }
    }

    /// Exponent of the leading bit: `2^(top-1) ≤ |x| < 2^top`.
    fn top(&self) -> i64 {
        self.exp + nbits(&self.mant) as i64
    }

    pub fn mul_pow2(&self, k: i64) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        BigFloat { mant: self.mant.clone(), exp: self.exp + k }
    }

    pub fn round(mut self, prec: u64) -> Self {
        let b = nbits(&self.mant);
        if b > prec {
            let sh = b - prec;
            let neg = self.mant.is_negative();
            let mag = self.mant.abs();
            let half = BigInt::from(1) << (sh - 1);
            let mut m = (mag + half) >> sh;
            if neg {
                m = -m;
            }
            self.mant = m;
            self.exp += sh as i64;
        }
        if self.mant.is_zero() {
            self.exp = 0;
        } else if let Some(tz) = self.mant.trailing_zeros() {
            if tz > 0 {
                self.mant >>= tz;
                self.exp += tz as i64;
            }
        }
        self
    }

    pub fn add(&self, o: &Self, prec: u64) -> Self {
        if self.is_zero() {
            return o.clone().round(prec);
        }
        if o.is_zero() {
            return self.clone().round(prec);
        }
        let gap = self.top() - o.top();
        if gap > prec as i64 + 4 {
            return self.clone().round(prec);
        }
        if -gap > prec as i64 + 4 {
            return o.clone().round(prec);
        }
        let e = self.exp.min(o.exp);
        let a = &self.mant << (self.exp - e) as u64;
        let b = &o.mant << (o.exp - e) as u64;
        BigFloat { mant: a + b, exp: e }.round(prec)
    }

    pub fn sub(&self, o: &Self, prec: u64) -> Self {
        self.add(&o.neg(), prec)
    }

    pub fn mul(&self, o: &Self, prec: u64) -> Self {
        BigFloat { mant: &self.mant * &o.mant, exp: self.exp + o.exp }.round(prec)
    }

    /// Panics on division by zero; callers check beforehand.
    pub fn div(&self, o: &Self, prec: u64) -> Self {
        assert!(!o.is_zero(), "BigFloat division by zero");
        if self.is_zero() {
            return Self::zero();
        }
        let shift = (prec as i64 + nbits(&o.mant) as i64 - nbits(&self.mant) as i64 + 2).max(0) as u64;
        let q = (&self.mant << shift) / &o.mant;
        BigFloat { mant: q, exp: self.exp - o.exp - shift as i64 }.round(prec)
    }

    /// Square root of a nonnegative value.
    pub fn sqrt(&self, prec: u64) -> Self {
        assert!(!self.is_negative(), "sqrt of negative BigFloat");
        if self.is_zero() {
            return Self::zero();
        }
        let want = 2 * prec + 4;
        let b = nbits(&self.mant);
        let mut s = want.saturating_sub(b) as i64;
        if (self.exp - s).rem_euclid(2) != 0 {
            s += 1;
        }
        let m = &self.mant << s as u64;
        BigFloat { mant: m.sqrt(), exp: (self.exp - s) / 2 }.round(prec)
    }

    pub fn cmp_abs(&self, o: &Self) -> Ordering {
        match (self.is_zero(), o.is_zero()) {
            (true, true) => return Ordering::Equal,
            (true, false) => return Ordering::Less,
            (false, true) => return Ordering::Greater,
            _ => {}
        }
        let (ta, tb) = (self.top(), o.top());
        if ta != tb {
            return ta.cmp(&tb);
        }
        let e = self.exp.min(o.exp);
        let a = self.mant.abs() << (self.exp - e) as u64;
        let b = o.mant.abs() << (o.exp - e) as u64;
        a.cmp(&b)
    }

    /// Approximation usable for seeds; saturates outside the f64 range.
    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let b = nbits(&self.mant);
        let sh = b.saturating_sub(60);
        let top = (&self.mant >> sh).to_f64().unwrap_or(0.0);
        let e = self.exp + sh as i64;
        top * 2f64.powi(e.clamp(-2000, 2000) as i32)
    }

    /// `log10 |x|`, finite for any nonzero value regardless of magnitude.
    pub fn log10_abs(&self) -> f64 {
        if self.is_zero() {
            return f64::NEG_INFINITY;
        }
        let b = nbits(&self.mant);
        let sh = b.saturating_sub(60);
        let top = (self.mant.abs() >> sh).to_f64().unwrap_or(1.0);
        top.log10() + (self.exp + sh as i64) as f64 * std::f64::consts::LOG10_2
    }

    /// `true` when `|x| < 10^(-digits)`.
    pub fn below_decimal(&self, digits: f64) -> bool {
        self.is_zero() || self.log10_abs() < -digits
    }

    pub fn sign(&self) -> Sign {
        self.mant.sign()
    }
}

impl fmt::Display for BigFloat {
    /// Scientific notation with 12 significant digits.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let l = self.log10_abs();
        let mut e = l.floor();
        let mut m = 10f64.powf(l - e);
        if m >= 9.9999999999995 {
            m /= 10.0;
            e += 1.0;
        }
        let sign = if self.is_negative() { "-" } else { "" };
        write!(f, "{sign}{m:.11}e{}", e as i64)
    }
}

/// Complex number with `BigFloat` parts.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Complex {
    pub re: BigFloat,
    pub im: BigFloat,
}

impl Complex {
    pub fn zero() -> Self {
        Complex { re: BigFloat::zero(), im: BigFloat::zero() }
    }

    pub fn real(re: BigFloat) -> Self {
        Complex { re, im: BigFloat::zero() }
    }

    pub fn from_gauss(g: &GaussRational, prec: u64) -> Self {
        Complex { re: BigFloat::from_rational(&g.re, prec), im: BigFloat::from_rational(&g.im, prec) }
    }

    pub fn from_f64(re: f64, im: f64) -> Self {
        Complex { re: BigFloat::from_f64(re), im: BigFloat::from_f64(im) }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn neg(&self) -> Self {
        Complex { re: self.re.neg(), im: self.im.neg() }
    }

    pub fn add(&self, o: &Self, p: u64) -> Self {
        Complex { re: self.re.add(&o.re, p), im: self.im.add(&o.im, p) }
    }

    pub fn sub(&self, o: &Self, p: u64) -> Self {
        Complex { re: self.re.sub(&o.re, p), im: self.im.sub(&o.im, p) }
    }

    pub fn mul(&self, o: &Self, p: u64) -> Self {
        let q = p + 8;
        let re = self.re.mul(&o.re, q).sub(&self.im.mul(&o.im, q), p);
        let im = self.re.mul(&o.im, q).add(&self.im.mul(&o.re, q), p);
        Complex { re, im }
    }

    pub fn scale_real(&self, k: &BigFloat, p: u64) -> Self {
        Complex { re: self.re.mul(k, p), im: self.im.mul(k, p) }
    }

    pub fn norm_sqr(&self, p: u64) -> BigFloat {
        self.re.mul(&self.re, p + 8).add(&self.im.mul(&self.im, p + 8), p)
    }

    pub fn abs(&self, p: u64) -> BigFloat {
        self.norm_sqr(p + 8).sqrt(p)
    }

    pub fn div(&self, o: &Self, p: u64) -> Self {
        let q = p + 16;
        let d = o.norm_sqr(q);
        let num = self.mul(&Complex { re: o.re.clone(), im: o.im.neg() }, q);
        Complex { re: num.re.div(&d, p), im: num.im.div(&d, p) }
    }

    pub fn powi(&self, k: i64, p: u64) -> Self {
        let q = p + 16 + 2 * (64 - k.unsigned_abs().leading_zeros() as u64);
        let mut acc = Complex::real(BigFloat::from_int(1));
        let mut b = self.clone();
        let mut e = k.unsigned_abs();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&b, q);
            }
            e >>= 1;
            if e > 0 {
                b = b.mul(&b, q);
            }
        }
        if k < 0 {
            Complex::real(BigFloat::from_int(1)).div(&acc, p)
        } else {
            Complex { re: acc.re.round(p), im: acc.im.round(p) }
        }
    }

    /// `max(log2|re|, log2|im|)` rounded down, for zero-free values.
    fn top(&self) -> i64 {
        let a = if self.re.is_zero() { i64::MIN } else { self.re.top() };
        let b = if self.im.is_zero() { i64::MIN } else { self.im.top() };
        a.max(b)
    }

    /// Principal square root, arg in (-π/2, π/2].
    pub fn sqrt(&self, p: u64) -> Self {
        if self.is_zero() {
            return Complex::zero();
        }
        let q = p + 16;
        let r = self.abs(q);
        if !self.re.is_negative() {
            let u = r.add(&self.re, q).mul_pow2(-1).sqrt(q);
            let v = self.im.div(&u.mul_pow2(1), q);
            Complex { re: u.round(p), im: v.round(p) }
        } else {
            let mut v = r.sub(&self.re, q).mul_pow2(-1).sqrt(q);
            if self.im.is_negative() {
                v = v.neg();
            }
            let u = self.im.div(&v.mul_pow2(1), q);
            Complex { re: u.round(p), im: v.round(p) }
        }
    }

    /// Principal `m`-th root (arg in (-π/m, π/m]) by Newton iteration from
    /// an `f64` seed on the rescaled value.
    pub fn nth_root(&self, m: u32, p: u64) -> Self {
        if self.is_zero() {
            return Complex::zero();
        }
        if m == 1 {
            return self.clone();
        }
        if m == 2 {
            return self.sqrt(p);
        }
        let mi = i64::from(m);
        let s = self.top().div_euclid(mi);
        let w = Complex { re: self.re.mul_pow2(-mi * s), im: self.im.mul_pow2(-mi * s) };
        let (wr, wi) = (w.re.to_f64(), w.im.to_f64());
        let r = wr.hypot(wi).powf(1.0 / f64::from(m));
        let th = wi.atan2(wr) / f64::from(m);
        let seed = Complex::from_f64(r * th.cos(), r * th.sin());
        let mut x = Complex { re: seed.re.mul_pow2(s), im: seed.im.mul_pow2(s) };

        let q = p + 32;
        let mf = BigFloat::from_int(mi);
        let m1 = BigFloat::from_int(mi - 1);
        for _ in 0..64 {
            let xm1 = x.powi(mi - 1, q);
            let next = x.scale_real(&m1, q).add(&self.div(&xm1, q), q);
            let next = Complex { re: next.re.div(&mf, q), im: next.im.div(&mf, q) };
            let step = next.sub(&x, q);
            x = next;
            if step.is_zero() || step.top() < x.top() - q as i64 + 4 {
                break;
            }
        }
        Complex { re: x.re.round(p), im: x.im.round(p) }
    }
}

impl fmt::Display for Complex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", self.re)
        } else if self.re.is_zero() {
            write!(f, "{}*i", self.im)
        } else if self.im.is_negative() {
            write!(f, "{} - {}*i", self.re, self.im.abs())
        } else {
            write!(f, "{} + {}*i", self.re, self.im)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::gauss::rat;

    const P: u64 = 400;

    fn close(a: &Complex, b: &Complex, digits: f64) -> bool {
        a.sub(b, P).abs(P).below_decimal(digits)
    }

    #[test]
    fn rational_round_trip() {
        let x = BigFloat::from_rational(&rat(1, 3), P);
        let y = x.mul(&BigFloat::from_int(3), P);
        assert!(y.sub(&BigFloat::from_int(1), P).below_decimal(110.0));
    }

    #[test]
    fn sqrt_of_two_squared() {
        let r = BigFloat::from_int(2).sqrt(P);
        assert!(r.mul(&r, P).sub(&BigFloat::from_int(2), P).below_decimal(110.0));
    }

    #[test]
    fn principal_square_root_of_negative_real_is_positive_imaginary() {
        let z = Complex::real(BigFloat::from_int(-4)).sqrt(P);
        assert!(close(&z, &Complex::from_f64(0.0, 2.0), 110.0));
    }

    #[test]
    fn principal_cube_root_of_negative_real() {
        let z = Complex::real(BigFloat::from_int(-8)).nth_root(3, P);
        let s3 = BigFloat::from_int(3).sqrt(P);
        let expect = Complex { re: BigFloat::from_int(1), im: s3 };
        assert!(close(&z, &expect, 110.0));
    }

    #[test]
    fn cube_root_of_tiny_number() {
        let t = BigFloat::from_rational(&Rational::new(1.into(), BigInt::from(10).pow(90)), P);
        let z = Complex::real(t).nth_root(3, P);
        let expect = Complex::real(BigFloat::from_rational(&Rational::new(1.into(), BigInt::from(10).pow(30)), P));
        assert!(z.sub(&expect, P).abs(P).log10_abs() < -140.0);
    }

    #[test]
    fn display_scientific() {
        let x = BigFloat::from_rational(&rat(-1, 8), P);
        assert_eq!(x.to_string(), "-1.25000000000e-1");
    }
}
