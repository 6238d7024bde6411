//! Scalar coefficients: exact rationals plus a decimal-rounded big float.
//!
//! `Scalar` is the coefficient type used everywhere in this workspace. The
//! exact variant wraps an arbitrary-precision rational and never loses
//! information; the float variant keeps a rational payload that is rounded to
//! a fixed number of significant decimal digits after every operation, so the
//! working precision travels with the value. Mixed arithmetic promotes exact
//! to float (never the other way around).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

/// Default number of significant decimal digits for float work.
pub const DEFAULT_DIGITS: u32 = 50;

fn pow10(k: u32) -> BigInt {
    BigInt::from(10u32).pow(k)
}

/// Largest `e` with `10^e <= |v|`, for nonzero `v`.
fn ilog10_abs(v: &BigRational) -> i64 {
    let num_digits = v.numer().magnitude().to_string().len() as i64;
    let den_digits = v.denom().magnitude().to_string().len() as i64;
    // |v| is within a factor 10 of 10^(num_digits - den_digits); refine by comparison.
    let mut e = num_digits - den_digits;
    let abs = v.abs();
    let ten = BigRational::from(BigInt::from(10));
    let pow = |k: i64| -> BigRational {
        if k >= 0 {
            BigRational::from(pow10(k as u32))
        } else {
            BigRational::new(BigInt::one(), pow10((-k) as u32))
        }
    };
    while pow(e) > abs {
        e -= 1;
    }
    while pow(e + 1) <= abs {
        e += 1;
    }
    let _ = ten;
    e
}

/// Round a rational to `digits` significant decimal digits (ties away from zero).
fn round_sig(v: &BigRational, digits: u32) -> BigRational {
    if v.is_zero() {
        return BigRational::zero();
    }
    let e = ilog10_abs(v);
    let k = digits as i64 - 1 - e;
    let scaled = if k >= 0 {
        v * BigRational::from(pow10(k as u32))
    } else {
        v / BigRational::from(pow10((-k) as u32))
    };
    // round to nearest integer, ties away from zero
    let two = BigInt::from(2);
    let (num, den) = (scaled.numer().clone(), scaled.denom().clone());
    let doubled = &num * &two;
    let q = &doubled / &den; // truncated toward zero of 2*num/den
    let rounded = if q.is_negative() {
        (q - BigInt::one()) / &two
    } else {
        (q + BigInt::one()) / &two
    };
    let back = BigRational::from(rounded);
    if k >= 0 {
        back / BigRational::from(pow10(k as u32))
    } else {
        back * BigRational::from(pow10((-k) as u32))
    }
}

/// Arbitrary-precision float: a rational rounded to a fixed count of
/// significant decimal digits after every arithmetic operation.
#[derive(Clone, PartialEq, Eq)]
pub struct BigFloat {
    value: BigRational,
    digits: u32,
}

impl BigFloat {
    pub fn from_rational(v: &BigRational, digits: u32) -> Self {
        BigFloat {
            value: round_sig(v, digits),
            digits,
        }
    }

    pub fn zero(digits: u32) -> Self {
        BigFloat {
            value: BigRational::zero(),
            digits,
        }
    }

    pub fn from_int(n: i64, digits: u32) -> Self {
        Self::from_rational(&BigRational::from(BigInt::from(n)), digits)
    }

    pub fn digits(&self) -> u32 {
        self.digits
    }

    pub fn rational(&self) -> &BigRational {
        &self.value
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    pub fn abs(&self) -> Self {
        BigFloat {
            value: self.value.abs(),
            digits: self.digits,
        }
    }

    fn bin(a: &Self, b: &Self, f: impl Fn(&BigRational, &BigRational) -> BigRational) -> Self {
        let digits = a.digits.min(b.digits);
        BigFloat {
            value: round_sig(&f(&a.value, &b.value), digits),
            digits,
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        Self::bin(self, rhs, |a, b| a + b)
    }
    pub fn sub(&self, rhs: &Self) -> Self {
        Self::bin(self, rhs, |a, b| a - b)
    }
    pub fn mul(&self, rhs: &Self) -> Self {
        Self::bin(self, rhs, |a, b| a * b)
    }
    pub fn div(&self, rhs: &Self) -> Result<Self, crate::Error> {
        if rhs.is_zero() {
            return Err(crate::Error::DivisionByZero);
        }
        Ok(Self::bin(self, rhs, |a, b| a / b))
    }

    pub fn neg(&self) -> Self {
        BigFloat {
            value: -self.value.clone(),
            digits: self.digits,
        }
    }

    /// `10^exp` at this float's precision.
    pub fn pow10(exp: i64, digits: u32) -> Self {
        let v = if exp >= 0 {
            BigRational::from(pow10(exp as u32))
        } else {
            BigRational::new(BigInt::one(), pow10((-exp) as u32))
        };
        BigFloat::from_rational(&v, digits)
    }

    pub fn cmp_abs(&self, rhs: &Self) -> Ordering {
        self.value.abs().cmp(&rhs.value.abs())
    }

    /// Square root at this float's precision, by rational Newton steps
    /// seeded from the machine value.
    pub fn sqrt(&self) -> Result<Self, crate::Error> {
        if self.value.is_negative() {
            return Err(crate::Error::ShapeMismatch(
                "square root of a negative float".into(),
            ));
        }
        if self.value.is_zero() {
            return Ok(self.clone());
        }
        let mut x = BigRational::from_float(self.to_f64().sqrt())
            .filter(|v| !v.is_zero())
            .unwrap_or_else(|| self.value.clone());
        let half = BigRational::new(BigInt::one(), BigInt::from(2));
        let guard = self.digits + 10;
        let mut settled = 15f64;
        while settled < guard as f64 {
            x = round_sig(&(&half * &(&x + &(&self.value / &x))), guard);
            settled *= 2.0;
        }
        Ok(BigFloat::from_rational(&x, self.digits))
    }

    pub fn to_f64(&self) -> f64 {
        self.value.to_f64().unwrap_or(f64::NAN)
    }

    /// Decimal string with the full working precision, e.g. `-1.2345e-3`.
    pub fn to_decimal_string(&self) -> String {
        if self.value.is_zero() {
            return "0".into();
        }
        let e = ilog10_abs(&self.value);
        let k = self.digits as i64 - 1 - e;
        let scaled = if k >= 0 {
            &self.value * BigRational::from(pow10(k as u32))
        } else {
            &self.value / BigRational::from(pow10((-k) as u32))
        };
        let mantissa = scaled.round().to_integer();
        let neg = mantissa.is_negative();
        let digits = mantissa.magnitude().to_string();
        let mut out = String::new();
        if neg {
            out.push('-');
        }
        out.push(digits.as_bytes()[0] as char);
        if digits.len() > 1 {
            out.push('.');
            out.push_str(digits[1..].trim_end_matches('0'));
            if out.ends_with('.') {
                out.pop();
            }
        }
        if e != 0 {
            out.push('e');
            out.push_str(&e.to_string());
        }
        out
    }
}

impl fmt::Debug for BigFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}~{}d", self.to_decimal_string(), self.digits)
    }
}

impl fmt::Display for BigFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_decimal_string())
    }
}

/// Coefficient scalar: exact rational or fixed-precision decimal float.
#[derive(Clone, PartialEq, Eq)]
pub enum Scalar {
    Exact(BigRational),
    Float(BigFloat),
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::Exact(BigRational::zero())
    }

    pub fn one() -> Self {
        Scalar::Exact(BigRational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::Exact(BigRational::from(BigInt::from(n)))
    }

    pub fn ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Scalar::Exact(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn from_rational(r: BigRational) -> Self {
        Scalar::Exact(r)
    }

    pub fn float_from_int(n: i64, digits: u32) -> Self {
        Scalar::Float(BigFloat::from_int(n, digits))
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Exact(r) => r.is_zero(),
            Scalar::Float(f) => f.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Exact(r) => r.is_one(),
            Scalar::Float(f) => f.rational().is_one(),
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Scalar::Exact(_))
    }

    /// Exact rational payload, if this scalar is exact.
    pub fn as_exact(&self) -> Option<&BigRational> {
        match self {
            Scalar::Exact(r) => Some(r),
            Scalar::Float(_) => None,
        }
    }

    /// Underlying rational regardless of kind (float payloads are rationals too).
    pub fn rational_value(&self) -> &BigRational {
        match self {
            Scalar::Exact(r) => r,
            Scalar::Float(f) => f.rational(),
        }
    }

    pub fn to_float(&self, digits: u32) -> BigFloat {
        match self {
            Scalar::Exact(r) => BigFloat::from_rational(r, digits),
            Scalar::Float(f) => f.clone(),
        }
    }

    fn promote(a: &Scalar, b: &Scalar) -> Option<u32> {
        match (a, b) {
            (Scalar::Exact(_), Scalar::Exact(_)) => None,
            (Scalar::Float(f), Scalar::Exact(_)) => Some(f.digits()),
            (Scalar::Exact(_), Scalar::Float(f)) => Some(f.digits()),
            (Scalar::Float(f), Scalar::Float(g)) => Some(f.digits().min(g.digits())),
        }
    }

    pub fn checked_div(&self, rhs: &Scalar) -> Result<Scalar, crate::Error> {
        if rhs.is_zero() {
            return Err(crate::Error::DivisionByZero);
        }
        Ok(match Self::promote(self, rhs) {
            None => Scalar::Exact(self.rational_value() / rhs.rational_value()),
            Some(d) => Scalar::Float(self.to_float(d).div(&rhs.to_float(d))?),
        })
    }

    pub fn abs(&self) -> Scalar {
        match self {
            Scalar::Exact(r) => Scalar::Exact(r.abs()),
            Scalar::Float(f) => Scalar::Float(f.abs()),
        }
    }

    pub fn pow_u32(&self, mut e: u32) -> Scalar {
        let mut base = self.clone();
        let mut acc = Scalar::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    pub fn to_f64(&self) -> f64 {
        self.rational_value().to_f64().unwrap_or(f64::NAN)
    }

    /// Strict comparison of the underlying rational payloads.
    pub fn cmp_value(&self, rhs: &Scalar) -> Ordering {
        self.rational_value().cmp(rhs.rational_value())
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Exact(r) => write!(f, "{}", r),
            Scalar::Float(x) => write!(f, "{:?}", x),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Exact(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Float(x) => write!(f, "{}", x),
        }
    }
}

macro_rules! scalar_binop {
    ($trait:ident, $method:ident, $op:tt) => {
        impl $trait for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                match Scalar::promote(self, rhs) {
                    None => Scalar::Exact(self.rational_value() $op rhs.rational_value()),
                    Some(d) => {
                        let a = self.to_float(d);
                        let b = rhs.to_float(d);
                        Scalar::Float(BigFloat::from_rational(
                            &(a.rational() $op b.rational()),
                            d,
                        ))
                    }
                }
            }
        }
        impl $trait for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
    };
}

scalar_binop!(Add, add, +);
scalar_binop!(Sub, sub, -);
scalar_binop!(Mul, mul, *);

impl Div for &Scalar {
    type Output = Scalar;
    fn div(self, rhs: &Scalar) -> Scalar {
        self.checked_div(rhs).expect("scalar division by zero")
    }
}

impl Div for Scalar {
    type Output = Scalar;
    fn div(self, rhs: Scalar) -> Scalar {
        &self / &rhs
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Exact(r) => Scalar::Exact(-r.clone()),
            Scalar::Float(f) => Scalar::Float(f.neg()),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

/// Rising factorial (a)_k = a (a+1) ... (a+k-1), with (a)_0 = 1.
pub fn pochhammer(a: &Scalar, k: u32) -> Scalar {
    let mut acc = Scalar::one();
    let mut term = a.clone();
    for _ in 0..k {
        acc = &acc * &term;
        term = &term + &Scalar::one();
    }
    acc
}

pub fn factorial(k: u32) -> Scalar {
    pochhammer(&Scalar::one(), k)
}

pub fn binomial(n: u32, k: u32) -> Scalar {
    if k > n {
        return Scalar::zero();
    }
    let mut acc = BigRational::one();
    for i in 0..k {
        acc *= BigRational::new(BigInt::from(n - i), BigInt::from(i + 1));
    }
    Scalar::Exact(acc)
}

/// Complex value over `BigFloat`, for root finding. Division avoids square
/// roots; magnitudes are compared through the sup norm max(|re|, |im|).
#[derive(Clone, PartialEq, Debug)]
pub struct Cplx {
    pub re: BigFloat,
    pub im: BigFloat,
}

impl Cplx {
    pub fn new(re: BigFloat, im: BigFloat) -> Self {
        Cplx { re, im }
    }

    pub fn from_float(re: BigFloat) -> Self {
        let d = re.digits();
        Cplx {
            re,
            im: BigFloat::zero(d),
        }
    }

    pub fn zero(digits: u32) -> Self {
        Cplx {
            re: BigFloat::zero(digits),
            im: BigFloat::zero(digits),
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        Cplx::new(self.re.add(&rhs.re), self.im.add(&rhs.im))
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        Cplx::new(self.re.sub(&rhs.re), self.im.sub(&rhs.im))
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        Cplx::new(
            self.re.mul(&rhs.re).sub(&self.im.mul(&rhs.im)),
            self.re.mul(&rhs.im).add(&self.im.mul(&rhs.re)),
        )
    }

    pub fn div(&self, rhs: &Self) -> Result<Self, crate::Error> {
        let denom = rhs.re.mul(&rhs.re).add(&rhs.im.mul(&rhs.im));
        if denom.is_zero() {
            return Err(crate::Error::DivisionByZero);
        }
        let re = self.re.mul(&rhs.re).add(&self.im.mul(&rhs.im));
        let im = self.im.mul(&rhs.re).sub(&self.re.mul(&rhs.im));
        Ok(Cplx::new(re.div(&denom)?, im.div(&denom)?))
    }

    pub fn neg(&self) -> Self {
        Cplx::new(self.re.neg(), self.im.neg())
    }

    /// Sup norm: max(|re|, |im|). Within a factor sqrt(2) of the modulus.
    pub fn norm_sup(&self) -> BigFloat {
        let a = self.re.abs();
        let b = self.im.abs();
        if a.cmp_abs(&b) == Ordering::Less {
            b
        } else {
            a
        }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn pochhammer_base_cases() {
        assert_eq!(pochhammer(&Scalar::ratio(1, 3), 0), Scalar::one());
        assert_eq!(pochhammer(&Scalar::ratio(1, 3), 2), Scalar::ratio(4, 9));
        for k in 0..8u32 {
            assert_eq!(pochhammer(&Scalar::one(), k), factorial(k));
        }
        assert_eq!(factorial(5), Scalar::from_int(120));
    }

    #[test]
    fn rounding_keeps_sig_digits() {
        let v = q(1, 3);
        let f = BigFloat::from_rational(&v, 5);
        assert_eq!(f.rational(), &q(33333, 100000));
        let g = BigFloat::from_rational(&q(2, 3), 5);
        assert_eq!(g.rational(), &q(66667, 100000));
        let neg = BigFloat::from_rational(&q(-2, 3), 5);
        assert_eq!(neg.rational(), &q(-66667, 100000));
    }

    #[test]
    fn float_precision_promotes_downward() {
        let a = Scalar::Float(BigFloat::from_rational(&q(1, 3), 30));
        let b = Scalar::ratio(1, 7);
        let c = &a + &b;
        match c {
            Scalar::Float(f) => assert_eq!(f.digits(), 30),
            _ => panic!("expected float"),
        }
    }

    #[test]
    fn exact_stays_exact() {
        let a = Scalar::ratio(1, 3);
        let b = Scalar::ratio(1, 6);
        assert_eq!(&a + &b, Scalar::ratio(1, 2));
        assert_eq!(&a * &b, Scalar::ratio(1, 18));
        assert_eq!(&a / &b, Scalar::from_int(2));
    }

    #[test]
    fn decimal_string_roundtrips_magnitude() {
        let f = BigFloat::from_rational(&q(-125, 1000), 10);
        assert_eq!(f.to_decimal_string(), "-1.25e-1");
        let g = BigFloat::from_int(42, 10);
        assert_eq!(g.to_decimal_string(), "4.2e1");
    }

    #[test]
    fn cplx_div_mul_roundtrip() {
        let d = 30;
        let a = Cplx::new(BigFloat::from_int(3, d), BigFloat::from_int(4, d));
        let b = Cplx::new(BigFloat::from_int(1, d), BigFloat::from_int(-2, d));
        let c = a.mul(&b);
        let back = c.div(&b).unwrap();
        let err = back.sub(&a).norm_sup();
        assert!(err.cmp_abs(&BigFloat::pow10(-25, d)) == Ordering::Less);
    }

    #[test]
    fn sqrt_squares_back_at_working_precision() {
        for d in [20u32, 60] {
            for (n, den) in [(2i64, 1i64), (9, 1), (5, 7), (1, 10_000_000)] {
                let f = BigFloat::from_rational(&q(n, den), d);
                let r = f.sqrt().unwrap();
                let err = r.mul(&r).sub(&f).abs();
                let tol = BigFloat::pow10(-(d as i64) + 2, d).mul(&f);
                assert!(err.cmp_abs(&tol) == Ordering::Less, "{}:{}/{}", d, n, den);
            }
        }
        assert!(BigFloat::from_int(0, 20).sqrt().unwrap().is_zero());
        assert!(BigFloat::from_int(-1, 20).sqrt().is_err());
    }
}
