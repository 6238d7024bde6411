//! Rational functions in one variable over `Scalar`.
//!
//! Exact coefficients are kept fully reduced (monic gcd divided out);
//! float coefficients skip the gcd and only normalize the denominator
//! to be monic, so cancellation noise never poisons a reduction.

use crate::poly::{Poly, Var};
use crate::scalar::Scalar;
use crate::Error;
use std::fmt;

#[derive(Clone, PartialEq, Debug)]
pub struct RatFun {
    pub num: Poly,
    pub den: Poly,
}

impl RatFun {
    pub fn new(num: Poly, den: Poly) -> Result<Self, Error> {
        num.check_var(&den)?;
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let mut r = RatFun { num, den };
        r.normalize()?;
        Ok(r)
    }

    pub fn from_poly(p: Poly) -> Self {
        let den = Poly::one(p.var);
        RatFun { num: p, den }
    }

    pub fn zero(var: Var) -> Self {
        RatFun::from_poly(Poly::zero(var))
    }

    pub fn one(var: Var) -> Self {
        RatFun::from_poly(Poly::one(var))
    }

    pub fn var(&self) -> Var {
        self.num.var
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn is_exact(&self) -> bool {
        self.num.is_exact() && self.den.is_exact()
    }

    fn normalize(&mut self) -> Result<(), Error> {
        if self.num.is_zero() {
            self.den = Poly::one(self.den.var);
            return Ok(());
        }
        if self.is_exact() {
            let g = self.num.gcd(&self.den)?;
            if g.degree().unwrap_or(0) > 0 {
                self.num = self.num.divrem(&g)?.0;
                self.den = self.den.divrem(&g)?.0;
            }
        }
        let lead = self.den.leading().unwrap().clone();
        if !lead.is_one() {
            let inv = Scalar::one().checked_div(&lead)?;
            self.num = self.num.scale(&inv);
            self.den = self.den.scale(&inv);
        }
        Ok(())
    }

    pub fn add(&self, other: &RatFun) -> Result<RatFun, Error> {
        RatFun::new(
            &(&self.num * &other.den) + &(&other.num * &self.den),
            &self.den * &other.den,
        )
    }

    pub fn sub(&self, other: &RatFun) -> Result<RatFun, Error> {
        RatFun::new(
            &(&self.num * &other.den) - &(&other.num * &self.den),
            &self.den * &other.den,
        )
    }

    pub fn mul(&self, other: &RatFun) -> Result<RatFun, Error> {
        RatFun::new(&self.num * &other.num, &self.den * &other.den)
    }

    pub fn div(&self, other: &RatFun) -> Result<RatFun, Error> {
        if other.is_zero() {
            return Err(Error::DivisionByZero);
        }
        RatFun::new(&self.num * &other.den, &self.den * &other.num)
    }

    pub fn neg(&self) -> RatFun {
        RatFun {
            num: -&self.num,
            den: self.den.clone(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> RatFun {
        RatFun {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    /// Quotient-rule derivative.
    pub fn derivative(&self) -> Result<RatFun, Error> {
        let n = &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative());
        RatFun::new(n, &self.den * &self.den)
    }

    pub fn eval(&self, at: &Scalar) -> Result<Scalar, Error> {
        let d = self.den.eval(at);
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        self.num.eval(at).checked_div(&d)
    }

    /// Max |numerator coefficient| with the denominator monic; the scale
    /// used as a residual norm in float computations.
    pub fn coeff_norm(&self) -> Scalar {
        self.num.coeff_norm()
    }
}

impl fmt::Display for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == Poly::one(self.den.var) {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(cs: &[i64]) -> Poly {
        Poly::new(Var::X, cs.iter().map(|&c| Scalar::from_int(c)).collect())
    }

    #[test]
    fn reduction_cancels_common_factor() {
        // (x^2 - 1)/(x - 1) = x + 1
        let r = RatFun::new(p(&[-1, 0, 1]), p(&[-1, 1])).unwrap();
        assert_eq!(r.num, p(&[1, 1]));
        assert_eq!(r.den, Poly::one(Var::X));
    }

    #[test]
    fn arithmetic_matches_evaluation() {
        let a = RatFun::new(p(&[1, 2]), p(&[3, 0, 1])).unwrap();
        let b = RatFun::new(p(&[0, 5]), p(&[1, 1])).unwrap();
        let at = Scalar::ratio(7, 3);
        let sum = a.add(&b).unwrap();
        assert_eq!(
            sum.eval(&at).unwrap(),
            &a.eval(&at).unwrap() + &b.eval(&at).unwrap()
        );
        let q = a.div(&b).unwrap();
        assert_eq!(
            q.eval(&at).unwrap(),
            a.eval(&at)
                .unwrap()
                .checked_div(&b.eval(&at).unwrap())
                .unwrap()
        );
    }

    #[test]
    fn derivative_quotient_rule() {
        // d/dx (1/x) = -1/x^2
        let r = RatFun::new(p(&[1]), p(&[0, 1])).unwrap();
        let d = r.derivative().unwrap();
        assert_eq!(d, RatFun::new(p(&[-1]), p(&[0, 0, 1])).unwrap());
    }

    #[test]
    fn float_coefficients_skip_gcd() {
        let half = Scalar::float_from_int(1, 50)
            .checked_div(&Scalar::float_from_int(2, 50))
            .unwrap();
        let num = Poly::new(Var::X, vec![half, Scalar::float_from_int(1, 50)]);
        let den = Poly::new(
            Var::X,
            vec![Scalar::float_from_int(2, 50), Scalar::float_from_int(4, 50)],
        );
        // Same root at -1/2 but float: reduction must not be attempted,
        // only the monic normalization of the denominator.
        let r = RatFun::new(num, den).unwrap();
        assert!(r.den.leading().unwrap().is_one());
        assert_eq!(r.den.degree(), Some(1));
        assert_eq!(r.num.degree(), Some(1));
    }
}
