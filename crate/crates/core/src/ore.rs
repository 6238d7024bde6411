//! Operators with rational-function coefficients in one variable,
//! multiplication twisted by the derivation: D*f = f*D + f'.
//!
//! Right division here means A = Q*B + R with the order of R strictly
//! below the order of B.

use crate::poly::Var;
use crate::ratfun::RatFun;
use crate::scalar::{binomial, Scalar};
use crate::Error;
use std::fmt;

#[derive(Clone, PartialEq, Debug)]
pub struct OreOp {
    /// coeffs[k] multiplies the k-th derivative symbol.
    pub coeffs: Vec<RatFun>,
}

impl OreOp {
    pub fn new(mut coeffs: Vec<RatFun>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        OreOp { coeffs }
    }

    pub fn zero() -> Self {
        OreOp { coeffs: vec![] }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Order: highest derivative power; None for the zero operator.
    pub fn order(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn coeff(&self, k: usize) -> RatFun {
        self.coeffs
            .get(k)
            .cloned()
            .unwrap_or_else(|| RatFun::zero(Var::X))
    }

    pub fn from_weyl(op: &crate::weyl::WeylOp) -> Result<Self, Error> {
        if op.pair.raise != Var::X || op.pair.lower != Var::D {
            return Err(Error::ShapeMismatch(
                "conversion expects the multiplication/derivation pair".into(),
            ));
        }
        let n = op.lower_order() as usize;
        let mut coeffs = vec![RatFun::zero(Var::X); n + 1];
        for b in 0..=n {
            coeffs[b] = RatFun::from_poly(op.lower_coeff(b as u32));
        }
        Ok(OreOp::new(coeffs))
    }

    pub fn add(&self, other: &OreOp) -> Result<OreOp, Error> {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for k in 0..n {
            coeffs.push(self.coeff(k).add(&other.coeff(k))?);
        }
        Ok(OreOp::new(coeffs))
    }

    pub fn sub(&self, other: &OreOp) -> Result<OreOp, Error> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> OreOp {
        OreOp {
            coeffs: self.coeffs.iter().map(|c| c.neg()).collect(),
        }
    }

    /// Leibniz product: D^i * g = sum_t C(i,t) g^(t) D^(i-t).
    pub fn mul(&self, other: &OreOp) -> Result<OreOp, Error> {
        let mut coeffs: Vec<RatFun> = vec![];
        let mut push = |k: usize, v: RatFun| -> Result<(), Error> {
            while coeffs.len() <= k {
                coeffs.push(RatFun::zero(Var::X));
            }
            coeffs[k] = coeffs[k].add(&v)?;
            Ok(())
        };
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let mut deriv = b.clone();
                for t in 0..=i {
                    let w = binomial(i as u32, t as u32);
                    push(i - t + j, a.mul(&deriv)?.scale(&w))?;
                    if t < i {
                        deriv = deriv.derivative()?;
                    }
                }
            }
        }
        Ok(OreOp::new(coeffs))
    }

    pub fn scale(&self, c: &Scalar) -> OreOp {
        OreOp {
            coeffs: self.coeffs.iter().map(|f| f.scale(c)).collect(),
        }
    }

    /// Right division: self = Q * rhs + R, order(R) < order(rhs).
    pub fn right_divide(&self, rhs: &OreOp) -> Result<(OreOp, OreOp), Error> {
        let db = rhs.order().ok_or(Error::DivisionByZero)?;
        let lead_b = rhs.coeff(db);
        let mut rem = self.clone();
        let mut quo = OreOp::zero();
        while let Some(da) = rem.order() {
            if da < db {
                break;
            }
            let q = rem.coeff(da).div(&lead_b)?;
            let mut qcoeffs = vec![RatFun::zero(Var::X); da - db + 1];
            qcoeffs[da - db] = q;
            let qop = OreOp::new(qcoeffs);
            quo = quo.add(&qop)?;
            let prod = qop.mul(rhs)?;
            rem = rem.sub(&prod)?;
            if rem.order().map_or(false, |d| d >= da) {
                // Guard: float cancellation must still kill the top order.
                let top = rem.coeff(da);
                if !top.is_zero() {
                    let mut fixed = rem.coeffs.clone();
                    fixed[da] = RatFun::zero(Var::X);
                    rem = OreOp::new(fixed);
                }
            }
        }
        Ok((quo, rem))
    }

    /// Max numerator-coefficient magnitude across all coefficients
    /// (denominators monic); residual scale for float checks.
    pub fn coeff_norm(&self) -> Scalar {
        let mut best = Scalar::zero();
        for c in &self.coeffs {
            let n = c.coeff_norm();
            if n.cmp_value(&best) == std::cmp::Ordering::Greater {
                best = n;
            }
        }
        best
    }
}

impl fmt::Display for OreOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "({})", c)?,
                1 => write!(f, "({})*D", c)?,
                _ => write!(f, "({})*D^{}", c, k)?,
            }
        }
        Ok(())
    }
}
