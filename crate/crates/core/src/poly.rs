//! Dense univariate polynomials over `Scalar`, tagged with their generator.
//!
//! The tag prevents silently mixing polynomials in different generators
//! (e.g. a remainder in X with a remainder in the derivation symbol).

use crate::scalar::Scalar;
use crate::Error;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Generator symbol a polynomial or operator coefficient lives in.
#[derive(Clone, Copy, PartialEq, Eq, Debug, PartialOrd, Ord, Hash)]
pub enum Var {
    /// Multiplication generator.
    X,
    /// Derivation generator.
    D,
    /// Creation generator (raise side of the creation/annihilation pair).
    Adag,
    /// Annihilation generator.
    A,
    /// Grade generator raise*lower.
    Grade,
    /// Indicial variable.
    Lambda,
    /// Index variable for tangential factors.
    M,
    /// Eigenvalue variable.
    Q,
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Var::X => "X",
            Var::D => "D",
            Var::Adag => "Adag",
            Var::A => "A",
            Var::Grade => "G",
            Var::Lambda => "lambda",
            Var::M => "m",
            Var::Q => "q",
        };
        write!(f, "{}", s)
    }
}

/// Dense polynomial, coefficients ascending by power.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Poly {
    pub var: Var,
    coeffs: Vec<Scalar>,
}

impl Poly {
    pub fn new(var: Var, mut coeffs: Vec<Scalar>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { var, coeffs }
    }

    pub fn zero(var: Var) -> Self {
        Poly {
            var,
            coeffs: vec![],
        }
    }

    pub fn one(var: Var) -> Self {
        Poly::constant(var, Scalar::one())
    }

    pub fn constant(var: Var, c: Scalar) -> Self {
        Poly::new(var, vec![c])
    }

    pub fn monomial(var: Var, power: usize, c: Scalar) -> Self {
        let mut coeffs = vec![Scalar::zero(); power];
        coeffs.push(c);
        Poly::new(var, coeffs)
    }

    /// The generator itself as a polynomial.
    pub fn gen(var: Var) -> Self {
        Poly::monomial(var, 1, Scalar::one())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn coeff(&self, k: usize) -> Scalar {
        self.coeffs.get(k).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn leading(&self) -> Option<&Scalar> {
        self.coeffs.last()
    }

    /// Smallest power with a nonzero coefficient; `None` for zero.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn check_var(&self, other: &Poly) -> Result<(), Error> {
        if self.var != other.var {
            return Err(Error::GeneratorMismatch {
                left: self.var.to_string(),
                right: other.var.to_string(),
            });
        }
        Ok(())
    }

    pub fn with_var(&self, var: Var) -> Poly {
        Poly::new(var, self.coeffs.clone())
    }

    pub fn scale(&self, c: &Scalar) -> Poly {
        Poly::new(
            self.var,
            self.coeffs.iter().map(|a| a * c).collect::<Vec<_>>(),
        )
    }

    pub fn shift_up(&self, k: usize) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![Scalar::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly::new(self.var, coeffs)
    }

    pub fn eval(&self, at: &Scalar) -> Scalar {
        let mut acc = Scalar::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * at) + c;
        }
        acc
    }

    pub fn derivative(&self) -> Poly {
        if self.coeffs.len() <= 1 {
            return Poly::zero(self.var);
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c * &Scalar::from_int(k as i64))
            .collect();
        Poly::new(self.var, coeffs)
    }

    /// Exact division with remainder over the coefficient field.
    pub fn divrem(&self, rhs: &Poly) -> Result<(Poly, Poly), Error> {
        self.check_var(rhs)?;
        if rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let dr = rhs.degree().unwrap();
        let lead = rhs.leading().unwrap().clone();
        let mut rem = self.clone();
        let mut quo = Poly::zero(self.var);
        while let Some(dl) = rem.degree() {
            if dl < dr {
                break;
            }
            let c = rem.leading().unwrap().checked_div(&lead)?;
            let t = Poly::monomial(self.var, dl - dr, c);
            quo = &quo + &t;
            rem = &rem - &(&t * rhs);
        }
        Ok((quo, rem))
    }

    /// Monic gcd via the Euclidean algorithm (exact coefficients expected).
    pub fn gcd(&self, rhs: &Poly) -> Result<Poly, Error> {
        self.check_var(rhs)?;
        let mut a = self.clone();
        let mut b = rhs.clone();
        while !b.is_zero() {
            let (_, r) = a.divrem(&b)?;
            a = b;
            b = r;
        }
        if let Some(l) = a.leading().cloned() {
            a = a.scale(&(Scalar::one() / l));
        }
        Ok(a)
    }

    pub fn pow(&self, mut e: u32) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one(self.var);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// p(t + c): substitute the generator shifted by a constant.
    pub fn compose_shift(&self, c: &Scalar) -> Poly {
        let shifted = Poly::new(self.var, vec![c.clone(), Scalar::one()]);
        let mut acc = Poly::zero(self.var);
        for k in self.coeffs.iter().rev() {
            acc = &(&acc * &shifted) + &Poly::constant(self.var, k.clone());
        }
        acc
    }

    /// True when every coefficient is an exact rational.
    pub fn is_exact(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_exact())
    }

    /// Max of |coefficients| as float payloads (for float residual norms).
    pub fn coeff_norm(&self) -> Scalar {
        let mut best = Scalar::zero();
        for c in &self.coeffs {
            let a = c.abs();
            if a.cmp_value(&best) == std::cmp::Ordering::Greater {
                best = a;
            }
        }
        best
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        assert_eq!(self.var, rhs.var, "generator mismatch in +");
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for k in 0..n {
            coeffs.push(&self.coeff(k) + &rhs.coeff(k));
        }
        Poly::new(self.var, coeffs)
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        assert_eq!(self.var, rhs.var, "generator mismatch in -");
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for k in 0..n {
            coeffs.push(&self.coeff(k) - &rhs.coeff(k));
        }
        Poly::new(self.var, coeffs)
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        assert_eq!(self.var, rhs.var, "generator mismatch in *");
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero(self.var);
        }
        let mut coeffs = vec![Scalar::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] = &coeffs[i + j] + &(a * b);
            }
        }
        Poly::new(self.var, coeffs)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::new(self.var, self.coeffs.iter().map(|c| -c).collect::<Vec<_>>())
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{}", c)?,
                1 if c.is_one() => write!(f, "{}", self.var)?,
                1 => write!(f, "{}*{}", c, self.var)?,
                _ if c.is_one() => write!(f, "{}^{}", self.var, k)?,
                _ => write!(f, "{}*{}^{}", c, self.var, k)?,
            }
        }
        Ok(())
    }
}
