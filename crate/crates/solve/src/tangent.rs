//! Tangential maps: the leading-term action of a remainder map on
//! monomials, diagonal up to a fixed power shift.
//!
//! A map sends g^m to factor(m) * g^(m+shift).  Inversion divides by the
//! factor; a vanishing factor at a requested index is a resonance.

use dmod_core::poly::{Poly, Var};
use dmod_core::scalar::Scalar;
use dmod_core::Error;

#[derive(Clone, Debug)]
pub struct TangentialMap {
    pub shift: i64,
    /// Polynomial in the index variable, evaluated at the source power.
    pub factor: Poly,
}

impl TangentialMap {
    pub fn new(shift: i64, factor: Poly) -> Self {
        TangentialMap { shift, factor }
    }

    pub fn factor_at(&self, m: i64) -> Scalar {
        self.factor.eval(&Scalar::from_int(m))
    }

    /// Forward action on a series polynomial.
    pub fn apply(&self, f: &Poly) -> Result<Poly, Error> {
        let mut out = Poly::zero(f.var);
        for (m, c) in f.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let w = self.factor_at(m as i64);
            if w.is_zero() {
                continue;
            }
            let p = m as i64 + self.shift;
            if p < 0 {
                return Err(Error::ShapeMismatch(format!(
                    "image of power {} would have negative power {}",
                    m, p
                )));
            }
            out = &out + &Poly::monomial(f.var, p as usize, c * &w);
        }
        Ok(out)
    }

    /// Inverse action: g^p pulls back to g^(p-shift) / factor(p-shift).
    pub fn invert(&self, r: &Poly) -> Result<Poly, Error> {
        let mut out = Poly::zero(r.var);
        for (p, c) in r.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let m = p as i64 - self.shift;
            if m < 0 {
                return Err(Error::ShapeMismatch(format!(
                    "power {} has no preimage (shift {})",
                    p, self.shift
                )));
            }
            let w = self.factor_at(m);
            if w.is_zero() {
                return Err(Error::Resonant { index: m });
            }
            out = &out + &Poly::monomial(r.var, m as usize, c.checked_div(&w)?);
        }
        Ok(out)
    }

    /// Fail fast if any index in [from, to] is resonant.
    pub fn check_nonresonant(&self, from: i64, to: i64) -> Result<(), Error> {
        for m in from..=to {
            if self.factor_at(m).is_zero() {
                return Err(Error::Resonant { index: m });
            }
        }
        Ok(())
    }

    /// factor(m) = scale * m (m-1) ... (m-n+1): the action of an order-n
    /// operator with invertible leading coefficient at an ordinary point.
    pub fn falling(n: u32, scale: Scalar) -> Self {
        let mut f = Poly::constant(Var::M, scale);
        for i in 0..n {
            f = &f * &Poly::new(Var::M, vec![Scalar::from_int(-(i as i64)), Scalar::one()]);
        }
        TangentialMap::new(-(n as i64), f)
    }

    /// Diagonal map factor(m) = indicial(lambda + m*step) with no shift:
    /// the graded tangential at exponent lambda.
    pub fn graded(indicial: &Poly, lambda: &Scalar, step: &Scalar) -> Self {
        // Substitute the affine index lambda + m*step into the indicial
        // polynomial to get a polynomial in m.
        let mut f = Poly::zero(Var::M);
        let lin = Poly::new(Var::M, vec![lambda.clone(), step.clone()]);
        for (k, c) in indicial.coeffs().iter().enumerate() {
            f = &f + &lin.pow(k as u32).scale(c);
        }
        TangentialMap::new(0, f)
    }
}
