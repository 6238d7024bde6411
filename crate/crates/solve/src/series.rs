//! Series with parameter lists, and residual checks of recurrence
//! operators against them.

use dmod_core::poly::{Poly, Var};
use dmod_core::scalar::{factorial, pochhammer, Scalar};
use dmod_core::weyl::WeylOp;
use dmod_core::Error;

/// Coefficients through degree `terms` of the series with the given upper
/// and lower parameter lists: c_0 = 1 and
/// c_{k+1} = c_k prod(a + k) / ((k + 1) prod(b + k)).
pub fn pfq(upper: &[Scalar], lower: &[Scalar], terms: u32) -> Result<Poly, Error> {
    let mut coeffs = vec![Scalar::one()];
    let mut c = Scalar::one();
    for k in 0..terms {
        let kk = Scalar::from_int(k as i64);
        let mut num = Scalar::one();
        for a in upper {
            num = &num * &(a + &kk);
        }
        let mut den = Scalar::from_int(k as i64 + 1);
        for b in lower {
            den = &den * &(b + &kk);
        }
        c = (&c * &num).checked_div(&den)?;
        coeffs.push(c.clone());
    }
    Ok(Poly::new(Var::X, coeffs))
}

/// Series whose extra parameters are carried by an eigenvector S rather
/// than listed: coefficient k is
/// (alpha)_k (beta)_k / ((gamma)_k k!) * S(gamma + k) / S(gamma).
/// Works for S with irrational or complex-conjugate root pairs, as long as
/// its coefficients are real.
pub fn sstar_weighted(
    alpha: &Scalar,
    beta: &Scalar,
    gamma: &Scalar,
    sstar: &Poly,
    terms: u32,
) -> Result<Poly, Error> {
    let s0 = sstar.eval(gamma);
    if s0.is_zero() {
        return Err(Error::ShapeMismatch(
            "eigenvector vanishes at gamma; the weighted series is undefined".into(),
        ));
    }
    let mut coeffs = vec![];
    for k in 0..=terms {
        let base = (&pochhammer(alpha, k) * &pochhammer(beta, k))
            .checked_div(&(&pochhammer(gamma, k) * &factorial(k)))?;
        let w = sstar.eval(&(gamma + &Scalar::from_int(k as i64)));
        coeffs.push(&base * &w.checked_div(&s0)?);
    }
    Ok(Poly::new(Var::X, coeffs))
}

/// Largest drop in degree the operator can inflict on a monomial; a series
/// correct through degree N gives a trustworthy image only through
/// N - max_drop.
pub fn max_drop(l: &WeylOp) -> i64 {
    l.terms()
        .map(|(&(a, b), _)| b as i64 - a as i64)
        .max()
        .unwrap_or(0)
}

/// Apply the operator to the series and report the largest coefficient
/// magnitude of the image through the given degree.  Exactly zero for an
/// identity that holds on the nose.
pub fn residual_norm_through(l: &WeylOp, series: &Poly, order: u32) -> Result<Scalar, Error> {
    let img = l.apply_diff(series)?;
    let mut worst = Scalar::zero();
    for k in 0..=order as usize {
        let c = img.coeff(k).abs();
        if c.cmp_value(&worst) == std::cmp::Ordering::Greater {
            worst = c;
        }
    }
    Ok(worst)
}
