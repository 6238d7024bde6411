//! Simultaneous root iteration with exact recovery of rational roots.
//!
//! All roots of a polynomial are found at once by the Weierstrass-style
//! update z_k <- z_k - p(z_k)/prod_{j!=k}(z_k - z_j).  Afterwards each
//! near-real root is run through a continued-fraction rationalization and
//! accepted as exact only if it verifies against the exact polynomial.

use crate::poly::Poly;
use crate::scalar::{BigFloat, Cplx, Scalar};
use crate::Error;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Clone, PartialEq, Debug)]
pub enum RootVal {
    Exact(Scalar),
    Approx(Cplx),
}

impl RootVal {
    pub fn as_cplx(&self, digits: u32) -> Cplx {
        match self {
            RootVal::Exact(s) => Cplx::from_float(s.to_float(digits)),
            RootVal::Approx(z) => z.clone(),
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, RootVal::Exact(_))
    }
}

fn pow10_rat(e: i64) -> BigRational {
    let ten = BigInt::from(10);
    if e >= 0 {
        BigRational::from(ten.pow(e as u32))
    } else {
        BigRational::new(BigInt::one(), ten.pow((-e) as u32))
    }
}

/// Best small-denominator rational within 10^-(digits-8) of x, found by
/// walking the continued-fraction convergents.  None when every convergent
/// within tolerance needs a denominator bigger than 10^(digits/2).
pub fn rationalize(x: &BigRational, digits: u32) -> Option<BigRational> {
    let tol = pow10_rat(-((digits.saturating_sub(8)) as i64));
    let den_bound = BigInt::from(10).pow(digits / 2);
    let mut rem = x.clone();
    // Convergent recurrences p_k = a_k p_{k-1} + p_{k-2}.
    let (mut p0, mut q0) = (BigInt::one(), BigInt::zero());
    let (mut p1, mut q1) = (BigInt::zero(), BigInt::one());
    for _ in 0..256 {
        let a = rem.floor().to_integer();
        let p = &a * &p0 + &p1;
        let q = &a * &q0 + &q1;
        if q.magnitude() > den_bound.magnitude() {
            return None;
        }
        let cand = BigRational::new(p.clone(), q.clone());
        if (x - &cand).abs() <= tol {
            return Some(cand);
        }
        p1 = p0;
        q1 = q0;
        p0 = p;
        q0 = q;
        let frac = &rem - BigRational::from(a);
        if frac.is_zero() {
            return None; // walked all convergents without meeting tol
        }
        rem = frac.recip();
    }
    None
}

fn eval_cplx(coeffs: &[Cplx], z: &Cplx) -> Cplx {
    let digits = z.re.digits();
    let mut acc = Cplx::zero(digits);
    for c in coeffs.iter().rev() {
        acc = acc.mul(z).add(c);
    }
    acc
}

/// All roots, exact rationals recovered where possible.  Deterministic for
/// a fixed seed.  Multiple roots converge too, just more slowly.
pub fn find_roots(poly: &Poly, digits: u32, seed: u64) -> Result<Vec<RootVal>, Error> {
    if poly.is_zero() {
        return Err(Error::ShapeMismatch("zero polynomial has no root set".into()));
    }
    let mut out: Vec<RootVal> = vec![];
    let v = poly.valuation().unwrap();
    for _ in 0..v {
        out.push(RootVal::Exact(Scalar::zero()));
    }
    let coeffs: Vec<Scalar> = poly.coeffs()[v..].to_vec();
    let n = coeffs.len() - 1;
    if n == 0 {
        return Ok(out);
    }
    let exact_input = coeffs.iter().all(|c| c.is_exact());
    let reduced = Poly::new(poly.var, coeffs.clone());
    if n == 1 {
        // Linear factor: solve exactly when possible.
        let r = (-&coeffs[0]).checked_div(&coeffs[1])?;
        out.push(if r.is_exact() {
            RootVal::Exact(r)
        } else {
            RootVal::Approx(Cplx::from_float(r.to_float(digits)))
        });
        return Ok(out);
    }

    // Monic complex copy.
    let lead = coeffs[n].clone();
    let cc: Vec<Cplx> = coeffs
        .iter()
        .map(|c| Cplx::from_float(c.checked_div(&lead).unwrap().to_float(digits)))
        .collect();

    // Radius from the coefficient bound 1 + max |a_i|.
    let mut radius = BigFloat::from_int(1, digits);
    for c in cc.iter().take(n) {
        let m = c.norm_sup();
        if radius.cmp_abs(&m) == std::cmp::Ordering::Less {
            radius = m;
        }
    }
    radius = radius.add(&BigFloat::from_int(1, digits));

    let base = Cplx::new(
        BigFloat::from_rational(&BigRational::new(4.into(), 10.into()), digits),
        BigFloat::from_rational(&BigRational::new(9.into(), 10.into()), digits),
    );
    let mut z: Vec<Cplx> = Vec::with_capacity(n);
    let mut acc = Cplx::from_float(radius.clone());
    for _ in 0..n {
        acc = acc.mul(&base);
        z.push(acc.clone());
    }

    let tol = BigFloat::from_rational(&pow10_rat(-((digits.saturating_sub(5)) as i64)), digits);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best_step: Option<BigFloat> = None;
    let mut stale = 0u32;
    let mut converged = false;
    for _ in 0..3000 {
        let mut max_step = BigFloat::zero(digits);
        for k in 0..n {
            let pk = eval_cplx(&cc, &z[k]);
            let mut denom = Cplx::from_float(BigFloat::from_int(1, digits));
            for j in 0..n {
                if j != k {
                    denom = denom.mul(&z[k].sub(&z[j]));
                }
            }
            if denom.is_zero() {
                // Collided points: nudge deterministically and retry later.
                let eps = BigFloat::from_rational(
                    &BigRational::new(BigInt::from(rng.gen_range(1..1000)), pow10_rat(8).to_integer()),
                    digits,
                );
                z[k] = z[k].add(&Cplx::from_float(eps));
                continue;
            }
            let w = pk.div(&denom)?;
            z[k] = z[k].sub(&w);
            let s = w.norm_sup();
            if max_step.cmp_abs(&s) == std::cmp::Ordering::Less {
                max_step = s;
            }
        }
        if max_step.cmp_abs(&tol) != std::cmp::Ordering::Greater {
            converged = true;
            break;
        }
        match &best_step {
            Some(b) if b.cmp_abs(&max_step) != std::cmp::Ordering::Greater => stale += 1,
            _ => {
                best_step = Some(max_step.clone());
                stale = 0;
            }
        }
        if stale > 60 {
            // Perturb out of a stagnant configuration, reproducibly.
            for zk in z.iter_mut() {
                let dr = BigRational::new(BigInt::from(rng.gen_range(-500i64..500)), pow10_rat(6).to_integer());
                let di = BigRational::new(BigInt::from(rng.gen_range(-500i64..500)), pow10_rat(6).to_integer());
                *zk = zk.add(&Cplx::new(
                    BigFloat::from_rational(&dr, digits),
                    BigFloat::from_rational(&di, digits),
                ));
            }
            best_step = None;
            stale = 0;
        }
    }
    if !converged {
        return Err(Error::RootsNotConverged);
    }

    // Deterministic order: by real part, then imaginary part.
    z.sort_by(|a, b| {
        a.re.rational()
            .cmp(b.re.rational())
            .then_with(|| a.im.rational().cmp(b.im.rational()))
    });

    let near_real = BigFloat::from_rational(&pow10_rat(-((digits.saturating_sub(10)) as i64)), digits);
    for zk in z {
        let mut taken = false;
        if exact_input && zk.im.abs().cmp_abs(&near_real) != std::cmp::Ordering::Greater {
            if let Some(r) = rationalize(zk.re.rational(), digits) {
                let cand = Scalar::from_rational(r);
                if reduced.eval(&cand).is_zero() {
                    out.push(RootVal::Exact(cand));
                    taken = true;
                }
            }
        }
        if !taken {
            out.push(RootVal::Approx(zk));
        }
    }
    Ok(out)
}
