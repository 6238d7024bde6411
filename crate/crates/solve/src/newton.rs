//! Remainder maps modulo a divisor and the successive-correction solver.
//!
//! A solve works in the quotient of the operator algebra by a left ideal:
//! classes are polynomials in the raise generator.  Each round applies the
//! full remainder map to the current iterate, inverts the tangential map
//! on the residual, and subtracts the correction; residual valuations must
//! climb strictly.

use crate::tangent::TangentialMap;
use dmod_core::adic::{AdicSeries, Valuation};
use dmod_core::poly::Poly;
use dmod_core::roots::{find_roots, RootVal};
use dmod_core::scalar::Scalar;
use dmod_core::weyl::{GradedOp, WeylOp};
use dmod_core::Error;

/// The left ideal the solve reduces by.
#[derive(Clone, Debug)]
pub enum Divisor {
    /// An operator of order one in the lower generator.
    Linear(WeylOp),
    /// grade - lambda; the dividend must be graded-expressible.
    Graded(Scalar),
}

impl Divisor {
    pub fn lower_gen(op: &WeylOp) -> Divisor {
        Divisor::Linear(WeylOp::lower_gen(&op.pair))
    }
}

/// Remainder of L * s(raise) in the quotient by the divisor.
pub fn remainder_map(l: &WeylOp, s: &Poly, divisor: &Divisor) -> Result<Poly, Error> {
    if s.var != l.pair.raise {
        return Err(Error::GeneratorMismatch {
            left: s.var.to_string(),
            right: l.pair.raise.to_string(),
        });
    }
    let sop = WeylOp::from_raise_poly(&l.pair, s);
    let w = l.mul(&sop)?;
    match divisor {
        Divisor::Linear(k) => Ok(w.divide_lower_linear(k)?.1),
        Divisor::Graded(lambda) => Ok(w.graded_form()?.divide_at(lambda).1),
    }
}

#[derive(Clone, Debug)]
pub struct SolveOutcome {
    /// The solution, reliable below the requested precision.
    pub series: AdicSeries,
    /// The raw final iterate (may carry terms past the precision).
    pub iterate: Poly,
    /// Valuation of the residual after each application of the remainder
    /// map, the last entry being the one that met the target.
    pub residual_valuations: Vec<u32>,
    /// The residual vanished identically: the iterate is a closed solution.
    pub exact: bool,
}

/// Run the correction loop from `seed` until the residual valuation
/// reaches `precision`.
pub fn newton_iterate(
    l: &WeylOp,
    divisor: &Divisor,
    tangent: &TangentialMap,
    seed: &Poly,
    precision: u32,
) -> Result<SolveOutcome, Error> {
    let mut s = seed.clone();
    let mut vals: Vec<u32> = vec![];
    let mut stall = 0u32;
    let max_rounds = 4 * precision as usize + 16;
    let mut exact = false;
    for _ in 0..max_rounds {
        let r = remainder_map(l, &s, divisor)?;
        if r.is_zero() {
            exact = true;
            break;
        }
        let v = r.valuation().unwrap() as u32;
        if let Some(&pv) = vals.last() {
            if v <= pv {
                stall += 1;
                if stall >= 2 {
                    return Err(Error::NotImmediate(format!(
                        "residual valuation stuck at {} after {}",
                        v, pv
                    )));
                }
            } else {
                stall = 0;
            }
        }
        vals.push(v);
        if v >= precision {
            break;
        }
        // Corrections at or past the precision cannot touch the reported
        // coefficients, so the residual is clipped there: this also keeps
        // a second exponent further out from raising a phantom resonance.
        let clipped = Poly::new(
            r.var,
            r.coeffs()
                .iter()
                .take(precision as usize)
                .cloned()
                .collect::<Vec<_>>(),
        );
        let h = tangent.invert(&clipped)?;
        s = &s - &h;
    }
    if !exact && vals.last().map_or(true, |&v| v < precision) {
        return Err(Error::NotImmediate(
            "correction loop exhausted its round budget".into(),
        ));
    }
    Ok(SolveOutcome {
        series: AdicSeries::truncated(s.clone(), precision),
        iterate: s,
        residual_valuations: vals,
        exact,
    })
}

/// Recompute the residual of a (truncated) solution by full
/// multiplication and division; independent of the iteration bookkeeping.
pub fn certificate_valuation(
    l: &WeylOp,
    solution: &Poly,
    divisor: &Divisor,
) -> Result<Valuation, Error> {
    let r = remainder_map(l, solution, divisor)?;
    Ok(match r.valuation() {
        Some(v) => Valuation::Finite(v as u32),
        None => Valuation::Infinite,
    })
}

/// Ordinary solve: divisor is the lower generator, the leading
/// lower-coefficient has a nonzero constant term, and the tangential map
/// is the falling-factorial action  comm^n p_n(0) m(m-1)...(m-n+1).
pub fn solve_ordinary(l: &WeylOp, seed: &Poly, precision: u32) -> Result<SolveOutcome, Error> {
    let n = l.lower_order();
    let p0 = l.lower_coeff(n).coeff(0);
    if p0.is_zero() || n == 0 {
        return Err(Error::ShapeMismatch(
            "ordinary solve needs an invertible leading constant".into(),
        ));
    }
    let scale = &l.pair.comm.pow_u32(n) * &p0;
    let tangent = TangentialMap::falling(n, scale);
    let divisor = Divisor::lower_gen(l);
    newton_iterate(l, &divisor, &tangent, seed, precision)
}

/// Dual solve: swap the pair orientation and divide by what was the raise
/// generator; solutions are finite-valuation series in the lower one
/// (supported at the expansion point under the standard pairing).
pub fn solve_dual(l: &WeylOp, seed: &Poly, precision: u32) -> Result<SolveOutcome, Error> {
    solve_ordinary(&l.swap_orientation(), seed, precision)
}

/// Smallest modulus among the nonzero roots of the leading
/// lower-coefficient: series solutions converge at least on that disc.
/// None when the coefficient never vanishes away from the origin; the
/// root at the origin is the expansion point itself, not an obstruction
/// (at an ordinary point there is none to strip).
pub fn radius_bound(l: &WeylOp, digits: u32, seed: u64) -> Result<Option<Scalar>, Error> {
    let p = l.lower_coeff(l.lower_order());
    if p.is_zero() {
        return Err(Error::ShapeMismatch("zero leading coefficient".into()));
    }
    let v = p.valuation().unwrap();
    let away = Poly::new(p.var, p.coeffs()[v..].to_vec());
    if away.degree() == Some(0) {
        return Ok(None);
    }
    let mut best: Option<Scalar> = None;
    for r in find_roots(&away, digits, seed)? {
        let m = match r {
            RootVal::Exact(q) => q.abs(),
            RootVal::Approx(z) => {
                Scalar::Float(z.re.mul(&z.re).add(&z.im.mul(&z.im)).sqrt()?)
            }
        };
        best = Some(match best {
            Some(b) if b.cmp_value(&m) != std::cmp::Ordering::Greater => b,
            _ => m,
        });
    }
    Ok(best)
}

/// Exponent-series solve at an indicial root: divisor grade - lambda,
/// tangential factor indicial(lambda + m*comm).
pub fn solve_exponent(
    l: &WeylOp,
    lambda: &Scalar,
    seed: &Poly,
    precision: u32,
) -> Result<SolveOutcome, Error> {
    let g = l.graded_form()?;
    let ind = g.constant_part();
    if !ind.eval(lambda).is_zero() {
        return Err(Error::ShapeMismatch(format!(
            "{} is not a root of the indicial polynomial {}",
            lambda, ind
        )));
    }
    let tangent = TangentialMap::graded(&ind, lambda, &l.pair.comm);
    tangent.check_nonresonant(1, precision as i64 - 1)?;
    let divisor = Divisor::Graded(lambda.clone());
    newton_iterate(l, &divisor, &tangent, seed, precision)
}

/// Smallest t with raise^t * L expressible through the grade generator.
pub fn min_clearing(l: &WeylOp) -> u32 {
    l.terms()
        .map(|(&(a, b), _)| b.saturating_sub(a))
        .max()
        .unwrap_or(0)
}

/// raise^t * L in graded form, t minimal.
pub fn cleared_graded(l: &WeylOp) -> Result<(u32, GradedOp), Error> {
    let t = min_clearing(l);
    let xt = WeylOp::monomial(&l.pair, t, 0, Scalar::one());
    Ok((t, xt.mul(l)?.graded_form()?))
}

/// Indicial polynomial read off the minimal clearing.
pub fn indicial_polynomial(l: &WeylOp) -> Result<Poly, Error> {
    Ok(cleared_graded(l)?.1.constant_part())
}

#[derive(Clone, PartialEq, Debug)]
pub enum PointClass {
    Ordinary,
    RegularSingular { clearing: u32 },
    Other { clearing: u32 },
}

/// Classification at the expansion point: ordinary when the leading
/// lower-coefficient is invertible there; otherwise regular-singular
/// exactly when the indicial polynomial has degree equal to the order.
pub fn classify_point(l: &WeylOp) -> Result<PointClass, Error> {
    let n = l.lower_order();
    if !l.lower_coeff(n).coeff(0).is_zero() {
        return Ok(PointClass::Ordinary);
    }
    let (t, g) = cleared_graded(l)?;
    let ind = g.constant_part();
    if ind.degree() == Some(n as usize) {
        Ok(PointClass::RegularSingular { clearing: t })
    } else {
        Ok(PointClass::Other { clearing: t })
    }
}

/// Standard-form hypergeometric-kind operators used by tests and fixtures.
pub mod ops {
    use super::*;
    use dmod_core::weyl::GeneratorPair;

    fn sp() -> GeneratorPair {
        GeneratorPair::standard()
    }

    /// D^2 - X.
    pub fn airy() -> WeylOp {
        WeylOp::from_terms(
            &sp(),
            &[(0, 2, Scalar::one()), (1, 0, Scalar::from_int(-1))],
        )
    }

    /// X^2 D^2 + X D + (X^2 - nu^2).
    pub fn bessel(nu: &Scalar) -> WeylOp {
        WeylOp::from_terms(
            &sp(),
            &[
                (2, 2, Scalar::one()),
                (1, 1, Scalar::one()),
                (2, 0, Scalar::one()),
                (0, 0, -&(nu * nu)),
            ],
        )
    }

    /// D^2 - 2 X D + 2 lambda.
    pub fn hermite(lambda: &Scalar) -> WeylOp {
        WeylOp::from_terms(
            &sp(),
            &[
                (0, 2, Scalar::one()),
                (1, 1, Scalar::from_int(-2)),
                (0, 0, &Scalar::from_int(2) * lambda),
            ],
        )
    }

    /// X(1-X) D^2 + (c - (a+b+1) X) D - a b.
    pub fn gauss(a: &Scalar, b: &Scalar, c: &Scalar) -> WeylOp {
        let ab1 = &(a + b) + &Scalar::one();
        WeylOp::from_terms(
            &sp(),
            &[
                (1, 2, Scalar::one()),
                (2, 2, Scalar::from_int(-1)),
                (0, 1, c.clone()),
                (1, 1, -&ab1),
                (0, 0, -&(a * b)),
            ],
        )
    }

    /// X D^2 + (alpha + 1 - X) D + a.
    pub fn kummer(alpha: &Scalar, a: &Scalar) -> WeylOp {
        WeylOp::from_terms(
            &sp(),
            &[
                (1, 2, Scalar::one()),
                (0, 1, alpha + &Scalar::one()),
                (1, 1, Scalar::from_int(-1)),
                (0, 0, a.clone()),
            ],
        )
    }

    /// Multiply by the raise generator on the left (clear one power).
    pub fn raised(l: &WeylOp) -> WeylOp {
        WeylOp::raise_gen(&l.pair).mul(l).unwrap()
    }
}
