//! Second-kind special configuration over the creation/annihilation pair:
//! the operator (A - Adag)^2 (H + alpha) + beta (A - Adag) + gamma with
//! H = Adag A - 1, solved as Adag^2 * (series in Adag).
//!
//! The operator itself lowers more than it raises, so the solve runs on
//! the left-cleared product Adag^2 * B: the prefactor absorbs the
//! annihilation tail (Adag^2 A = Adag G, Adag^2 A^2 = G (G + 2)), making
//! the product expressible through the grade generator.  Dividing by
//! Adag A + alpha - 1 then gives a series T with seed 1, and Adag^2 * T
//! solves B itself.

use crate::newton::{solve_exponent, SolveOutcome};
use dmod_core::poly::Poly;
use dmod_core::scalar::Scalar;
use dmod_core::weyl::{GeneratorPair, WeylOp};
use dmod_core::Error;

pub fn pair() -> GeneratorPair {
    GeneratorPair::creation()
}

/// B = (A - Adag)^2 (H + alpha) + beta (A - Adag) + gamma, with
/// (A - Adag)^2 expanded as A^2 + Adag^2 - 2 G + 2 and H + alpha = G - 1 + alpha.
pub fn operator(alpha: &Scalar, beta: &Scalar, gamma: &Scalar) -> WeylOp {
    let p = pair();
    let one = Scalar::one();
    let sq = WeylOp::from_terms(
        &p,
        &[
            (0, 2, one.clone()),
            (2, 0, one.clone()),
            (1, 1, Scalar::from_int(-2)),
            (0, 0, Scalar::from_int(2)),
        ],
    );
    let h_shift = WeylOp::from_terms(&p, &[(1, 1, one.clone()), (0, 0, alpha - &one)]);
    let lin = WeylOp::from_terms(&p, &[(0, 1, beta.clone()), (1, 0, -beta)]);
    sq.mul(&h_shift)
        .unwrap()
        .add(&lin)
        .unwrap()
        .add(&WeylOp::constant(&p, gamma.clone()))
        .unwrap()
}

/// The same operator realized on the multiplication/derivation pair:
/// 4 X^2 (D^2 - X^2 + alpha) + 2 beta X + gamma.
pub fn standard_realization(alpha: &Scalar, beta: &Scalar, gamma: &Scalar) -> WeylOp {
    let sp = GeneratorPair::standard();
    let two = Scalar::from_int(2);
    WeylOp::from_terms(
        &sp,
        &[
            (2, 2, Scalar::from_int(4)),
            (4, 0, Scalar::from_int(-4)),
            (2, 0, &Scalar::from_int(4) * alpha),
            (1, 0, &two * beta),
            (0, 0, gamma.clone()),
        ],
    )
}

/// B left-cleared by Adag^2; expressible through the grade generator.
pub fn solve_operator(alpha: &Scalar, beta: &Scalar, gamma: &Scalar) -> WeylOp {
    let b = operator(alpha, beta, gamma);
    let raise2 = WeylOp::monomial(&b.pair, 2, 0, Scalar::one());
    raise2.mul(&b).unwrap()
}

/// Indicial root used by the graded solve of Adag^2 * B: the simple root
/// 1 - alpha of lambda (lambda + 2) (lambda + alpha - 1), i.e. division
/// by Adag A + alpha - 1.
pub fn exponent(alpha: &Scalar) -> Scalar {
    &Scalar::one() - alpha
}

#[derive(Debug)]
pub struct BiconfSolution {
    /// The cleared-series solve: T with B * Adag^2 * T in the ideal.
    pub inner: SolveOutcome,
    /// The solution of B itself: Adag^2 * T.
    pub solution: Poly,
}

pub fn solve(
    alpha: &Scalar,
    beta: &Scalar,
    gamma: &Scalar,
    precision: u32,
) -> Result<BiconfSolution, Error> {
    let l = solve_operator(alpha, beta, gamma);
    let out = solve_exponent(&l, &exponent(alpha), &Poly::one(l.pair.raise), precision)?;
    let solution = out.series.poly.shift_up(2);
    Ok(BiconfSolution {
        inner: out,
        solution,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::newton::{indicial_polynomial, remainder_map, Divisor};
    use dmod_core::poly::Var;

    fn s(v: i64) -> Scalar {
        Scalar::from_int(v)
    }

    fn abc() -> (Scalar, Scalar, Scalar) {
        (Scalar::ratio(5, 2), Scalar::ratio(1, 3), s(-2))
    }

    #[test]
    fn creation_pair_product_identities() {
        let p = pair();
        let a = WeylOp::lower_gen(&p);
        let adag = WeylOp::raise_gen(&p);
        let g = WeylOp::monomial(&p, 1, 1, s(1));
        // Adag^2 A^2 = G (G + 2)
        let lhs = adag.pow(2).unwrap().mul(&a.pow(2).unwrap()).unwrap();
        let rhs = g
            .mul(&g.add(&WeylOp::constant(&p, s(2))).unwrap())
            .unwrap();
        assert_eq!(lhs, rhs);
        // A^2 Adag^2 = (G - 2)(G - 4)
        let lhs = a.pow(2).unwrap().mul(&adag.pow(2).unwrap()).unwrap();
        let rhs = g
            .add(&WeylOp::constant(&p, s(-2)))
            .unwrap()
            .mul(&g.add(&WeylOp::constant(&p, s(-4))).unwrap())
            .unwrap();
        assert_eq!(lhs, rhs);
        // (A - Adag)^2 = A^2 + Adag^2 - 2G + 2
        let diff = a.sub(&adag).unwrap();
        let lhs = diff.mul(&diff).unwrap();
        let rhs = WeylOp::from_terms(
            &p,
            &[(0, 2, s(1)), (2, 0, s(1)), (1, 1, s(-2)), (0, 0, s(2))],
        );
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn operator_matches_standard_realization() {
        for (alpha, beta, gamma) in [abc(), (s(3), s(0), Scalar::ratio(7, 5))] {
            let b = operator(&alpha, &beta, &gamma);
            let sp = GeneratorPair::standard();
            let x = WeylOp::raise_gen(&sp);
            let d = WeylOp::lower_gen(&sp);
            let img = b
                .express_in(&d.sub(&x).unwrap(), &d.add(&x).unwrap())
                .unwrap();
            assert_eq!(img, standard_realization(&alpha, &beta, &gamma));
        }
    }

    #[test]
    fn indicial_cubic_in_three_factors() {
        let (alpha, beta, gamma) = abc();
        let b = operator(&alpha, &beta, &gamma);
        let ind = indicial_polynomial(&b).unwrap();
        // lambda (lambda + 2) (lambda + alpha - 1)
        let l = Poly::gen(Var::Lambda);
        let expect = &(&l * &(&l + &Poly::constant(Var::Lambda, s(2))))
            * &(&l + &Poly::constant(Var::Lambda, &alpha - &Scalar::one()));
        assert_eq!(ind, expect);
    }

    #[test]
    fn cleared_solve_operator_carries_the_indicial_cubic() {
        let (alpha, beta, gamma) = abc();
        let l = solve_operator(&alpha, &beta, &gamma);
        let ind = l.graded_form().unwrap().constant_part();
        assert_eq!(ind, indicial_polynomial(&operator(&alpha, &beta, &gamma)).unwrap());
        assert!(ind.eval(&exponent(&alpha)).is_zero());
    }

    #[test]
    fn graded_solve_certifies() {
        let (alpha, beta, gamma) = abc();
        let sol = solve(&alpha, &beta, &gamma, 19).unwrap();
        let v = &sol.inner.residual_valuations;
        assert!(v.windows(2).all(|w| w[0] < w[1]), "{:?}", v);
        assert_eq!(sol.solution.valuation(), Some(2));
        // Recompute the residual of the truncated solution from scratch.
        let l = solve_operator(&alpha, &beta, &gamma);
        let cert = remainder_map(&l, &sol.inner.series.poly, &Divisor::Graded(exponent(&alpha)))
            .unwrap();
        let val = cert.valuation().map(|x| x as u32);
        assert!(val.map_or(true, |x| x >= 17), "certificate {:?}", val);
    }

    #[test]
    fn near_resonant_alpha_refused() {
        // alpha = -3 makes the exponent ladder hit another indicial root.
        let (_, beta, gamma) = abc();
        let err = solve(&s(-3), &beta, &gamma, 10).unwrap_err();
        assert!(matches!(err, Error::Resonant { .. }));
    }
}
