//! Fourth-kind special configuration: the operator
//! X^2 D^2 + (-X^2 + bX + c) D - aX + q divided by K = X D^2 + (b-X) D - a,
//! with classes written as series in the derivation symbol.
//!
//! The remainder of L * D^n has a closed form; the generic route is long
//! division in the swapped orientation, eliminating the top power of the
//! multiplication symbol with exact polynomial division by D^2 - D.  Both
//! must agree, and the quotient/remainder pair is unique.

use crate::newton::{newton_iterate, Divisor, SolveOutcome};
use crate::tangent::TangentialMap;
use dmod_core::poly::{Poly, Var};
use dmod_core::scalar::Scalar;
use dmod_core::weyl::{GeneratorPair, WeylOp};
use dmod_core::Error;

#[derive(Clone, PartialEq, Debug)]
pub struct DcParams {
    pub a: Scalar,
    pub b: Scalar,
    pub c: Scalar,
    pub q: Scalar,
}

fn std_pair() -> GeneratorPair {
    GeneratorPair::standard()
}

/// The full operator, in the swapped orientation used by the solve.
pub fn operator(p: &DcParams) -> WeylOp {
    operator_standard(p).swap_orientation()
}

/// Same operator in the usual orientation (for shape checks and display).
pub fn operator_standard(p: &DcParams) -> WeylOp {
    WeylOp::from_terms(
        &std_pair(),
        &[
            (2, 2, Scalar::one()),
            (2, 1, Scalar::from_int(-1)),
            (1, 1, p.b.clone()),
            (0, 1, p.c.clone()),
            (1, 0, -&p.a),
            (0, 0, p.q.clone()),
        ],
    )
}

/// K = X D^2 + (b - X) D - a, swapped orientation.
pub fn divisor(p: &DcParams) -> WeylOp {
    WeylOp::from_terms(
        &std_pair(),
        &[
            (1, 2, Scalar::one()),
            (0, 1, p.b.clone()),
            (1, 1, Scalar::from_int(-1)),
            (0, 0, -&p.a),
        ],
    )
    .swap_orientation()
}

/// Read the four parameters back off an operator in standard orientation;
/// the shape must match exactly.
pub fn extract_params(l: &WeylOp) -> Result<DcParams, Error> {
    if l.pair != std_pair() {
        return Err(Error::ShapeMismatch("expected standard orientation".into()));
    }
    if !l.coeff(2, 2).is_one() || l.coeff(2, 1) != Scalar::from_int(-1) {
        return Err(Error::ShapeMismatch(
            "leading coefficients must be X^2 D^2 - X^2 D".into(),
        ));
    }
    let p = DcParams {
        a: -&l.coeff(1, 0),
        b: l.coeff(1, 1),
        c: l.coeff(0, 1),
        q: l.coeff(0, 0),
    };
    if operator_standard(&p) != *l {
        return Err(Error::ShapeMismatch(
            "extra terms outside the recognized shape".into(),
        ));
    }
    Ok(p)
}

/// Closed remainder of L * D^n modulo the left ideal of K:
/// c D^(n+1) + (n b + n(n-1) + q) D^n - n(a + n - 1) D^(n-1).
pub fn remainder_closed(p: &DcParams, n: u32) -> Poly {
    let ns = Scalar::from_int(n as i64);
    let mut out = Poly::monomial(Var::D, (n + 1) as usize, p.c.clone());
    let mid = &(&(&ns * &p.b) + &(&ns * &(&ns - &Scalar::one()))) + &p.q;
    out = &out + &Poly::monomial(Var::D, n as usize, mid);
    if n > 0 {
        let low = -&(&ns * &(&(&p.a + &ns) - &Scalar::one()));
        out = &out + &Poly::monomial(Var::D, (n - 1) as usize, low);
    }
    out
}

/// Closed quotient matching `remainder_closed`: X D^n - n D^(n-1).
pub fn quotient_closed(_p: &DcParams, n: u32) -> WeylOp {
    let mut q = WeylOp::from_terms(&std_pair(), &[(1, n, Scalar::one())]);
    if n > 0 {
        q = q
            .add(&WeylOp::from_terms(
                &std_pair(),
                &[(0, n - 1, -&Scalar::from_int(n as i64))],
            ))
            .unwrap();
    }
    q.swap_orientation()
}

/// Generic route: multiply out and divide, eliminating powers of the
/// multiplication symbol.  Returns quotient and remainder.
pub fn remainder_generic(p: &DcParams, f: &Poly) -> Result<(WeylOp, Poly), Error> {
    let l = operator(p);
    let k = divisor(p);
    let w = l.mul(&WeylOp::from_raise_poly(&l.pair, f))?;
    w.divide_lower_linear(&k)
}

/// Leading-term action: D^m drops to -m(a+m-1) D^(m-1).
pub fn tangential(p: &DcParams) -> TangentialMap {
    let one = Scalar::one();
    // -m(a + m - 1) = -m^2 - (a-1)m
    let factor = Poly::new(
        Var::M,
        vec![Scalar::zero(), -&(&p.a - &one), Scalar::from_int(-1)],
    );
    TangentialMap::new(-1, factor)
}

pub fn solve(p: &DcParams, precision: u32) -> Result<SolveOutcome, Error> {
    let l = operator(p);
    let k = divisor(p);
    let t = tangential(p);
    t.check_nonresonant(1, precision as i64)?;
    newton_iterate(&l, &Divisor::Linear(k), &t, &Poly::one(Var::D), precision)
}
