//! Four-point operators and their confluent relatives, divided against the
//! two-point factor sitting inside them.
//!
//! Everything here runs through one identity shape: for a first-order
//! generator B, a weight W, and a two-point factor M,
//!
//!   H * B^n  =  (P_n(B) W + Q_n(B)) M  +  R_n(B),
//!
//! where P, Q, R are ordinary polynomials in B.  The recursion that grows
//! them needs three operator relations, checked by re-multiplication when a
//! context is built:
//!
//!   B W      =  W (B + 1)
//!   M B      =  (B + 1) M  -  U(B)
//!   W U(B)   =  W M  +  V(B)
//!
//! For special parameter values the remainders R_0..R_n stay inside the span
//! of 1..B^n, the remainder becomes a finite matrix, and its eigenvectors
//! produce operators that factor longer hypergeometric recurrences through
//! the four-point family.

use dmod_core::matrix::Mat;
use dmod_core::poly::{Poly, Var};
use dmod_core::roots::{find_roots, RootVal};
use dmod_core::scalar::{BigFloat, Cplx, Scalar};
use dmod_core::weyl::{GeneratorPair, WeylOp};
use dmod_core::Error;

#[derive(Clone, Debug, PartialEq)]
pub struct HeunParams {
    pub a: Scalar,
    pub alpha: Scalar,
    pub beta: Scalar,
    pub gamma: Scalar,
    pub delta: Scalar,
    pub epsilon: Scalar,
}

impl HeunParams {
    /// Fill in delta from the exponent-sum constraint
    /// alpha + beta + 1 = gamma + delta + epsilon.
    pub fn from_constraint(
        a: Scalar,
        alpha: Scalar,
        beta: Scalar,
        gamma: Scalar,
        epsilon: Scalar,
    ) -> Self {
        let delta = &(&(&alpha + &beta) - &(&gamma + &epsilon)) + &Scalar::one();
        HeunParams {
            a,
            alpha,
            beta,
            gamma,
            delta,
            epsilon,
        }
    }

    pub fn constraint_holds(&self) -> bool {
        let lhs = &(&self.alpha + &self.beta) + &Scalar::one();
        let rhs = &(&self.gamma + &self.delta) + &self.epsilon;
        lhs == rhs
    }
}

/// X(X-1)(X-a) d^2 + [gamma (X-1)(X-a) + epsilon X(X-1) + delta X(X-a)] d
/// + alpha beta X.  Requires the exponent-sum constraint.
pub fn heun_op(p: &HeunParams) -> Result<WeylOp, Error> {
    if !p.constraint_holds() {
        return Err(Error::ShapeMismatch(
            "exponent sum violates alpha + beta + 1 = gamma + delta + epsilon".into(),
        ));
    }
    let pair = GeneratorPair::standard();
    let one = Scalar::one();
    let gde = &(&p.gamma + &p.delta) + &p.epsilon;
    // d-coefficient (gamma+delta+epsilon) X^2 - (gamma + gamma a + epsilon + delta a) X + gamma a
    let mid = &(&(&p.gamma + &(&p.gamma * &p.a)) + &p.epsilon) + &(&p.delta * &p.a);
    WeylOp::from_terms(
        &pair,
        &[
            (3, 2, one.clone()),
            (2, 2, -&(&one + &p.a)),
            (1, 2, p.a.clone()),
            (2, 1, gde),
            (1, 1, -&mid),
            (0, 1, &p.gamma * &p.a),
            (1, 0, &p.alpha * &p.beta),
        ],
    )
    .add(&WeylOp::zero(&pair))
}

/// Two-point factor X(X-1) d^2 + [gamma (X-1) + s X] d + c.
pub fn hyp_factor(gamma: &Scalar, s: &Scalar, c: &Scalar) -> WeylOp {
    let pair = GeneratorPair::standard();
    WeylOp::from_terms(
        &pair,
        &[
            (2, 2, Scalar::one()),
            (1, 2, Scalar::from_int(-1)),
            (1, 1, gamma + s),
            (0, 1, -gamma),
            (0, 0, c.clone()),
        ],
    )
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConfluentParams {
    pub alpha: Scalar,
    pub gamma: Scalar,
    pub delta: Scalar,
    pub epsilon: Scalar,
}

/// X(X-1) d^2 + [gamma (X-1) + delta X + epsilon X(X-1)] d + alpha epsilon X.
pub fn confluent_heun_op(p: &ConfluentParams) -> WeylOp {
    let pair = GeneratorPair::standard();
    WeylOp::from_terms(
        &pair,
        &[
            (2, 2, Scalar::one()),
            (1, 2, Scalar::from_int(-1)),
            (2, 1, p.epsilon.clone()),
            (1, 1, &(&p.gamma + &p.delta) - &p.epsilon),
            (0, 1, -&p.gamma),
            (1, 0, &p.alpha * &p.epsilon),
        ],
    )
}

/// Confluent two-point factor X d^2 + (gamma + epsilon X) d + alpha epsilon.
pub fn confluent_factor(p: &ConfluentParams) -> WeylOp {
    let pair = GeneratorPair::standard();
    WeylOp::from_terms(
        &pair,
        &[
            (1, 2, Scalar::one()),
            (1, 1, p.epsilon.clone()),
            (0, 1, p.gamma.clone()),
            (0, 0, &p.alpha * &p.epsilon),
        ],
    )
}

/// X d + c.
pub fn theta_shift(c: &Scalar) -> WeylOp {
    let pair = GeneratorPair::standard();
    WeylOp::from_terms(&pair, &[(1, 1, Scalar::one()), (0, 0, c.clone())])
}

/// (X-1) d + c.
pub fn shifted_theta(c: &Scalar) -> WeylOp {
    let pair = GeneratorPair::standard();
    WeylOp::from_terms(
        &pair,
        &[
            (1, 1, Scalar::one()),
            (0, 1, Scalar::from_int(-1)),
            (0, 0, c.clone()),
        ],
    )
}

/// Evaluate a one-variable polynomial at an operator, by Horner.
pub fn eval_at_op(f: &Poly, x: &WeylOp) -> Result<WeylOp, Error> {
    let pair = &x.pair;
    let mut acc = WeylOp::zero(pair);
    for c in f.coeffs().iter().rev() {
        acc = acc.mul(x)?.add(&WeylOp::constant(pair, c.clone()))?;
    }
    Ok(acc)
}

fn apoly(coeffs: Vec<Scalar>) -> Poly {
    Poly::new(Var::A, coeffs)
}

/// One division context: the operator, its factor, the basis generator and
/// weight, and the three closing polynomials with the degree-zero seed row.
#[derive(Clone, Debug)]
pub struct DivContext {
    pub op: WeylOp,
    pub b_img: WeylOp,
    pub w_img: WeylOp,
    pub m_img: WeylOp,
    pub u: Poly,
    pub v: Poly,
    pub p0: Poly,
    pub q0: Poly,
    pub r0: Poly,
}

impl DivContext {
    /// Four-point operator against its two-point factor, basis X d + gamma,
    /// weight X.
    pub fn heun(p: &HeunParams) -> Result<DivContext, Error> {
        let one = Scalar::one();
        let ab = &p.alpha * &p.beta;
        let de = &p.delta + &p.epsilon;
        let c1 = &(&ab * &p.a) - &(&(&p.gamma * &p.epsilon) * &(&p.a - &one));
        let c2 = &ab + &(&p.gamma * &(&one - &de));
        let c3 = &(&de - &p.gamma) - &one;
        let ctx = DivContext {
            op: heun_op(p)?,
            b_img: theta_shift(&p.gamma),
            w_img: WeylOp::raise_gen(&GeneratorPair::standard()),
            m_img: hyp_factor(&p.gamma, &de, &ab),
            u: apoly(vec![c2, c3, one.clone()]),
            v: apoly(vec![p.gamma.clone(), -&(&one + &p.gamma), one.clone()]),
            p0: apoly(vec![Scalar::one()]),
            q0: apoly(vec![-&p.a]),
            r0: apoly(vec![c1, &p.epsilon * &(&p.a - &one)]),
        };
        ctx.validated()
    }

    /// Confluent operator against X d^2 + (gamma + epsilon X) d
    /// + alpha epsilon, basis X d + gamma, weight X.
    pub fn confluent(p: &ConfluentParams) -> Result<DivContext, Error> {
        let one = Scalar::one();
        let c1 = &(&p.alpha - &p.gamma) * &p.epsilon;
        let ctx = DivContext {
            op: confluent_heun_op(p),
            b_img: theta_shift(&p.gamma),
            w_img: WeylOp::raise_gen(&GeneratorPair::standard()),
            m_img: confluent_factor(p),
            u: apoly(vec![c1, p.epsilon.clone()]),
            v: apoly(vec![-&p.gamma, &one + &p.gamma, Scalar::from_int(-1)]),
            p0: apoly(vec![Scalar::one()]),
            q0: apoly(vec![Scalar::from_int(-1)]),
            r0: apoly(vec![
                &(&p.alpha * &p.epsilon) - &(&p.delta * &p.gamma),
                p.delta.clone(),
            ]),
        };
        ctx.validated()
    }

    /// Same four-point operator, divided against the factor with gamma and
    /// delta traded for gamma + epsilon and delta - epsilon; basis
    /// (X-1) d + delta - 1, weight X - 1.
    pub fn hatted(p: &HeunParams) -> Result<DivContext, Error> {
        let one = Scalar::one();
        let ab = &p.alpha * &p.beta;
        let ge = &p.gamma + &p.epsilon;
        let c1 = &(&ab * &p.a) - &(&(&(&p.delta - &one) * &p.epsilon) * &p.a);
        let c2 = &ab + &(&ge * &(&one - &p.delta));
        let c3 = &(&(&p.delta - &p.epsilon) - &p.gamma) - &one;
        let ctx = DivContext {
            op: heun_op(p)?,
            b_img: shifted_theta(&(&p.delta - &one)),
            w_img: WeylOp::from_terms(
                &GeneratorPair::standard(),
                &[(1, 0, Scalar::one()), (0, 0, Scalar::from_int(-1))],
            ),
            m_img: hyp_factor(&ge, &p.delta, &ab),
            u: apoly(vec![c2, -&c3, one.clone()]),
            v: apoly(vec![Scalar::zero(), &p.delta - &one, Scalar::from_int(-1)]),
            p0: apoly(vec![Scalar::one()]),
            q0: apoly(vec![&one - &p.a]),
            r0: apoly(vec![c1, &p.epsilon * &p.a]),
        };
        ctx.validated()
    }

    /// Re-multiply the three closing relations and the seed row; any
    /// mismatch means the context constants are wrong for these parameters.
    fn validated(self) -> Result<Self, Error> {
        let pair = &self.op.pair;
        let bp1 = self.b_img.add(&WeylOp::one(pair))?;
        if self.b_img.mul(&self.w_img)? != self.w_img.mul(&bp1)? {
            return Err(Error::InvarianceViolated(
                "weight does not intertwine the basis generator".into(),
            ));
        }
        let u_img = eval_at_op(&self.u, &self.b_img)?;
        if self.m_img.mul(&self.b_img)? != bp1.mul(&self.m_img)?.sub(&u_img)? {
            return Err(Error::InvarianceViolated(
                "factor does not close against the basis generator".into(),
            ));
        }
        let v_img = eval_at_op(&self.v, &self.b_img)?;
        if self.w_img.mul(&u_img)? != self.w_img.mul(&self.m_img)?.add(&v_img)? {
            return Err(Error::InvarianceViolated(
                "weighted closure constant is wrong".into(),
            ));
        }
        let seed = eval_at_op(&self.p0, &self.b_img)?
            .mul(&self.w_img)?
            .add(&eval_at_op(&self.q0, &self.b_img)?)?
            .mul(&self.m_img)?
            .add(&eval_at_op(&self.r0, &self.b_img)?)?;
        if self.op != seed {
            return Err(Error::InvarianceViolated(
                "seed row does not reproduce the operator".into(),
            ));
        }
        Ok(self)
    }

    /// (P_j, Q_j, R_j) for j = 0..=n.
    pub fn rows(&self, n: u32) -> Vec<(Poly, Poly, Poly)> {
        let one = Poly::one(Var::A);
        let a = Poly::gen(Var::A);
        let am1 = &a - &one;
        let ap1 = &a + &one;
        let mut out = vec![(self.p0.clone(), self.q0.clone(), self.r0.clone())];
        for _ in 0..n {
            let (p, q, r) = out.last().unwrap();
            let rn = &(&(&a * r) - &(&self.v * p)) - &(&self.u * q);
            out.push((&am1 * p, &ap1 * q, rn));
        }
        out
    }

    pub fn divide(&self, n: u32) -> (Poly, Poly, Poly) {
        self.rows(n).pop().unwrap()
    }

    /// Check H B^n = (P_n W + Q_n) M + R_n by full re-multiplication.
    pub fn verify_division(&self, n: u32) -> Result<(), Error> {
        let (p, q, r) = self.divide(n);
        let lhs = self.op.mul(&self.b_img.pow(n)?)?;
        let rhs = eval_at_op(&p, &self.b_img)?
            .mul(&self.w_img)?
            .add(&eval_at_op(&q, &self.b_img)?)?
            .mul(&self.m_img)?
            .add(&eval_at_op(&r, &self.b_img)?)?;
        if lhs == rhs {
            Ok(())
        } else {
            Err(Error::InvarianceViolated(format!(
                "division at power {} does not re-multiply",
                n
            )))
        }
    }

    /// Remainder of H * s(B) against the factor, as a polynomial in B.
    pub fn remainder_of(&self, s: &Poly) -> Poly {
        let deg = s.degree().unwrap_or(0) as u32;
        let rows = self.rows(deg);
        let mut acc = Poly::zero(Var::A);
        for (j, (_, _, r)) in rows.iter().enumerate() {
            acc = &acc + &r.scale(&s.coeff(j));
        }
        acc
    }

    /// The remainder map restricted to span(1, B, ..., B^n), as a matrix
    /// with columns R_0..R_n; fails unless every remainder stays inside.
    pub fn remainder_matrix(&self, n: usize) -> Result<Mat, Error> {
        let rows_pqr = self.rows(n as u32);
        for (j, (_, _, r)) in rows_pqr.iter().enumerate() {
            if r.degree().map_or(false, |d| d > n) {
                return Err(Error::InvarianceViolated(format!(
                    "power {} leaves the span: remainder has degree {}",
                    j,
                    r.degree().unwrap()
                )));
            }
        }
        let rows: Vec<Vec<Scalar>> = (0..=n)
            .map(|i| (0..=n).map(|j| rows_pqr[j].2.coeff(i)).collect())
            .collect();
        Mat::from_rows(rows)
    }
}

/// Remainders of H X^j against the left ideal of d: the plain polynomial
/// action.  Columns j = 0..n; fails unless the span of 1..X^n is invariant.
pub fn x_basis_matrix(h: &WeylOp, n: usize) -> Result<Mat, Error> {
    let mut cols: Vec<Poly> = vec![];
    for j in 0..=n {
        let xj = Poly::monomial(Var::X, j, Scalar::one());
        let r = h.apply_diff(&xj)?;
        if r.degree().map_or(false, |d| d > n) {
            return Err(Error::InvarianceViolated(format!(
                "power {} leaves the span: image has degree {}",
                j,
                r.degree().unwrap()
            )));
        }
        cols.push(r);
    }
    let rows: Vec<Vec<Scalar>> = (0..=n)
        .map(|i| (0..=n).map(|j| cols[j].coeff(i)).collect())
        .collect();
    Mat::from_rows(rows)
}

#[derive(Clone, Debug)]
pub struct EigenPair {
    pub value: RootVal,
    /// Coordinates against 1..B^n, scaled so the top one is 1; absent when
    /// the eigenvalue is properly complex or the top coordinate vanishes.
    pub vector: Option<Vec<Scalar>>,
}

fn normalize_top(v: &[Scalar], tol: Option<&BigFloat>) -> Option<Vec<Scalar>> {
    let top = v.last()?;
    match tol {
        None => {
            if top.is_zero() {
                return None;
            }
        }
        Some(t) => {
            let scale = v
                .iter()
                .map(|c| c.to_float(t.digits()).abs())
                .max_by(|a, b| a.cmp_abs(b))?;
            if top.to_float(t.digits()).abs().cmp_abs(&scale.mul(t)) == std::cmp::Ordering::Less {
                return None;
            }
        }
    }
    v.iter()
        .map(|c| c.checked_div(top).ok())
        .collect::<Option<Vec<_>>>()
}

/// Eigenvalues of the remainder matrix with, where available, monic
/// eigenvectors.  Exact eigenvalues get exact vectors; real approximate
/// ones get vectors at the working precision.
pub fn eigen_solve(m: &Mat, digits: u32, seed: u64) -> Result<Vec<EigenPair>, Error> {
    let ch = m.charpoly()?;
    let roots = find_roots(&ch, digits, seed)?;
    let n = m.rows;
    let im_tol = BigFloat::pow10(-(digits as i64 - 10), digits);
    let vec_tol = BigFloat::pow10(-((digits as i64) / 2), digits);
    let mut out = vec![];
    for root in roots {
        let vector = match &root {
            RootVal::Exact(q) => {
                let mut shifted = m.clone();
                for i in 0..n {
                    shifted.set(i, i, shifted.get(i, i) - q);
                }
                shifted
                    .nullspace()?
                    .iter()
                    .find_map(|v| normalize_top(v, None))
            }
            RootVal::Approx(z) => {
                if z.im.abs().cmp_abs(&im_tol) == std::cmp::Ordering::Greater {
                    None
                } else {
                    let q = Scalar::Float(z.re.clone());
                    let mut shifted = Mat::zero(n, n);
                    for i in 0..n {
                        for j in 0..n {
                            let e = Scalar::Float(m.get(i, j).to_float(digits));
                            shifted.set(i, j, if i == j { &e - &q } else { e });
                        }
                    }
                    shifted
                        .nullspace()?
                        .iter()
                        .find_map(|v| normalize_top(v, Some(&vec_tol)))
                }
            }
        };
        out.push(EigenPair {
            value: root,
            vector,
        });
    }
    Ok(out)
}

/// The extra lower parameters carried by an eigenvector S, read off as
/// gamma minus each root of S.
pub fn extract_e(
    sstar: &Poly,
    gamma: &Scalar,
    digits: u32,
    seed: u64,
) -> Result<Vec<RootVal>, Error> {
    Ok(find_roots(sstar, digits, seed)?
        .into_iter()
        .map(|r| match r {
            RootVal::Exact(s) => RootVal::Exact(gamma - &s),
            RootVal::Approx(z) => {
                let g = Cplx::from_float(gamma.to_float(z.re.digits()));
                RootVal::Approx(g.sub(&z))
            }
        })
        .collect())
}

/// Target data for realizing one extra upper/lower parameter pair
/// (e + 1 over e) on top of a two-point series.
#[derive(Clone, Debug)]
pub struct HypTarget {
    pub alpha: Scalar,
    pub beta: Scalar,
    pub gamma: Scalar,
    pub e1: Scalar,
}

#[derive(Clone, Debug)]
pub struct Realization {
    pub params: HeunParams,
    pub qstar: Scalar,
}

/// Four-point parameters whose span-2 eigenproblem reproduces the target:
/// epsilon = -1, delta from the constraint, and
///   a  = e1 (e1 - gamma + 1) / ((e1 - alpha)(e1 - beta)),
///   q* = alpha beta (e1 + 1)(e1 - gamma + 1) / ((e1 - alpha)(e1 - beta)).
pub fn heun_for_target(t: &HypTarget) -> Result<Realization, Error> {
    let one = Scalar::one();
    let den = &(&t.e1 - &t.alpha) * &(&t.e1 - &t.beta);
    if den.is_zero() {
        return Err(Error::ShapeMismatch(
            "extra parameter collides with an upper one".into(),
        ));
    }
    let lift = &(&t.e1 - &t.gamma) + &one;
    let a = (&t.e1 * &lift).checked_div(&den)?;
    let qstar = (&(&(&t.alpha * &t.beta) * &(&t.e1 + &one)) * &lift).checked_div(&den)?;
    let params = HeunParams::from_constraint(
        a,
        t.alpha.clone(),
        t.beta.clone(),
        t.gamma.clone(),
        Scalar::from_int(-1),
    );
    Ok(Realization { params, qstar })
}

/// d (theta + b_1 - 1)...(theta + b_q - 1) - (theta + a_1)...(theta + a_p),
/// the recurrence operator of a series with upper parameters a and lower
/// parameters b (theta = X d).
pub fn gen_hyp_op(upper: &[Scalar], lower: &[Scalar]) -> Result<WeylOp, Error> {
    let pair = GeneratorPair::standard();
    let one = Scalar::one();
    let mut left = WeylOp::lower_gen(&pair);
    for b in lower {
        left = left.mul(&theta_shift(&(b - &one)))?;
    }
    let mut right = WeylOp::one(&pair);
    for a in upper {
        right = right.mul(&theta_shift(a))?;
    }
    left.sub(&right)
}

/// Same operator built straight from an eigenvector S (monic in the basis
/// generator): d (theta + gamma - 1) S(theta + gamma - 1)
/// - (theta + alpha)(theta + beta) S(theta + gamma + 1).  Works whether or
/// not the roots of S are rational.
pub fn gen_hyp_from_sstar(
    alpha: &Scalar,
    beta: &Scalar,
    gamma: &Scalar,
    sstar: &Poly,
) -> Result<WeylOp, Error> {
    let pair = GeneratorPair::standard();
    let one = Scalar::one();
    let low = theta_shift(&(gamma - &one));
    let high = theta_shift(&(gamma + &one));
    let left = WeylOp::lower_gen(&pair)
        .mul(&low)?
        .mul(&eval_at_op(sstar, &low)?)?;
    let right = theta_shift(alpha)
        .mul(&theta_shift(beta))?
        .mul(&eval_at_op(sstar, &high)?)?;
    left.sub(&right)
}
