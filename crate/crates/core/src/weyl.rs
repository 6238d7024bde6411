//! Noncommutative operator algebra on a generator pair (raise, lower)
//! subject to one constant-commutator relation [lower, raise] = c.
//!
//! Operators are kept in normal order: raise powers left, lower powers
//! right.  The same machinery serves the multiplication/derivation pair,
//! its swapped orientation, and the creation/annihilation pair.

use crate::poly::{Poly, Var};
use crate::scalar::{binomial, factorial, Scalar};
use crate::Error;
use std::collections::BTreeMap;
use std::fmt;

/// A pair of generators with constant commutator c = [lower, raise].
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GeneratorPair {
    pub raise: Var,
    pub lower: Var,
    pub comm: Scalar,
}

impl GeneratorPair {
    /// Multiplication/derivation pair: [D, X] = 1.
    pub fn standard() -> Self {
        GeneratorPair {
            raise: Var::X,
            lower: Var::D,
            comm: Scalar::one(),
        }
    }

    /// Swapped orientation: raise by D, lower by X, [X, D] = -1.
    pub fn dual() -> Self {
        GeneratorPair {
            raise: Var::D,
            lower: Var::X,
            comm: -&Scalar::one(),
        }
    }

    /// Creation/annihilation pair: raise = D - X, lower = D + X, with
    /// [D + X, D - X] = -2.
    pub fn creation() -> Self {
        GeneratorPair {
            raise: Var::Adag,
            lower: Var::A,
            comm: Scalar::from_int(-2),
        }
    }

    pub fn swapped(&self) -> Self {
        GeneratorPair {
            raise: self.lower,
            lower: self.raise,
            comm: -&self.comm,
        }
    }
}

/// Normal-ordered operator: map (raise_pow, lower_pow) -> coefficient.
#[derive(Clone, PartialEq, Debug)]
pub struct WeylOp {
    pub pair: GeneratorPair,
    terms: BTreeMap<(u32, u32), Scalar>,
}

impl WeylOp {
    pub fn zero(pair: &GeneratorPair) -> Self {
        WeylOp {
            pair: pair.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(pair: &GeneratorPair) -> Self {
        WeylOp::monomial(pair, 0, 0, Scalar::one())
    }

    pub fn monomial(pair: &GeneratorPair, raise_pow: u32, lower_pow: u32, c: Scalar) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((raise_pow, lower_pow), c);
        }
        WeylOp {
            pair: pair.clone(),
            terms,
        }
    }

    pub fn raise_gen(pair: &GeneratorPair) -> Self {
        WeylOp::monomial(pair, 1, 0, Scalar::one())
    }

    pub fn lower_gen(pair: &GeneratorPair) -> Self {
        WeylOp::monomial(pair, 0, 1, Scalar::one())
    }

    pub fn constant(pair: &GeneratorPair, c: Scalar) -> Self {
        WeylOp::monomial(pair, 0, 0, c)
    }

    pub fn from_terms(pair: &GeneratorPair, terms: &[(u32, u32, Scalar)]) -> Self {
        let mut op = WeylOp::zero(pair);
        for (a, b, c) in terms {
            op.add_term(*a, *b, c.clone());
        }
        op
    }

    /// Polynomial in the raise generator as an operator.
    pub fn from_raise_poly(pair: &GeneratorPair, p: &Poly) -> Self {
        let mut op = WeylOp::zero(pair);
        for (k, c) in p.coeffs().iter().enumerate() {
            op.add_term(k as u32, 0, c.clone());
        }
        op
    }

    /// Polynomial in the lower generator as an operator.
    pub fn from_lower_poly(pair: &GeneratorPair, p: &Poly) -> Self {
        let mut op = WeylOp::zero(pair);
        for (k, c) in p.coeffs().iter().enumerate() {
            op.add_term(0, k as u32, c.clone());
        }
        op
    }

    pub fn add_term(&mut self, raise_pow: u32, lower_pow: u32, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let entry = self
            .terms
            .entry((raise_pow, lower_pow))
            .or_insert_with(Scalar::zero);
        *entry = &*entry + &c;
        if entry.is_zero() {
            self.terms.remove(&(raise_pow, lower_pow));
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &Scalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, raise_pow: u32, lower_pow: u32) -> Scalar {
        self.terms
            .get(&(raise_pow, lower_pow))
            .cloned()
            .unwrap_or_else(Scalar::zero)
    }

    fn check_pair(&self, other: &WeylOp) -> Result<(), Error> {
        if self.pair != other.pair {
            return Err(Error::PairMismatch);
        }
        Ok(())
    }

    /// Order: highest power of the lower generator present.
    pub fn lower_order(&self) -> u32 {
        self.terms.keys().map(|&(_, b)| b).max().unwrap_or(0)
    }

    /// Highest power of the raise generator present.
    pub fn raise_degree(&self) -> u32 {
        self.terms.keys().map(|&(a, _)| a).max().unwrap_or(0)
    }

    /// Coefficient of lower^b, as a polynomial in the raise generator.
    pub fn lower_coeff(&self, b: u32) -> Poly {
        let mut coeffs: Vec<(usize, Scalar)> = vec![];
        for (&(a, bb), c) in &self.terms {
            if bb == b {
                coeffs.push((a as usize, c.clone()));
            }
        }
        let deg = coeffs.iter().map(|(a, _)| *a).max().unwrap_or(0);
        let mut v = vec![Scalar::zero(); deg + 1];
        for (a, c) in coeffs {
            v[a] = c;
        }
        Poly::new(self.pair.raise, v)
    }

    /// True when the operator is a pure polynomial in the raise generator.
    pub fn is_raise_poly(&self) -> bool {
        self.terms.keys().all(|&(_, b)| b == 0)
    }

    /// Extract the raise-polynomial; error if lower powers are present.
    pub fn as_raise_poly(&self) -> Result<Poly, Error> {
        if !self.is_raise_poly() {
            return Err(Error::ShapeMismatch(
                "operator still carries lower-generator powers".into(),
            ));
        }
        Ok(self.lower_coeff(0))
    }

    pub fn scale(&self, c: &Scalar) -> WeylOp {
        let mut op = WeylOp::zero(&self.pair);
        for (&(a, b), v) in &self.terms {
            op.add_term(a, b, v * c);
        }
        op
    }

    pub fn add(&self, other: &WeylOp) -> Result<WeylOp, Error> {
        self.check_pair(other)?;
        let mut op = self.clone();
        for (&(a, b), v) in &other.terms {
            op.add_term(a, b, v.clone());
        }
        Ok(op)
    }

    pub fn sub(&self, other: &WeylOp) -> Result<WeylOp, Error> {
        self.check_pair(other)?;
        let mut op = self.clone();
        for (&(a, b), v) in &other.terms {
            op.add_term(a, b, -v);
        }
        Ok(op)
    }

    pub fn neg(&self) -> WeylOp {
        self.scale(&Scalar::from_int(-1))
    }

    /// Normal-ordered product.  Uses
    /// lower^m raise^n = sum_k k! C(m,k) C(n,k) c^k raise^(n-k) lower^(m-k).
    pub fn mul(&self, other: &WeylOp) -> Result<WeylOp, Error> {
        self.check_pair(other)?;
        let mut op = WeylOp::zero(&self.pair);
        for (&(a1, b1), v1) in &self.terms {
            for (&(a2, b2), v2) in &other.terms {
                let v = v1 * v2;
                let kmax = b1.min(a2);
                let mut cpow = Scalar::one();
                for k in 0..=kmax {
                    let w = &(&(&factorial(k) * &binomial(b1, k)) * &binomial(a2, k)) * &cpow;
                    op.add_term(a1 + a2 - k, b1 + b2 - k, &v * &w);
                    cpow = &cpow * &self.pair.comm;
                }
            }
        }
        Ok(op)
    }

    pub fn pow(&self, e: u32) -> Result<WeylOp, Error> {
        let mut acc = WeylOp::one(&self.pair);
        for _ in 0..e {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    pub fn commutator(&self, other: &WeylOp) -> Result<WeylOp, Error> {
        self.mul(other)?.sub(&other.mul(self)?)
    }

    /// Rewrite in the swapped orientation (raise and lower exchanged).
    pub fn swap_orientation(&self) -> WeylOp {
        let new_pair = self.pair.swapped();
        let mut op = WeylOp::zero(&new_pair);
        // Old monomial raise^a lower^b reads lower^a raise^b in the new
        // orientation and gets reordered with the new commutator.
        let c_new = &new_pair.comm;
        for (&(a, b), v) in &self.terms {
            let kmax = a.min(b);
            let mut cpow = Scalar::one();
            for k in 0..=kmax {
                let w = &(&(&factorial(k) * &binomial(a, k)) * &binomial(b, k)) * &cpow;
                op.add_term(b - k, a - k, v * &w);
                cpow = &cpow * c_new;
            }
        }
        op
    }

    /// Substitute both generators by operators over another pair.  The
    /// images must satisfy the same commutation relation.
    pub fn express_in(&self, raise_as: &WeylOp, lower_as: &WeylOp) -> Result<WeylOp, Error> {
        raise_as.check_pair(lower_as)?;
        let comm = lower_as.commutator(raise_as)?;
        let expected = WeylOp::constant(&raise_as.pair, self.pair.comm.clone());
        if comm != expected {
            return Err(Error::NonInvertibleSubstitution);
        }
        let mut acc = WeylOp::zero(&raise_as.pair);
        // Cache powers; exponents are small.
        let amax = self.raise_degree();
        let bmax = self.lower_order();
        let mut rp = Vec::with_capacity(amax as usize + 1);
        let mut lp = Vec::with_capacity(bmax as usize + 1);
        rp.push(WeylOp::one(&raise_as.pair));
        for _ in 0..amax {
            rp.push(rp.last().unwrap().mul(raise_as)?);
        }
        lp.push(WeylOp::one(&raise_as.pair));
        for _ in 0..bmax {
            lp.push(lp.last().unwrap().mul(lower_as)?);
        }
        for (&(a, b), v) in &self.terms {
            let t = rp[a as usize].mul(&lp[b as usize])?.scale(v);
            acc = acc.add(&t)?;
        }
        Ok(acc)
    }

    /// Division with remainder by an operator of order one in the lower
    /// generator, written u(raise)*lower + v(raise).  Eliminates the top
    /// lower power at each step; the leading raise-coefficient must be
    /// divisible by u exactly.  Returns (quotient, remainder) with the
    /// remainder a pure polynomial in the raise generator.
    pub fn divide_lower_linear(&self, divisor: &WeylOp) -> Result<(WeylOp, Poly), Error> {
        self.check_pair(divisor)?;
        if divisor.lower_order() != 1 {
            return Err(Error::NonMonicDivisor);
        }
        let u = divisor.lower_coeff(1);
        if u.is_zero() {
            return Err(Error::NonMonicDivisor);
        }
        let mut rem = self.clone();
        let mut quo = WeylOp::zero(&self.pair);
        loop {
            let m = rem.lower_order();
            if m == 0 || rem.is_zero() {
                break;
            }
            let wm = rem.lower_coeff(m);
            let (q, r) = wm.divrem(&u)?;
            if !r.is_zero() {
                return Err(Error::NotImmediate(format!(
                    "leading coefficient {} not divisible by {}",
                    wm, u
                )));
            }
            let term = WeylOp::from_raise_poly(&self.pair, &q)
                .mul(&WeylOp::monomial(&self.pair, 0, m - 1, Scalar::one()))?;
            quo = quo.add(&term)?;
            rem = rem.sub(&term.mul(divisor)?)?;
            if rem.lower_order() >= m && !rem.is_zero() && rem.lower_order() != 0 {
                // The top power must strictly drop; anything else is a bug.
                if rem.lower_coeff(m) != Poly::zero(self.pair.raise) || rem.lower_order() > m {
                    return Err(Error::InvarianceViolated(
                        "division failed to reduce the top lower power".into(),
                    ));
                }
            }
        }
        let r = rem.as_raise_poly()?;
        Ok((quo, r))
    }

    /// Express through the grade generator raise*lower: returns coefficients
    /// p_j (polynomials in raise) with self = sum_j p_j(raise) * grade^j.
    /// Possible exactly when every monomial has raise_pow >= lower_pow.
    pub fn graded_form(&self) -> Result<GradedOp, Error> {
        let c = &self.pair.comm;
        let mut coeffs: Vec<Poly> = vec![];
        let rvar = self.pair.raise;
        for (&(a, b), v) in &self.terms {
            if a < b {
                return Err(Error::NotGradedExpressible);
            }
            // raise^a lower^b = raise^(a-b) * T_b with
            // T_b = prod_{i=0}^{b-1} (grade - i*c).
            let mut t = Poly::one(Var::Grade);
            for i in 0..b {
                let shift = Poly::new(
                    Var::Grade,
                    vec![-&(&Scalar::from_int(i as i64) * c), Scalar::one()],
                );
                t = &t * &shift;
            }
            for (j, tc) in t.coeffs().iter().enumerate() {
                if coeffs.len() <= j {
                    coeffs.resize(j + 1, Poly::zero(rvar));
                }
                let add = Poly::monomial(rvar, (a - b) as usize, v * tc);
                coeffs[j] = &coeffs[j] + &add;
            }
        }
        while coeffs.last().map_or(false, |p| p.is_zero()) {
            coeffs.pop();
        }
        Ok(GradedOp {
            pair: self.pair.clone(),
            coeffs,
        })
    }

    /// Action as a differential operator on a polynomial in the raise
    /// generator; valid for the multiplication/derivation orientation.
    pub fn apply_diff(&self, f: &Poly) -> Result<Poly, Error> {
        if self.pair.lower != Var::D || self.pair.raise != Var::X {
            return Err(Error::ShapeMismatch(
                "polynomial action requires the multiplication/derivation pair".into(),
            ));
        }
        let mut acc = Poly::zero(Var::X);
        for (&(a, b), v) in &self.terms {
            let mut g = f.clone();
            for _ in 0..b {
                g = g.derivative();
            }
            acc = &acc + &g.shift_up(a as usize).scale(v);
        }
        Ok(acc)
    }

    /// Max |coefficient| across all terms.
    pub fn coeff_norm(&self) -> Scalar {
        let mut best = Scalar::zero();
        for v in self.terms.values() {
            let a = v.abs();
            if a.cmp_value(&best) == std::cmp::Ordering::Greater {
                best = a;
            }
        }
        best
    }
}

impl fmt::Display for WeylOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        // Highest raise power first reads closest to handwritten form.
        for (&(a, b), v) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if a == 0 && b == 0 {
                write!(f, "{}", v)?;
                continue;
            }
            if !v.is_one() {
                write!(f, "{}*", v)?;
            }
            let mut wrote = false;
            if a > 0 {
                if a == 1 {
                    write!(f, "{}", self.pair.raise)?;
                } else {
                    write!(f, "{}^{}", self.pair.raise, a)?;
                }
                wrote = true;
            }
            if b > 0 {
                if wrote {
                    write!(f, "*")?;
                }
                if b == 1 {
                    write!(f, "{}", self.pair.lower)?;
                } else {
                    write!(f, "{}^{}", self.pair.lower, b)?;
                }
            }
        }
        Ok(())
    }
}

/// Operator expressed through the grade generator:
/// sum_j coeffs[j](raise) * grade^j.
#[derive(Clone, PartialEq, Debug)]
pub struct GradedOp {
    pub pair: GeneratorPair,
    pub coeffs: Vec<Poly>,
}

impl GradedOp {
    pub fn grade_degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeff(&self, j: usize) -> Poly {
        self.coeffs
            .get(j)
            .cloned()
            .unwrap_or_else(|| Poly::zero(self.pair.raise))
    }

    /// Re-expand into the normal-ordered operator.
    pub fn to_weyl(&self) -> Result<WeylOp, Error> {
        let grade = WeylOp::monomial(&self.pair, 1, 1, Scalar::one());
        let mut acc = WeylOp::zero(&self.pair);
        let mut gp = WeylOp::one(&self.pair);
        for (j, p) in self.coeffs.iter().enumerate() {
            if j > 0 {
                gp = gp.mul(&grade)?;
            }
            acc = acc.add(&WeylOp::from_raise_poly(&self.pair, p).mul(&gp)?)?;
        }
        Ok(acc)
    }

    /// Division with remainder by (grade - lambda): quotient stays in
    /// graded form, the remainder substitutes grade -> lambda.
    pub fn divide_at(&self, lambda: &Scalar) -> (GradedOp, Poly) {
        let rvar = self.pair.raise;
        let mut rem = Poly::zero(rvar);
        let n = self.coeffs.len();
        let mut quo = vec![Poly::zero(rvar); n.saturating_sub(1)];
        let mut lpow = Scalar::one();
        for (j, p) in self.coeffs.iter().enumerate() {
            rem = &rem + &p.scale(&lpow);
            // grade^j - lambda^j = (sum_{i<j} lambda^(j-1-i) grade^i)(grade - lambda)
            let mut l = Scalar::one();
            for i in (0..j).rev() {
                quo[i] = &quo[i] + &p.scale(&l);
                l = &l * lambda;
            }
            lpow = &lpow * lambda;
        }
        while quo.last().map_or(false, |p| p.is_zero()) {
            quo.pop();
        }
        (
            GradedOp {
                pair: self.pair.clone(),
                coeffs: quo,
            },
            rem,
        )
    }

    /// Indicial data: the polynomial sum_j coeffs[j](0) * lambda^j.
    pub fn constant_part(&self) -> Poly {
        Poly::new(
            Var::Lambda,
            self.coeffs.iter().map(|p| p.coeff(0)).collect::<Vec<_>>(),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(v: i64) -> Scalar {
        Scalar::from_int(v)
    }

    #[test]
    fn reorder_spot_checks() {
        let p = GeneratorPair::standard();
        let x = WeylOp::raise_gen(&p);
        let d = WeylOp::lower_gen(&p);
        // D X = X D + 1
        let dx = d.mul(&x).unwrap();
        let expect = WeylOp::from_terms(&p, &[(1, 1, s(1)), (0, 0, s(1))]);
        assert_eq!(dx, expect);
        // D^2 X^2 = X^2 D^2 + 4 X D + 2
        let d2x2 = d.pow(2).unwrap().mul(&x.pow(2).unwrap()).unwrap();
        let expect = WeylOp::from_terms(&p, &[(2, 2, s(1)), (1, 1, s(4)), (0, 0, s(2))]);
        assert_eq!(d2x2, expect);
    }

    #[test]
    fn creation_pair_commutator() {
        let p = GeneratorPair::creation();
        let raise = WeylOp::raise_gen(&p);
        let lower = WeylOp::lower_gen(&p);
        let c = lower.commutator(&raise).unwrap();
        assert_eq!(c, WeylOp::constant(&p, s(-2)));
    }

    #[test]
    fn express_creation_in_standard() {
        let cp = GeneratorPair::creation();
        let sp = GeneratorPair::standard();
        let x = WeylOp::raise_gen(&sp);
        let d = WeylOp::lower_gen(&sp);
        let raise_img = d.sub(&x).unwrap(); // D - X
        let lower_img = d.add(&x).unwrap(); // D + X
        // grade = raise*lower maps to D^2 - X^2 + 1
        let grade = WeylOp::monomial(&cp, 1, 1, s(1));
        let img = grade.express_in(&raise_img, &lower_img).unwrap();
        let expect = WeylOp::from_terms(&sp, &[(0, 2, s(1)), (2, 0, s(-1)), (0, 0, s(1))]);
        assert_eq!(img, expect);
    }

    #[test]
    fn express_rejects_wrong_commutator() {
        let cp = GeneratorPair::creation();
        let sp = GeneratorPair::standard();
        let x = WeylOp::raise_gen(&sp);
        let d = WeylOp::lower_gen(&sp);
        let grade = WeylOp::monomial(&cp, 1, 1, s(1));
        assert_eq!(
            grade.express_in(&x, &d).unwrap_err(),
            Error::NonInvertibleSubstitution
        );
    }

    #[test]
    fn swap_orientation_round_trip() {
        let p = GeneratorPair::standard();
        let op = WeylOp::from_terms(&p, &[(2, 2, s(3)), (1, 0, s(-1)), (0, 3, s(2))]);
        let back = op.swap_orientation().swap_orientation();
        assert_eq!(back, op);
        // X D in swapped orientation is D X - 1.
        let xd = WeylOp::monomial(&p, 1, 1, s(1));
        let sw = xd.swap_orientation();
        let dp = p.swapped();
        let expect = WeylOp::from_terms(&dp, &[(1, 1, s(1)), (0, 0, s(-1))]);
        assert_eq!(sw, expect);
    }

    #[test]
    fn divide_by_lower_generator() {
        let p = GeneratorPair::standard();
        // (D^2 - X) * X = X D^2 + 2 D - X^2; remainder mod lower = -X^2.
        let l = WeylOp::from_terms(&p, &[(0, 2, s(1)), (1, 0, s(-1))]);
        let x = WeylOp::raise_gen(&p);
        let lx = l.mul(&x).unwrap();
        let d = WeylOp::lower_gen(&p);
        let (q, r) = lx.divide_lower_linear(&d).unwrap();
        assert_eq!(r, Poly::monomial(Var::X, 2, s(-1)));
        let back = q.mul(&d).unwrap();
        let rop = WeylOp::from_raise_poly(&p, &r);
        assert_eq!(back.add(&rop).unwrap(), lx);
    }

    #[test]
    fn divide_with_nonunit_leading() {
        // Swapped orientation, divisor (D^2 - D) X + (b-2) D + (1-a)
        // with a = 2, b = 3: remainder of X D by X is -1.
        let dp = GeneratorPair::dual();
        let xd = WeylOp::from_terms(&dp, &[(1, 1, s(1)), (0, 0, s(-1))]); // X D swapped
        let xgen = WeylOp::lower_gen(&dp);
        let (q, r) = xd.divide_lower_linear(&xgen).unwrap();
        assert_eq!(r, Poly::constant(Var::D, s(-1)));
        assert_eq!(q, WeylOp::monomial(&dp, 1, 0, s(1)));
    }

    #[test]
    fn graded_form_and_division() {
        let p = GeneratorPair::standard();
        // X^2 D^2 = G(G - 1) with G = X D.
        let op = WeylOp::monomial(&p, 2, 2, s(1));
        let g = op.graded_form().unwrap();
        assert_eq!(g.coeff(0), Poly::zero(Var::X));
        assert_eq!(g.coeff(1), Poly::constant(Var::X, s(-1)));
        assert_eq!(g.coeff(2), Poly::constant(Var::X, s(1)));
        assert_eq!(g.to_weyl().unwrap(), op);
        // Divide X^2 D^2 + X D = G^2 by (G - 2): quotient G + 2, remainder 4.
        let op2 = WeylOp::from_terms(&p, &[(2, 2, s(1)), (1, 1, s(1))]);
        let g2 = op2.graded_form().unwrap();
        let (quo, rem) = g2.divide_at(&s(2));
        assert_eq!(rem, Poly::constant(Var::X, s(4)));
        let grade_minus = WeylOp::from_terms(&p, &[(1, 1, s(1)), (0, 0, s(-2))]);
        let back = quo
            .to_weyl()
            .unwrap()
            .mul(&grade_minus)
            .unwrap()
            .add(&WeylOp::from_raise_poly(&p, &rem))
            .unwrap();
        assert_eq!(back, op2);
    }

    #[test]
    fn graded_form_rejects_excess_lowering() {
        let p = GeneratorPair::standard();
        let op = WeylOp::monomial(&p, 1, 2, s(1));
        assert_eq!(op.graded_form().unwrap_err(), Error::NotGradedExpressible);
    }

    #[test]
    fn polynomial_action() {
        let p = GeneratorPair::standard();
        // (X D^2 + 3) acting on X^3: X * 6X + 3 X^3 = 3X^3 + 6X^2.
        let op = WeylOp::from_terms(&p, &[(1, 2, s(1)), (0, 0, s(3))]);
        let f = Poly::monomial(Var::X, 3, s(1));
        let out = op.apply_diff(&f).unwrap();
        let expect = &Poly::monomial(Var::X, 3, s(3)) + &Poly::monomial(Var::X, 2, s(6));
        assert_eq!(out, expect);
    }

    #[test]
    fn grade_commutation_with_raise() {
        // G * raise = raise * (G + c) for all three pairs.
        for pair in [
            GeneratorPair::standard(),
            GeneratorPair::dual(),
            GeneratorPair::creation(),
        ] {
            let grade = WeylOp::monomial(&pair, 1, 1, s(1));
            let r = WeylOp::raise_gen(&pair);
            let lhs = grade.mul(&r).unwrap();
            let shifted = grade
                .add(&WeylOp::constant(&pair, pair.comm.clone()))
                .unwrap();
            let rhs = r.mul(&shifted).unwrap();
            assert_eq!(lhs, rhs);
        }
    }
}
