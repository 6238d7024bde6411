//! Concrete models of the raise/lower pair.  The differential model reads
//! a series as a polynomial in x.  The difference model sets the lower
//! generator to the forward difference and lets the raise generator
//! multiply by x while shifting the argument left:
//!   (d f)(x) = f(x+1) - f(x),      (X f)(x) = x f(x-1),
//! so X^k * 1 realizes as the falling factorial x(x-1)...(x-k+1).

use dmod_core::adic::AdicSeries;
use dmod_core::poly::{Poly, Var};
use dmod_core::scalar::{binomial, factorial, Scalar};
use dmod_core::weyl::WeylOp;
use dmod_core::Error;

/// x(x-1)...(x-d+1) as an exact scalar.
pub fn falling(x: i64, d: u32) -> Scalar {
    let mut acc = Scalar::one();
    for j in 0..d as i64 {
        acc = &acc * &Scalar::from_int(x - j);
    }
    acc
}

/// Exact samples of a function on a strictly increasing integer domain.
#[derive(Clone, Debug, PartialEq)]
pub struct FunctionTable {
    pub domain: Vec<i64>,
    pub values: Vec<Scalar>,
}

impl FunctionTable {
    pub fn new(domain: Vec<i64>, values: Vec<Scalar>) -> Result<Self, Error> {
        if domain.len() != values.len() {
            return Err(Error::ShapeMismatch("one value per sample point".into()));
        }
        if domain.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::ShapeMismatch(
                "sample points must increase strictly".into(),
            ));
        }
        Ok(FunctionTable { domain, values })
    }

    pub fn from_fn(lo: i64, hi: i64, f: impl Fn(i64) -> Scalar) -> Self {
        let domain: Vec<i64> = (lo..=hi).collect();
        let values = domain.iter().map(|&x| f(x)).collect();
        FunctionTable { domain, values }
    }

    pub fn value_at(&self, x: i64) -> Option<&Scalar> {
        self.domain
            .binary_search(&x)
            .ok()
            .map(|i| &self.values[i])
    }

    fn consecutive(&self) -> bool {
        self.domain.windows(2).all(|w| w[1] == w[0] + 1)
    }
}

/// Finite combination sum of c_k * x(x-1)...(x-d_k+1) with distinct
/// degrees; at an integer x >= 0 only the terms with d_k <= x survive.
#[derive(Clone, Debug, PartialEq)]
pub struct FallingSeries {
    /// (degree, coefficient) pairs, degrees strictly increasing.
    pub terms: Vec<(u32, Scalar)>,
}

impl FallingSeries {
    pub fn eval(&self, x: i64) -> Scalar {
        let mut acc = Scalar::zero();
        for (d, c) in &self.terms {
            let f = falling(x, *d);
            if !f.is_zero() {
                acc = &acc + &(c * &f);
            }
        }
        acc
    }

    pub fn table(&self, lo: i64, hi: i64) -> FunctionTable {
        FunctionTable::from_fn(lo, hi, |x| self.eval(x))
    }
}

/// The polynomial model: the class of a series is the series itself,
/// coefficient for coefficient; a Frobenius prefactor x^lambda rides
/// along separately with the caller.
pub fn realize_differential(series: &AdicSeries) -> Poly {
    series.poly.clone()
}

/// The difference model sends the power k to the falling factorial of
/// degree k, coefficient for coefficient.
pub fn realize_difference(series: &AdicSeries) -> FallingSeries {
    let terms = series
        .poly
        .coeffs()
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(k, c)| (k as u32, c.clone()))
        .collect();
    FallingSeries { terms }
}

/// Forward difference of order b at y, when the table covers y..y+b.
fn forward_diff(f: &FunctionTable, y: i64, b: u32) -> Option<Scalar> {
    let lo = *f.domain.first()?;
    let hi = *f.domain.last()?;
    if y < lo || y + b as i64 > hi {
        return None;
    }
    let mut acc = Scalar::zero();
    for j in 0..=b {
        let sign = if (b - j) % 2 == 0 {
            Scalar::one()
        } else {
            Scalar::from_int(-1)
        };
        let term = &(&sign * &binomial(b, j)) * f.value_at(y + j as i64)?;
        acc = &acc + &term;
    }
    Some(acc)
}

/// Apply an operator to a table under the difference model:
/// (X^a d^b f)(x) = x(x-1)...(x-a+1) * (Delta^b f)(x-a).  Each lower
/// power consumes one point on the right and each raise power shifts the
/// argument left; a vanishing falling factor excuses the unknown
/// difference behind it.  The output keeps every input point where all
/// terms evaluate.
pub fn apply_difference(op: &WeylOp, f: &FunctionTable) -> Result<FunctionTable, Error> {
    if op.pair.raise != Var::X || op.pair.lower != Var::D {
        return Err(Error::ShapeMismatch(
            "the difference model realizes the multiplication/derivation pair".into(),
        ));
    }
    if !f.consecutive() {
        return Err(Error::ShapeMismatch(
            "difference model needs consecutive integer samples".into(),
        ));
    }
    let mut domain = vec![];
    let mut values = vec![];
    'point: for &x in &f.domain {
        let mut acc = Scalar::zero();
        for (&(a, b), c) in op.terms() {
            let fac = falling(x, a);
            if fac.is_zero() {
                continue;
            }
            match forward_diff(f, x - a as i64, b) {
                Some(d) => acc = &acc + &(&(&fac * c) * &d),
                None => continue 'point,
            }
        }
        domain.push(x);
        values.push(acc);
    }
    if domain.is_empty() {
        return Err(Error::DomainTooNarrow(
            "no sample point supports the operator's shifts".into(),
        ));
    }
    FunctionTable::new(domain, values)
}

/// The difference Bessel value at a nonnegative integer:
/// sum over k >= 0 of (-1)^k x(x-1)...(x-n-2k+1) / (2^(n+2k) (n+k)! k!),
/// exact and finite since every term with n+2k > x vanishes.
pub fn difference_bessel(n: u32, x: u32) -> Scalar {
    let mut c = Scalar::one()
        .checked_div(&(&Scalar::from_int(2).pow_u32(n) * &factorial(n)))
        .unwrap();
    let mut acc = Scalar::zero();
    let mut k = 0u32;
    while (n + 2 * k) as i64 <= x as i64 {
        acc = &acc + &(&c * &falling(x as i64, n + 2 * k));
        let den = Scalar::from_int(4 * (k as i64 + 1) * (n as i64 + k as i64 + 1));
        c = (-&c).checked_div(&den).unwrap();
        k += 1;
    }
    acc
}
