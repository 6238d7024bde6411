//! Valuations and truncated power series in the raise generator.

use crate::poly::{Poly, Var};
use crate::scalar::Scalar;
use std::cmp::Ordering;
use std::fmt;

/// Order of vanishing.  `AtLeast(n)` records that a truncated object is
/// zero through power n-1 but its tail is unknown.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Valuation {
    Finite(u32),
    AtLeast(u32),
    Infinite,
}

impl Valuation {
    /// Known lower bound on the order of vanishing.
    pub fn floor(&self) -> Option<u32> {
        match self {
            Valuation::Finite(n) | Valuation::AtLeast(n) => Some(*n),
            Valuation::Infinite => None,
        }
    }

    pub fn at_least(&self, n: u32) -> bool {
        match self {
            Valuation::Finite(v) | Valuation::AtLeast(v) => *v >= n,
            Valuation::Infinite => true,
        }
    }

    pub fn exact(&self) -> Option<u32> {
        match self {
            Valuation::Finite(n) => Some(*n),
            _ => None,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(n) => write!(f, "{}", n),
            Valuation::AtLeast(n) => write!(f, ">={}", n),
            Valuation::Infinite => write!(f, "inf"),
        }
    }
}

/// Compare two known-exact valuations (Infinite is largest).
pub fn val_cmp(a: &Valuation, b: &Valuation) -> Ordering {
    match (a, b) {
        (Valuation::Infinite, Valuation::Infinite) => Ordering::Equal,
        (Valuation::Infinite, _) => Ordering::Greater,
        (_, Valuation::Infinite) => Ordering::Less,
        (x, y) => x.floor().unwrap().cmp(&y.floor().unwrap()),
    }
}

/// Power series known through coefficients of power < prec.
/// `prec: None` means the polynomial is the whole series.
#[derive(Clone, PartialEq, Debug)]
pub struct AdicSeries {
    pub poly: Poly,
    pub prec: Option<u32>,
}

impl AdicSeries {
    pub fn exact(poly: Poly) -> Self {
        AdicSeries { poly, prec: None }
    }

    pub fn truncated(poly: Poly, prec: u32) -> Self {
        let mut s = AdicSeries {
            poly,
            prec: Some(prec),
        };
        s.clip();
        s
    }

    pub fn zero(var: Var) -> Self {
        AdicSeries::exact(Poly::zero(var))
    }

    fn clip(&mut self) {
        if let Some(p) = self.prec {
            let keep: Vec<Scalar> = self
                .poly
                .coeffs()
                .iter()
                .take(p as usize)
                .cloned()
                .collect();
            self.poly = Poly::new(self.poly.var, keep);
        }
    }

    pub fn valuation(&self) -> Valuation {
        match self.poly.valuation() {
            Some(v) => Valuation::Finite(v as u32),
            None => match self.prec {
                Some(p) => Valuation::AtLeast(p),
                None => Valuation::Infinite,
            },
        }
    }

    pub fn coeff(&self, k: u32) -> Option<Scalar> {
        match self.prec {
            Some(p) if k >= p => None,
            _ => Some(self.poly.coeff(k as usize)),
        }
    }

    pub fn add(&self, other: &AdicSeries) -> AdicSeries {
        let prec = match (self.prec, other.prec) {
            (None, None) => None,
            (Some(a), None) => Some(a),
            (None, Some(b)) => Some(b),
            (Some(a), Some(b)) => Some(a.min(b)),
        };
        let poly = &self.poly + &other.poly;
        match prec {
            Some(p) => AdicSeries::truncated(poly, p),
            None => AdicSeries::exact(poly),
        }
    }

    /// Product precision: min(prec_f + val(g), prec_g + val(f)).
    pub fn mul(&self, other: &AdicSeries) -> AdicSeries {
        let vf = self.poly.valuation().map(|v| v as u32);
        let vg = other.poly.valuation().map(|v| v as u32);
        let bound = |prec: Option<u32>, val: Option<u32>| -> Option<u32> {
            match (prec, val) {
                (Some(p), Some(v)) => Some(p + v),
                (Some(p), None) => Some(p), // other side is zero so far
                (None, _) => None,
            }
        };
        let c1 = bound(self.prec, vg);
        let c2 = bound(other.prec, vf);
        let prec = match (c1, c2) {
            (None, None) => None,
            (Some(a), None) => Some(a),
            (None, Some(b)) => Some(b),
            (Some(a), Some(b)) => Some(a.min(b)),
        };
        let poly = &self.poly * &other.poly;
        match prec {
            Some(p) => AdicSeries::truncated(poly, p),
            None => AdicSeries::exact(poly),
        }
    }

    pub fn scale(&self, c: &Scalar) -> AdicSeries {
        AdicSeries {
            poly: self.poly.scale(c),
            prec: self.prec,
        }
    }

    pub fn truncate(&self, prec: u32) -> AdicSeries {
        let p = match self.prec {
            Some(q) => q.min(prec),
            None => prec,
        };
        AdicSeries::truncated(self.poly.clone(), p)
    }
}
