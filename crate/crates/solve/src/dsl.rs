//! Text expression language for operators and for exact coefficient
//! formulas.  Operator texts use the generators X, D, A, ADAG, G with
//! + - * ^ and parentheses, products kept in written order; coefficient
//! formulas additionally allow / and the calls poch(a, k) and fact(n).

use dmod_core::scalar::{factorial, pochhammer, Scalar};
use dmod_core::weyl::{GeneratorPair, WeylOp};
use dmod_core::Error;
use num_bigint::BigInt;
use num_rational::BigRational;
use std::collections::BTreeMap;

/// identifier -> exact rational value.
pub type Bindings = BTreeMap<String, Scalar>;

#[derive(Clone, Debug, PartialEq)]
pub enum Gen {
    X,
    D,
    A,
    Adag,
    G,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Gen(Gen),
    Number(Scalar),
    Ident(String),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, Box<Expr>),
    Call(String, Vec<Expr>),
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Number(Scalar),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Comma,
}

fn syntax(at: usize, what: impl AsRef<str>) -> Error {
    Error::Parse(format!("syntax error at byte {}: {}", at, what.as_ref()))
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, Error> {
    let bytes = text.as_bytes();
    let mut out = vec![];
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        match c {
            ' ' | '\t' | '\n' | '\r' => i += 1,
            '+' => {
                out.push((i, Tok::Plus));
                i += 1;
            }
            '-' => {
                out.push((i, Tok::Minus));
                i += 1;
            }
            '*' => {
                out.push((i, Tok::Star));
                i += 1;
            }
            '/' => {
                out.push((i, Tok::Slash));
                i += 1;
            }
            '^' => {
                out.push((i, Tok::Caret));
                i += 1;
            }
            '(' => {
                out.push((i, Tok::LParen));
                i += 1;
            }
            ')' => {
                out.push((i, Tok::RParen));
                i += 1;
            }
            ',' => {
                out.push((i, Tok::Comma));
                i += 1;
            }
            '0'..='9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let num: BigInt = text[start..i].parse().unwrap();
                // an immediately attached /digits is a rational literal
                let mut den = BigInt::from(1);
                if i < bytes.len() && bytes[i] == b'/' && i + 1 < bytes.len() && bytes[i + 1].is_ascii_digit() {
                    i += 1;
                    let dstart = i;
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                    den = text[dstart..i].parse().unwrap();
                    if den == BigInt::from(0) {
                        return Err(syntax(dstart, "zero denominator"));
                    }
                }
                out.push((start, Tok::Number(Scalar::from_rational(BigRational::new(num, den)))));
            }
            'a'..='z' | 'A'..='Z' | '_' => {
                let start = i;
                while i < bytes.len()
                    && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_')
                {
                    i += 1;
                }
                out.push((start, Tok::Ident(text[start..i].to_string())));
            }
            _ => return Err(syntax(i, format!("unexpected character `{}`", c))),
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
    /// formulas allow /, calls, and non-literal exponents
    formula: bool,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn at(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(o, _)| *o)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(_, t)| t.clone());
        self.pos += 1;
        t
    }

    fn expr(&mut self) -> Result<Expr, Error> {
        // leading minus: the written sources negate whole leading terms
        let mut acc = if matches!(self.peek(), Some(Tok::Minus)) {
            self.bump();
            Expr::Neg(Box::new(self.term()?))
        } else {
            self.term()?
        };
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    acc = Expr::Add(Box::new(acc), Box::new(self.term()?));
                }
                Some(Tok::Minus) => {
                    self.bump();
                    acc = Expr::Sub(Box::new(acc), Box::new(self.term()?));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Expr, Error> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.bump();
                    acc = Expr::Mul(Box::new(acc), Box::new(self.factor()?));
                }
                Some(Tok::Slash) if self.formula => {
                    self.bump();
                    acc = Expr::Div(Box::new(acc), Box::new(self.factor()?));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Expr, Error> {
        let base = self.atom()?;
        if matches!(self.peek(), Some(Tok::Caret)) {
            self.bump();
            let at = self.at();
            let exp = if self.formula {
                self.atom()?
            } else {
                match self.bump() {
                    Some(Tok::Number(s)) if is_uint(&s) => Expr::Number(s),
                    _ => return Err(syntax(at, "exponent must be an unsigned integer")),
                }
            };
            return Ok(Expr::Pow(Box::new(base), Box::new(exp)));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr, Error> {
        let at = self.at();
        match self.bump() {
            Some(Tok::Number(s)) => Ok(Expr::Number(s)),
            Some(Tok::Ident(name)) => {
                if self.formula && matches!(self.peek(), Some(Tok::LParen)) {
                    self.bump();
                    let mut args = vec![self.expr()?];
                    while matches!(self.peek(), Some(Tok::Comma)) {
                        self.bump();
                        args.push(self.expr()?);
                    }
                    let at = self.at();
                    match self.bump() {
                        Some(Tok::RParen) => Ok(Expr::Call(name, args)),
                        _ => Err(syntax(at, "expected `)` after call arguments")),
                    }
                } else {
                    Ok(match name.as_str() {
                        "X" => Expr::Gen(Gen::X),
                        "D" => Expr::Gen(Gen::D),
                        "A" => Expr::Gen(Gen::A),
                        "ADAG" => Expr::Gen(Gen::Adag),
                        "G" => Expr::Gen(Gen::G),
                        _ => Expr::Ident(name),
                    })
                }
            }
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                let at = self.at();
                match self.bump() {
                    Some(Tok::RParen) => Ok(inner),
                    _ => Err(syntax(at, "expected `)`")),
                }
            }
            Some(t) => Err(syntax(at, format!("unexpected token {:?}", t))),
            None => Err(syntax(at, "unexpected end of input")),
        }
    }
}

fn is_uint(s: &Scalar) -> bool {
    s.as_exact().map_or(false, |q| {
        q.is_integer() && q.numer() >= &BigInt::from(0)
    })
}

fn parse_with(text: &str, formula: bool) -> Result<Expr, Error> {
    let toks = lex(text)?;
    let mut p = Parser {
        toks,
        pos: 0,
        end: text.len(),
        formula,
    };
    let e = p.expr()?;
    if p.pos < p.toks.len() {
        return Err(syntax(p.at(), "trailing input"));
    }
    Ok(e)
}

/// Parse an operator text (no /, no calls, literal exponents).
pub fn parse_operator_expr(text: &str) -> Result<Expr, Error> {
    parse_with(text, false)
}

/// Parse a coefficient formula (adds /, calls, symbolic exponents).
pub fn parse_formula(text: &str) -> Result<Expr, Error> {
    parse_with(text, true)
}

/// Lower a parsed operator onto the multiplication/derivation pair.
pub fn lower_operator(e: &Expr, bindings: &Bindings) -> Result<WeylOp, Error> {
    let pair = GeneratorPair::standard();
    let op = |v: Result<WeylOp, Error>| v;
    match e {
        Expr::Gen(g) => Ok(match g {
            Gen::X => WeylOp::raise_gen(&pair),
            Gen::D => WeylOp::lower_gen(&pair),
            Gen::A => WeylOp::from_terms(
                &pair,
                &[(0, 1, Scalar::one()), (1, 0, Scalar::one())],
            ),
            Gen::Adag => WeylOp::from_terms(
                &pair,
                &[(0, 1, Scalar::one()), (1, 0, Scalar::from_int(-1))],
            ),
            Gen::G => WeylOp::monomial(&pair, 1, 1, Scalar::one()),
        }),
        Expr::Number(s) => Ok(WeylOp::constant(&pair, s.clone())),
        Expr::Ident(name) => match bindings.get(name) {
            Some(v) => Ok(WeylOp::constant(&pair, v.clone())),
            None => Err(Error::Parse(format!("unbound identifier `{}`", name))),
        },
        Expr::Neg(inner) => Ok(lower_operator(inner, bindings)?.scale(&Scalar::from_int(-1))),
        Expr::Add(l, r) => op(lower_operator(l, bindings)?.add(&lower_operator(r, bindings)?)),
        Expr::Sub(l, r) => op(lower_operator(l, bindings)?.sub(&lower_operator(r, bindings)?)),
        Expr::Mul(l, r) => op(lower_operator(l, bindings)?.mul(&lower_operator(r, bindings)?)),
        Expr::Div(..) | Expr::Call(..) => Err(Error::Parse(
            "division and calls belong to coefficient formulas, not operators".into(),
        )),
        Expr::Pow(b, e) => {
            let Expr::Number(n) = &**e else {
                return Err(Error::Parse("operator exponents are literal integers".into()));
            };
            let k = to_u32(n)?;
            lower_operator(b, bindings)?.pow(k)
        }
    }
}

/// parse + lower in one step.
pub fn parse_operator(text: &str, bindings: &Bindings) -> Result<WeylOp, Error> {
    lower_operator(&parse_operator_expr(text)?, bindings)
}

pub(crate) fn to_u32(s: &Scalar) -> Result<u32, Error> {
    if !is_uint(s) {
        return Err(Error::Parse(format!("`{}` is not an unsigned integer", s)));
    }
    let q = s.as_exact().unwrap();
    q.numer()
        .try_into()
        .map_err(|_| Error::Parse("exponent out of range".into()))
}

/// Evaluate a coefficient formula to an exact rational.
pub fn eval_formula(e: &Expr, bindings: &Bindings) -> Result<Scalar, Error> {
    match e {
        Expr::Gen(_) => Err(Error::Parse(
            "generators belong to operators, not coefficient formulas".into(),
        )),
        Expr::Number(s) => Ok(s.clone()),
        Expr::Ident(name) => bindings
            .get(name)
            .cloned()
            .ok_or_else(|| Error::Parse(format!("unbound identifier `{}`", name))),
        Expr::Neg(inner) => Ok(-&eval_formula(inner, bindings)?),
        Expr::Add(l, r) => Ok(&eval_formula(l, bindings)? + &eval_formula(r, bindings)?),
        Expr::Sub(l, r) => Ok(&eval_formula(l, bindings)? - &eval_formula(r, bindings)?),
        Expr::Mul(l, r) => Ok(&eval_formula(l, bindings)? * &eval_formula(r, bindings)?),
        Expr::Div(l, r) => eval_formula(l, bindings)?.checked_div(&eval_formula(r, bindings)?),
        Expr::Pow(b, e) => {
            let base = eval_formula(b, bindings)?;
            let k = to_u32(&eval_formula(e, bindings)?)?;
            Ok(base.pow_u32(k))
        }
        Expr::Call(name, args) => match (name.as_str(), args.len()) {
            ("poch", 2) => {
                let a = eval_formula(&args[0], bindings)?;
                let k = to_u32(&eval_formula(&args[1], bindings)?)?;
                Ok(pochhammer(&a, k))
            }
            ("fact", 1) => {
                let k = to_u32(&eval_formula(&args[0], bindings)?)?;
                Ok(factorial(k))
            }
            _ => Err(Error::Parse(format!(
                "unknown call `{}` with {} arguments",
                name,
                args.len()
            ))),
        },
    }
}

/// Canonical text for an expression; parsing it back gives an equal tree.
pub fn print_expr(e: &Expr) -> String {
    fn atomic(e: &Expr) -> bool {
        matches!(
            e,
            Expr::Gen(_) | Expr::Number(_) | Expr::Ident(_) | Expr::Call(..)
        )
    }
    fn atom(e: &Expr) -> String {
        if atomic(e) {
            print_expr(e)
        } else {
            format!("({})", print_expr(e))
        }
    }
    fn factor(e: &Expr) -> String {
        match e {
            Expr::Pow(..) => print_expr(e),
            _ => atom(e),
        }
    }
    fn term(e: &Expr) -> String {
        match e {
            Expr::Mul(l, r) => format!("{}*{}", term(l), factor(r)),
            // spaces keep the slash from gluing digits into a rational literal
            Expr::Div(l, r) => format!("{} / {}", term(l), factor(r)),
            _ => factor(e),
        }
    }
    match e {
        Expr::Gen(Gen::X) => "X".into(),
        Expr::Gen(Gen::D) => "D".into(),
        Expr::Gen(Gen::A) => "A".into(),
        Expr::Gen(Gen::Adag) => "ADAG".into(),
        Expr::Gen(Gen::G) => "G".into(),
        Expr::Number(s) => format!("{}", s),
        Expr::Ident(n) => n.clone(),
        Expr::Neg(t) => format!("-{}", term(t)),
        Expr::Add(l, r) => format!("{} + {}", print_expr(l), term(r)),
        Expr::Sub(l, r) => format!("{} - {}", print_expr(l), term(r)),
        Expr::Mul(..) | Expr::Div(..) => term(e),
        Expr::Pow(b, x) => format!("{}^{}", atom(b), atom(x)),
        Expr::Call(name, args) => {
            let inner: Vec<String> = args.iter().map(print_expr).collect();
            format!("{}({})", name, inner.join(", "))
        }
    }
}
