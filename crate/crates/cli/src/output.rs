//! JSON shapes for machine-readable output.  Every rational value is a
//! num/den pair of decimal strings, never a float; non-rational values
//! carry decimal strings under distinct keys.

use dmod_core::adic::AdicSeries;
use dmod_core::matrix::Mat;
use dmod_core::poly::{Poly, Var};
use dmod_core::roots::RootVal;
use dmod_core::scalar::Scalar;
use dmod_core::Error;
use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

#[derive(Serialize, Deserialize, Debug)]
pub struct Output {
    pub command: String,
    pub inputs: BTreeMap<String, String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub series: Option<SeriesJson>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub residual_valuations: Vec<u32>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub eigen: Vec<EigenJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub indicial: Option<IndicialJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value: Option<ScalarJson>,
    pub verified: bool,
}

impl Output {
    pub fn new(command: &str, inputs: BTreeMap<String, String>) -> Self {
        Output {
            command: command.into(),
            inputs,
            series: None,
            residual_valuations: vec![],
            eigen: vec![],
            indicial: None,
            value: None,
            verified: false,
        }
    }
}

#[derive(Serialize, Deserialize, PartialEq, Debug)]
pub struct SeriesJson {
    pub generator: String,
    pub prefactor: ScalarJson,
    pub coefficients: Vec<CoeffJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub precision: Option<u32>,
}

#[derive(Serialize, Deserialize, PartialEq, Debug)]
pub struct CoeffJson {
    pub power: u32,
    pub num: String,
    pub den: String,
}

#[derive(Serialize, Deserialize, PartialEq, Debug)]
#[serde(untagged)]
pub enum ScalarJson {
    Exact { num: String, den: String },
    Dec { dec: String },
}

#[derive(Serialize, Deserialize, PartialEq, Debug)]
#[serde(untagged)]
pub enum RootJson {
    Exact { num: String, den: String },
    Complex { re: String, im: String },
}

#[derive(Serialize, Deserialize, Debug)]
pub struct EigenJson {
    pub qstar: RootJson,
    pub sstar_coeffs: Vec<ScalarJson>,
    pub e_list: Vec<RootJson>,
    pub residual: ScalarJson,
}

#[derive(Serialize, Deserialize, Debug)]
pub struct IndicialJson {
    pub coefficients: Vec<ScalarJson>,
    pub point_class: String,
    pub exponents: Vec<RootJson>,
}

pub fn scalar_json(s: &Scalar) -> ScalarJson {
    match s {
        Scalar::Exact(q) => ScalarJson::Exact {
            num: q.numer().to_string(),
            den: q.denom().to_string(),
        },
        Scalar::Float(f) => ScalarJson::Dec {
            dec: format!("{}", f),
        },
    }
}

pub fn root_json(r: &RootVal) -> RootJson {
    match r {
        RootVal::Exact(q) => {
            let v = q.rational_value();
            RootJson::Exact {
                num: v.numer().to_string(),
                den: v.denom().to_string(),
            }
        }
        RootVal::Approx(z) => RootJson::Complex {
            re: format!("{}", z.re),
            im: format!("{}", z.im),
        },
    }
}

/// Sparse exact dump of a series against its prefactor exponent.
pub fn series_json(series: &AdicSeries, prefactor: &Scalar) -> SeriesJson {
    let mut coefficients = vec![];
    for (k, c) in series.poly.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let q = c.rational_value();
        coefficients.push(CoeffJson {
            power: k as u32,
            num: q.numer().to_string(),
            den: q.denom().to_string(),
        });
    }
    SeriesJson {
        generator: series.poly.var.to_string(),
        prefactor: scalar_json(prefactor),
        coefficients,
        precision: series.prec,
    }
}

fn parse_big(text: &str) -> Result<BigInt, Error> {
    text.parse()
        .map_err(|_| Error::Parse(format!("`{}` is not a decimal integer", text)))
}

pub fn rational_from_json(num: &str, den: &str) -> Result<Scalar, Error> {
    let d = parse_big(den)?;
    if d == BigInt::from(0) {
        return Err(Error::DivisionByZero);
    }
    Ok(Scalar::from_rational(BigRational::new(parse_big(num)?, d)))
}

/// Rebuild the in-memory series (and prefactor) from its JSON dump.
pub fn series_from_json(j: &SeriesJson) -> Result<(AdicSeries, Scalar), Error> {
    let var = match j.generator.as_str() {
        "X" => Var::X,
        "D" => Var::D,
        "A" => Var::A,
        "Adag" => Var::Adag,
        other => return Err(Error::Parse(format!("unknown generator `{}`", other))),
    };
    let prefactor = match &j.prefactor {
        ScalarJson::Exact { num, den } => rational_from_json(num, den)?,
        ScalarJson::Dec { dec } => {
            return Err(Error::Parse(format!("prefactor `{}` is not rational", dec)))
        }
    };
    let top = j.coefficients.iter().map(|c| c.power).max().unwrap_or(0);
    let mut coeffs = vec![Scalar::zero(); top as usize + 1];
    for c in &j.coefficients {
        coeffs[c.power as usize] = rational_from_json(&c.num, &c.den)?;
    }
    let poly = Poly::new(var, coeffs);
    let series = match j.precision {
        Some(p) => AdicSeries::truncated(poly, p),
        None => AdicSeries::exact(poly),
    };
    Ok((series, prefactor))
}

pub fn print_series_human(series: &AdicSeries, prefactor: &Scalar) {
    let shown = 13usize;
    let coeffs = series.poly.coeffs();
    let head = Poly::new(series.poly.var, coeffs.iter().take(shown).cloned().collect());
    let more = if coeffs.len() > shown { " + ..." } else { "" };
    if prefactor.is_zero() {
        println!("series: {}{}", head, more);
    } else {
        println!("series: {}^({}) * ({}{})", series.poly.var, prefactor, head, more);
    }
    if let Some(p) = series.prec {
        println!("certified through order {}", p.saturating_sub(1));
    }
}

pub fn print_matrix_human(m: &Mat) {
    println!("remainder action ({} x {}):", m.rows, m.cols);
    for i in 0..m.rows {
        let row: Vec<String> = (0..m.cols).map(|j| format!("{}", m.get(i, j))).collect();
        println!("  [ {} ]", row.join(", "));
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn series_dump_rebuilds_exactly() {
        let poly = Poly::new(
            Var::X,
            vec![
                Scalar::one(),
                Scalar::zero(),
                Scalar::ratio(-7, 3),
                Scalar::ratio(1, 6),
            ],
        );
        let s = AdicSeries::truncated(poly, 9);
        let j = series_json(&s, &Scalar::ratio(1, 3));
        let text = serde_json::to_string(&j).unwrap();
        let back: SeriesJson = serde_json::from_str(&text).unwrap();
        assert_eq!(back, j);
        let (s2, pre) = series_from_json(&back).unwrap();
        assert_eq!(s2.poly, s.poly);
        assert_eq!(s2.prec, s.prec);
        assert_eq!(pre, Scalar::ratio(1, 3));
    }

    #[test]
    fn scalars_and_roots_tag_themselves() {
        let e = scalar_json(&Scalar::ratio(-3, 4));
        assert_eq!(
            serde_json::to_string(&e).unwrap(),
            r#"{"num":"-3","den":"4"}"#
        );
        let r = root_json(&RootVal::Exact(Scalar::from_int(2)));
        match r {
            RootJson::Exact { num, den } => {
                assert_eq!(num, "2");
                assert_eq!(den, "1");
            }
            _ => panic!("expected exact"),
        }
    }
}
