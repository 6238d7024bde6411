//! Regression corpus: JSON fixtures bind an operator text, a division
//! route, and a closed-form coefficient oracle (or a valuation band, or
//! eigen data), and `run_fixture` checks the solver against them exactly.

use crate::dsl::{self, Bindings};
use crate::heun::{eigen_solve, extract_e, heun_op, DivContext, HeunParams};
use crate::newton::{remainder_map, solve_dual, solve_exponent, solve_ordinary, Divisor, SolveOutcome};
use crate::{dc, Error};
use dmod_core::poly::{Poly, Var};
use dmod_core::roots::RootVal;
use dmod_core::scalar::Scalar;
use dmod_core::weyl::WeylOp;
use serde::Deserialize;
use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

#[derive(Clone, Debug, Deserialize)]
pub struct Fixture {
    pub name: String,
    #[serde(default)]
    pub operator: String,
    #[serde(default)]
    pub bindings: BTreeMap<String, String>,
    #[serde(default)]
    pub divisor: String,
    #[serde(default)]
    pub seed: Option<String>,
    #[serde(default)]
    pub precision: u32,
    #[serde(default)]
    pub oracle: Option<OracleSpec>,
    #[serde(default)]
    pub band: Option<BandSpec>,
    #[serde(default)]
    pub eigen: Option<EigenSpec>,
    #[serde(default)]
    pub note: Option<String>,
}

/// Closed form for the series: coefficient `coeff(k)` sits at `power(k)`.
#[derive(Clone, Debug, Deserialize)]
pub struct OracleSpec {
    pub power: String,
    pub coeff: String,
    #[serde(default = "default_true")]
    pub zero_elsewhere: bool,
}

fn default_true() -> bool {
    true
}

/// Remainder valuations of degree-n truncations stay inside
/// n+1 <= v <= 2n+2 for n in the range.
#[derive(Clone, Debug, Deserialize)]
pub struct BandSpec {
    pub n_min: u32,
    pub n_max: u32,
}

#[derive(Clone, Debug, Deserialize)]
pub struct EigenSpec {
    #[serde(default = "default_span")]
    pub span: usize,
    pub qstar: String,
    pub sstar: Vec<String>,
    pub e: Vec<String>,
    pub eigenvalues: Vec<String>,
}

fn default_span() -> usize {
    1
}

#[derive(Clone, Debug)]
pub struct Report {
    pub name: String,
    pub mismatches: Vec<String>,
}

impl Report {
    pub fn pass(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// How the divisor text routes the solve.
#[derive(Clone, Debug, PartialEq)]
pub enum Route {
    /// divide by the derivation generator ("d")
    Ordinary,
    /// divide by the multiplication generator ("x")
    Dual,
    /// divide by grade - lambda ("xd:LAMBDA")
    Exponent(Scalar),
    /// the doubly-confluent second-order divisor ("special-dc")
    SpecialDc,
}

pub fn parse_route(text: &str) -> Result<Route, Error> {
    match text {
        "d" => Ok(Route::Ordinary),
        "x" => Ok(Route::Dual),
        "special-dc" => Ok(Route::SpecialDc),
        _ => match text.strip_prefix("xd:") {
            Some(rest) => Ok(Route::Exponent(parse_rational(rest)?)),
            None => Err(Error::Parse(format!(
                "unknown divisor `{}` (expected d, x, xd:LAMBDA, or special-dc)",
                text
            ))),
        },
    }
}

/// Variable the solution series is written in.
pub fn series_var(route: &Route) -> Var {
    match route {
        Route::Ordinary | Route::Exponent(_) => Var::X,
        Route::Dual | Route::SpecialDc => Var::D,
    }
}

pub fn solve_route(
    op: &WeylOp,
    route: &Route,
    seed: &Poly,
    precision: u32,
) -> Result<SolveOutcome, Error> {
    match route {
        Route::Ordinary => solve_ordinary(op, seed, precision),
        Route::Dual => solve_dual(op, seed, precision),
        Route::Exponent(lambda) => solve_exponent(op, lambda, seed, precision),
        Route::SpecialDc => dc::solve(&dc::extract_params(op)?, precision),
    }
}

/// Exact rational from a formula text with no free identifiers.
pub fn parse_rational(text: &str) -> Result<Scalar, Error> {
    let v = dsl::eval_formula(&dsl::parse_formula(text)?, &Bindings::new())?;
    if v.as_exact().is_none() {
        return Err(Error::Parse(format!("`{}` is not exact", text)));
    }
    Ok(v)
}

pub fn parse_bindings(raw: &BTreeMap<String, String>) -> Result<Bindings, Error> {
    raw.iter()
        .map(|(k, v)| Ok((k.clone(), parse_rational(v)?)))
        .collect()
}

/// Seed text as a polynomial in `var` (pure powers of one generator).
pub fn seed_poly(text: &str, bindings: &Bindings, var: Var) -> Result<Poly, Error> {
    let op = dsl::parse_operator(text, bindings)?;
    let mut coeffs: Vec<Scalar> = vec![];
    for ((a, b), c) in op.terms() {
        let (pow, other) = if var == Var::D { (b, a) } else { (a, b) };
        if *other != 0 {
            return Err(Error::ShapeMismatch(format!(
                "seed `{}` is not a polynomial in {}",
                text, var
            )));
        }
        let pow = *pow as usize;
        if coeffs.len() <= pow {
            coeffs.resize(pow + 1, Scalar::zero());
        }
        coeffs[pow] = c.clone();
    }
    if coeffs.is_empty() {
        coeffs.push(Scalar::zero());
    }
    Ok(Poly::new(var, coeffs))
}

pub fn corpus_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

pub fn load_fixture(path: &Path) -> Result<Fixture, Error> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("{}: {}", path.display(), e)))?;
    serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {}", path.display(), e)))
}

/// All .json fixtures under the corpus directory, sorted by file name.
pub fn load_corpus() -> Result<Vec<Fixture>, Error> {
    let dir = corpus_dir();
    let entries = std::fs::read_dir(&dir)
        .map_err(|e| Error::Parse(format!("{}: {}", dir.display(), e)))?;
    let mut paths: Vec<PathBuf> = entries
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    paths.sort();
    paths.iter().map(|p| load_fixture(p)).collect()
}

pub fn run_fixture(f: &Fixture) -> Result<Report, Error> {
    let mut report = Report {
        name: f.name.clone(),
        mismatches: vec![],
    };
    let bind = parse_bindings(&f.bindings)?;
    if let Some(spec) = &f.eigen {
        run_eigen(f, &bind, spec, &mut report)?;
        return Ok(report);
    }
    let op = dsl::parse_operator(&f.operator, &bind)?;
    let route = parse_route(&f.divisor)?;
    if let Some(spec) = &f.band {
        run_band(f, &op, &route, spec, &mut report)?;
        return Ok(report);
    }
    let oracle = f
        .oracle
        .as_ref()
        .ok_or_else(|| Error::Parse("fixture carries no oracle, band, or eigen block".into()))?;
    let seed = seed_poly(
        f.seed.as_deref().unwrap_or("1"),
        &bind,
        series_var(&route),
    )?;
    let out = solve_route(&op, &route, &seed, f.precision)?;
    check_oracle(f, &bind, oracle, &out, &mut report)?;
    Ok(report)
}

fn check_oracle(
    f: &Fixture,
    bind: &Bindings,
    oracle: &OracleSpec,
    out: &SolveOutcome,
    report: &mut Report,
) -> Result<(), Error> {
    let power = dsl::parse_formula(&oracle.power)?;
    let coeff = dsl::parse_formula(&oracle.coeff)?;
    let mut covered = vec![false; f.precision as usize];
    for k in 0..=f.precision {
        let mut kb = bind.clone();
        kb.insert("k".into(), Scalar::from_int(k as i64));
        let p = dsl::to_u32(&dsl::eval_formula(&power, &kb)?)?;
        if p >= f.precision {
            break;
        }
        covered[p as usize] = true;
        let want = dsl::eval_formula(&coeff, &kb)?;
        match out.series.coeff(p) {
            Some(got) if got == want => {}
            Some(got) => report.mismatches.push(format!(
                "power {}: solver {} but oracle {}",
                p, got, want
            )),
            None => report
                .mismatches
                .push(format!("power {}: solver precision ran out", p)),
        }
    }
    if oracle.zero_elsewhere {
        for p in 0..f.precision {
            if covered[p as usize] {
                continue;
            }
            if let Some(got) = out.series.coeff(p) {
                if !got.is_zero() {
                    report
                        .mismatches
                        .push(format!("power {}: expected 0, solver {}", p, got));
                }
            }
        }
    }
    Ok(())
}

fn run_band(
    f: &Fixture,
    op: &WeylOp,
    route: &Route,
    spec: &BandSpec,
    report: &mut Report,
) -> Result<(), Error> {
    let Route::Exponent(lambda) = route else {
        return Err(Error::ShapeMismatch(
            "band fixtures divide by grade - lambda".into(),
        ));
    };
    if f.precision <= spec.n_max {
        return Err(Error::ShapeMismatch(
            "band fixture precision must exceed n_max".into(),
        ));
    }
    let bind = parse_bindings(&f.bindings)?;
    let seed = seed_poly(f.seed.as_deref().unwrap_or("1"), &bind, Var::X)?;
    let out = solve_exponent(op, lambda, &seed, f.precision)?;
    let divisor = Divisor::Graded(lambda.clone());
    for n in spec.n_min..=spec.n_max {
        let sn = out.series.truncate(n + 1).poly;
        let rem = remainder_map(op, &sn, &divisor)?;
        match rem.valuation() {
            None => report
                .mismatches
                .push(format!("n = {}: remainder vanished outright", n)),
            Some(v) => {
                let v = v as u32;
                if v < n + 1 || v > 2 * n + 2 {
                    report.mismatches.push(format!(
                        "n = {}: remainder valuation {} outside [{}, {}]",
                        n,
                        v,
                        n + 1,
                        2 * n + 2
                    ));
                }
            }
        }
    }
    Ok(())
}

fn bound(bind: &Bindings, name: &str) -> Result<Scalar, Error> {
    bind.get(name)
        .cloned()
        .ok_or_else(|| Error::Parse(format!("eigen fixture misses binding `{}`", name)))
}

fn run_eigen(
    f: &Fixture,
    bind: &Bindings,
    spec: &EigenSpec,
    report: &mut Report,
) -> Result<(), Error> {
    let params = HeunParams {
        a: bound(bind, "a")?,
        alpha: bound(bind, "alpha")?,
        beta: bound(bind, "beta")?,
        gamma: bound(bind, "gamma")?,
        delta: bound(bind, "delta")?,
        epsilon: bound(bind, "epsilon")?,
    };
    if !f.operator.is_empty() && dsl::parse_operator(&f.operator, bind)? != heun_op(&params)? {
        report
            .mismatches
            .push("operator text disagrees with the parameter build".into());
    }
    let ctx = DivContext::heun(&params)?;
    let m = ctx.remainder_matrix(spec.span)?;
    let eig = eigen_solve(&m, 40, 7)?;
    for want in &spec.eigenvalues {
        let want = RootVal::Exact(parse_rational(want)?);
        if !eig.iter().any(|p| p.value == want) {
            report
                .mismatches
                .push(format!("expected eigenvalue {:?} not found", want));
        }
    }
    let qstar = parse_rational(&spec.qstar)?;
    let Some(pair) = eig.iter().find(|p| p.value == RootVal::Exact(qstar.clone())) else {
        report
            .mismatches
            .push(format!("q* = {} is not an eigenvalue", qstar));
        return Ok(());
    };
    let Some(vector) = &pair.vector else {
        report.mismatches.push("q* carries no eigenvector".into());
        return Ok(());
    };
    let want: Vec<Scalar> = spec
        .sstar
        .iter()
        .map(|s| parse_rational(s))
        .collect::<Result<_, _>>()?;
    if *vector != want {
        report.mismatches.push(format!(
            "s* coefficients {:?} differ from expected {:?}",
            vector, want
        ));
    }
    let sstar = Poly::new(Var::A, vector.clone());
    let got_e = extract_e(&sstar, &params.gamma, 40, 7)?;
    let want_e: Vec<RootVal> = spec
        .e
        .iter()
        .map(|s| Ok(RootVal::Exact(parse_rational(s)?)))
        .collect::<Result<_, Error>>()?;
    if got_e != want_e {
        report
            .mismatches
            .push(format!("e-list {:?} differs from expected {:?}", got_e, want_e));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn routes_parse_and_reject() {
        assert_eq!(parse_route("d").unwrap(), Route::Ordinary);
        assert_eq!(parse_route("x").unwrap(), Route::Dual);
        assert_eq!(
            parse_route("xd:1/3").unwrap(),
            Route::Exponent(Scalar::ratio(1, 3))
        );
        assert_eq!(parse_route("xd:-2").unwrap(), Route::Exponent(Scalar::from_int(-2)));
        assert_eq!(parse_route("special-dc").unwrap(), Route::SpecialDc);
        assert!(parse_route("q").is_err());
    }

    #[test]
    fn seeds_become_polynomials_in_either_generator() {
        let b = Bindings::new();
        let one = seed_poly("1", &b, Var::X).unwrap();
        assert_eq!(one, Poly::one(Var::X));
        let x = seed_poly("X", &b, Var::X).unwrap();
        assert_eq!(x, Poly::new(Var::X, vec![Scalar::zero(), Scalar::one()]));
        let d2 = seed_poly("3*D^2", &b, Var::D).unwrap();
        assert_eq!(
            d2,
            Poly::new(Var::D, vec![Scalar::zero(), Scalar::zero(), Scalar::from_int(3)])
        );
        assert!(seed_poly("X*D", &b, Var::X).is_err());
        assert!(seed_poly("X", &b, Var::D).is_err());
    }

    #[test]
    fn inline_fixture_passes_and_mismatch_is_reported() {
        let f: Fixture = serde_json::from_str(
            r#"{
                "name": "inline-airy",
                "operator": "D^2 - X",
                "divisor": "d",
                "seed": "1",
                "precision": 18,
                "oracle": {
                    "power": "3*k",
                    "coeff": "3^k*poch(1/3,k)/fact(3*k)"
                }
            }"#,
        )
        .unwrap();
        let report = run_fixture(&f).unwrap();
        assert!(report.pass(), "{:?}", report.mismatches);

        let mut broken = f.clone();
        broken.oracle = Some(OracleSpec {
            power: "3*k".into(),
            coeff: "3^k*poch(2/3,k)/fact(3*k)".into(),
            zero_elsewhere: true,
        });
        let report = run_fixture(&broken).unwrap();
        assert!(!report.pass());
        assert!(report.mismatches[0].contains("power 3"), "{:?}", report.mismatches);
    }

    #[test]
    fn corpus_loads_and_every_fixture_passes() {
        let corpus = load_corpus().unwrap();
        assert!(corpus.len() >= 9, "corpus has only {} fixtures", corpus.len());
        let mut kinds = (0, 0, 0);
        for f in &corpus {
            let report = run_fixture(f).unwrap();
            assert!(report.pass(), "{}: {:?}", report.name, report.mismatches);
            match (&f.oracle, &f.band, &f.eigen) {
                (Some(_), None, None) => kinds.0 += 1,
                (None, Some(_), None) => kinds.1 += 1,
                (None, None, Some(_)) => kinds.2 += 1,
                _ => panic!("{}: ambiguous fixture kind", f.name),
            }
        }
        assert!(kinds.0 >= 7 && kinds.1 >= 1 && kinds.2 >= 1, "{:?}", kinds);
    }
}
