//! dmod: exact division and series solving for operator equations,
//! driven by the operator text DSL.  One command per invocation; exit 0
//! on success/verified, 1 on verification failure, 2 on usage errors.

use clap::{Args, Parser, Subcommand};
use dmod_core::adic::Valuation;
use dmod_core::matrix::Mat;
use dmod_core::poly::{Poly, Var};
use dmod_core::roots::RootVal;
use dmod_core::scalar::Scalar;
use dmod_core::weyl::WeylOp;
use dmod_core::Error;
use dmod_solve::fixtures::{parse_rational, parse_route, seed_poly, series_var, solve_route, Route};
use dmod_solve::newton::{
    certificate_valuation, classify_point, indicial_polynomial, radius_bound, Divisor, PointClass,
};
use dmod_solve::newton::ops;
use dmod_solve::{dc, dsl, factor, heun, realize, series};
use dmod_cli::output::*;
use std::collections::BTreeMap;

#[derive(Parser)]
#[command(name = "dmod", about = "exact operator division and series solving")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Solve L S = 0 against a divisor route and certify the remainder
    Solve(SolveArgs),
    /// Indicial polynomial, point classification, exponents
    Indicial(OpArgs),
    /// Push one element through the remainder map
    Divide(DivideArgs),
    /// Eigenvalues of the remainder action on the invariant span
    HeunEigen(EigenArgs),
    /// Verify the hypergeometric operator factors through the shifted operator
    FactorCheck(EigenArgs),
    /// Compare the eigenvector-weighted series with the shifted-parameter series
    IdentityCheck(IdentityArgs),
    /// Evaluate and verify difference-realized series
    Difference(DiffArgs),
}

#[derive(Args)]
struct OpArgs {
    /// operator text, or @path to a UTF-8 DSL file
    #[arg(long)]
    operator: String,
    /// comma-separated bindings name=rational
    #[arg(long, default_value = "")]
    params: String,
    /// echo the operator in this normal order: standard | dual | graded
    #[arg(long)]
    order: Option<String>,
    /// working digits for float fallbacks
    #[arg(long, default_value_t = 40)]
    digits: u32,
    /// machine-readable output
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct SolveArgs {
    #[command(flatten)]
    op: OpArgs,
    /// d | x | xd:LAMBDA | special-dc
    #[arg(long, default_value = "d")]
    divisor: String,
    /// starting approximation (polynomial text)
    #[arg(long, default_value = "1")]
    seed: String,
    /// certified order of the solution
    #[arg(long, default_value_t = 12)]
    precision: u32,
}

#[derive(Args)]
struct DivideArgs {
    #[command(flatten)]
    op: OpArgs,
    /// d | x | xd:LAMBDA | special-dc
    #[arg(long, default_value = "d")]
    divisor: String,
    /// the element pushed through the map (polynomial text)
    #[arg(long, default_value = "1")]
    seed: String,
}

#[derive(Args)]
struct EigenArgs {
    /// heun | heun-hat | confluent
    #[arg(long)]
    variant: String,
    #[arg(long, allow_hyphen_values = true)]
    a: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    alpha: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    beta: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    gamma: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    delta: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    epsilon: Option<String>,
    #[arg(long, default_value_t = 40)]
    digits: u32,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct IdentityArgs {
    #[command(flatten)]
    eigen: EigenArgs,
    /// series order the identity is compared through
    #[arg(long, default_value_t = 30)]
    through: u32,
}

#[derive(Args)]
struct DiffArgs {
    /// index of the difference-realized Bessel series
    #[arg(long)]
    bessel: u32,
    /// evaluation point
    #[arg(long)]
    x: u32,
    #[arg(long)]
    json: bool,
}

fn main() {
    let cli = Cli::parse();
    let (json, run): (bool, Result<(Output, bool), Error>) = match &cli.cmd {
        Cmd::Solve(a) => (a.op.json, cmd_solve(a)),
        Cmd::Indicial(a) => (a.json, cmd_indicial(a)),
        Cmd::Divide(a) => (a.op.json, cmd_divide(a)),
        Cmd::HeunEigen(a) => (a.json, cmd_heun_eigen(a)),
        Cmd::FactorCheck(a) => (a.json, cmd_factor_check(a)),
        Cmd::IdentityCheck(a) => (a.eigen.json, cmd_identity_check(a)),
        Cmd::Difference(a) => (a.json, cmd_difference(a)),
    };
    match run {
        Ok((out, verified)) => {
            if json {
                println!("{}", serde_json::to_string_pretty(&out).unwrap());
            }
            std::process::exit(if verified { 0 } else { 1 });
        }
        Err(e) => {
            let code = match &e {
                Error::Parse(_) => 2,
                _ => 1,
            };
            if json {
                let obj = serde_json::json!({
                    "error": { "kind": error_kind(&e), "message": format!("{}", e) }
                });
                println!("{}", serde_json::to_string_pretty(&obj).unwrap());
            } else {
                eprintln!("error: {}", e);
            }
            std::process::exit(code);
        }
    }
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::Parse(_) => "parse",
        Error::Resonant { .. } => "resonant",
        Error::NotImmediate(_) => "not-immediate",
        Error::ShapeMismatch(_) => "shape",
        Error::DomainTooNarrow(_) => "domain-too-narrow",
        Error::InvarianceViolated(_) => "invariance",
        _ => "math",
    }
}

/// Zero up to the float working tolerance; exact scalars must vanish.
fn near_zero(s: &Scalar, digits: u32) -> bool {
    match s {
        Scalar::Exact(_) => s.is_zero(),
        Scalar::Float(f) => {
            let tol = dmod_core::scalar::BigFloat::pow10(-(digits as i64 - 10), digits);
            f.cmp_abs(&tol) != std::cmp::Ordering::Greater
        }
    }
}

fn read_operator(spec: &str) -> Result<String, Error> {
    match spec.strip_prefix('@') {
        Some(path) => std::fs::read_to_string(path)
            .map_err(|e| Error::Parse(format!("{}: {}", path, e))),
        None => Ok(spec.to_string()),
    }
}

fn parse_params(text: &str) -> Result<dsl::Bindings, Error> {
    let mut bind = dsl::Bindings::new();
    for piece in text.split(',').filter(|p| !p.trim().is_empty()) {
        let Some((k, v)) = piece.split_once('=') else {
            return Err(Error::Parse(format!("binding `{}` is not name=value", piece)));
        };
        bind.insert(k.trim().to_string(), parse_rational(v.trim())?);
    }
    Ok(bind)
}

fn normal_form(op: &WeylOp, order: &str) -> Result<String, Error> {
    match order {
        "standard" => Ok(format!("{}", op)),
        "dual" => Ok(format!("{}", op.swap_orientation())),
        "graded" => {
            let (t, g) = dmod_solve::newton::cleared_graded(op)?;
            let mut parts = vec![];
            for (j, p) in g.coeffs.iter().enumerate() {
                if p.is_zero() {
                    continue;
                }
                parts.push(match j {
                    0 => format!("({})", p),
                    1 => format!("({}) G", p),
                    _ => format!("({}) G^{}", p, j),
                });
            }
            let sum = if parts.is_empty() { "0".into() } else { parts.join(" + ") };
            Ok(if t == 0 {
                sum
            } else {
                format!("X^{} * L = {}", t, sum)
            })
        }
        other => Err(Error::Parse(format!(
            "unknown order `{}` (expected standard, dual, or graded)",
            other
        ))),
    }
}

fn base_inputs(op_text: &str, a: &OpArgs) -> BTreeMap<String, String> {
    let mut m = BTreeMap::new();
    m.insert("operator".into(), op_text.to_string());
    if !a.params.is_empty() {
        m.insert("params".into(), a.params.clone());
    }
    m
}

fn cmd_solve(a: &SolveArgs) -> Result<(Output, bool), Error> {
    let text = read_operator(&a.op.operator)?;
    let bind = parse_params(&a.op.params)?;
    let op = dsl::parse_operator(&text, &bind)?;
    let route = parse_route(&a.divisor)?;
    let seed = seed_poly(&a.seed, &bind, series_var(&route))?;
    let (lhs, divisor, prefactor) = route_divisor(&op, &route)?;
    let out = match &route {
        // solve the cleared operator so plain singular operators work too
        Route::Exponent(lambda) => {
            dmod_solve::newton::solve_exponent(&lhs, lambda, &seed, a.precision)?
        }
        _ => solve_route(&op, &route, &seed, a.precision)?,
    };

    // certify the raw iterate: truncating to the series loses the guard terms
    let cert = certificate_valuation(&lhs, &out.iterate, &divisor)?;
    let verified = cert.at_least(a.precision);

    let mut inputs = base_inputs(&text, &a.op);
    inputs.insert("divisor".into(), a.divisor.clone());
    inputs.insert("seed".into(), a.seed.clone());
    inputs.insert("precision".into(), a.precision.to_string());
    if let Some(order) = &a.op.order {
        inputs.insert("normal_form".into(), normal_form(&op, order)?);
    }
    let mut output = Output::new("solve", inputs);
    output.series = Some(series_json(&out.series, &prefactor));
    output.residual_valuations = out.residual_valuations.clone();
    output.verified = verified;

    if !a.op.json {
        if let Some(order) = &a.op.order {
            println!("normal form ({}): {}", order, normal_form(&op, order)?);
        }
        print_series_human(&out.series, &prefactor);
        println!("residual valuations: {:?}", out.residual_valuations);
        if matches!(route, Route::Ordinary | Route::Exponent(_)) {
            match radius_bound(&op, a.op.digits, 7) {
                Ok(None) => println!("radius bound: none (entire)"),
                Ok(Some(r)) => println!("radius bound: {}", r),
                Err(_) => {}
            }
        }
        println!(
            "certificate: remainder valuation {} (target {}) -> {}",
            cert,
            a.precision,
            if verified { "verified" } else { "FAILED" }
        );
    }
    Ok((output, verified))
}

/// The operator/divisor pair a route certifies against, plus the series
/// prefactor exponent.
fn route_divisor(op: &WeylOp, route: &Route) -> Result<(WeylOp, Divisor, Scalar), Error> {
    Ok(match route {
        Route::Ordinary => (op.clone(), Divisor::lower_gen(op), Scalar::zero()),
        Route::Dual => {
            let s = op.swap_orientation();
            let d = Divisor::lower_gen(&s);
            (s, d, Scalar::zero())
        }
        Route::Exponent(lambda) => {
            let t = dmod_solve::newton::min_clearing(op);
            let lhs = WeylOp::monomial(&op.pair, t, 0, Scalar::one()).mul(op)?;
            (lhs, Divisor::Graded(lambda.clone()), lambda.clone())
        }
        Route::SpecialDc => {
            let p = dc::extract_params(op)?;
            (dc::operator(&p), Divisor::Linear(dc::divisor(&p)), Scalar::zero())
        }
    })
}

fn cmd_indicial(a: &OpArgs) -> Result<(Output, bool), Error> {
    let text = read_operator(&a.operator)?;
    let bind = parse_params(&a.params)?;
    let op = dsl::parse_operator(&text, &bind)?;
    let ind = indicial_polynomial(&op)?;
    let class = classify_point(&op)?;
    let roots = dmod_core::roots::find_roots(&ind, a.digits, 7)?;

    let mut inputs = base_inputs(&text, a);
    if let Some(order) = &a.order {
        inputs.insert("normal_form".into(), normal_form(&op, order)?);
    }
    let mut output = Output::new("indicial", inputs);
    output.indicial = Some(IndicialJson {
        coefficients: ind.coeffs().iter().map(scalar_json).collect(),
        point_class: match &class {
            PointClass::Ordinary => "ordinary".into(),
            PointClass::RegularSingular { .. } => "regular-singular".into(),
            PointClass::Other { .. } => "other".into(),
        },
        exponents: roots.iter().map(root_json).collect(),
    });
    output.verified = true;

    if !a.json {
        if let Some(order) = &a.order {
            println!("normal form ({}): {}", order, normal_form(&op, order)?);
        }
        println!("indicial polynomial: {}", ind);
        println!("point class: {:?}", class);
        println!("exponents: {:?}", roots);
    }
    Ok((output, true))
}

fn cmd_divide(a: &DivideArgs) -> Result<(Output, bool), Error> {
    let text = read_operator(&a.op.operator)?;
    let bind = parse_params(&a.op.params)?;
    let op = dsl::parse_operator(&text, &bind)?;
    let route = parse_route(&a.divisor)?;
    let seed = seed_poly(&a.seed, &bind, series_var(&route))?;
    let (lhs, divisor, prefactor) = route_divisor(&op, &route)?;
    let rem = dmod_solve::newton::remainder_map(&lhs, &seed, &divisor)?;
    let val = match rem.valuation() {
        Some(v) => Valuation::Finite(v as u32),
        None => Valuation::Infinite,
    };

    let mut inputs = base_inputs(&text, &a.op);
    inputs.insert("divisor".into(), a.divisor.clone());
    inputs.insert("seed".into(), a.seed.clone());
    if let Some(order) = &a.op.order {
        inputs.insert("normal_form".into(), normal_form(&op, order)?);
    }
    let mut output = Output::new("divide", inputs);
    let rem_series = dmod_core::adic::AdicSeries::exact(rem.clone());
    output.series = Some(series_json(&rem_series, &prefactor));
    if let Valuation::Finite(v) = val {
        output.residual_valuations = vec![v];
    }
    output.verified = true;

    if !a.op.json {
        if let Some(order) = &a.op.order {
            println!("normal form ({}): {}", order, normal_form(&op, order)?);
        }
        println!("remainder: {}", rem);
        println!("valuation: {}", val);
    }
    Ok((output, true))
}

struct EigenSetup {
    ctx: heun::DivContext,
    span: usize,
    gamma_like: Scalar,
    params: Option<heun::HeunParams>,
    inputs: BTreeMap<String, String>,
}

fn need(v: &Option<String>, name: &str) -> Result<Scalar, Error> {
    match v {
        Some(t) => parse_rational(t),
        None => Err(Error::Parse(format!("--{} is required for this variant", name))),
    }
}

fn negint_span(v: &Scalar, name: &str) -> Result<usize, Error> {
    let q = v
        .as_exact()
        .filter(|q| q.is_integer())
        .ok_or_else(|| Error::Parse(format!("{} must be a negative integer", name)))?;
    let n = -q.numer().clone();
    usize::try_from(n)
        .ok()
        .filter(|n| *n > 0)
        .ok_or_else(|| Error::Parse(format!("{} must be a negative integer", name)))
}

fn eigen_setup(a: &EigenArgs) -> Result<EigenSetup, Error> {
    let mut inputs = BTreeMap::new();
    inputs.insert("variant".into(), a.variant.clone());
    for (name, v) in [
        ("a", &a.a),
        ("alpha", &a.alpha),
        ("beta", &a.beta),
        ("gamma", &a.gamma),
        ("delta", &a.delta),
        ("epsilon", &a.epsilon),
    ] {
        if let Some(t) = v {
            inputs.insert(name.into(), t.clone());
        }
    }
    match a.variant.as_str() {
        "heun" | "heun-hat" => {
            // the accessory-parameter constraint fills in whichever of
            // delta / epsilon was left off the command line
            let params = match (&a.delta, &a.epsilon) {
                (Some(_), Some(_)) => {
                    let p = heun::HeunParams {
                        a: need(&a.a, "a")?,
                        alpha: need(&a.alpha, "alpha")?,
                        beta: need(&a.beta, "beta")?,
                        gamma: need(&a.gamma, "gamma")?,
                        delta: need(&a.delta, "delta")?,
                        epsilon: need(&a.epsilon, "epsilon")?,
                    };
                    if !p.constraint_holds() {
                        return Err(Error::Parse(
                            "alpha + beta + 1 = gamma + delta + epsilon fails".into(),
                        ));
                    }
                    p
                }
                (None, Some(_)) => heun::HeunParams::from_constraint(
                    need(&a.a, "a")?,
                    need(&a.alpha, "alpha")?,
                    need(&a.beta, "beta")?,
                    need(&a.gamma, "gamma")?,
                    need(&a.epsilon, "epsilon")?,
                ),
                (Some(_), None) => {
                    let alpha = need(&a.alpha, "alpha")?;
                    let beta = need(&a.beta, "beta")?;
                    let gamma = need(&a.gamma, "gamma")?;
                    let delta = need(&a.delta, "delta")?;
                    let epsilon = &(&(&alpha + &beta) + &Scalar::one()) - &(&gamma + &delta);
                    heun::HeunParams {
                        a: need(&a.a, "a")?,
                        alpha,
                        beta,
                        gamma,
                        delta,
                        epsilon,
                    }
                }
                (None, None) => {
                    return Err(Error::Parse(
                        "--delta or --epsilon is required for this variant".into(),
                    ))
                }
            };
            // both contexts close up at epsilon = -n; the hatted one reads
            // off exponent data at the other finite singular point
            let span = negint_span(&params.epsilon, "epsilon")?;
            let (ctx, gamma_like) = if a.variant == "heun" {
                (heun::DivContext::heun(&params)?, params.gamma.clone())
            } else {
                (
                    heun::DivContext::hatted(&params)?,
                    &params.delta - &Scalar::one(),
                )
            };
            Ok(EigenSetup {
                ctx,
                span,
                gamma_like,
                params: Some(params),
                inputs,
            })
        }
        "confluent" => {
            let params = heun::ConfluentParams {
                alpha: need(&a.alpha, "alpha")?,
                gamma: need(&a.gamma, "gamma")?,
                delta: need(&a.delta, "delta")?,
                epsilon: need(&a.epsilon, "epsilon")?,
            };
            let span = negint_span(&params.delta, "delta")?;
            Ok(EigenSetup {
                ctx: heun::DivContext::confluent(&params)?,
                span,
                gamma_like: params.gamma.clone(),
                params: None,
                inputs,
            })
        }
        other => Err(Error::Parse(format!(
            "unknown variant `{}` (expected heun, heun-hat, or confluent)",
            other
        ))),
    }
}

/// max_i |(M v - q v)_i| with q and v as given.
fn eigen_residual(m: &Mat, q: &Scalar, v: &[Scalar]) -> Scalar {
    let mut worst = Scalar::zero();
    for i in 0..m.rows {
        let mut acc = Scalar::zero();
        for (j, vj) in v.iter().enumerate() {
            acc = &acc + &(m.get(i, j) * vj);
        }
        acc = &acc - &(q * &v[i]);
        let mag = acc.abs();
        if worst.cmp_value(&mag) == std::cmp::Ordering::Less {
            worst = mag;
        }
    }
    worst
}

fn eigen_rows(
    setup: &EigenSetup,
    digits: u32,
) -> Result<(Mat, Vec<(heun::EigenPair, Vec<RootVal>, Scalar)>), Error> {
    let m = setup.ctx.remainder_matrix(setup.span)?;
    let pairs = heun::eigen_solve(&m, digits, 7)?;
    let mut rows = vec![];
    for p in pairs {
        let (e_list, residual) = match (&p.value, &p.vector) {
            (RootVal::Exact(q), Some(v)) => {
                let sstar = Poly::new(Var::A, v.clone());
                let e = heun::extract_e(&sstar, &setup.gamma_like, digits, 7).unwrap_or_default();
                (e, eigen_residual(&m, q, v))
            }
            (RootVal::Approx(z), Some(v)) => {
                let sstar = Poly::new(Var::A, v.clone());
                let e = heun::extract_e(&sstar, &setup.gamma_like, digits, 7).unwrap_or_default();
                (e, eigen_residual(&m, &Scalar::Float(z.re.clone()), v))
            }
            _ => (vec![], Scalar::zero()),
        };
        rows.push((p, e_list, residual));
    }
    Ok((m, rows))
}

fn cmd_heun_eigen(a: &EigenArgs) -> Result<(Output, bool), Error> {
    let setup = eigen_setup(a)?;
    let (m, rows) = eigen_rows(&setup, a.digits)?;
    let mut verified = true;
    let mut output = Output::new("heun-eigen", setup.inputs.clone());
    for (p, e_list, residual) in &rows {
        if p.vector.is_none() || !near_zero(residual, a.digits) {
            verified = false;
        }
        output.eigen.push(EigenJson {
            qstar: root_json(&p.value),
            sstar_coeffs: p
                .vector
                .as_ref()
                .map(|v| v.iter().map(scalar_json).collect())
                .unwrap_or_default(),
            e_list: e_list.iter().map(root_json).collect(),
            residual: scalar_json(residual),
        });
    }
    output.verified = verified;
    if !a.json {
        print_matrix_human(&m);
        for (p, e_list, residual) in &rows {
            println!(
                "q* = {:?}  s* = {:?}  e = {:?}  residual = {}",
                p.value, p.vector, e_list, residual
            );
        }
        println!("{}", if verified { "verified" } else { "FAILED" });
    }
    Ok((output, verified))
}

fn cmd_factor_check(a: &EigenArgs) -> Result<(Output, bool), Error> {
    let setup = eigen_setup(a)?;
    let params = setup.params.clone().ok_or_else(|| {
        Error::Parse("factor-check works on the four-point variants".into())
    })?;
    if a.variant != "heun" {
        return Err(Error::Parse(
            "factor-check currently supports --variant heun".into(),
        ));
    }
    let (_, rows) = eigen_rows(&setup, a.digits)?;
    let h = heun::heun_op(&params)?;
    let mut verified = true;
    let mut output = Output::new("factor-check", setup.inputs.clone());
    for (p, e_list, _) in &rows {
        let RootVal::Exact(q) = &p.value else {
            continue;
        };
        let Some(v) = &p.vector else {
            verified = false;
            continue;
        };
        let sstar = Poly::new(Var::A, v.clone());
        let big = heun::gen_hyp_from_sstar(&params.alpha, &params.beta, &params.gamma, &sstar)?;
        let shifted = h.sub(&WeylOp::constant(&h.pair, q.clone()))?;
        let (quot, rem_norm) = factor::right_factor_residual(&big, &shifted)?;
        let ok = near_zero(&rem_norm, a.digits);
        verified = verified && ok;
        output.eigen.push(EigenJson {
            qstar: root_json(&p.value),
            sstar_coeffs: v.iter().map(scalar_json).collect(),
            e_list: e_list.iter().map(root_json).collect(),
            residual: scalar_json(&rem_norm),
        });
        if !a.json {
            println!(
                "q* = {}  quotient order {:?}  remainder norm {} -> {}",
                q,
                quot.order(),
                rem_norm,
                if ok { "factors" } else { "FAILS" }
            );
        }
    }
    output.verified = verified;
    if !a.json {
        println!("{}", if verified { "verified" } else { "FAILED" });
    }
    Ok((output, verified))
}

fn cmd_identity_check(a: &IdentityArgs) -> Result<(Output, bool), Error> {
    let setup = eigen_setup(&a.eigen)?;
    let params = setup.params.clone().ok_or_else(|| {
        Error::Parse("identity-check works on the four-point variants".into())
    })?;
    if a.eigen.variant != "heun" {
        return Err(Error::Parse(
            "identity-check currently supports --variant heun".into(),
        ));
    }
    let (_, rows) = eigen_rows(&setup, a.eigen.digits)?;
    let (al, be, ga) = (&params.alpha, &params.beta, &params.gamma);
    let mut verified = true;
    let mut output = Output::new("identity-check", setup.inputs.clone());
    for (p, e_list, _) in &rows {
        let Some(v) = &p.vector else {
            verified = false;
            continue;
        };
        let sstar = Poly::new(Var::A, v.clone());
        // build past the checked order so the truncation edge stays clear
        let l = heun::gen_hyp_from_sstar(al, be, ga, &sstar)?;
        let slack = series::max_drop(&l).max(0) as u32 + 2;
        let weighted = series::sstar_weighted(al, be, ga, &sstar, a.through + slack)?;
        let mut worst = series::residual_norm_through(&l, &weighted, a.through)?;
        // when every extra parameter is rational, compare the shifted series
        if let Some(es) = all_exact(e_list) {
            let mut upper = vec![al.clone(), be.clone()];
            let mut lower = vec![ga.clone()];
            for e in &es {
                upper.push(e + &Scalar::one());
                lower.push(e.clone());
            }
            let shifted = series::pfq(&upper, &lower, a.through + slack)?;
            for k in 0..=a.through {
                let d = (&weighted.coeff(k as usize) - &shifted.coeff(k as usize)).abs();
                if worst.cmp_value(&d) == std::cmp::Ordering::Less {
                    worst = d;
                }
            }
        }
        let ok = near_zero(&worst, a.eigen.digits);
        verified = verified && ok;
        output.eigen.push(EigenJson {
            qstar: root_json(&p.value),
            sstar_coeffs: v.iter().map(scalar_json).collect(),
            e_list: e_list.iter().map(root_json).collect(),
            residual: scalar_json(&worst),
        });
        if !a.eigen.json {
            println!(
                "q* = {:?}  identity through {} -> max difference {}",
                p.value, a.through, worst
            );
        }
    }
    output.verified = verified;
    if !a.eigen.json {
        println!("{}", if verified { "verified" } else { "FAILED" });
    }
    Ok((output, verified))
}

fn all_exact(list: &[RootVal]) -> Option<Vec<Scalar>> {
    list.iter()
        .map(|r| match r {
            RootVal::Exact(q) => Some(q.clone()),
            RootVal::Approx(_) => None,
        })
        .collect()
}

fn cmd_difference(a: &DiffArgs) -> Result<(Output, bool), Error> {
    let value = realize::difference_bessel(a.bessel, a.x);
    // the defining equation must annihilate the table at the point
    let hi = i64::from(a.x) + 2;
    let table = realize::FunctionTable::from_fn(0, hi, |t| {
        realize::difference_bessel(a.bessel, t as u32)
    });
    let op = ops::bessel(&Scalar::from_int(i64::from(a.bessel)));
    let image = realize::apply_difference(&op, &table)?;
    let verified = image
        .value_at(i64::from(a.x))
        .is_some_and(|v| v.is_zero());

    let mut inputs = BTreeMap::new();
    inputs.insert("bessel".into(), a.bessel.to_string());
    inputs.insert("x".into(), a.x.to_string());
    let mut output = Output::new("difference", inputs);
    output.value = Some(scalar_json(&value));
    output.verified = verified;
    if !a.json {
        println!("value: {}", value);
        println!(
            "defining equation at x = {}: {}",
            a.x,
            if verified { "annihilated" } else { "FAILED" }
        );
    }
    Ok((output, verified))
}
