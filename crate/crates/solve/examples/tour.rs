use dmod_core::{Poly, Scalar, Var};
use dmod_solve::newton::{classify_point, indicial_polynomial, ops, solve_exponent, solve_ordinary};
use dmod_solve::{biconf, dc, factor, heun, series};

fn main() {
    // Airy, ordinary point, seed 1.
    let airy = ops::airy();
    let out = solve_ordinary(&airy, &Poly::one(Var::X), 16).unwrap();
    println!("airy seed-1 series: {}", out.series.poly);
    println!("airy residual valuations: {:?}", out.residual_valuations);

    // Bessel at its exponent.
    let nu = Scalar::ratio(1, 3);
    let bessel = ops::bessel(&nu);
    println!("bessel indicial: {}", indicial_polynomial(&bessel).unwrap());
    println!("bessel point class: {:?}", classify_point(&bessel).unwrap());
    let bout = solve_exponent(&bessel, &nu, &Poly::one(Var::X), 12).unwrap();
    println!("bessel series around exponent: {}", bout.series.poly);

    // Doubly-confluent pair: closed-form remainder vs generic division at n = 7.
    let p = dc::DcParams {
        a: Scalar::ratio(3, 2),
        b: Scalar::ratio(2, 1),
        c: Scalar::ratio(-1, 1),
        q: Scalar::ratio(5, 7),
    };
    let dn = Poly::monomial(Var::D, 7, Scalar::one());
    let (qgen, rgen) = dc::remainder_generic(&p, &dn).unwrap();
    println!("dc generic remainder n=7: {}", rgen);
    println!("dc closed   remainder n=7: {}", dc::remainder_closed(&p, 7));
    println!("dc quotient match: {}", qgen == dc::quotient_closed(&p, 7));

    // Biconfluent graded solve.
    let sol = biconf::solve(
        &Scalar::ratio(5, 2),
        &Scalar::ratio(1, 3),
        &Scalar::ratio(-2, 1),
        14,
    )
    .unwrap();
    println!("biconfluent solution: {}", sol.solution);
    println!("biconfluent exact: {}", sol.inner.exact);

    // Eigenproblem route: realize an extra (e+1)/e parameter pair over a
    // two-point series, then check the factorization it certifies.
    let target = heun::HypTarget {
        alpha: Scalar::ratio(1, 2),
        beta: Scalar::ratio(1, 3),
        gamma: Scalar::ratio(5, 4),
        e1: Scalar::ratio(2, 1),
    };
    let real = heun::heun_for_target(&target).unwrap();
    println!("realized a = {}, q* = {}", real.params.a, real.qstar);
    let ctx = heun::DivContext::heun(&real.params).unwrap();
    let m = ctx.remainder_matrix(1).unwrap();
    let pairs = heun::eigen_solve(&m, 40, 7).unwrap();
    for p in &pairs {
        println!("eigenvalue {:?} vector {:?}", p.value, p.vector.is_some());
    }
    let qpair = pairs
        .iter()
        .find(|p| match &p.value {
            dmod_core::roots::RootVal::Exact(v) => *v == real.qstar,
            _ => false,
        })
        .expect("realized q* among eigenvalues");
    let sstar = Poly::new(
        Var::A,
        qpair.vector.clone().unwrap(),
    );
    println!("s* = {}", sstar);
    let e_list = heun::extract_e(&sstar, &target.gamma, 40, 7).unwrap();
    println!("extracted e = {:?}", e_list);

    let three_two = heun::gen_hyp_op(
        &[
            target.alpha.clone(),
            target.beta.clone(),
            &target.e1 + &Scalar::one(),
        ],
        &[target.gamma.clone(), target.e1.clone()],
    )
    .unwrap();
    let h = heun::heun_op(&real.params).unwrap();
    let shifted = h
        .sub(&dmod_core::weyl::WeylOp::constant(&h.pair, real.qstar.clone()))
        .unwrap();
    let (quot, rem_norm) = factor::right_factor_residual(&three_two, &shifted).unwrap();
    println!("factor remainder norm: {}", rem_norm);
    println!("factor quotient order: {:?}", quot.order());

    // The lifted series against its own recurrence operator.
    let lifted = series::pfq(
        &[
            target.alpha.clone(),
            target.beta.clone(),
            &target.e1 + &Scalar::one(),
        ],
        &[target.gamma.clone(), target.e1.clone()],
        24,
    )
    .unwrap();
    let resid = series::residual_norm_through(&three_two, &lifted, 20).unwrap();
    println!("three-two series residual through 20: {}", resid);

    // Resonance surfaces as a typed error.
    let bad = solve_exponent(
        &ops::bessel(&Scalar::ratio(1, 1)),
        &Scalar::ratio(-1, 1),
        &Poly::one(Var::X),
        10,
    );
    println!("resonant case: {:?}", bad.err());
}
