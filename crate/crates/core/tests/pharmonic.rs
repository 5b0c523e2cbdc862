mod common;

use common::{exact, regime_realisations, trace_mismatch};
use liesym::logpower::{
    classify, is_proper_p_harmonic, p_harmonic_function, parse_exact_complex, parse_rational,
    reduction_trace, tension_reduce, ExactComplex, HarmonicCase, LogPowerExpression,
};
use liesym::C64;
use num_rational::BigRational;
use proptest::prelude::*;

fn q(n: i64, d: i64) -> ExactComplex {
    ExactComplex::new(
        BigRational::new(n.into(), d.into()),
        BigRational::from_integer(0.into()),
    )
}

#[test]
fn realisations_carry_the_expected_eigenvalues() {
    for (name, cand, l, m) in regime_realisations() {
        assert!((cand.lambda - l_c64(&l)).norm() < 1e-12, "{name}");
        assert!((cand.mu - l_c64(&m)).norm() < 1e-12, "{name}");
    }
    let cases: Vec<_> = regime_realisations()
        .iter()
        .map(|(_, _, l, m)| classify(l, m).unwrap())
        .collect();
    assert_eq!(
        cases,
        [
            HarmonicCase::Generic,
            HarmonicCase::ZeroMu,
            HarmonicCase::EqualEigenvalues
        ]
    );
}

fn l_c64(x: &ExactComplex) -> C64 {
    liesym::logpower::Coefficient::to_c64(x)
}

#[test]
fn proper_for_p_one_to_five_in_every_case() {
    let (c1, c2) = (q(3, 2), exact(-1, 2));
    for (name, _, l, m) in regime_realisations() {
        for p in 1..=5 {
            let e = p_harmonic_function(&l, &m, p, &c1, &c2).unwrap();
            let trace = reduction_trace(&e, &l, &m, p);
            assert!(trace[p as usize].is_zero(), "{name} p={p}");
            assert!(!trace[p as usize - 1].is_zero(), "{name} p={p}");
            assert!(is_proper_p_harmonic(&e, &l, &m, p));
        }
    }
}

#[test]
fn symbolic_reduction_matches_the_jet_calculus() {
    let (c1, c2) = (q(1, 1), q(-2, 3));
    for (name, cand, l, m) in regime_realisations() {
        for p in 1..=5 {
            let e = p_harmonic_function(&l, &m, p, &c1, &c2).unwrap();
            let trace = reduction_trace(&e, &l, &m, p);
            let worst = trace_mismatch(&cand, &trace, 10, p as u64);
            assert!(worst < 1e-7, "{name} p={p}: {worst}");
        }
    }
}

#[test]
fn generic_formula_fails_when_eigenvalues_coincide() {
    // Read with λ = μ the generic exponent 1 − λ/μ is 0, and the result is not proper.
    let (l, m) = (q(-4, 1), q(-4, 1));
    let one = q(1, 1);
    for p in 2..=5 {
        let e = LogPowerExpression::from_terms([
            (one.clone(), q(0, 1), p - 1),
            (one.clone(), q(0, 1), p - 1),
        ]);
        assert!(!is_proper_p_harmonic(&e, &l, &m, p), "p={p}");
    }
}

#[test]
fn exponent_of_the_generic_case() {
    let e = p_harmonic_function(&q(-20, 3), &q(-8, 3), 1, &q(1, 1), &q(0, 1)).unwrap();
    assert_eq!(e.terms().len(), 1);
    assert_eq!(e.terms()[0].exponent, q(-3, 2));
    assert_eq!(e.to_string(), "1*phi^-3/2");
}

#[test]
fn invalid_parameters() {
    assert!(classify(&q(0, 1), &q(0, 1)).is_err());
    assert!(p_harmonic_function(&q(-4, 1), &q(0, 1), 2, &q(0, 1), &q(1, 1)).is_err());
    assert!(p_harmonic_function(&q(-4, 1), &q(-2, 1), 0, &q(1, 1), &q(1, 1)).is_err());
    assert!(p_harmonic_function(&q(-4, 1), &q(-2, 1), 2, &q(0, 1), &q(0, 1)).is_err());
}

#[test]
fn exact_parsing() {
    assert_eq!(
        parse_rational("-2.5e1").unwrap(),
        BigRational::from_integer((-25).into())
    );
    assert_eq!(
        parse_rational("7/21").unwrap(),
        BigRational::new(1.into(), 3.into())
    );
    assert_eq!(
        parse_rational("0.1").unwrap(),
        BigRational::new(1.into(), 10.into())
    );
    assert!(parse_rational("1/0").is_err());
    assert!(parse_rational("abc").is_err());
    assert_eq!(parse_exact_complex("-1,2").unwrap(), exact(-1, 2));
}

#[test]
fn float_and_exact_reductions_agree() {
    let (l, m) = (q(-5, 1), q(-1, 1));
    let e = p_harmonic_function(&l, &m, 3, &q(1, 1), &q(2, 1)).unwrap();
    let exact_step = tension_reduce(&e, &l, &m).to_c64();
    let float_step = tension_reduce(&e.to_c64(), &C64::new(-5.0, 0.0), &C64::new(-1.0, 0.0));
    assert_eq!(exact_step.terms().len(), float_step.terms().len());
    for (a, b) in exact_step.terms().iter().zip(float_step.terms()) {
        assert!((a.coefficient - b.coefficient).norm() < 1e-12);
        assert_eq!(a.log_power, b.log_power);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn tension_reduce_is_linear(l in -6i64..6, m in -6i64..6, k1 in 0u32..4, k2 in 0u32..4, s in -3i64..3, a in -5i64..5) {
        let (l, m) = (q(l, 1), q(m, 2));
        let e1 = LogPowerExpression::term(q(1, 1), q(s, 2), k1);
        let e2 = LogPowerExpression::term(q(a, 3), q(1, 1), k2);
        let lhs = tension_reduce(&e1.add(&e2.scale(&q(2, 1))), &l, &m);
        let rhs = tension_reduce(&e1, &l, &m).add(&tension_reduce(&e2, &l, &m).scale(&q(2, 1)));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn random_cases_are_proper(ln in -9i64..9, ld in 1i64..5, mn in -9i64..9, p in 1u32..6, c1 in 1i64..4, c2 in -3i64..3) {
        let (l, m) = (q(ln, ld), q(mn, 1));
        prop_assume!(classify(&l, &m).is_ok());
        let e = p_harmonic_function(&l, &m, p, &q(c1, 1), &q(c2, 1)).unwrap();
        prop_assert!(is_proper_p_harmonic(&e, &l, &m, p));
    }
}
