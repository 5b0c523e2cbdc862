#![allow(dead_code)]

use liesym::field::ScalarField;
use liesym::groups::GroupSpec;
use liesym::spaces::SpaceSpec;
use liesym::C64;

pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

/// One representative of every family, plus a group-type space.
pub fn representative_spaces() -> Vec<SpaceSpec> {
    vec![
        SpaceSpec::complex_grassmannian(2, 1).unwrap(),
        SpaceSpec::real_grassmannian(2, 2).unwrap(),
        SpaceSpec::quaternionic_grassmannian(1, 2).unwrap(),
        SpaceSpec::su_so(3).unwrap(),
        SpaceSpec::so2n_u(3).unwrap(),
        SpaceSpec::sp_u(2).unwrap(),
        SpaceSpec::su2n_sp(2).unwrap(),
        SpaceSpec::group_type(GroupSpec::su(2)).unwrap(),
    ]
}

/// A generic polynomial in the entries and their conjugates, with no symmetry.
pub fn generic_polynomial(size: usize) -> ScalarField {
    let e = |r: usize, k: usize, conj: bool| ScalarField::entry(size, r % size, k % size, conj);
    ScalarField::linear_combination(vec![
        (c(1.0, 0.3), e(0, 1, false).product(&e(1, 0, true)).unwrap()),
        (
            c(-0.7, 0.2),
            e(0, 0, false).product(&e(0, 0, false)).unwrap(),
        ),
        (c(0.4, -1.1), e(size - 1, 0, true)),
        (
            c(0.25, 0.5),
            e(1, 1, false)
                .product(&e(0, size - 1, true))
                .unwrap()
                .product(&e(size - 1, 1, false))
                .unwrap(),
        ),
    ])
    .unwrap()
}

/// Relative residual `|a − b| / (1 + |b|)`.
pub fn rel(a: C64, b: C64) -> f64 {
    (a - b).norm() / (1.0 + b.norm())
}

/// Exact complex number with integer parts.
pub fn exact(re: i64, im: i64) -> liesym::logpower::ExactComplex {
    use num_rational::BigRational;
    liesym::logpower::ExactComplex::new(
        BigRational::from_integer(re.into()),
        BigRational::from_integer(im.into()),
    )
}

/// Eigenfunctions realising the three p-harmonic regimes, with their exact eigenvalues:
/// a Grassmannian coordinate (generic), `φ(p₁)·φ(p₂)^i` (`μ = 0`) and
/// `φ(p₁)·φ(p₂)^{−1}` (`λ = μ`).
pub fn regime_realisations() -> Vec<(
    &'static str,
    liesym::catalog::EigenCandidate,
    liesym::logpower::ExactComplex,
    liesym::logpower::ExactComplex,
)> {
    use liesym::builders::{power_candidate, product_eigenfunction};
    let phi = liesym::catalog::complex_grassmannian_family(1, 1, 0)
        .unwrap()
        .remove(0);
    let zero_mu = product_eigenfunction(&phi, &power_candidate(&phi, c(0.0, 1.0))).unwrap();
    let equal = product_eigenfunction(&phi, &power_candidate(&phi, c(-1.0, 0.0))).unwrap();
    vec![
        ("generic", phi, exact(-4, 0), exact(-2, 0)),
        ("zero-mu", zero_mu, exact(-2, -2), exact(0, 0)),
        ("equal", equal, exact(-4, 0), exact(-4, 0)),
    ]
}

/// Values kept clear of zero and of the branch cut of `log`.
pub fn branch_safe(v: C64) -> bool {
    v.norm() > 0.05 && v.arg().abs() < std::f64::consts::PI - 0.05
}

/// Largest mismatch between the jet tension of `E∘φ` and `(τE)∘φ` along a
/// reduction trace, over `points` branch-safe samples. Each step is measured
/// against `1 + |τE(φ)| + |E(φ)|`: the last step cancels to zero from terms
/// as large as `E` itself.
pub fn trace_mismatch(
    candidate: &liesym::catalog::EigenCandidate,
    trace: &[liesym::logpower::LogPowerExpression<liesym::logpower::ExactComplex>],
    points: usize,
    seed: u64,
) -> f64 {
    use liesym::calculus::Frame;
    use liesym::logpower::log_power_field;
    let ambient = &candidate.space.ambient;
    let basis = ambient.algebra_basis().unwrap();
    let mut worst: f64 = 0.0;
    let mut accepted = 0;
    let mut stream = 0;
    while accepted < points {
        let p = ambient
            .sample(liesym::groups::derive_seed(seed, stream))
            .unwrap();
        stream += 1;
        assert!(stream < 10_000, "no branch-safe points found");
        let Ok(v) = candidate.field.value(&p) else {
            continue;
        };
        if !branch_safe(v) {
            continue;
        }
        accepted += 1;
        let frame = Frame::new(&basis, &p).unwrap();
        for pair in trace.windows(2) {
            let numeric = frame
                .tension(&log_power_field(&pair[0], &candidate.field))
                .unwrap();
            let symbolic = pair[1].evaluate_at(v).unwrap();
            let scale = 1.0 + symbolic.norm() + pair[0].evaluate_at(v).unwrap().norm();
            worst = worst.max((numeric - symbolic).norm() / scale);
        }
    }
    worst
}
