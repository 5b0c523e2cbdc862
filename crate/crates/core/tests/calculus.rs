mod common;

use common::{c, generic_polynomial, rel, representative_spaces};
use liesym::calculus::{
    compose_with_cartan, conformality, conformality_on_image, conformality_restricted,
    conformality_with_basis, product_rule_residual, tension, tension_on_image, tension_restricted,
    tension_with_basis,
};
use liesym::catalog::random_complex_vector;
use liesym::field::ScalarField;
use liesym::groups::{derive_seed, sample_group_element, GroupSpec};
use liesym::matrix::{mat_exp, Matrix};
use liesym::spaces::SpaceSpec;
use liesym::{Error, C64};

fn groups() -> Vec<GroupSpec> {
    vec![
        GroupSpec::so(4),
        GroupSpec::u(2),
        GroupSpec::u(3),
        GroupSpec::su(3),
        GroupSpec::sp(2),
    ]
}

/// A real orthogonal `d×d` matrix, as the exponential of a seeded skew matrix.
fn rotation(d: usize, seed: u64) -> Matrix {
    let v = random_complex_vector(d * d, seed);
    let a = Matrix::from_fn(d, d, |r, k| c(v[r * d + k].re - v[k * d + r].re, 0.0));
    mat_exp(&a).unwrap()
}

#[test]
fn tension_is_linear() {
    for g in groups() {
        let size = g.matrix_size();
        let f = generic_polynomial(size);
        let h = ScalarField::entry(size, 0, size - 1, true)
            .product(&ScalarField::entry(size, 1, 0, false))
            .unwrap();
        let (a, b) = (c(0.3, -1.2), c(-2.0, 0.5));
        let combo = ScalarField::linear_combination(vec![(a, f.clone()), (b, h.clone())]).unwrap();
        for seed in 0..5 {
            let p = sample_group_element(&g, seed).unwrap();
            let lhs = tension(&combo, &g, &p).unwrap();
            let rhs = a * tension(&f, &g, &p).unwrap() + b * tension(&h, &g, &p).unwrap();
            assert!((lhs - rhs).norm() < 1e-10, "{g}");
        }
    }
}

#[test]
fn left_translation_commutes_with_tension() {
    for g in groups() {
        let f = generic_polynomial(g.matrix_size());
        for seed in 0..5 {
            let p = sample_group_element(&g, derive_seed(seed, 0)).unwrap();
            let q = sample_group_element(&g, derive_seed(seed, 1)).unwrap();
            let lhs = tension(&f.left_translate(&q).unwrap(), &g, &p).unwrap();
            let rhs = tension(&f, &g, &(&q * &p)).unwrap();
            assert!(rel(lhs, rhs) < 1e-9, "{g}");
        }
    }
}

#[test]
fn operators_do_not_depend_on_the_basis() {
    for g in groups() {
        let basis = liesym::groups::algebra_basis(&g).unwrap().elements;
        let d = basis.len();
        let size = g.matrix_size();
        let q = rotation(d, 9);
        let rotated: Vec<Matrix> = (0..d)
            .map(|j| {
                (0..d).fold(Matrix::zeros(size, size), |acc, k| {
                    &acc + &basis[k].scale_real(q[(j, k)].re)
                })
            })
            .collect();
        let f = generic_polynomial(size);
        let h = ScalarField::entry(size, size - 1, 0, false);
        for seed in 0..5 {
            let p = sample_group_element(&g, seed).unwrap();
            let a = tension_with_basis(&f, &basis, &p).unwrap();
            let b = tension_with_basis(&f, &rotated, &p).unwrap();
            assert!(rel(b, a) < 1e-9, "{g}");
            let a = conformality_with_basis(&f, &h, &basis, &p).unwrap();
            let b = conformality_with_basis(&f, &h, &rotated, &p).unwrap();
            assert!(rel(b, a) < 1e-9, "{g}");
        }
    }
}

#[test]
fn composition_relation_for_every_family() {
    let mut spaces = representative_spaces();
    spaces.push(SpaceSpec::product(
        SpaceSpec::sp_u(1).unwrap(),
        SpaceSpec::complex_grassmannian(1, 1).unwrap(),
    ));
    for s in spaces {
        let size = s.matrix_size();
        let f = generic_polynomial(size);
        let h = ScalarField::entry(size, 0, size - 1, false);
        let composed = compose_with_cartan(&f, &s).unwrap();
        let composed_h = compose_with_cartan(&h, &s).unwrap();
        let basis = s.ambient.algebra_basis().unwrap();
        for seed in 0..20 {
            let p = s.ambient.sample(seed).unwrap();
            let full = tension_with_basis(&composed, &basis, &p).unwrap();
            let restricted = tension_restricted(&f, &s, &p).unwrap();
            let image = tension_on_image(&f, &s, &p).unwrap();
            assert!(rel(full, restricted) < 1e-9, "{s}");
            assert!(rel(restricted, image * 4.0) < 1e-9, "{s}");

            let full = conformality_with_basis(&composed, &composed_h, &basis, &p).unwrap();
            let restricted = conformality_restricted(&f, &h, &s, &p).unwrap();
            let image = conformality_on_image(&f, &h, &s, &p).unwrap();
            assert!(rel(full, restricted) < 1e-9, "{s}");
            assert!(rel(restricted, image * 4.0) < 1e-9, "{s}");
        }
    }
}

#[test]
fn product_rule_on_coordinate_fields() {
    for g in groups() {
        let size = g.matrix_size();
        for seed in 0..10 {
            let v = random_complex_vector(4, seed);
            let pick = |x: f64| ((x.abs() * 1000.0) as usize) % size;
            let f = ScalarField::entry(size, pick(v[0].re), pick(v[0].im), v[1].re > 0.0);
            let h = ScalarField::entry(size, pick(v[2].re), pick(v[2].im), v[3].re > 0.0);
            let p = sample_group_element(&g, seed).unwrap();
            assert!(product_rule_residual(&f, &h, &g, &p).unwrap() < 1e-9, "{g}");
            assert!(product_rule_residual(&f, &f, &g, &p).unwrap() < 1e-9, "{g}");
        }
    }
}

#[test]
fn constants_have_no_tension_or_conformality() {
    let g = GroupSpec::sp(2);
    let k = ScalarField::constant(4, c(2.0, -1.0));
    let f = generic_polynomial(4);
    let p = sample_group_element(&g, 3).unwrap();
    assert_eq!(tension(&k, &g, &p).unwrap(), C64::new(0.0, 0.0));
    assert_eq!(conformality(&k, &f, &g, &p).unwrap(), C64::new(0.0, 0.0));
}

#[test]
fn wrong_sizes_are_rejected() {
    let g = GroupSpec::u(3);
    let p = sample_group_element(&g, 0).unwrap();
    let f = ScalarField::entry(2, 0, 0, false);
    assert!(matches!(tension(&f, &g, &p), Err(Error::Dimension(_))));
}
