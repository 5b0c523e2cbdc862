//! New eigenfunctions and harmonic morphisms built from known ones.
//!
//! * Products: `φ₁(p₁)·φ₂(p₂)` on `M₁ × M₂` has eigenvalues `(λ₁+λ₂, μ₁+μ₂)`.
//! * Homogeneous polynomials of degree `d` in an eigenfamily have eigenvalues
//!   `(dλ + d(d−1)μ, d²μ)`, and quotients `P/Q` of two such polynomials are
//!   harmonic morphisms where `Q ≠ 0`.
//! * Powers: `φ^s` has eigenvalues `(λs + μs(s−1), μs²)` off the branch cut.

use crate::catalog::EigenCandidate;
use crate::error::{Error, Result};
use crate::field::{FieldExpr, ScalarField};
use crate::matrix::Mat;
use crate::scalar::{Scalar, C64};
use crate::spaces::SpaceSpec;

const EIGENVALUE_MATCH: f64 = 1e-12;

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

/// The constant function 1, an eigenfunction with `λ = μ = 0`.
pub fn constant_candidate(space: &SpaceSpec) -> EigenCandidate {
    EigenCandidate {
        field: ScalarField::constant(space.matrix_size(), c(1.0, 0.0)).with_label("1"),
        lambda: c(0.0, 0.0),
        mu: c(0.0, 0.0),
        space: space.clone(),
        family_tag: "constant".into(),
        k_invariant: true,
    }
}

/// `(p₁, p₂) ↦ φ₁(p₁)·φ₂(p₂)` on the product space.
pub fn product_eigenfunction(c1: &EigenCandidate, c2: &EigenCandidate) -> Result<EigenCandidate> {
    let space = SpaceSpec::product(c1.space.clone(), c2.space.clone());
    let total = space.matrix_size();
    let left = c1.field.on_block(0, total)?;
    let right = c2.field.on_block(c1.space.matrix_size(), total)?;
    let field = left
        .product(&right)?
        .with_label(format!("{} (x) {}", c1.label(), c2.label()));
    Ok(EigenCandidate {
        field,
        lambda: c1.lambda + c2.lambda,
        mu: c1.mu + c2.mu,
        space,
        family_tag: format!("product({},{})", c1.family_tag, c2.family_tag),
        k_invariant: c1.k_invariant && c2.k_invariant,
    })
}

/// All pairwise products of two eigenfamilies; again an eigenfamily.
pub fn product_family(f1: &[EigenCandidate], f2: &[EigenCandidate]) -> Result<Vec<EigenCandidate>> {
    let mut out = Vec::with_capacity(f1.len() * f2.len());
    for a in f1 {
        for b in f2 {
            out.push(product_eigenfunction(a, b)?);
        }
    }
    Ok(out)
}

/// `φ^s` on the principal branch, with eigenvalues `(λs + μs(s−1), μs²)`.
pub fn power_candidate(base: &EigenCandidate, s: C64) -> EigenCandidate {
    EigenCandidate {
        field: base.field.powc(s),
        lambda: base.lambda * s + base.mu * s * (s - 1.0),
        mu: base.mu * s * s,
        space: base.space.clone(),
        family_tag: format!("power({})", base.family_tag),
        k_invariant: base.k_invariant,
    }
}

/// `Σ c·x^e` with every exponent vector summing to the same degree.
#[derive(Clone, Debug, PartialEq)]
pub struct HomogeneousPolynomial {
    terms: Vec<(C64, Vec<u32>)>,
    vars: usize,
    degree: u32,
}

impl HomogeneousPolynomial {
    pub fn new(vars: usize, terms: Vec<(C64, Vec<u32>)>) -> Result<Self> {
        let degree = match terms.first() {
            Some((_, e)) => e.iter().sum(),
            None => return Err(Error::InvalidArgument("polynomial has no terms".into())),
        };
        for (_, e) in &terms {
            if e.len() != vars {
                return Err(Error::InvalidArgument(format!(
                    "exponent vector has {} entries, expected {vars}",
                    e.len()
                )));
            }
            if e.iter().sum::<u32>() != degree {
                return Err(Error::InvalidArgument(
                    "polynomial is not homogeneous".into(),
                ));
            }
        }
        if degree == 0 {
            return Err(Error::InvalidArgument("degree must be positive".into()));
        }
        Ok(HomogeneousPolynomial {
            terms,
            vars,
            degree,
        })
    }

    pub fn monomial(exponents: Vec<u32>) -> Result<Self> {
        HomogeneousPolynomial::new(exponents.len(), vec![(c(1.0, 0.0), exponents)])
    }

    /// `x_i`
    pub fn variable(vars: usize, i: usize) -> Result<Self> {
        if i >= vars {
            return Err(Error::InvalidArgument("variable index out of range".into()));
        }
        let mut e = vec![0; vars];
        e[i] = 1;
        HomogeneousPolynomial::monomial(e)
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn scale(&self, k: C64) -> Self {
        HomogeneousPolynomial {
            terms: self.terms.iter().map(|(a, e)| (a * k, e.clone())).collect(),
            vars: self.vars,
            degree: self.degree,
        }
    }

    pub fn evaluate<S: Scalar>(&self, xs: &[S]) -> S {
        let mut acc = S::zero();
        for (k, e) in &self.terms {
            let mut t = S::from_complex(*k);
            for (x, &p) in xs.iter().zip(e) {
                for _ in 0..p {
                    t = t * *x;
                }
            }
            acc += t;
        }
        acc
    }
}

struct PolynomialField {
    members: Vec<ScalarField>,
    poly: HomogeneousPolynomial,
}

impl FieldExpr for PolynomialField {
    fn eval<S: Scalar>(&self, z: &Mat<S>) -> Result<S> {
        let xs = self
            .members
            .iter()
            .map(|f| f.eval(z))
            .collect::<Result<Vec<S>>>()?;
        Ok(self.poly.evaluate(&xs))
    }
}

fn shared_eigenvalues(family: &[EigenCandidate]) -> Result<(C64, C64)> {
    let first = family
        .first()
        .ok_or_else(|| Error::InvalidArgument("empty eigenfamily".into()))?;
    for c in family {
        if (c.lambda - first.lambda).norm() > EIGENVALUE_MATCH
            || (c.mu - first.mu).norm() > EIGENVALUE_MATCH
        {
            return Err(Error::InvalidArgument(
                "family members have different eigenvalues".into(),
            ));
        }
        if c.space != first.space {
            return Err(Error::InvalidArgument(
                "family members live on different spaces".into(),
            ));
        }
    }
    Ok((first.lambda, first.mu))
}

/// `P(φ₁, …, φ_n)` as a field.
pub fn polynomial_field(
    family: &[EigenCandidate],
    poly: &HomogeneousPolynomial,
) -> Result<ScalarField> {
    shared_eigenvalues(family)?;
    if poly.vars() != family.len() {
        return Err(Error::InvalidArgument(format!(
            "polynomial in {} variables applied to a family of {}",
            poly.vars(),
            family.len()
        )));
    }
    Ok(ScalarField::new(
        family[0].field.size(),
        "P(phi)",
        PolynomialField {
            members: family.iter().map(|c| c.field.clone()).collect(),
            poly: poly.clone(),
        },
    ))
}

/// Monomials `Π φᵢ^{eᵢ}` of degree `d` in an eigenfamily; together they form an
/// eigenfamily with eigenvalues `(dλ + d(d−1)μ, d²μ)`.
pub fn homogeneous_family(
    family: &[EigenCandidate],
    d: u32,
    monomials: &[Vec<u32>],
) -> Result<Vec<EigenCandidate>> {
    let (lambda, mu) = shared_eigenvalues(family)?;
    if d == 0 {
        return Err(Error::InvalidArgument("degree must be positive".into()));
    }
    let df = d as f64;
    monomials
        .iter()
        .map(|e| {
            let poly = HomogeneousPolynomial::monomial(e.clone())?;
            if poly.degree() != d {
                return Err(Error::InvalidArgument(format!(
                    "monomial {e:?} has degree {}, expected {d}",
                    poly.degree()
                )));
            }
            Ok(EigenCandidate {
                field: polynomial_field(family, &poly)?.with_label(format!("monomial{e:?}")),
                lambda: lambda * df + mu * (df * (df - 1.0)),
                mu: mu * (df * df),
                space: family[0].space.clone(),
                family_tag: format!("degree-{d}({})", family[0].family_tag),
                k_invariant: family.iter().all(|c| c.k_invariant),
            })
        })
        .collect()
}

/// `P(φ)/Q(φ)`, a harmonic morphism wherever `|Q(φ)| > floor`.
pub fn harmonic_morphism_ratio(
    family: &[EigenCandidate],
    p: &HomogeneousPolynomial,
    q: &HomogeneousPolynomial,
    floor: f64,
) -> Result<ScalarField> {
    if p.degree() != q.degree() {
        return Err(Error::InvalidArgument(format!(
            "numerator has degree {}, denominator {}",
            p.degree(),
            q.degree()
        )));
    }
    let num = polynomial_field(family, p)?;
    let den = polynomial_field(family, q)?;
    Ok(num.quotient(&den, floor)?.with_label("P(phi)/Q(phi)"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calculus::Frame;
    use crate::catalog::complex_grassmannian_family;
    use crate::spaces::Ambient;

    #[test]
    fn product_with_constant_keeps_eigenvalues() {
        let fam = complex_grassmannian_family(1, 1, 0).unwrap();
        let one = constant_candidate(&fam[0].space);
        let p = product_eigenfunction(&fam[0], &one).unwrap();
        assert_eq!((p.lambda, p.mu), (fam[0].lambda, fam[0].mu));
        let pp = product_eigenfunction(&fam[0], &fam[0]).unwrap();
        assert_eq!((pp.lambda, pp.mu), (c(-8.0, 0.0), c(-4.0, 0.0)));
    }

    #[test]
    fn product_tension_on_concatenated_basis() {
        let fam = complex_grassmannian_family(1, 1, 0).unwrap();
        let p = product_eigenfunction(&fam[0], &fam[0]).unwrap();
        let Ambient::Product(..) = &p.space.ambient else {
            panic!()
        };
        let point = p.space.ambient.sample(4).unwrap();
        let frame = Frame::new(&p.space.ambient.algebra_basis().unwrap(), &point).unwrap();
        let j = frame.jets(&p.field, &point).unwrap();
        assert!((j.tension() - p.lambda * j.value).norm() < 1e-10);
        assert!((j.conformality(&j) - p.mu * j.value * j.value).norm() < 1e-10);
    }

    #[test]
    fn degree_two_grassmannian() {
        let fam = complex_grassmannian_family(1, 1, 0).unwrap();
        let out = homogeneous_family(&fam, 2, &[vec![2]]).unwrap();
        assert_eq!((out[0].lambda, out[0].mu), (c(-12.0, 0.0), c(-8.0, 0.0)));
        assert!(homogeneous_family(&fam, 2, &[vec![3]]).is_err());
    }

    #[test]
    fn mixed_eigenvalues_rejected() {
        let fam = complex_grassmannian_family(1, 1, 0).unwrap();
        let mut other = fam[0].clone();
        other.lambda = c(-1.0, 0.0);
        assert!(homogeneous_family(&[fam[0].clone(), other], 1, &[vec![1, 0]]).is_err());
    }

    #[test]
    fn equal_numerator_and_denominator_give_one() {
        let fam = complex_grassmannian_family(1, 2, 0).unwrap();
        let x = HomogeneousPolynomial::variable(2, 0).unwrap();
        let r = harmonic_morphism_ratio(&fam, &x, &x, 1e-6).unwrap();
        let p = fam[0].space.ambient.sample(2).unwrap();
        assert!((r.value(&p).unwrap() - c(1.0, 0.0)).norm() < 1e-14);
        let y = HomogeneousPolynomial::new(2, vec![(c(1.0, 0.0), vec![2, 0])]).unwrap();
        assert!(harmonic_morphism_ratio(&fam, &x, &y, 0.0).is_err());
    }

    #[test]
    fn inhomogeneous_polynomial_rejected() {
        assert!(HomogeneousPolynomial::new(
            2,
            vec![(c(1.0, 0.0), vec![1, 0]), (c(1.0, 0.0), vec![1, 1])]
        )
        .is_err());
    }
}
