//! Tension field `τ` and conformality operator `κ` on compact groups.
//!
//! For a bi-invariant metric and an orthonormal basis `{X_k}` of the Lie
//! algebra, left-invariant fields satisfy `∇_{X_k}X_k = 0`, so
//!
//! ```text
//! τ(f)(p)   = Σ_k d²/dt² f(p·exp(tX_k)) at t = 0
//! κ(f,h)(p) = Σ_k d/dt f(p·exp(tX_k)) · d/dt h(p·exp(tX_k)) at t = 0
//! ```
//!
//! Both are computed exactly (up to round-off) by evaluating the fields on the
//! order-2 jet of each curve.

use crate::error::{Error, Result};
use crate::field::ScalarField;
use crate::groups::{algebra_basis, GroupSpec};
use crate::matrix::{jet_curve, JetMatrix, Matrix};
use crate::scalar::{Jet, C64};
use crate::spaces::{cartan_map_unchecked, involution_unchecked, p_basis, SpaceSpec};

/// The jets of `t ↦ p·exp(tX_k)` for every direction of a basis.
///
/// Building a frame once and evaluating many fields on it avoids recomputing
/// the curves.
#[derive(Clone, Debug)]
pub struct Frame {
    curves: Vec<JetMatrix>,
}

/// Jets of one field along every direction of a [`Frame`].
#[derive(Clone, Debug)]
pub struct FieldJets {
    pub value: C64,
    pub jets: Vec<Jet>,
}

impl FieldJets {
    /// `Σ_k d²f_k`
    pub fn tension(&self) -> C64 {
        self.jets.iter().map(Jet::d2).sum()
    }

    /// `Σ_k df_k · dh_k`
    pub fn conformality(&self, other: &FieldJets) -> C64 {
        self.jets
            .iter()
            .zip(&other.jets)
            .map(|(a, b)| a.d1() * b.d1())
            .sum()
    }
}

impl Frame {
    pub fn new(basis: &[Matrix], p: &Matrix) -> Result<Self> {
        let curves = basis
            .iter()
            .map(|x| jet_curve(p, x))
            .collect::<Result<Vec<_>>>()?;
        Ok(Frame { curves })
    }

    /// Frame over a group's full orthonormal algebra basis.
    pub fn for_group(g: &GroupSpec, p: &Matrix) -> Result<Self> {
        Frame::new(&algebra_basis(g)?.elements, p)
    }

    /// Frame whose curves are `t ↦ Φ(p·exp(tX))` for `X` in the `p`-basis.
    pub fn through_cartan_map(s: &SpaceSpec, p: &Matrix) -> Result<Self> {
        let basis = p_basis(s)?;
        let curves = basis
            .iter()
            .map(|x| jet_curve(p, x).map(|c| cartan_map_unchecked(s, &c)))
            .collect::<Result<Vec<_>>>()?;
        Ok(Frame { curves })
    }

    pub fn len(&self) -> usize {
        self.curves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.curves.is_empty()
    }

    pub fn jets(&self, f: &ScalarField, base: &Matrix) -> Result<FieldJets> {
        let value = f.value(base)?;
        let jets = self
            .curves
            .iter()
            .enumerate()
            .map(|(k, c)| f.eval(c).map_err(|e| e.along(k)))
            .collect::<Result<Vec<_>>>()?;
        Ok(FieldJets { value, jets })
    }

    fn jets_only(&self, f: &ScalarField) -> Result<Vec<Jet>> {
        self.curves
            .iter()
            .enumerate()
            .map(|(k, c)| f.eval(c).map_err(|e| e.along(k)))
            .collect()
    }

    pub fn tension(&self, f: &ScalarField) -> Result<C64> {
        Ok(self.jets_only(f)?.iter().map(Jet::d2).sum())
    }

    pub fn conformality(&self, f: &ScalarField, h: &ScalarField) -> Result<C64> {
        let a = self.jets_only(f)?;
        let b = self.jets_only(h)?;
        Ok(a.iter().zip(&b).map(|(x, y)| x.d1() * y.d1()).sum())
    }
}

fn check_field_size(f: &ScalarField, size: usize) -> Result<()> {
    if f.size() != size {
        return Err(Error::Dimension(format!(
            "field '{}' acts on {}x{} matrices, the group on {size}x{size}",
            f.label(),
            f.size(),
            f.size()
        )));
    }
    Ok(())
}

/// `τ(f)(p)` over an explicit orthonormal basis.
pub fn tension_with_basis(f: &ScalarField, basis: &[Matrix], p: &Matrix) -> Result<C64> {
    check_field_size(f, p.rows())?;
    Frame::new(basis, p)?.tension(f)
}

/// `κ(f, h)(p)` over an explicit orthonormal basis.
pub fn conformality_with_basis(
    f: &ScalarField,
    h: &ScalarField,
    basis: &[Matrix],
    p: &Matrix,
) -> Result<C64> {
    check_field_size(f, p.rows())?;
    check_field_size(h, p.rows())?;
    Frame::new(basis, p)?.conformality(f, h)
}

pub fn tension(f: &ScalarField, g: &GroupSpec, p: &Matrix) -> Result<C64> {
    tension_with_basis(f, &algebra_basis(g)?.elements, p)
}

pub fn conformality(f: &ScalarField, h: &ScalarField, g: &GroupSpec, p: &Matrix) -> Result<C64> {
    conformality_with_basis(f, h, &algebra_basis(g)?.elements, p)
}

/// `f∘Φ` as a field on the ambient group.
pub fn compose_with_cartan(f: &ScalarField, s: &SpaceSpec) -> Result<ScalarField> {
    check_field_size(f, s.matrix_size())?;
    Ok(ScalarField::new(
        s.matrix_size(),
        format!("{}∘Φ", f.label()),
        CartanComposite {
            f: f.clone(),
            space: s.clone(),
        },
    ))
}

struct CartanComposite {
    f: ScalarField,
    space: SpaceSpec,
}

impl crate::field::FieldExpr for CartanComposite {
    fn eval<S: crate::scalar::Scalar>(&self, z: &crate::matrix::Mat<S>) -> Result<S> {
        self.f.eval(&cartan_map_unchecked(&self.space, z))
    }
}

/// `Σ_{X ∈ p-basis} d²/dt² f(Φ(p·exp(tX)))`, the tension of `f∘Φ` with the
/// directions of `k` (along which `f∘Φ` is constant) left out.
pub fn tension_restricted(f: &ScalarField, s: &SpaceSpec, p: &Matrix) -> Result<C64> {
    check_field_size(f, s.matrix_size())?;
    s.ambient.check_member(p)?;
    Frame::through_cartan_map(s, p)?.tension(f)
}

pub fn conformality_restricted(
    f: &ScalarField,
    h: &ScalarField,
    s: &SpaceSpec,
    p: &Matrix,
) -> Result<C64> {
    check_field_size(f, s.matrix_size())?;
    check_field_size(h, s.matrix_size())?;
    s.ambient.check_member(p)?;
    Frame::through_cartan_map(s, p)?.conformality(f, h)
}

/// Orthonormal frame of the Cartan image at `Φ(p)`: `Ad_{σ(p)}X` for `X` in the `p`-basis.
fn image_frame(s: &SpaceSpec, p: &Matrix) -> Result<(Matrix, Frame)> {
    s.ambient.check_member(p)?;
    let sp = involution_unchecked(s, p);
    let sp_inv = sp.adjoint();
    let phi = cartan_map_unchecked(s, p);
    let basis: Vec<Matrix> = p_basis(s)?.iter().map(|x| &(&sp * x) * &sp_inv).collect();
    let frame = Frame::new(&basis, &phi)?;
    Ok((phi, frame))
}

/// Tension of `f` restricted to the totally geodesic image `N = Φ(G)`, at `Φ(p)`.
pub fn tension_on_image(f: &ScalarField, s: &SpaceSpec, p: &Matrix) -> Result<C64> {
    check_field_size(f, s.matrix_size())?;
    image_frame(s, p)?.1.tension(f)
}

/// Conformality operator of `f, h` restricted to `N = Φ(G)`, at `Φ(p)`.
pub fn conformality_on_image(
    f: &ScalarField,
    h: &ScalarField,
    s: &SpaceSpec,
    p: &Matrix,
) -> Result<C64> {
    check_field_size(f, s.matrix_size())?;
    check_field_size(h, s.matrix_size())?;
    image_frame(s, p)?.1.conformality(f, h)
}

/// `|τ(fh) − f·τ(h) − 2κ(f,h) − τ(f)·h|` at `p`.
pub fn product_rule_residual(
    f: &ScalarField,
    h: &ScalarField,
    g: &GroupSpec,
    p: &Matrix,
) -> Result<f64> {
    check_field_size(f, p.rows())?;
    check_field_size(h, p.rows())?;
    let frame = Frame::for_group(g, p)?;
    let fh = f.product(h)?;
    let jf = frame.jets(f, p)?;
    let jh = frame.jets(h, p)?;
    let lhs = frame.tension(&fh)?;
    let rhs = jf.value * jh.tension() + jf.conformality(&jh) * 2.0 + jf.tension() * jh.value;
    Ok((lhs - rhs).norm())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::sample_group_element;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn u1_coordinate() {
        let g = GroupSpec::u(1);
        let p = Matrix::diagonal(&[c(0.6, 0.8)]);
        let f = ScalarField::entry(1, 0, 0, false);
        let t = tension(&f, &g, &p).unwrap();
        assert!((t + p[(0, 0)]).norm() < 1e-15);
        let k = conformality(&f, &f, &g, &p).unwrap();
        assert!((k + p[(0, 0)] * p[(0, 0)]).norm() < 1e-15);
    }

    #[test]
    fn constants_are_harmonic() {
        let g = GroupSpec::su(3);
        let p = sample_group_element(&g, 3).unwrap();
        let one = ScalarField::constant(3, c(2.0, -1.0));
        let f = ScalarField::entry(3, 1, 2, true);
        assert_eq!(tension(&one, &g, &p).unwrap(), c(0.0, 0.0));
        assert_eq!(conformality(&f, &one, &g, &p).unwrap(), c(0.0, 0.0));
    }

    #[test]
    fn su2_entry_at_identity() {
        // each unit direction of su(2) squares to −I/2, so τ(z11)(e) = 3·(−1/2)
        let g = GroupSpec::su(2);
        let f = ScalarField::entry(2, 0, 0, false);
        let t = tension(&f, &g, &Matrix::identity(2)).unwrap();
        assert!((t - c(-1.5, 0.0)).norm() < 1e-14, "{t}");
    }

    #[test]
    fn evaluation_errors_carry_direction() {
        let g = GroupSpec::u(2);
        let one = ScalarField::constant(2, c(1.0, 0.0));
        let q = one
            .quotient(&ScalarField::entry(2, 0, 1, false), 0.0)
            .unwrap();
        match tension(&q, &g, &Matrix::identity(2)) {
            Err(Error::Evaluation { .. }) => {}
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn restricted_sum_equals_full_tension_of_composite() {
        let s = SpaceSpec::complex_grassmannian(1, 1).unwrap();
        let g = GroupSpec::u(2);
        let p = sample_group_element(&g, 5).unwrap();
        let f = ScalarField::entry(2, 0, 1, false);
        let full = tension(&compose_with_cartan(&f, &s).unwrap(), &g, &p).unwrap();
        let restricted = tension_restricted(&f, &s, &p).unwrap();
        let image = tension_on_image(&f, &s, &p).unwrap();
        assert!((full - restricted).norm() < 1e-10);
        assert!((full - image * 4.0).norm() < 1e-10);
    }
}
