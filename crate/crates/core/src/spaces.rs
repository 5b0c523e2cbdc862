//! Compact symmetric spaces `G/K` with their involutions and Cartan maps.
//!
//! Each space is given by an involutive automorphism `σ` of the ambient group.
//! The Cartan map `Φ(p) = p·σ(p)⁻¹` identifies `G/K` with a totally geodesic
//! submanifold of `G`. All group elements are unitary, so the inverse is taken
//! as the conjugate transpose; this keeps `Φ` polynomial in the entries and
//! their conjugates, which is what jet evaluation needs.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::groups::{
    algebra_basis, derive_seed, gram_schmidt, membership_residual, sample_group_element,
    symplectic_form, GroupFamily, GroupSpec,
};
use crate::matrix::{frobenius_inner, jet_curve, Mat, Matrix};
use crate::scalar::{Scalar, C64};

/// Membership tolerance accepted by the checked entry points.
pub const MEMBERSHIP_TOLERANCE: f64 = 1e-8;

/// A compact group realised as block-diagonal matrices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Ambient {
    Group(GroupSpec),
    Product(Box<Ambient>, Box<Ambient>),
}

impl Ambient {
    pub fn product(a: Ambient, b: Ambient) -> Self {
        Ambient::Product(Box::new(a), Box::new(b))
    }

    pub fn matrix_size(&self) -> usize {
        match self {
            Ambient::Group(g) => g.matrix_size(),
            Ambient::Product(a, b) => a.matrix_size() + b.matrix_size(),
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            Ambient::Group(g) => g.dim(),
            Ambient::Product(a, b) => a.dim() + b.dim(),
        }
    }

    /// Orthonormal basis of the Lie algebra; for products the two factor bases
    /// are embedded block-diagonally and concatenated.
    pub fn algebra_basis(&self) -> Result<Vec<Matrix>> {
        match self {
            Ambient::Group(g) => {
                if g.dim() == 0 {
                    return Ok(Vec::new());
                }
                Ok(algebra_basis(g)?.elements)
            }
            Ambient::Product(a, b) => {
                let (na, nb) = (a.matrix_size(), b.matrix_size());
                let za = Matrix::zeros(na, na);
                let zb = Matrix::zeros(nb, nb);
                let mut out: Vec<Matrix> = a
                    .algebra_basis()?
                    .iter()
                    .map(|x| Matrix::block_diag(x, &zb))
                    .collect();
                out.extend(
                    b.algebra_basis()?
                        .iter()
                        .map(|y| Matrix::block_diag(&za, y)),
                );
                Ok(out)
            }
        }
    }

    pub fn membership_residual(&self, m: &Matrix) -> Result<f64> {
        match self {
            Ambient::Group(g) => membership_residual(g, m),
            Ambient::Product(a, b) => {
                let size = self.matrix_size();
                if m.rows() != size || m.cols() != size {
                    return Err(Error::Dimension(format!(
                        "product group needs {size}x{size} matrices, got {}x{}",
                        m.rows(),
                        m.cols()
                    )));
                }
                let na = a.matrix_size();
                let nb = b.matrix_size();
                let ra = a.membership_residual(&m.block(0, 0, na, na))?;
                let rb = b.membership_residual(&m.block(na, na, nb, nb))?;
                let off = m.block(0, na, na, nb).frobenius_norm()
                    + m.block(na, 0, nb, na).frobenius_norm();
                Ok(ra.max(rb).max(off))
            }
        }
    }

    pub fn check_member(&self, m: &Matrix) -> Result<()> {
        let r = self.membership_residual(m)?;
        if !(r <= MEMBERSHIP_TOLERANCE) {
            return Err(Error::Domain(format!(
                "matrix is not a member of {self} (residual {r:.3e})"
            )));
        }
        Ok(())
    }

    /// Deterministic generic element; factors use independent derived seeds.
    pub fn sample(&self, seed: u64) -> Result<Matrix> {
        match self {
            Ambient::Group(g) => sample_group_element(g, seed),
            Ambient::Product(a, b) => Ok(Matrix::block_diag(
                &a.sample(derive_seed(seed, 1))?,
                &b.sample(derive_seed(seed, 2))?,
            )),
        }
    }
}

impl fmt::Display for Ambient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ambient::Group(g) => write!(f, "{g}"),
            Ambient::Product(a, b) => write!(f, "{a}x{b}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SpaceFamily {
    /// `U(m+n)/U(m)×U(n)`
    ComplexGrassmannian { m: usize, n: usize },
    /// `SO(m+n)/SO(m)×SO(n)`
    RealGrassmannian { m: usize, n: usize },
    /// `Sp(m+n)/Sp(m)×Sp(n)`
    QuaternionicGrassmannian { m: usize, n: usize },
    /// `SU(n)/SO(n)`
    SuSo { n: usize },
    /// `SO(2n)/U(n)`
    So2nU { n: usize },
    /// `Sp(n)/U(n)`
    SpU { n: usize },
    /// `SU(2n)/Sp(n)`
    Su2nSp { n: usize },
    /// `G×G/ΔG`
    GroupType(GroupSpec),
    /// Riemannian product of two spaces.
    Product(Box<SpaceSpec>, Box<SpaceSpec>),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SpaceSpec {
    pub family: SpaceFamily,
    pub ambient: Ambient,
}

impl SpaceSpec {
    pub fn new(family: SpaceFamily) -> Result<Self> {
        let positive = |k: usize, what: &str| {
            if k == 0 {
                Err(Error::Unsupported(format!("{what} must be positive")))
            } else {
                Ok(())
            }
        };
        let group = |f: GroupFamily, n: usize| Ambient::Group(GroupSpec { family: f, n });
        let ambient = match &family {
            SpaceFamily::ComplexGrassmannian { m, n } => {
                positive(*m, "m")?;
                positive(*n, "n")?;
                group(GroupFamily::Unitary, m + n)
            }
            SpaceFamily::RealGrassmannian { m, n } => {
                positive(*m, "m")?;
                positive(*n, "n")?;
                group(GroupFamily::SpecialOrthogonal, m + n)
            }
            SpaceFamily::QuaternionicGrassmannian { m, n } => {
                positive(*m, "m")?;
                positive(*n, "n")?;
                group(GroupFamily::Symplectic, m + n)
            }
            SpaceFamily::SuSo { n } => {
                if *n < 2 {
                    return Err(Error::Unsupported("SU(n)/SO(n) needs n >= 2".into()));
                }
                group(GroupFamily::SpecialUnitary, *n)
            }
            SpaceFamily::So2nU { n } => {
                positive(*n, "n")?;
                group(GroupFamily::SpecialOrthogonal, 2 * n)
            }
            SpaceFamily::SpU { n } => {
                positive(*n, "n")?;
                group(GroupFamily::Symplectic, *n)
            }
            SpaceFamily::Su2nSp { n } => {
                positive(*n, "n")?;
                group(GroupFamily::SpecialUnitary, 2 * n)
            }
            SpaceFamily::GroupType(g) => {
                if g.n == 0 {
                    return Err(Error::Unsupported(
                        "group parameter must be positive".into(),
                    ));
                }
                Ambient::product(Ambient::Group(*g), Ambient::Group(*g))
            }
            SpaceFamily::Product(a, b) => Ambient::product(a.ambient.clone(), b.ambient.clone()),
        };
        Ok(SpaceSpec { family, ambient })
    }

    pub fn complex_grassmannian(m: usize, n: usize) -> Result<Self> {
        SpaceSpec::new(SpaceFamily::ComplexGrassmannian { m, n })
    }

    pub fn real_grassmannian(m: usize, n: usize) -> Result<Self> {
        SpaceSpec::new(SpaceFamily::RealGrassmannian { m, n })
    }

    pub fn quaternionic_grassmannian(m: usize, n: usize) -> Result<Self> {
        SpaceSpec::new(SpaceFamily::QuaternionicGrassmannian { m, n })
    }

    pub fn su_so(n: usize) -> Result<Self> {
        SpaceSpec::new(SpaceFamily::SuSo { n })
    }

    pub fn so2n_u(n: usize) -> Result<Self> {
        SpaceSpec::new(SpaceFamily::So2nU { n })
    }

    pub fn sp_u(n: usize) -> Result<Self> {
        SpaceSpec::new(SpaceFamily::SpU { n })
    }

    pub fn su2n_sp(n: usize) -> Result<Self> {
        SpaceSpec::new(SpaceFamily::Su2nSp { n })
    }

    pub fn group_type(g: GroupSpec) -> Result<Self> {
        SpaceSpec::new(SpaceFamily::GroupType(g))
    }

    pub fn product(a: SpaceSpec, b: SpaceSpec) -> Self {
        SpaceSpec::new(SpaceFamily::Product(Box::new(a), Box::new(b)))
            .expect("product of valid spaces")
    }

    pub fn matrix_size(&self) -> usize {
        self.ambient.matrix_size()
    }

    /// Closed-form dimension of `G/K`.
    pub fn dim(&self) -> usize {
        match &self.family {
            SpaceFamily::ComplexGrassmannian { m, n } => 2 * m * n,
            SpaceFamily::RealGrassmannian { m, n } => m * n,
            SpaceFamily::QuaternionicGrassmannian { m, n } => 4 * m * n,
            SpaceFamily::SuSo { n } => (n - 1) * (n + 2) / 2,
            SpaceFamily::So2nU { n } => n * (n - 1),
            SpaceFamily::SpU { n } => n * (n + 1),
            SpaceFamily::Su2nSp { n } => 2 * n * n - n - 1,
            SpaceFamily::GroupType(g) => g.dim(),
            SpaceFamily::Product(a, b) => a.dim() + b.dim(),
        }
    }

    /// The fixed matrix the involution conjugates by, where there is one.
    pub fn conjugating_matrix(&self) -> Option<Matrix> {
        match &self.family {
            SpaceFamily::ComplexGrassmannian { m, n } | SpaceFamily::RealGrassmannian { m, n } => {
                Some(crate::groups::signature_matrix(*m, *n))
            }
            SpaceFamily::QuaternionicGrassmannian { m, n } => {
                let i = crate::groups::signature_matrix(*m, *n);
                Some(Matrix::block_diag(&i, &i))
            }
            SpaceFamily::So2nU { n } | SpaceFamily::Su2nSp { n } => Some(symplectic_form(*n)),
            _ => None,
        }
    }
}

impl fmt::Display for SpaceSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.family {
            SpaceFamily::ComplexGrassmannian { m, n } => write!(f, "U({})/U({m})xU({n})", m + n),
            SpaceFamily::RealGrassmannian { m, n } => write!(f, "SO({})/SO({m})xSO({n})", m + n),
            SpaceFamily::QuaternionicGrassmannian { m, n } => {
                write!(f, "Sp({})/Sp({m})xSp({n})", m + n)
            }
            SpaceFamily::SuSo { n } => write!(f, "SU({n})/SO({n})"),
            SpaceFamily::So2nU { n } => write!(f, "SO({})/U({n})", 2 * n),
            SpaceFamily::SpU { n } => write!(f, "Sp({n})/U({n})"),
            SpaceFamily::Su2nSp { n } => write!(f, "SU({})/Sp({n})", 2 * n),
            SpaceFamily::GroupType(g) => write!(f, "{g}x{g}/{g}"),
            SpaceFamily::Product(a, b) => write!(f, "({a})x({b})"),
        }
    }
}

fn sign(i: usize, m: usize) -> f64 {
    if i < m {
        1.0
    } else {
        -1.0
    }
}

/// `J·z·Jᵗ` computed by index shuffling: entry `(r, c)` is `±z[r±n][c±n]`.
fn conjugate_by_j<S: Scalar>(z: &Mat<S>, n: usize) -> Mat<S> {
    let half = |i: usize| if i < n { (i + n, 1.0) } else { (i - n, -1.0) };
    Mat::from_fn(2 * n, 2 * n, |r, c| {
        let (rr, sr) = half(r);
        let (cc, sc) = half(c);
        z[(rr, cc)].scale(C64::new(sr * sc, 0.0))
    })
}

/// `σ(z)` without membership checks, over any scalar arithmetic.
///
/// Every involution here is the restriction of a real-linear map on matrices,
/// so the same function also computes `dσ` on algebra elements.
pub fn involution_unchecked<S: Scalar>(s: &SpaceSpec, z: &Mat<S>) -> Mat<S> {
    match &s.family {
        SpaceFamily::ComplexGrassmannian { m, .. } | SpaceFamily::RealGrassmannian { m, .. } => {
            Mat::from_fn(z.rows(), z.cols(), |r, c| {
                z[(r, c)].scale(C64::new(sign(r, *m) * sign(c, *m), 0.0))
            })
        }
        SpaceFamily::QuaternionicGrassmannian { m, n } => {
            let k = m + n;
            Mat::from_fn(z.rows(), z.cols(), |r, c| {
                z[(r, c)].scale(C64::new(sign(r % k, *m) * sign(c % k, *m), 0.0))
            })
        }
        SpaceFamily::SuSo { .. } | SpaceFamily::SpU { .. } => z.conj(),
        SpaceFamily::So2nU { n } => conjugate_by_j(z, *n),
        SpaceFamily::Su2nSp { n } => conjugate_by_j(&z.conj(), *n),
        SpaceFamily::GroupType(g) => {
            let k = g.matrix_size();
            Mat::block_diag(&z.block(k, k, k, k), &z.block(0, 0, k, k))
        }
        SpaceFamily::Product(a, b) => {
            let ka = a.matrix_size();
            let kb = b.matrix_size();
            Mat::block_diag(
                &involution_unchecked(a, &z.block(0, 0, ka, ka)),
                &involution_unchecked(b, &z.block(ka, ka, kb, kb)),
            )
        }
    }
}

/// `Φ(z) = z·σ(z)^*`, over any scalar arithmetic; agrees with `z·σ(z⁻¹)` on the group.
pub fn cartan_map_unchecked<S: Scalar>(s: &SpaceSpec, z: &Mat<S>) -> Mat<S> {
    let sz = involution_unchecked(s, z);
    z * &sz.adjoint()
}

pub fn involution(s: &SpaceSpec, p: &Matrix) -> Result<Matrix> {
    s.ambient.check_member(p)?;
    Ok(involution_unchecked(s, p))
}

/// Linearised involution on the ambient Lie algebra.
pub fn d_involution(s: &SpaceSpec, x: &Matrix) -> Result<Matrix> {
    let size = s.matrix_size();
    if x.rows() != size || x.cols() != size {
        return Err(Error::Dimension(format!(
            "{s} needs {size}x{size} algebra elements"
        )));
    }
    Ok(involution_unchecked(s, x))
}

pub fn cartan_map(s: &SpaceSpec, p: &Matrix) -> Result<Matrix> {
    s.ambient.check_member(p)?;
    Ok(cartan_map_unchecked(s, p))
}

/// Orthonormal basis of the `−1` eigenspace `p` of `dσ`.
#[derive(Clone, Debug)]
pub struct PBasis {
    pub space: SpaceSpec,
    pub elements: Vec<Matrix>,
}

impl PBasis {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Matrix> {
        self.elements.iter()
    }
}

fn eigenspace_basis(s: &SpaceSpec, sign: f64) -> Result<Vec<Matrix>> {
    let candidates: Vec<Matrix> = s
        .ambient
        .algebra_basis()?
        .iter()
        .map(|x| (x + &involution_unchecked(s, x).scale_real(sign)).scale_real(0.5))
        .collect();
    Ok(gram_schmidt(&candidates, &[], 1e-8))
}

/// Basis of `p`, obtained by projecting the ambient basis in its fixed order and
/// orthonormalising.
pub fn p_basis(s: &SpaceSpec) -> Result<PBasis> {
    Ok(PBasis {
        space: s.clone(),
        elements: eigenspace_basis(s, -1.0)?,
    })
}

/// Orthonormal basis of the fixed subalgebra `k`.
pub fn k_basis(s: &SpaceSpec) -> Result<Vec<Matrix>> {
    eigenspace_basis(s, 1.0)
}

/// Residuals of `σ(Φ(p)) = Φ(σ(p)) = Φ(p)⁻¹` and `Φ(p)Φ(q)Φ(p) = Φ(Φ(p)q)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CartanResiduals {
    pub inversion: f64,
    pub squaring: f64,
}

pub fn cartan_identity_residuals(s: &SpaceSpec, p: &Matrix, q: &Matrix) -> Result<CartanResiduals> {
    s.ambient.check_member(p)?;
    s.ambient.check_member(q)?;
    let phi_p = cartan_map_unchecked(s, p);
    let phi_q = cartan_map_unchecked(s, q);
    let inv = phi_p.inverse()?;
    let a = (&involution_unchecked(s, &phi_p) - &inv).max_abs();
    let b = (&cartan_map_unchecked(s, &involution_unchecked(s, p)) - &inv).max_abs();
    let lhs = &(&phi_p * &phi_q) * &phi_p;
    let rhs = cartan_map_unchecked(s, &(&phi_p * q));
    Ok(CartanResiduals {
        inversion: a.max(b),
        squaring: (&lhs - &rhs).max_abs(),
    })
}

/// `dΦ_p(X)`: first derivative of `Φ(p·exp(tX))` at `t = 0`.
pub fn differential_of_cartan(s: &SpaceSpec, p: &Matrix, x: &Matrix) -> Result<Matrix> {
    s.ambient.check_member(p)?;
    let curve = jet_curve(p, x)?;
    Ok(cartan_map_unchecked(s, &curve).first())
}

/// Conformal factor `⟨dΦ_p(X), dΦ_p(X)⟩` for a unit `X`.
pub fn conformal_factor(s: &SpaceSpec, p: &Matrix, x: &Matrix) -> Result<f64> {
    let d = differential_of_cartan(s, p, x)?;
    frobenius_inner(&d, &d)
}
