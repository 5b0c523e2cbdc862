//! The compact classical groups SO(n), U(n), SU(n) and Sp(n) with their Lie algebras.
//!
//! Sp(n) is always handled through its complex representation
//! `z + jw ↦ [[z, w], [−w̄, z̄]]`, so its elements are `2n × 2n` complex
//! matrices `g` with `ḡᵗg = I` and `Jg = ḡJ`.
//!
//! Every algebra is equipped with the inner product `Re trace(X̄ᵗY)`, which is
//! bi-invariant on all four families.

use std::f64::consts::FRAC_1_SQRT_2;
use std::fmt;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{frobenius_inner, mat_exp, Matrix};
use crate::scalar::C64;

/// Tolerance on algebra constraints accepted by the Killing-form routines.
pub const ALGEBRA_TOLERANCE: f64 = 1e-8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GroupFamily {
    #[serde(rename = "so")]
    SpecialOrthogonal,
    #[serde(rename = "u")]
    Unitary,
    #[serde(rename = "su")]
    SpecialUnitary,
    #[serde(rename = "sp")]
    Symplectic,
}

impl GroupFamily {
    pub fn id(&self) -> &'static str {
        match self {
            GroupFamily::SpecialOrthogonal => "so",
            GroupFamily::Unitary => "u",
            GroupFamily::SpecialUnitary => "su",
            GroupFamily::Symplectic => "sp",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s.to_ascii_lowercase().as_str() {
            "so" => Some(GroupFamily::SpecialOrthogonal),
            "u" => Some(GroupFamily::Unitary),
            "su" => Some(GroupFamily::SpecialUnitary),
            "sp" => Some(GroupFamily::Symplectic),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GroupSpec {
    pub family: GroupFamily,
    pub n: usize,
}

impl GroupSpec {
    pub fn new(family: GroupFamily, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Unsupported(
                "group size parameter must be positive".into(),
            ));
        }
        Ok(GroupSpec { family, n })
    }

    pub fn so(n: usize) -> Self {
        GroupSpec::new(GroupFamily::SpecialOrthogonal, n).expect("n > 0")
    }

    pub fn u(n: usize) -> Self {
        GroupSpec::new(GroupFamily::Unitary, n).expect("n > 0")
    }

    pub fn su(n: usize) -> Self {
        GroupSpec::new(GroupFamily::SpecialUnitary, n).expect("n > 0")
    }

    pub fn sp(n: usize) -> Self {
        GroupSpec::new(GroupFamily::Symplectic, n).expect("n > 0")
    }

    /// Side length of the matrices representing the group.
    pub fn matrix_size(&self) -> usize {
        match self.family {
            GroupFamily::Symplectic => 2 * self.n,
            _ => self.n,
        }
    }

    /// Real dimension of the group.
    pub fn dim(&self) -> usize {
        let n = self.n;
        match self.family {
            GroupFamily::SpecialOrthogonal => n * (n - 1) / 2,
            GroupFamily::Unitary => n * n,
            GroupFamily::SpecialUnitary => n * n - 1,
            GroupFamily::Symplectic => n * (2 * n + 1),
        }
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self.family {
            GroupFamily::SpecialOrthogonal => "SO",
            GroupFamily::Unitary => "U",
            GroupFamily::SpecialUnitary => "SU",
            GroupFamily::Symplectic => "Sp",
        };
        write!(f, "{name}({})", self.n)
    }
}

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

/// `E_{jα}`: one in position `(j, α)`, zero elsewhere.
pub fn matrix_unit(n: usize, j: usize, a: usize) -> Matrix {
    Matrix::from_fn(n, n, |r, k| {
        if r == j && k == a {
            c(1.0, 0.0)
        } else {
            c(0.0, 0.0)
        }
    })
}

/// `(E_rs − E_sr)/√2`.
pub fn skew_unit(n: usize, r: usize, s: usize) -> Matrix {
    Matrix::from_fn(n, n, |i, k| {
        if i == r && k == s {
            c(FRAC_1_SQRT_2, 0.0)
        } else if i == s && k == r {
            c(-FRAC_1_SQRT_2, 0.0)
        } else {
            c(0.0, 0.0)
        }
    })
}

/// `(E_rs + E_sr)/√2`.
pub fn sym_unit(n: usize, r: usize, s: usize) -> Matrix {
    Matrix::from_fn(n, n, |i, k| {
        if (i == r && k == s) || (i == s && k == r) {
            c(FRAC_1_SQRT_2, 0.0)
        } else {
            c(0.0, 0.0)
        }
    })
}

/// `E_tt`.
pub fn diag_unit(n: usize, t: usize) -> Matrix {
    matrix_unit(n, t, t)
}

/// `J_n = [[0, I], [−I, 0]]`, size `2n`.
pub fn symplectic_form(n: usize) -> Matrix {
    Matrix::from_fn(2 * n, 2 * n, |r, k| {
        if k == r + n {
            c(1.0, 0.0)
        } else if r == k + n {
            c(-1.0, 0.0)
        } else {
            c(0.0, 0.0)
        }
    })
}

/// `I_{m,n} = diag(I_m, −I_n)`.
pub fn signature_matrix(m: usize, n: usize) -> Matrix {
    let d: Vec<C64> = (0..m + n)
        .map(|i| if i < m { c(1.0, 0.0) } else { c(-1.0, 0.0) })
        .collect();
    Matrix::diagonal(&d)
}

/// `[[a, b], [cc, d]]` from four equal-size square blocks.
pub fn block2(a: &Matrix, b: &Matrix, cc: &Matrix, d: &Matrix) -> Matrix {
    let n = a.rows();
    Matrix::from_fn(2 * n, 2 * n, |r, k| match (r < n, k < n) {
        (true, true) => a[(r, k)],
        (true, false) => b[(r, k - n)],
        (false, true) => cc[(r - n, k)],
        (false, false) => d[(r - n, k - n)],
    })
}

fn upper_pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..n).flat_map(move |r| (r + 1..n).map(move |s| (r, s)))
}

/// An ordered orthonormal basis of a Lie algebra.
#[derive(Clone, Debug)]
pub struct AlgebraBasis {
    pub group: GroupSpec,
    pub elements: Vec<Matrix>,
}

impl AlgebraBasis {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Matrix> {
        self.elements.iter()
    }

    /// Coordinates of `x` in this basis (orthogonal projection).
    pub fn coefficients(&self, x: &Matrix) -> Result<Vec<f64>> {
        self.elements
            .iter()
            .map(|e| frobenius_inner(e, x))
            .collect()
    }

    pub fn combine(&self, coefficients: &[f64]) -> Matrix {
        let n = self.group.matrix_size();
        self.elements
            .iter()
            .zip(coefficients)
            .fold(Matrix::zeros(n, n), |acc, (e, &k)| &acc + &e.scale_real(k))
    }
}

/// Modified Gram–Schmidt over the real inner product `Re trace(X̄ᵗY)`.
///
/// Each candidate is first projected off `against`, then off the vectors
/// accepted so far; anything left with norm below `drop_tol` is discarded.
pub(crate) fn gram_schmidt(
    candidates: &[Matrix],
    against: &[Matrix],
    drop_tol: f64,
) -> Vec<Matrix> {
    let mut out: Vec<Matrix> = Vec::new();
    for v in candidates {
        let mut w = v.clone();
        for q in against.iter().chain(out.iter()) {
            let k = frobenius_inner(q, &w).expect("equal shapes");
            w = &w - &q.scale_real(k);
        }
        // second pass for stability
        for q in against.iter().chain(out.iter()) {
            let k = frobenius_inner(q, &w).expect("equal shapes");
            w = &w - &q.scale_real(k);
        }
        let norm = w.frobenius_norm();
        if norm > drop_tol {
            out.push(w.scale_real(1.0 / norm));
        }
    }
    out
}

fn unitary_basis(n: usize) -> Vec<Matrix> {
    let i = c(0.0, 1.0);
    let mut out: Vec<Matrix> = upper_pairs(n).map(|(r, s)| skew_unit(n, r, s)).collect();
    out.extend(upper_pairs(n).map(|(r, s)| sym_unit(n, r, s).scale(i)));
    out.extend((0..n).map(|t| diag_unit(n, t).scale(i)));
    out
}

fn symplectic_basis(n: usize) -> Vec<Matrix> {
    let i = c(0.0, 1.0);
    let z = Matrix::zeros(n, n);
    let h = FRAC_1_SQRT_2;
    let mut out = Vec::with_capacity(n * (2 * n + 1));
    for (r, s) in upper_pairs(n) {
        let y = skew_unit(n, r, s);
        out.push(block2(&y, &z, &z, &y).scale_real(h));
    }
    for (r, s) in upper_pairs(n) {
        let ix = sym_unit(n, r, s).scale(i);
        out.push(block2(&ix, &z, &z, &-&ix).scale_real(h));
    }
    for t in 0..n {
        let id = diag_unit(n, t).scale(i);
        out.push(block2(&id, &z, &z, &-&id).scale_real(h));
    }
    for (r, s) in upper_pairs(n) {
        let x = sym_unit(n, r, s);
        out.push(block2(&z, &x, &-&x, &z).scale_real(h));
    }
    for (r, s) in upper_pairs(n) {
        let ix = sym_unit(n, r, s).scale(i);
        out.push(block2(&z, &ix, &ix, &z).scale_real(h));
    }
    for t in 0..n {
        let d = diag_unit(n, t);
        out.push(block2(&z, &d, &-&d, &z).scale_real(h));
    }
    for t in 0..n {
        let id = diag_unit(n, t).scale(i);
        out.push(block2(&z, &id, &id, &z).scale_real(h));
    }
    out
}

/// Orthonormal basis of the Lie algebra of `g` in the crate's fixed ordering.
pub fn algebra_basis(g: &GroupSpec) -> Result<AlgebraBasis> {
    let n = g.n;
    let elements = match g.family {
        GroupFamily::SpecialOrthogonal => {
            if n < 2 {
                return Err(Error::Unsupported("so(n) needs n >= 2".into()));
            }
            upper_pairs(n).map(|(r, s)| skew_unit(n, r, s)).collect()
        }
        GroupFamily::Unitary => unitary_basis(n),
        GroupFamily::SpecialUnitary => {
            if n < 2 {
                return Err(Error::Unsupported("su(n) needs n >= 2".into()));
            }
            let centre = Matrix::identity(n).scale(c(0.0, 1.0 / (n as f64).sqrt()));
            gram_schmidt(&unitary_basis(n), &[centre], 1e-10)
        }
        GroupFamily::Symplectic => symplectic_basis(n),
    };
    Ok(AlgebraBasis {
        group: *g,
        elements,
    })
}

fn check_size(g: &GroupSpec, m: &Matrix) -> Result<()> {
    let size = g.matrix_size();
    if m.rows() != size || m.cols() != size {
        return Err(Error::Dimension(format!(
            "{g} needs {size}x{size} matrices, got {}x{}",
            m.rows(),
            m.cols()
        )));
    }
    Ok(())
}

/// Largest violation of the linear constraints defining the Lie algebra of `g`.
pub fn algebra_residual(g: &GroupSpec, x: &Matrix) -> Result<f64> {
    check_size(g, x)?;
    let skew_herm = (x + &x.adjoint()).frobenius_norm();
    Ok(match g.family {
        GroupFamily::SpecialOrthogonal => {
            let skew = (x + &x.transpose()).frobenius_norm();
            let imag = (x - &x.conj()).frobenius_norm() / 2.0;
            skew.max(imag)
        }
        GroupFamily::Unitary => skew_herm,
        GroupFamily::SpecialUnitary => skew_herm.max(x.trace().norm()),
        GroupFamily::Symplectic => {
            let j = symplectic_form(g.n);
            let quaternionic = (&(&j * x) - &(&x.conj() * &j)).frobenius_norm();
            skew_herm.max(quaternionic)
        }
    })
}

/// Largest violation of the defining equations of `g`; zero means membership.
pub fn membership_residual(g: &GroupSpec, m: &Matrix) -> Result<f64> {
    check_size(g, m)?;
    let size = g.matrix_size();
    let id = Matrix::identity(size);
    Ok(match g.family {
        GroupFamily::SpecialOrthogonal => {
            let orth = (&(&m.transpose() * m) - &id).frobenius_norm();
            let det = (m.det()? - c(1.0, 0.0)).norm();
            let imag = (m - &m.conj()).frobenius_norm() / 2.0;
            orth.max(det).max(imag)
        }
        GroupFamily::Unitary => (&(&m.adjoint() * m) - &id).frobenius_norm(),
        GroupFamily::SpecialUnitary => {
            let unit = (&(&m.adjoint() * m) - &id).frobenius_norm();
            unit.max((m.det()? - c(1.0, 0.0)).norm())
        }
        GroupFamily::Symplectic => {
            let j = symplectic_form(g.n);
            let unit = (&(&m.adjoint() * m) - &id).frobenius_norm();
            let quaternionic = (&(&j * m) - &(&m.conj() * &j)).frobenius_norm();
            unit.max(quaternionic)
        }
    })
}

fn check_algebra(g: &GroupSpec, x: &Matrix) -> Result<()> {
    let r = algebra_residual(g, x)?;
    if r > ALGEBRA_TOLERANCE {
        return Err(Error::Domain(format!(
            "matrix is not in the Lie algebra of {g} (residual {r:.3e})"
        )));
    }
    Ok(())
}

/// Closed-form Killing form.
///
/// so(n): `(n−2)·tr(XY)`; u(n): `2n·tr(ZW) − 2·tr(Z)·tr(W)`; su(n): `2n·tr(ZW)`;
/// sp(n) in its `2n × 2n` complex form: `2(n+1)·tr(ZW)`.
pub fn killing_form(g: &GroupSpec, x: &Matrix, y: &Matrix) -> Result<f64> {
    check_algebra(g, x)?;
    check_algebra(g, y)?;
    let n = g.n as f64;
    let trxy = (x * y).trace();
    let value = match g.family {
        GroupFamily::SpecialOrthogonal => trxy * (n - 2.0),
        GroupFamily::Unitary => trxy * (2.0 * n) - x.trace() * y.trace() * 2.0,
        GroupFamily::SpecialUnitary => trxy * (2.0 * n),
        GroupFamily::Symplectic => trxy * (2.0 * (n + 1.0)),
    };
    Ok(value.re)
}

/// `trace(ad_X ∘ ad_Y)` expanded in the orthonormal algebra basis.
pub fn killing_form_bruteforce(g: &GroupSpec, x: &Matrix, y: &Matrix) -> Result<f64> {
    check_algebra(g, x)?;
    check_algebra(g, y)?;
    let basis = algebra_basis(g)?;
    let mut trace = 0.0;
    for e in basis.iter() {
        let image = x.commutator(&y.commutator(e));
        trace += frobenius_inner(e, &image)?;
    }
    Ok(trace)
}

/// `Ad_p X = p·X·p⁻¹`.
pub fn adjoint_action(p: &Matrix, x: &Matrix) -> Result<Matrix> {
    let inv = p.inverse()?;
    p.try_mul(x)?.try_mul(&inv)
}

/// Mixes a base seed with a stream index (splitmix64 finaliser).
pub fn derive_seed(seed: u64, stream: u64) -> u64 {
    let mut z = seed
        ^ stream
            .wrapping_mul(0x9E37_79B9_7F4A_7C15)
            .wrapping_add(0x632B_E59B_D9B4_E019);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub(crate) fn gaussian_coefficients(rng: &mut ChaCha8Rng, count: usize) -> Vec<f64> {
    (0..count).map(|_| StandardNormal.sample(rng)).collect()
}

/// Algebra element with i.i.d. standard normal coordinates in the orthonormal basis.
pub fn sample_algebra_element(g: &GroupSpec, seed: u64) -> Result<Matrix> {
    let basis = algebra_basis(g)?;
    let mut rng = rng_from_seed(seed);
    Ok(basis.combine(&gaussian_coefficients(&mut rng, basis.len())))
}

/// `exp(Σ cᵢXᵢ)` for explicit coordinates.
pub fn group_element_from_coefficients(g: &GroupSpec, coefficients: &[f64]) -> Result<Matrix> {
    let basis = algebra_basis(g)?;
    if coefficients.len() != basis.len() {
        return Err(Error::Dimension(format!(
            "{g} needs {} coordinates, got {}",
            basis.len(),
            coefficients.len()
        )));
    }
    mat_exp(&basis.combine(coefficients))
}

/// Deterministic generic group element: exponential of a Gaussian algebra element.
pub fn sample_group_element(g: &GroupSpec, seed: u64) -> Result<Matrix> {
    if g.family == GroupFamily::SpecialOrthogonal && g.n == 1
        || g.family == GroupFamily::SpecialUnitary && g.n == 1
    {
        return Ok(Matrix::identity(1));
    }
    mat_exp(&sample_algebra_element(g, seed)?)
}

/// The three sums `ΣY_rs²`, `ΣX_rs²`, `ΣD_t²` over `r < s` and all `t`.
pub fn square_sum_identities(n: usize) -> Result<[Matrix; 3]> {
    if n < 2 {
        return Err(Error::Unsupported("square sums need n >= 2".into()));
    }
    let zero = Matrix::zeros(n, n);
    let ys = upper_pairs(n).fold(zero.clone(), |acc, (r, s)| {
        let y = skew_unit(n, r, s);
        &acc + &(&y * &y)
    });
    let xs = upper_pairs(n).fold(zero.clone(), |acc, (r, s)| {
        let x = sym_unit(n, r, s);
        &acc + &(&x * &x)
    });
    let ds = (0..n).fold(zero, |acc, t| {
        let d = diag_unit(n, t);
        &acc + &(&d * &d)
    });
    Ok([ys, xs, ds])
}
