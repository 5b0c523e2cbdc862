//! Explicit eigenfunctions and eigenfamilies on the classical symmetric spaces.
//!
//! Each constructor returns [`EigenCandidate`]s: a field on the ambient group
//! together with the eigenvalues `(λ, μ)` it is claimed to satisfy,
//! `τ(φ) = λφ` and `κ(φ, φ) = μφ²`. The eigenvalues are stored data and are
//! never derived from the field itself.
//!
//! Indices are zero-based throughout.

use std::f64::consts::FRAC_1_SQRT_2;

use rand_distr::{Distribution, StandardNormal};

use crate::error::{Error, Result};
use crate::field::{FieldExpr, ScalarField};
use crate::groups::{rng_from_seed, symplectic_form};
use crate::matrix::Mat;
use crate::scalar::{Scalar, C64};
use crate::spaces::SpaceSpec;

/// Tolerance for the isotropy and independence checks on input vectors.
pub const VECTOR_TOLERANCE: f64 = 1e-10;

/// A field with claimed tension and conformality eigenvalues.
#[derive(Clone, Debug)]
pub struct EigenCandidate {
    pub field: ScalarField,
    pub lambda: C64,
    pub mu: C64,
    pub space: SpaceSpec,
    pub family_tag: String,
    /// Whether the field is invariant under right translation by the fixed subgroup.
    pub k_invariant: bool,
}

impl EigenCandidate {
    pub fn label(&self) -> &str {
        self.field.label()
    }
}

/// A nonzero complex vector `v` with `Σ vⱼ² = 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct IsotropicVector {
    entries: Vec<C64>,
}

fn bilinear(a: &[C64], b: &[C64]) -> C64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn hermitian(a: &[C64], b: &[C64]) -> C64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

fn norm(a: &[C64]) -> f64 {
    hermitian(a, a).re.sqrt()
}

/// `|a|²|b|² − |⟨a,b⟩|²`, normalised; zero iff `a` and `b` are dependent.
fn dependence(a: &[C64], b: &[C64]) -> f64 {
    let (na, nb) = (norm(a), norm(b));
    if na == 0.0 || nb == 0.0 {
        return 0.0;
    }
    let ab = hermitian(a, b).norm() / (na * nb);
    1.0 - ab * ab
}

impl IsotropicVector {
    pub fn new(entries: Vec<C64>) -> Result<Self> {
        let n = norm(&entries);
        if n == 0.0 {
            return Err(Error::InvalidArgument(
                "isotropic vector must be nonzero".into(),
            ));
        }
        let r = bilinear(&entries, &entries).norm() / (n * n);
        if r > VECTOR_TOLERANCE {
            return Err(Error::InvalidArgument(format!(
                "vector is not isotropic (residual {r:.3e})"
            )));
        }
        Ok(IsotropicVector { entries })
    }

    pub fn entries(&self) -> &[C64] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// `|Σ vⱼ²|`
    pub fn isotropy_residual(&self) -> f64 {
        bilinear(&self.entries, &self.entries).norm()
    }

    pub fn scaled(&self, c: C64) -> Self {
        IsotropicVector {
            entries: self.entries.iter().map(|x| x * c).collect(),
        }
    }
}

fn real_gaussian_vectors(dim: usize, count: usize, seed: u64) -> Vec<Vec<f64>> {
    let mut rng = rng_from_seed(seed);
    (0..count)
        .map(|_| (0..dim).map(|_| StandardNormal.sample(&mut rng)).collect())
        .collect()
}

fn orthonormalise(vs: &mut [Vec<f64>]) -> Result<()> {
    for i in 0..vs.len() {
        for j in 0..i {
            let d: f64 = vs[i].iter().zip(&vs[j]).map(|(a, b)| a * b).sum();
            let vj = vs[j].clone();
            vs[i].iter_mut().zip(&vj).for_each(|(a, b)| *a -= d * b);
        }
        let n: f64 = vs[i].iter().map(|a| a * a).sum::<f64>().sqrt();
        if n < 1e-8 {
            return Err(Error::Evaluation {
                direction: None,
                message: "degenerate random draw".into(),
            });
        }
        vs[i].iter_mut().for_each(|a| *a /= n);
    }
    Ok(())
}

fn complexify(u: &[f64], w: &[f64]) -> Vec<C64> {
    u.iter()
        .zip(w)
        .map(|(a, b)| C64::new(a * FRAC_1_SQRT_2, b * FRAC_1_SQRT_2))
        .collect()
}

/// Unit isotropic vector `(u + iw)/√2` from a seeded orthonormal real pair.
pub fn isotropic_vector(dim: usize, seed: u64) -> Result<IsotropicVector> {
    if dim < 2 {
        return Err(Error::InvalidArgument(
            "isotropic vectors need dim >= 2".into(),
        ));
    }
    let mut vs = real_gaussian_vectors(dim, 2, seed);
    orthonormalise(&mut vs)?;
    Ok(IsotropicVector {
        entries: complexify(&vs[0], &vs[1]),
    })
}

/// Two independent vectors spanning an isotropic plane: all of `a·a`, `b·b`,
/// `a·b` vanish. Built from four seeded orthonormal real vectors.
pub fn isotropic_plane(dim: usize, seed: u64) -> Result<(IsotropicVector, IsotropicVector)> {
    if dim < 4 {
        return Err(Error::InvalidArgument(
            "isotropic planes need dim >= 4".into(),
        ));
    }
    let mut vs = real_gaussian_vectors(dim, 4, seed);
    orthonormalise(&mut vs)?;
    Ok((
        IsotropicVector {
            entries: complexify(&vs[0], &vs[1]),
        },
        IsotropicVector {
            entries: complexify(&vs[2], &vs[3]),
        },
    ))
}

/// Seeded complex vector with standard normal real and imaginary parts.
pub fn random_complex_vector(dim: usize, seed: u64) -> Vec<C64> {
    let vs = real_gaussian_vectors(dim, 2, seed);
    vs[0]
        .iter()
        .zip(&vs[1])
        .map(|(a, b)| C64::new(*a, *b))
        .collect()
}

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

fn check_len(v: &[C64], expected: usize, what: &str) -> Result<()> {
    if v.len() != expected {
        return Err(Error::InvalidArgument(format!(
            "{what} must have length {expected}, got {}",
            v.len()
        )));
    }
    Ok(())
}

/// `Σ_{r ∈ columns} z[j][r]·conj(z[a][r])`
struct RowPairing {
    j: usize,
    a: usize,
    columns: Vec<usize>,
}

impl FieldExpr for RowPairing {
    fn eval<S: Scalar>(&self, z: &Mat<S>) -> Result<S> {
        let mut acc = S::zero();
        for &r in &self.columns {
            acc += z[(self.j, r)] * z[(self.a, r)].conj();
        }
        Ok(acc)
    }
}

/// `Σ_{r ∈ columns} (Σ_j v_j z[j][r])²`, i.e. `trace(vᵗv · z P zᵗ)` for the
/// coordinate projection `P` onto `columns`.
struct SquaredProjection {
    v: Vec<C64>,
    columns: Vec<usize>,
}

impl FieldExpr for SquaredProjection {
    fn eval<S: Scalar>(&self, z: &Mat<S>) -> Result<S> {
        let mut acc = S::zero();
        for &r in &self.columns {
            let mut s = S::zero();
            for (j, v) in self.v.iter().enumerate() {
                s += z[(j, r)].scale(*v);
            }
            acc += s * s;
        }
        Ok(acc)
    }
}

/// `−Σ_{j,α} A[j][α]·(z J zᵗ)[j][α]` for a fixed matrix `A`.
struct SkewPairing {
    a: Vec<Vec<C64>>,
    half: usize,
}

impl FieldExpr for SkewPairing {
    fn eval<S: Scalar>(&self, z: &Mat<S>) -> Result<S> {
        let j = symplectic_form(self.half).map(S::from_complex);
        let m = &(z * &j) * &z.transpose();
        let mut acc = S::zero();
        for (r, row) in self.a.iter().enumerate() {
            for (k, a) in row.iter().enumerate() {
                acc += m[(r, k)].scale(-*a);
            }
        }
        Ok(acc)
    }
}

/// `A[j][α] = (a_j b_α − b_j a_α)/√2`, i.e. `Σ_{r,s} a_r b_s Y_rs`.
fn skew_coefficients(a: &[C64], b: &[C64]) -> Vec<Vec<C64>> {
    (0..a.len())
        .map(|j| {
            (0..a.len())
                .map(|k| (a[j] * b[k] - b[j] * a[k]) * FRAC_1_SQRT_2)
                .collect()
        })
        .collect()
}

/// `ψ_{jα}(z) = Σ_{r<m} z_{jr}·conj(z_{αr})` on `U(m+n)`.
pub fn complex_grassmannian_function(
    m: usize,
    n: usize,
    j: usize,
    alpha: usize,
) -> Result<ScalarField> {
    let size = m + n;
    if j >= size || alpha >= size {
        return Err(Error::InvalidArgument(format!(
            "indices must be below {size}"
        )));
    }
    Ok(ScalarField::new(
        size,
        format!("psi[{j}][{alpha}]"),
        RowPairing {
            j,
            a: alpha,
            columns: (0..m).collect(),
        },
    ))
}

/// The eigenfamily `{ψ_{jα} : j ≠ α}` on `U(m+n)/U(m)×U(n)` with
/// `λ = −2(m+n)`, `μ = −2`.
pub fn complex_grassmannian_family(
    m: usize,
    n: usize,
    alpha: usize,
) -> Result<Vec<EigenCandidate>> {
    let space = SpaceSpec::complex_grassmannian(m, n)?;
    let size = m + n;
    if alpha >= size {
        return Err(Error::InvalidArgument(format!(
            "alpha = {alpha} out of range 0..{size}"
        )));
    }
    (0..size)
        .filter(|&j| j != alpha)
        .map(|j| {
            Ok(EigenCandidate {
                field: complex_grassmannian_function(m, n, j, alpha)?,
                lambda: c(-2.0 * size as f64, 0.0),
                mu: c(-2.0, 0.0),
                space: space.clone(),
                family_tag: format!("complex-grassmannian/alpha={alpha}"),
                k_invariant: true,
            })
        })
        .collect()
}

/// `ψ_v(x) = Σ_{j,α} v_j v_α Σ_{r<m} x_{jr}x_{αr}` on `SO(m+n)/SO(m)×SO(n)` with
/// `λ = −(m+n)`, `μ = −2`.
pub fn real_grassmannian_eigenfunction(
    m: usize,
    n: usize,
    v: &IsotropicVector,
) -> Result<EigenCandidate> {
    let space = SpaceSpec::real_grassmannian(m, n)?;
    check_len(v.entries(), m + n, "isotropic vector")?;
    let v = IsotropicVector::new(v.entries().to_vec())?;
    Ok(EigenCandidate {
        field: ScalarField::new(
            m + n,
            "psi_v",
            SquaredProjection {
                v: v.entries().to_vec(),
                columns: (0..m).collect(),
            },
        ),
        lambda: c(-((m + n) as f64), 0.0),
        mu: c(-2.0, 0.0),
        space,
        family_tag: "real-grassmannian".into(),
        k_invariant: true,
    })
}

/// Columns carrying `+1` in `Ĩ_{m,n} = diag(I_{m,n}, I_{m,n})`.
fn quaternionic_columns(m: usize, n: usize) -> Vec<usize> {
    (0..m).chain(m + n..2 * m + n).collect()
}

/// `ψ_{jα}(q) = ½(q Ĩ q̄ᵗ + I)_{jα}` on `Sp(m+n)`, in polynomial form.
pub fn quaternionic_grassmannian_function(
    m: usize,
    n: usize,
    j: usize,
    alpha: usize,
) -> Result<ScalarField> {
    let size = 2 * (m + n);
    if j >= size || alpha >= size {
        return Err(Error::InvalidArgument(format!(
            "indices must be below {size}"
        )));
    }
    Ok(ScalarField::new(
        size,
        format!("psi[{j}][{alpha}]"),
        RowPairing {
            j,
            a: alpha,
            columns: quaternionic_columns(m, n),
        },
    ))
}

/// The eigenfamily `{ψ_{jα} : j ≠ α}` on `Sp(m+n)/Sp(m)×Sp(n)` with
/// `λ = −2(m+n)`, `μ = −1`.
pub fn quaternionic_grassmannian_family(
    m: usize,
    n: usize,
    alpha: usize,
) -> Result<Vec<EigenCandidate>> {
    let space = SpaceSpec::quaternionic_grassmannian(m, n)?;
    let size = 2 * (m + n);
    if alpha >= size {
        return Err(Error::InvalidArgument(format!(
            "alpha = {alpha} out of range 0..{size}"
        )));
    }
    (0..size)
        .filter(|&j| j != alpha)
        .map(|j| {
            Ok(EigenCandidate {
                field: quaternionic_grassmannian_function(m, n, j, alpha)?,
                lambda: c(-2.0 * (m + n) as f64, 0.0),
                mu: c(-1.0, 0.0),
                space: space.clone(),
                family_tag: format!("quaternionic-grassmannian/alpha={alpha}"),
                k_invariant: true,
            })
        })
        .collect()
}

/// `f_{jα}(q) = Σ_{r<m} (z_{jr}z̄_{αr} + w_{jr}w̄_{αr})` and
/// `g_{jα}(q) = Σ_{r<m} (w_{jr}z_{αr} − z_{jr}w_{αr})` for `q = [[z, w], [−w̄, z̄]]`,
/// with `j, α < m+n`.
pub fn quaternionic_block_functions(
    m: usize,
    n: usize,
    j: usize,
    alpha: usize,
) -> Result<(ScalarField, ScalarField)> {
    let k = m + n;
    if j >= k || alpha >= k {
        return Err(Error::InvalidArgument(format!("indices must be below {k}")));
    }
    Ok((
        ScalarField::new(
            2 * k,
            format!("f[{j}][{alpha}]"),
            BlockF { j, a: alpha, m, k },
        ),
        ScalarField::new(
            2 * k,
            format!("g[{j}][{alpha}]"),
            BlockG { j, a: alpha, m, k },
        ),
    ))
}

struct BlockF {
    j: usize,
    a: usize,
    m: usize,
    k: usize,
}

impl FieldExpr for BlockF {
    fn eval<S: Scalar>(&self, q: &Mat<S>) -> Result<S> {
        let mut acc = S::zero();
        for r in 0..self.m {
            let (zj, za) = (q[(self.j, r)], q[(self.a, r)]);
            let (wj, wa) = (q[(self.j, r + self.k)], q[(self.a, r + self.k)]);
            acc += zj * za.conj() + wj * wa.conj();
        }
        Ok(acc)
    }
}

struct BlockG {
    j: usize,
    a: usize,
    m: usize,
    k: usize,
}

impl FieldExpr for BlockG {
    fn eval<S: Scalar>(&self, q: &Mat<S>) -> Result<S> {
        let mut acc = S::zero();
        for r in 0..self.m {
            let (zj, za) = (q[(self.j, r)], q[(self.a, r)]);
            let (wj, wa) = (q[(self.j, r + self.k)], q[(self.a, r + self.k)]);
            acc += wj * za - zj * wa;
        }
        Ok(acc)
    }
}

fn check_nonzero(a: &[C64]) -> Result<()> {
    if norm(a) == 0.0 {
        return Err(Error::InvalidArgument("vector must be nonzero".into()));
    }
    Ok(())
}

/// `φ(z) = trace(aᵗa·zzᵗ)` on `SU(n)/SO(n)` with `λ = −2(n²+n−2)/n`, `μ = −4(n−1)/n`.
pub fn su_so_eigenfunction(n: usize, a: &[C64]) -> Result<EigenCandidate> {
    let space = SpaceSpec::su_so(n)?;
    check_len(a, n, "a")?;
    check_nonzero(a)?;
    let nf = n as f64;
    Ok(EigenCandidate {
        field: ScalarField::new(
            n,
            "phi_a",
            SquaredProjection {
                v: a.to_vec(),
                columns: (0..n).collect(),
            },
        ),
        lambda: c(-2.0 * (nf * nf + nf - 2.0) / nf, 0.0),
        mu: c(-4.0 * (nf - 1.0) / nf, 0.0),
        space,
        family_tag: "su-so".into(),
        k_invariant: true,
    })
}

fn check_isotropic_plane(a: &[C64], b: &[C64]) -> Result<()> {
    let scale = norm(a) * norm(b);
    let worst = [
        bilinear(a, a).norm() / (norm(a) * norm(a)),
        bilinear(b, b).norm() / (norm(b) * norm(b)),
        bilinear(a, b).norm() / scale,
    ]
    .into_iter()
    .fold(0.0, f64::max);
    if worst > VECTOR_TOLERANCE {
        return Err(Error::InvalidArgument(format!(
            "a and b do not span an isotropic subspace (residual {worst:.3e})"
        )));
    }
    Ok(())
}

fn check_independent(a: &[C64], b: &[C64]) -> Result<()> {
    check_nonzero(a)?;
    check_nonzero(b)?;
    if dependence(a, b) < VECTOR_TOLERANCE {
        return Err(Error::InvalidArgument(
            "a and b are linearly dependent".into(),
        ));
    }
    Ok(())
}

/// `ψ(x) = −Σ A_{jα}(xJxᵗ)_{jα}` on `SO(2n)/U(n)` with `A = Σ a_r b_s Y_rs`;
/// `λ = −2(n−1)`, `μ = −1`.
pub fn so2n_un_eigenfunction(n: usize, a: &[C64], b: &[C64]) -> Result<EigenCandidate> {
    let space = SpaceSpec::so2n_u(n)?;
    check_len(a, 2 * n, "a")?;
    check_len(b, 2 * n, "b")?;
    check_independent(a, b)?;
    check_isotropic_plane(a, b)?;
    Ok(EigenCandidate {
        field: ScalarField::new(
            2 * n,
            "psi_ab",
            SkewPairing {
                a: skew_coefficients(a, b),
                half: n,
            },
        ),
        lambda: c(-2.0 * (n as f64 - 1.0), 0.0),
        mu: c(-1.0, 0.0),
        space,
        family_tag: "so-u".into(),
        k_invariant: true,
    })
}

/// `φ(q) = trace(aᵗa·qqᵗ)` on `Sp(n)/U(n)` with `λ = −2(n+1)`, `μ = −2`.
pub fn spn_un_eigenfunction(n: usize, a: &[C64]) -> Result<EigenCandidate> {
    let space = SpaceSpec::sp_u(n)?;
    check_len(a, 2 * n, "a")?;
    check_nonzero(a)?;
    Ok(EigenCandidate {
        field: ScalarField::new(
            2 * n,
            "phi_a",
            SquaredProjection {
                v: a.to_vec(),
                columns: (0..2 * n).collect(),
            },
        ),
        lambda: c(-2.0 * (n as f64 + 1.0), 0.0),
        mu: c(-2.0, 0.0),
        space,
        family_tag: "sp-u".into(),
        k_invariant: true,
    })
}

/// `ψ(z) = −Σ A_{jα}(zJzᵗ)_{jα}` on `SU(2n)/Sp(n)` with `A = Σ a_r b_s Y_rs`;
/// `λ = −2(2n²−n−1)/n`, `μ = −2(n−1)/n`. Needs `n ≥ 2`.
pub fn su2n_spn_eigenfunction(n: usize, a: &[C64], b: &[C64]) -> Result<EigenCandidate> {
    if n < 2 {
        return Err(Error::Unsupported(
            "SU(2)/Sp(1) is a point; the eigenfunction degenerates for n = 1".into(),
        ));
    }
    let space = SpaceSpec::su2n_sp(n)?;
    check_len(a, 2 * n, "a")?;
    check_len(b, 2 * n, "b")?;
    check_independent(a, b)?;
    let nf = n as f64;
    Ok(EigenCandidate {
        field: ScalarField::new(
            2 * n,
            "psi_ab",
            SkewPairing {
                a: skew_coefficients(a, b),
                half: n,
            },
        ),
        lambda: c(-2.0 * (2.0 * nf * nf - nf - 1.0) / nf, 0.0),
        mu: c(-2.0 * (nf - 1.0) / nf, 0.0),
        space,
        family_tag: "su-sp".into(),
        k_invariant: true,
    })
}
