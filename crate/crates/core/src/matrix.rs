//! Dense row-major matrices over any [`Scalar`].

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::scalar::{Jet, Scalar, C64};

#[derive(Clone, PartialEq)]
pub struct Mat<S> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
}

/// Plain complex matrix.
pub type Matrix = Mat<C64>;
/// Matrix whose entries carry first and second derivatives along a curve.
pub type JetMatrix = Mat<Jet>;

impl<S: Scalar> Mat<S> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            data: vec![S::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |r, c| if r == c { S::one() } else { S::zero() })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> S) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Mat { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<S>>) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        Ok(Mat {
            rows: nrows,
            cols: ncols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn diagonal(entries: &[S]) -> Self {
        let n = entries.len();
        Self::from_fn(n, n, |r, c| if r == c { entries[r] } else { S::zero() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[S] {
        &self.data
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(S) -> T) -> Mat<T> {
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&x| f(x)).collect(),
        }
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self[(c, r)])
    }

    /// Entrywise complex conjugate.
    pub fn conj(&self) -> Self {
        self.map(|x| x.conj())
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self[(c, r)].conj())
    }

    pub fn trace(&self) -> S {
        let mut t = S::zero();
        for i in 0..self.rows.min(self.cols) {
            t += self[(i, i)];
        }
        t
    }

    pub fn scale(&self, c: C64) -> Self {
        self.map(|x| x.scale(c))
    }

    pub fn scale_real(&self, c: f64) -> Self {
        self.scale(C64::new(c, 0.0))
    }

    pub fn try_mul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::shape(self.rows, self.cols, rhs.rows, rhs.cols));
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k];
                if a == S::zero() {
                    continue;
                }
                let row = &rhs.data[k * rhs.cols..(k + 1) * rhs.cols];
                let dst = &mut out.data[i * rhs.cols..(i + 1) * rhs.cols];
                for (d, &b) in dst.iter_mut().zip(row) {
                    *d += a * b;
                }
            }
        }
        Ok(out)
    }

    fn zip_with(&self, rhs: &Self, f: impl Fn(S, S) -> S) -> Result<Self> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(Error::shape(self.rows, self.cols, rhs.rows, rhs.cols));
        }
        Ok(Mat {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        })
    }

    pub fn try_add(&self, rhs: &Self) -> Result<Self> {
        self.zip_with(rhs, |a, b| a + b)
    }

    pub fn try_sub(&self, rhs: &Self) -> Result<Self> {
        self.zip_with(rhs, |a, b| a - b)
    }

    /// `[self, rhs] = self·rhs − rhs·self`.
    pub fn commutator(&self, rhs: &Self) -> Self {
        &(self * rhs) - &(rhs * self)
    }

    /// Block-diagonal matrix `diag(a, b)`.
    pub fn block_diag(a: &Self, b: &Self) -> Self {
        Self::from_fn(a.rows + b.rows, a.cols + b.cols, |r, c| {
            if r < a.rows && c < a.cols {
                a[(r, c)]
            } else if r >= a.rows && c >= a.cols {
                b[(r - a.rows, c - a.cols)]
            } else {
                S::zero()
            }
        })
    }

    pub fn block(&self, row0: usize, col0: usize, rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |r, c| self[(row0 + r, col0 + c)])
    }

    /// Value part of every entry.
    pub fn values(&self) -> Matrix {
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(Scalar::value).collect(),
        }
    }

    pub fn lift(m: &Matrix) -> Self {
        Mat {
            rows: m.rows,
            cols: m.cols,
            data: m.data.iter().map(|&x| S::from_complex(x)).collect(),
        }
    }
}

impl Matrix {
    pub fn from_real_rows(rows: &[&[f64]]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| C64::new(x, 0.0)).collect())
                .collect(),
        )
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|x| x.norm()).fold(0.0, f64::max)
    }

    pub fn is_finite(&self) -> bool {
        self.data
            .iter()
            .all(|x| x.re.is_finite() && x.im.is_finite())
    }

    /// Determinant by LU decomposition with partial pivoting.
    pub fn det(&self) -> Result<C64> {
        if !self.is_square() {
            return Err(Error::Dimension(format!(
                "determinant of non-square {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        let mut a = self.data.clone();
        let mut det = C64::new(1.0, 0.0);
        for k in 0..n {
            let pivot = (k..n)
                .max_by(|&i, &j| a[i * n + k].norm().total_cmp(&a[j * n + k].norm()))
                .unwrap();
            if a[pivot * n + k].norm() == 0.0 {
                return Ok(C64::new(0.0, 0.0));
            }
            if pivot != k {
                for c in 0..n {
                    a.swap(k * n + c, pivot * n + c);
                }
                det = -det;
            }
            let p = a[k * n + k];
            det *= p;
            for i in k + 1..n {
                let factor = a[i * n + k] / p;
                for c in k..n {
                    let v = a[k * n + c];
                    a[i * n + c] -= factor * v;
                }
            }
        }
        Ok(det)
    }

    /// General inverse by Gauss–Jordan elimination with partial pivoting.
    pub fn inverse(&self) -> Result<Matrix> {
        if !self.is_square() {
            return Err(Error::Dimension("inverse of non-square matrix".into()));
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Matrix::identity(n);
        for k in 0..n {
            let pivot = (k..n)
                .max_by(|&i, &j| a[(i, k)].norm().total_cmp(&a[(j, k)].norm()))
                .unwrap();
            if a[(pivot, k)].norm() < 1e-300 {
                return Err(Error::Domain("singular matrix".into()));
            }
            for c in 0..n {
                a.data.swap(k * n + c, pivot * n + c);
                inv.data.swap(k * n + c, pivot * n + c);
            }
            let p = a[(k, k)].inv();
            for c in 0..n {
                a[(k, c)] *= p;
                inv[(k, c)] *= p;
            }
            for i in 0..n {
                if i == k {
                    continue;
                }
                let f = a[(i, k)];
                if f == C64::new(0.0, 0.0) {
                    continue;
                }
                for c in 0..n {
                    let av = a[(k, c)];
                    let iv = inv[(k, c)];
                    a[(i, c)] -= f * av;
                    inv[(i, c)] -= f * iv;
                }
            }
        }
        Ok(inv)
    }
}

impl JetMatrix {
    /// Matrix of first-order coefficients.
    pub fn first(&self) -> Matrix {
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|j| j.v1).collect(),
        }
    }

    /// Matrix of second-order coefficients (half the second derivative).
    pub fn second(&self) -> Matrix {
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|j| j.v2).collect(),
        }
    }
}

impl<S> Index<(usize, usize)> for Mat<S> {
    type Output = S;
    fn index(&self, (r, c): (usize, usize)) -> &S {
        debug_assert!(r < self.rows && c < self.cols);
        &self.data[r * self.cols + c]
    }
}

impl<S> IndexMut<(usize, usize)> for Mat<S> {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut S {
        debug_assert!(r < self.rows && c < self.cols);
        &mut self.data[r * self.cols + c]
    }
}

// Operator forms panic on shape mismatch; use the `try_*` methods at API boundaries.
impl<S: Scalar> Mul for &Mat<S> {
    type Output = Mat<S>;
    fn mul(self, rhs: &Mat<S>) -> Mat<S> {
        self.try_mul(rhs).expect("matrix product shape mismatch")
    }
}

impl<S: Scalar> Add for &Mat<S> {
    type Output = Mat<S>;
    fn add(self, rhs: &Mat<S>) -> Mat<S> {
        self.try_add(rhs).expect("matrix sum shape mismatch")
    }
}

impl<S: Scalar> Sub for &Mat<S> {
    type Output = Mat<S>;
    fn sub(self, rhs: &Mat<S>) -> Mat<S> {
        self.try_sub(rhs).expect("matrix difference shape mismatch")
    }
}

impl<S: Scalar> Neg for &Mat<S> {
    type Output = Mat<S>;
    fn neg(self) -> Mat<S> {
        self.map(|x| -x)
    }
}

impl<S: fmt::Debug> fmt::Debug for Mat<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Mat {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            write!(f, "  ")?;
            for c in 0..self.cols {
                write!(f, "{:?} ", self.data[r * self.cols + c])?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

/// Real part of `trace(X̄ᵗ·Y)`, the standard bi-invariant inner product.
pub fn frobenius_inner(x: &Matrix, y: &Matrix) -> Result<f64> {
    if x.rows != y.rows || x.cols != y.cols {
        return Err(Error::shape(x.rows, x.cols, y.rows, y.cols));
    }
    Ok(x.data
        .iter()
        .zip(&y.data)
        .map(|(a, b)| a.re * b.re + a.im * b.im)
        .sum())
}

const EXP_TAYLOR_ORDER: usize = 12;

/// Matrix exponential by scaling and squaring with a degree-12 Taylor polynomial.
pub fn mat_exp(a: &Matrix) -> Result<Matrix> {
    if !a.is_square() {
        return Err(Error::Dimension(format!(
            "exponential of non-square {}x{} matrix",
            a.rows, a.cols
        )));
    }
    if !a.is_finite() {
        return Err(Error::Domain("non-finite matrix entries".into()));
    }
    let norm = a.frobenius_norm();
    let mut squarings = 0u32;
    while norm / f64::from(1u32 << squarings.min(31)) > 0.5 && squarings < 60 {
        squarings += 1;
    }
    let scaled = a.scale_real(0.5f64.powi(squarings as i32));

    // Horner form of sum_{k<=12} A^k / k!
    let n = a.rows;
    let mut acc = Matrix::identity(n);
    for k in (1..=EXP_TAYLOR_ORDER).rev() {
        acc = &(&scaled * &acc).scale_real(1.0 / k as f64) + &Matrix::identity(n);
    }
    for _ in 0..squarings {
        acc = &acc * &acc;
    }
    Ok(acc)
}

/// Order-2 jet of the curve `t ↦ p·exp(tX)`: `p + t·pX + t²·pX²/2`.
pub fn jet_curve(p: &Matrix, x: &Matrix) -> Result<JetMatrix> {
    if !p.is_square() || !x.is_square() || p.cols != x.rows {
        return Err(Error::shape(p.rows, p.cols, x.rows, x.cols));
    }
    let px = p * x;
    let pxx = (&px * x).scale_real(0.5);
    Ok(Mat {
        rows: p.rows,
        cols: p.cols,
        data: p
            .data
            .iter()
            .zip(&px.data)
            .zip(&pxx.data)
            .map(|((&a, &b), &c)| Jet::new(a, b, c))
            .collect(),
    })
}
