//! Complex-valued functions on matrix groups.
//!
//! A field is written once against [`Scalar`] by implementing [`FieldExpr`];
//! wrapping it in a [`ScalarField`] erases the type so that fields can be
//! stored, combined and shared, while still being evaluable on both plain
//! and jet matrices.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::matrix::{JetMatrix, Mat, Matrix};
use crate::scalar::{Jet, Scalar, C64};

/// A function of a square matrix, generic over the scalar arithmetic.
pub trait FieldExpr: Send + Sync + 'static {
    fn eval<S: Scalar>(&self, z: &Mat<S>) -> Result<S>;
}

/// Object-safe face of [`FieldExpr`]; implemented automatically.
pub trait ErasedField: Send + Sync {
    fn eval_complex(&self, z: &Matrix) -> Result<C64>;
    fn eval_jet(&self, z: &JetMatrix) -> Result<Jet>;
}

impl<T: FieldExpr> ErasedField for T {
    fn eval_complex(&self, z: &Matrix) -> Result<C64> {
        self.eval(z)
    }

    fn eval_jet(&self, z: &JetMatrix) -> Result<Jet> {
        self.eval(z)
    }
}

/// A type-erased, cheaply clonable field on `size × size` matrices.
#[derive(Clone)]
pub struct ScalarField {
    inner: Arc<dyn ErasedField>,
    label: String,
    size: usize,
}

impl fmt::Debug for ScalarField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ScalarField")
            .field("label", &self.label)
            .field("size", &self.size)
            .finish()
    }
}

impl FieldExpr for ScalarField {
    fn eval<S: Scalar>(&self, z: &Mat<S>) -> Result<S> {
        ScalarField::eval(self, z)
    }
}

impl ScalarField {
    pub fn new<T: FieldExpr>(size: usize, label: impl Into<String>, expr: T) -> Self {
        ScalarField {
            inner: Arc::new(expr),
            label: label.into(),
            size,
        }
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// Side length of the matrices this field accepts.
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn eval<S: Scalar>(&self, z: &Mat<S>) -> Result<S> {
        if z.rows() != self.size || z.cols() != self.size {
            return Err(Error::Dimension(format!(
                "field '{}' expects {}x{} matrices, got {}x{}",
                self.label,
                self.size,
                self.size,
                z.rows(),
                z.cols()
            )));
        }
        S::eval_erased(&*self.inner, z)
    }

    pub fn value(&self, z: &Matrix) -> Result<C64> {
        self.eval(z)
    }

    pub fn constant(size: usize, c: C64) -> Self {
        ScalarField::new(size, format!("{c}"), Constant(c))
    }

    /// `z ↦ z[r][c]`, or its conjugate.
    pub fn entry(size: usize, r: usize, c: usize, conjugate: bool) -> Self {
        let label = if conjugate {
            format!("conj(z[{r}][{c}])")
        } else {
            format!("z[{r}][{c}]")
        };
        ScalarField::new(size, label, Entry { r, c, conjugate })
    }

    /// `Σ cᵢ·fᵢ`; all terms must share a matrix size.
    pub fn linear_combination(terms: Vec<(C64, ScalarField)>) -> Result<Self> {
        let size = match terms.first() {
            Some((_, f)) => f.size,
            None => return Err(Error::InvalidArgument("empty linear combination".into())),
        };
        if terms.iter().any(|(_, f)| f.size != size) {
            return Err(Error::InvalidArgument(
                "fields act on different matrix sizes".into(),
            ));
        }
        let label = terms
            .iter()
            .map(|(c, f)| format!("({c})*{}", f.label))
            .collect::<Vec<_>>()
            .join(" + ");
        Ok(ScalarField::new(size, label, Linear(terms)))
    }

    pub fn scale(&self, c: C64) -> Self {
        ScalarField::new(
            self.size,
            format!("({c})*{}", self.label),
            Linear(vec![(c, self.clone())]),
        )
    }

    pub fn sum(&self, other: &ScalarField) -> Result<Self> {
        ScalarField::linear_combination(vec![
            (C64::new(1.0, 0.0), self.clone()),
            (C64::new(1.0, 0.0), other.clone()),
        ])
    }

    pub fn product(&self, other: &ScalarField) -> Result<Self> {
        self.check_same_size(other)?;
        Ok(ScalarField::new(
            self.size,
            format!("({})*({})", self.label, other.label),
            Product(self.clone(), other.clone()),
        ))
    }

    /// `self / other`, refusing points where `|other| ≤ floor`.
    pub fn quotient(&self, other: &ScalarField, floor: f64) -> Result<Self> {
        self.check_same_size(other)?;
        Ok(ScalarField::new(
            self.size,
            format!("({})/({})", self.label, other.label),
            Quotient {
                num: self.clone(),
                den: other.clone(),
                floor,
            },
        ))
    }

    /// Principal power `self^s`, defined off the closed negative real axis.
    pub fn powc(&self, s: C64) -> Self {
        ScalarField::new(
            self.size,
            format!("({})^({s})", self.label),
            Power {
                base: self.clone(),
                exponent: s,
            },
        )
    }

    /// `z ↦ self(q·z)`.
    pub fn left_translate(&self, q: &Matrix) -> Result<Self> {
        if q.rows() != self.size || q.cols() != self.size {
            return Err(Error::Dimension(
                "translation matrix has the wrong size".into(),
            ));
        }
        Ok(ScalarField::new(
            self.size,
            format!("{}∘L", self.label),
            LeftTranslate {
                f: self.clone(),
                q: q.clone(),
            },
        ))
    }

    /// Views `self` as a field on block-diagonal matrices of side `total`,
    /// reading the diagonal block that starts at `offset`.
    pub fn on_block(&self, offset: usize, total: usize) -> Result<Self> {
        if offset + self.size > total {
            return Err(Error::Dimension("block does not fit".into()));
        }
        Ok(ScalarField::new(
            total,
            format!("{}[block {offset}]", self.label),
            OnBlock {
                f: self.clone(),
                offset,
            },
        ))
    }

    fn check_same_size(&self, other: &ScalarField) -> Result<()> {
        if self.size != other.size {
            return Err(Error::InvalidArgument(format!(
                "fields act on different matrix sizes ({} vs {})",
                self.size, other.size
            )));
        }
        Ok(())
    }
}

/// Rejects values on the branch cut `(−∞, 0]` of the principal logarithm.
pub(crate) fn check_branch(v: C64) -> Result<()> {
    if v.im == 0.0 && v.re <= 0.0 {
        return Err(Error::Domain(format!(
            "value {v} lies on the branch cut (-inf, 0]"
        )));
    }
    Ok(())
}

struct Constant(C64);

impl FieldExpr for Constant {
    fn eval<S: Scalar>(&self, _z: &Mat<S>) -> Result<S> {
        Ok(S::from_complex(self.0))
    }
}

struct Entry {
    r: usize,
    c: usize,
    conjugate: bool,
}

impl FieldExpr for Entry {
    fn eval<S: Scalar>(&self, z: &Mat<S>) -> Result<S> {
        if self.r >= z.rows() || self.c >= z.cols() {
            return Err(Error::Dimension("entry index out of range".into()));
        }
        let v = z[(self.r, self.c)];
        Ok(if self.conjugate { v.conj() } else { v })
    }
}

struct Linear(Vec<(C64, ScalarField)>);

impl FieldExpr for Linear {
    fn eval<S: Scalar>(&self, z: &Mat<S>) -> Result<S> {
        let mut acc = S::zero();
        for (c, f) in &self.0 {
            acc += f.eval(z)?.scale(*c);
        }
        Ok(acc)
    }
}

struct Product(ScalarField, ScalarField);

impl FieldExpr for Product {
    fn eval<S: Scalar>(&self, z: &Mat<S>) -> Result<S> {
        Ok(self.0.eval(z)? * self.1.eval(z)?)
    }
}

struct Quotient {
    num: ScalarField,
    den: ScalarField,
    floor: f64,
}

impl FieldExpr for Quotient {
    fn eval<S: Scalar>(&self, z: &Mat<S>) -> Result<S> {
        let d = self.den.eval(z)?;
        if d.value().norm() <= self.floor {
            return Err(Error::evaluation(format!(
                "denominator {} below floor {}",
                d.value(),
                self.floor
            )));
        }
        let n = self.num.eval(z)?;
        n.checked_div(d)
            .ok_or_else(|| Error::evaluation("denominator vanishes"))
    }
}

struct Power {
    base: ScalarField,
    exponent: C64,
}

impl FieldExpr for Power {
    fn eval<S: Scalar>(&self, z: &Mat<S>) -> Result<S> {
        let b = self.base.eval(z)?;
        check_branch(b.value())?;
        Ok(b.powc(self.exponent))
    }
}

struct LeftTranslate {
    f: ScalarField,
    q: Matrix,
}

impl FieldExpr for LeftTranslate {
    fn eval<S: Scalar>(&self, z: &Mat<S>) -> Result<S> {
        let q = self.q.map(S::from_complex);
        self.f.eval(&q.try_mul(z)?)
    }
}

struct OnBlock {
    f: ScalarField,
    offset: usize,
}

impl FieldExpr for OnBlock {
    fn eval<S: Scalar>(&self, z: &Mat<S>) -> Result<S> {
        let k = self.f.size();
        self.f.eval(&z.block(self.offset, self.offset, k, k))
    }
}
