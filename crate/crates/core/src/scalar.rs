//! Scalar arithmetic: plain complex numbers and order-2 jets.
//!
//! A [`Jet`] is the truncated expansion `v0 + v1·t + v2·t²` of a complex
//! function of a real parameter `t`. Arithmetic on jets is polynomial
//! multiplication modulo `t³`, so evaluating any polynomial or rational
//! expression on jets yields the exact first and second derivatives at
//! `t = 0` (up to round-off).

use std::fmt::Debug;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::error::Result;
use crate::field::ErasedField;
use crate::matrix::Mat;

pub type C64 = Complex64;

/// Arithmetic shared by [`C64`] and [`Jet`].
///
/// Every algorithm in the crate that needs derivatives is written once against
/// this trait and run on jets; the same code on `C64` gives plain values.
pub trait Scalar:
    Copy
    + Debug
    + PartialEq
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + AddAssign
{
    fn from_complex(c: C64) -> Self;

    fn zero() -> Self {
        Self::from_complex(C64::new(0.0, 0.0))
    }

    fn one() -> Self {
        Self::from_complex(C64::new(1.0, 0.0))
    }

    fn from_real(r: f64) -> Self {
        Self::from_complex(C64::new(r, 0.0))
    }

    /// The value at `t = 0`.
    fn value(&self) -> C64;

    /// Complex conjugation. On jets this acts componentwise since `t` is real.
    fn conj(&self) -> Self;

    fn scale(&self, c: C64) -> Self;

    /// `None` when the divisor's value is zero.
    fn checked_div(self, rhs: Self) -> Option<Self>;

    /// Principal logarithm. Callers are responsible for staying off the cut.
    fn ln(self) -> Self;

    /// Principal power `exp(s·ln(self))`.
    fn powc(self, s: C64) -> Self;

    #[doc(hidden)]
    fn eval_erased(field: &dyn ErasedField, z: &Mat<Self>) -> Result<Self>;
}

impl Scalar for C64 {
    fn from_complex(c: C64) -> Self {
        c
    }

    fn value(&self) -> C64 {
        *self
    }

    fn conj(&self) -> Self {
        Complex64::conj(self)
    }

    fn scale(&self, c: C64) -> Self {
        self * c
    }

    fn checked_div(self, rhs: Self) -> Option<Self> {
        if rhs == C64::new(0.0, 0.0) {
            None
        } else {
            Some(self / rhs)
        }
    }

    fn ln(self) -> Self {
        Complex64::ln(self)
    }

    fn powc(self, s: C64) -> Self {
        (s * Complex64::ln(self)).exp()
    }

    fn eval_erased(field: &dyn ErasedField, z: &Mat<Self>) -> Result<Self> {
        field.eval_complex(z)
    }
}

/// Order-2 jet `v0 + v1·t + v2·t²` with complex coefficients.
#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub struct Jet {
    pub v0: C64,
    pub v1: C64,
    pub v2: C64,
}

impl Jet {
    pub const fn new(v0: C64, v1: C64, v2: C64) -> Self {
        Jet { v0, v1, v2 }
    }

    pub fn constant(v0: C64) -> Self {
        Jet {
            v0,
            v1: C64::new(0.0, 0.0),
            v2: C64::new(0.0, 0.0),
        }
    }

    /// First derivative at `t = 0`.
    pub fn d1(&self) -> C64 {
        self.v1
    }

    /// Second derivative at `t = 0`.
    pub fn d2(&self) -> C64 {
        self.v2 * 2.0
    }

    /// Applies a scalar function given its value and first two derivatives at `v0`.
    fn chain(&self, f0: C64, f1: C64, f2: C64) -> Jet {
        Jet {
            v0: f0,
            v1: f1 * self.v1,
            v2: f1 * self.v2 + f2 * self.v1 * self.v1 * 0.5,
        }
    }

    pub fn recip(&self) -> Option<Jet> {
        if self.v0 == C64::new(0.0, 0.0) {
            return None;
        }
        let r = self.v0.inv();
        Some(self.chain(r, -r * r, r * r * r * 2.0))
    }
}

impl Add for Jet {
    type Output = Jet;
    fn add(self, rhs: Jet) -> Jet {
        Jet::new(self.v0 + rhs.v0, self.v1 + rhs.v1, self.v2 + rhs.v2)
    }
}

impl AddAssign for Jet {
    fn add_assign(&mut self, rhs: Jet) {
        self.v0 += rhs.v0;
        self.v1 += rhs.v1;
        self.v2 += rhs.v2;
    }
}

impl Sub for Jet {
    type Output = Jet;
    fn sub(self, rhs: Jet) -> Jet {
        Jet::new(self.v0 - rhs.v0, self.v1 - rhs.v1, self.v2 - rhs.v2)
    }
}

impl Neg for Jet {
    type Output = Jet;
    fn neg(self) -> Jet {
        Jet::new(-self.v0, -self.v1, -self.v2)
    }
}

impl Mul for Jet {
    type Output = Jet;
    fn mul(self, rhs: Jet) -> Jet {
        Jet::new(
            self.v0 * rhs.v0,
            self.v0 * rhs.v1 + self.v1 * rhs.v0,
            self.v0 * rhs.v2 + self.v1 * rhs.v1 + self.v2 * rhs.v0,
        )
    }
}

impl Scalar for Jet {
    fn from_complex(c: C64) -> Self {
        Jet::constant(c)
    }

    fn value(&self) -> C64 {
        self.v0
    }

    fn conj(&self) -> Self {
        Jet::new(self.v0.conj(), self.v1.conj(), self.v2.conj())
    }

    fn scale(&self, c: C64) -> Self {
        Jet::new(self.v0 * c, self.v1 * c, self.v2 * c)
    }

    fn checked_div(self, rhs: Self) -> Option<Self> {
        rhs.recip().map(|r| self * r)
    }

    fn ln(self) -> Self {
        let r = self.v0.inv();
        self.chain(self.v0.ln(), r, -r * r)
    }

    fn powc(self, s: C64) -> Self {
        let f0 = (s * self.v0.ln()).exp();
        let r = self.v0.inv();
        self.chain(f0, s * f0 * r, s * (s - 1.0) * f0 * r * r)
    }

    fn eval_erased(field: &dyn ErasedField, z: &Mat<Self>) -> Result<Self> {
        field.eval_jet(z)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn product_rule_coefficients() {
        let a = Jet::new(c(1.0, 2.0), c(0.5, -1.0), c(3.0, 0.0));
        let b = Jet::new(c(-2.0, 0.5), c(1.0, 1.0), c(0.0, -0.25));
        let p = a * b;
        assert_eq!(p.v1, a.v0 * b.v1 + a.v1 * b.v0);
        assert_eq!(p.v2, a.v0 * b.v2 + a.v1 * b.v1 + a.v2 * b.v0);
    }

    #[test]
    fn division_requires_nonzero_value() {
        let a = Jet::new(c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0));
        let z = Jet::new(c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0));
        assert!(a.checked_div(z).is_none());
        let q = a.checked_div(a).unwrap();
        assert!((q.v0 - c(1.0, 0.0)).norm() < 1e-15);
        assert!(q.v1.norm() < 1e-15 && q.v2.norm() < 1e-15);
    }

    #[test]
    fn conjugation_is_componentwise() {
        let a = Jet::new(c(1.0, 2.0), c(3.0, -4.0), c(0.0, 1.0));
        let b = a.conj();
        assert_eq!(b.v1, c(3.0, 4.0));
        assert_eq!(b.v2, c(0.0, -1.0));
    }

    #[test]
    fn ln_and_powc_match_series() {
        // f(t) = exp(a t) has jet (1, a, a²/2); ln f = a t exactly.
        let a = c(0.3, -0.7);
        let e = Jet::new(c(1.0, 0.0), a, a * a * 0.5);
        let l = e.ln();
        assert!(l.v0.norm() < 1e-15);
        assert!((l.v1 - a).norm() < 1e-15);
        assert!(l.v2.norm() < 1e-15);
        // (exp(a t))^s = exp(s a t)
        let s = c(1.5, 0.25);
        let p = e.powc(s);
        assert!((p.v1 - s * a).norm() < 1e-14);
        assert!((p.v2 - s * a * s * a * 0.5).norm() < 1e-14);
    }
}
