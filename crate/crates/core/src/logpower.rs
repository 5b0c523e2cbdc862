//! Formal sums `Σ c·x^s·(log x)^k` and their image under the tension field.
//!
//! If `φ` is an eigenfunction with `τ(φ) = λφ` and `κ(φ,φ) = μφ²`, then for a
//! function `F` of one variable `τ(F∘φ) = λφF′(φ) + μφ²F″(φ)`. On a single
//! term this gives
//!
//! ```text
//! τ(x^s L^k) = [λs + μs(s−1)] x^s L^k + k[λ + μ(2s−1)] x^s L^{k−1} + μk(k−1) x^s L^{k−2}
//! ```
//!
//! with `L = log x`, so expressions of this shape are closed under `τ`.
//! Coefficients are generic: [`C64`] for floating-point work and
//! [`ExactComplex`] for exact rational arithmetic.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::catalog::EigenCandidate;
use crate::error::{Error, Result};
use crate::field::{check_branch, FieldExpr, ScalarField};
use crate::matrix::{Mat, Matrix};
use crate::scalar::{Scalar, C64};

/// Complex numbers with exact rational parts.
pub type ExactComplex = Complex<BigRational>;

/// Field operations needed by the symbolic reducer.
pub trait Coefficient:
    Clone
    + fmt::Debug
    + PartialEq
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(k: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn checked_div(&self, rhs: &Self) -> Option<Self>;
    fn to_c64(&self) -> C64;
    /// Total order used to sort exponents canonically.
    fn order(&self, other: &Self) -> Ordering;
    fn render(&self) -> String;
}

/// Magnitude below which floating-point coefficients count as zero.
pub const FLOAT_ZERO_THRESHOLD: f64 = 1e-12;

impl Coefficient for C64 {
    fn zero() -> Self {
        C64::new(0.0, 0.0)
    }

    fn one() -> Self {
        C64::new(1.0, 0.0)
    }

    fn from_i64(k: i64) -> Self {
        C64::new(k as f64, 0.0)
    }

    fn is_zero(&self) -> bool {
        self.norm() <= FLOAT_ZERO_THRESHOLD
    }

    fn checked_div(&self, rhs: &Self) -> Option<Self> {
        if Coefficient::is_zero(rhs) {
            None
        } else {
            Some(self / rhs)
        }
    }

    fn to_c64(&self) -> C64 {
        *self
    }

    fn order(&self, other: &Self) -> Ordering {
        self.re
            .total_cmp(&other.re)
            .then(self.im.total_cmp(&other.im))
    }

    fn render(&self) -> String {
        render_parts(
            format!("{}", self.re),
            format!("{}", self.im.abs()),
            self.im < 0.0,
            self.im == 0.0,
            self.re == 0.0,
        )
    }
}

impl Coefficient for ExactComplex {
    fn zero() -> Self {
        Complex::new(BigRational::zero(), BigRational::zero())
    }

    fn one() -> Self {
        Complex::new(BigRational::one(), BigRational::zero())
    }

    fn from_i64(k: i64) -> Self {
        Complex::new(
            BigRational::from_integer(BigInt::from(k)),
            BigRational::zero(),
        )
    }

    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    fn checked_div(&self, rhs: &Self) -> Option<Self> {
        if Coefficient::is_zero(rhs) {
            None
        } else {
            Some(self.clone() / rhs.clone())
        }
    }

    fn to_c64(&self) -> C64 {
        C64::new(
            self.re.to_f64().unwrap_or(f64::NAN),
            self.im.to_f64().unwrap_or(f64::NAN),
        )
    }

    fn order(&self, other: &Self) -> Ordering {
        self.re.cmp(&other.re).then(self.im.cmp(&other.im))
    }

    fn render(&self) -> String {
        render_parts(
            self.re.to_string(),
            self.im.abs().to_string(),
            self.im.is_negative(),
            self.im.is_zero(),
            self.re.is_zero(),
        )
    }
}

fn render_parts(
    re: String,
    im_abs: String,
    im_negative: bool,
    im_zero: bool,
    re_zero: bool,
) -> String {
    if im_zero {
        re
    } else if re_zero {
        format!("{}{im_abs}i", if im_negative { "-" } else { "" })
    } else {
        format!("({re}{}{im_abs}i)", if im_negative { "-" } else { "+" })
    }
}

/// Parses `a`, `a/b` or a finite decimal such as `-2.5e1` into an exact rational.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::InvalidArgument(format!("cannot parse '{s}' as a rational number"));
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        return Ok(BigRational::new(n, d));
    }
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i32>().map_err(|_| bad())?),
        None => (s, 0),
    };
    let (negative, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty()
        || !int_part
            .chars()
            .chain(frac_part.chars())
            .all(|c| c.is_ascii_digit())
    {
        return Err(bad());
    }
    let all: BigInt = format!("{int_part}{frac_part}")
        .parse()
        .map_err(|_| bad())?;
    let scale = exponent - frac_part.len() as i32;
    let ten = BigInt::from(10);
    let mut value = BigRational::from_integer(all);
    if scale >= 0 {
        value *= BigRational::from_integer(num_traits::pow(ten, scale as usize));
    } else {
        value /= BigRational::from_integer(num_traits::pow(ten, (-scale) as usize));
    }
    Ok(if negative { -value } else { value })
}

/// Parses `RE` or `RE,IM` into an exact complex number.
pub fn parse_exact_complex(s: &str) -> Result<ExactComplex> {
    match s.split_once(',') {
        Some((re, im)) => Ok(Complex::new(parse_rational(re)?, parse_rational(im)?)),
        None => Ok(Complex::new(parse_rational(s)?, BigRational::zero())),
    }
}

/// One term `coefficient · x^exponent · (log x)^log_power`.
#[derive(Clone, Debug, PartialEq)]
pub struct LogPowerTerm<T> {
    pub coefficient: T,
    pub exponent: T,
    pub log_power: u32,
}

/// A canonical finite sum of log-power terms: like terms merged, zero terms
/// dropped, sorted by `(exponent, log_power)`.
#[derive(Clone, Debug, PartialEq)]
pub struct LogPowerExpression<T> {
    terms: Vec<LogPowerTerm<T>>,
}

impl<T: Coefficient> LogPowerExpression<T> {
    pub fn zero() -> Self {
        LogPowerExpression { terms: Vec::new() }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (T, T, u32)>) -> Self {
        let mut out: Vec<LogPowerTerm<T>> = Vec::new();
        for (coefficient, exponent, log_power) in terms {
            match out
                .iter_mut()
                .find(|t| t.exponent == exponent && t.log_power == log_power)
            {
                Some(t) => t.coefficient = t.coefficient.clone() + coefficient,
                None => out.push(LogPowerTerm {
                    coefficient,
                    exponent,
                    log_power,
                }),
            }
        }
        out.retain(|t| !t.coefficient.is_zero());
        out.sort_by(|a, b| {
            a.exponent
                .order(&b.exponent)
                .then(a.log_power.cmp(&b.log_power))
        });
        LogPowerExpression { terms: out }
    }

    /// `c · x^s · (log x)^k`
    pub fn term(c: T, s: T, k: u32) -> Self {
        LogPowerExpression::from_terms([(c, s, k)])
    }

    pub fn terms(&self) -> &[LogPowerTerm<T>] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        LogPowerExpression::from_terms(
            self.terms
                .iter()
                .chain(&other.terms)
                .map(|t| (t.coefficient.clone(), t.exponent.clone(), t.log_power)),
        )
    }

    pub fn scale(&self, c: &T) -> Self {
        LogPowerExpression::from_terms(self.terms.iter().map(|t| {
            (
                t.coefficient.clone() * c.clone(),
                t.exponent.clone(),
                t.log_power,
            )
        }))
    }

    /// Largest log power present, or `None` for the zero expression.
    pub fn max_log_power(&self) -> Option<u32> {
        self.terms.iter().map(|t| t.log_power).max()
    }

    pub fn to_c64(&self) -> LogPowerExpression<C64> {
        LogPowerExpression::from_terms(
            self.terms
                .iter()
                .map(|t| (t.coefficient.to_c64(), t.exponent.to_c64(), t.log_power)),
        )
    }

    /// `Σ c·v^s·(log v)^k` with the principal branch; `v` must avoid `(−∞, 0]`.
    pub fn evaluate_at<S: Scalar>(&self, v: S) -> Result<S> {
        check_branch(v.value())?;
        let log = v.ln();
        let mut acc = S::zero();
        for t in &self.terms {
            let s = t.exponent.to_c64();
            let mut term = if s == C64::new(0.0, 0.0) {
                S::one()
            } else {
                v.powc(s)
            };
            for _ in 0..t.log_power {
                term = term * log;
            }
            acc += term.scale(t.coefficient.to_c64());
        }
        Ok(acc)
    }
}

impl<T: Coefficient> fmt::Display for LogPowerExpression<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|t| {
                let mut s = t.coefficient.render();
                if !t.exponent.is_zero() {
                    s.push_str(&format!("*phi^{}", t.exponent.render()));
                }
                match t.log_power {
                    0 => {}
                    1 => s.push_str("*log(phi)"),
                    k => s.push_str(&format!("*log(phi)^{k}")),
                }
                s
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// The exact image of `expr` under `τ` for an eigenfunction with eigenvalues `(λ, μ)`.
pub fn tension_reduce<T: Coefficient>(
    expr: &LogPowerExpression<T>,
    lambda: &T,
    mu: &T,
) -> LogPowerExpression<T> {
    let one = T::one();
    let two = T::from_i64(2);
    let mut out = Vec::new();
    for t in expr.terms() {
        let s = t.exponent.clone();
        let k = t.log_power;
        let kk = T::from_i64(k as i64);
        let c0 = lambda.clone() * s.clone() + mu.clone() * s.clone() * (s.clone() - one.clone());
        out.push((t.coefficient.clone() * c0, s.clone(), k));
        if k >= 1 {
            let c1 = kk.clone()
                * (lambda.clone() + mu.clone() * (two.clone() * s.clone() - one.clone()));
            out.push((t.coefficient.clone() * c1, s.clone(), k - 1));
        }
        if k >= 2 {
            let c2 = mu.clone() * kk.clone() * T::from_i64(k as i64 - 1);
            out.push((t.coefficient.clone() * c2, s.clone(), k - 2));
        }
    }
    LogPowerExpression::from_terms(out)
}

/// `[E, τE, τ²E, …, τ^steps E]`
pub fn reduction_trace<T: Coefficient>(
    expr: &LogPowerExpression<T>,
    lambda: &T,
    mu: &T,
    steps: u32,
) -> Vec<LogPowerExpression<T>> {
    let mut out = vec![expr.clone()];
    for _ in 0..steps {
        let next = tension_reduce(out.last().expect("nonempty"), lambda, mu);
        out.push(next);
    }
    out
}

/// `τ^p E = 0` and `τ^{p−1} E ≠ 0`.
pub fn is_proper_p_harmonic<T: Coefficient>(
    expr: &LogPowerExpression<T>,
    lambda: &T,
    mu: &T,
    p: u32,
) -> bool {
    if p == 0 {
        return false;
    }
    let trace = reduction_trace(expr, lambda, mu, p);
    trace[p as usize].is_zero() && !trace[p as usize - 1].is_zero()
}

/// Which of the three eigenvalue regimes `(λ, μ)` falls into.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HarmonicCase {
    /// `μ = 0`, `λ ≠ 0`
    ZeroMu,
    /// `μ ≠ 0`, `λ = μ`
    EqualEigenvalues,
    /// `μ ≠ 0`, `λ ≠ μ`
    Generic,
}

pub fn classify<T: Coefficient>(lambda: &T, mu: &T) -> Result<HarmonicCase> {
    match (lambda.is_zero(), mu.is_zero()) {
        (true, true) => Err(Error::InvalidArgument(
            "lambda and mu cannot both vanish".into(),
        )),
        (false, true) => Ok(HarmonicCase::ZeroMu),
        _ if (lambda.clone() - mu.clone()).is_zero() => Ok(HarmonicCase::EqualEigenvalues),
        _ => Ok(HarmonicCase::Generic),
    }
}

/// A proper p-harmonic function of an eigenfunction with eigenvalues `(λ, μ)`:
///
/// * `μ = 0, λ ≠ 0`: `c₁ (log φ)^{p−1}` (`c₂` unused, `c₁ ≠ 0` required)
/// * `λ = μ ≠ 0`: `c₁ (log φ)^{2p−1} + c₂ (log φ)^{2p−2}`
/// * `μ ≠ 0, λ ≠ μ`: `c₁ φ^{1−λ/μ} (log φ)^{p−1} + c₂ (log φ)^{p−1}`
pub fn p_harmonic_function<T: Coefficient>(
    lambda: &T,
    mu: &T,
    p: u32,
    c1: &T,
    c2: &T,
) -> Result<LogPowerExpression<T>> {
    if p == 0 {
        return Err(Error::InvalidArgument("p must be positive".into()));
    }
    if c1.is_zero() && c2.is_zero() {
        return Err(Error::InvalidArgument(
            "c1 and c2 cannot both vanish".into(),
        ));
    }
    Ok(match classify(lambda, mu)? {
        HarmonicCase::ZeroMu => {
            if c1.is_zero() {
                return Err(Error::InvalidArgument(
                    "c1 must be nonzero when mu = 0".into(),
                ));
            }
            LogPowerExpression::term(c1.clone(), T::zero(), p - 1)
        }
        HarmonicCase::EqualEigenvalues => LogPowerExpression::from_terms([
            (c1.clone(), T::zero(), 2 * p - 1),
            (c2.clone(), T::zero(), 2 * p - 2),
        ]),
        HarmonicCase::Generic => {
            let s = T::one() - lambda.checked_div(mu).expect("mu is nonzero");
            LogPowerExpression::from_terms([(c1.clone(), s, p - 1), (c2.clone(), T::zero(), p - 1)])
        }
    })
}

/// The field `p ↦ E(φ(p))`.
pub fn log_power_field<T: Coefficient>(
    expr: &LogPowerExpression<T>,
    base: &ScalarField,
) -> ScalarField {
    ScalarField::new(
        base.size(),
        format!("[{}]({})", expr.to_c64(), base.label()),
        LogPowerField {
            expr: expr.to_c64(),
            base: base.clone(),
        },
    )
}

struct LogPowerField {
    expr: LogPowerExpression<C64>,
    base: ScalarField,
}

impl FieldExpr for LogPowerField {
    fn eval<S: Scalar>(&self, z: &Mat<S>) -> Result<S> {
        self.expr.evaluate_at(self.base.eval(z)?)
    }
}

/// `E(φ(point))` on the principal branch.
pub fn evaluate_log_power<T: Coefficient>(
    expr: &LogPowerExpression<T>,
    base: &EigenCandidate,
    point: &Matrix,
) -> Result<C64> {
    expr.evaluate_at(base.field.value(point)?)
}
