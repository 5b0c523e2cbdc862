//! C ABI for `liesym`.
//!
//! Spaces and candidates are opaque heap handles created by `*_new` and
//! released by `*_free`. Every fallible call returns a [`LiesymStatus`]; on
//! failure a message is kept per thread and can be copied out with
//! [`liesym_last_error_message`]. Matrices cross the boundary as row-major
//! arrays of [`LiesymComplex`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use liesym::calculus::Frame;
use liesym::catalog::EigenCandidate;
use liesym::groups::{killing_form, killing_form_bruteforce, GroupFamily, GroupSpec};
use liesym::spaces::{cartan_map, SpaceSpec};
use liesym::verify::{select_candidate, verify_space, SpaceId, VerifyConfig};
use liesym::{Error, Matrix, C64};

/// Result of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LiesymStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Dimension = 3,
    Domain = 4,
    Evaluation = 5,
    Unsupported = 6,
    BufferTooSmall = 7,
    Panic = 8,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct LiesymComplex {
    pub re: f64,
    pub im: f64,
}

/// Residuals of one verification run.
#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct LiesymVerifyResult {
    pub max_tau_residual: f64,
    pub max_kappa_residual: f64,
    pub max_cross_residual: f64,
    pub passed: bool,
}

/// A symmetric space from the catalog.
pub struct LiesymSpace {
    id: SpaceId,
    m: usize,
    n: usize,
    spec: SpaceSpec,
}

/// An eigenfunction with its claimed eigenvalues.
pub struct LiesymCandidate {
    inner: EigenCandidate,
}

thread_local! {
    static LAST_ERROR: RefCell<String> = const { RefCell::new(String::new()) };
}

fn set_error(msg: String) {
    LAST_ERROR.with(|e| *e.borrow_mut() = msg);
}

struct Failure(LiesymStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match &e {
            Error::Dimension(_) | Error::Shape { .. } => LiesymStatus::Dimension,
            Error::Unsupported(_) => LiesymStatus::Unsupported,
            Error::Domain(_) => LiesymStatus::Domain,
            Error::Evaluation { .. } => LiesymStatus::Evaluation,
            Error::InvalidArgument(_) => LiesymStatus::InvalidArgument,
        };
        Failure(status, e.to_string())
    }
}

fn null(what: &str) -> Failure {
    Failure(LiesymStatus::NullPointer, format!("{what} is null"))
}

/// Runs `f`, recording any error or panic.
fn guard(f: impl FnOnce() -> Result<(), Failure>) -> LiesymStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => LiesymStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            LiesymStatus::Panic
        }
    }
}

unsafe fn text<'a>(s: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if s.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(s).to_str().map_err(|_| {
        Failure(
            LiesymStatus::InvalidArgument,
            format!("{what} is not valid UTF-8"),
        )
    })
}

unsafe fn handle<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn read_matrix(
    data: *const LiesymComplex,
    len: usize,
    size: usize,
) -> Result<Matrix, Failure> {
    if data.is_null() {
        return Err(null("matrix"));
    }
    if len != size * size {
        return Err(Failure(
            LiesymStatus::Dimension,
            format!(
                "expected {} entries for a {size}x{size} matrix, got {len}",
                size * size
            ),
        ));
    }
    let s = std::slice::from_raw_parts(data, len);
    Ok(Matrix::from_fn(size, size, |r, k| {
        let z = s[r * size + k];
        C64::new(z.re, z.im)
    }))
}

unsafe fn write_matrix(m: &Matrix, out: *mut LiesymComplex, len: usize) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null("output buffer"));
    }
    let need = m.rows() * m.cols();
    if len < need {
        return Err(Failure(
            LiesymStatus::BufferTooSmall,
            format!("output needs {need} entries, buffer has {len}"),
        ));
    }
    let s = std::slice::from_raw_parts_mut(out, need);
    for (dst, z) in s.iter_mut().zip(m.entries()) {
        *dst = LiesymComplex { re: z.re, im: z.im };
    }
    Ok(())
}

unsafe fn write<T>(out: *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null("output"));
    }
    out.write(value);
    Ok(())
}

fn complex(z: C64) -> LiesymComplex {
    LiesymComplex { re: z.re, im: z.im }
}

/// Copies the calling thread's last error message into `buf` (NUL-terminated,
/// truncated to fit) and returns the full message length in bytes.
///
/// # Safety
/// `buf` must be null or valid for `len` bytes.
#[no_mangle]
pub unsafe extern "C" fn liesym_last_error_message(buf: *mut c_char, len: usize) -> usize {
    LAST_ERROR.with(|e| {
        let msg = e.borrow();
        if !buf.is_null() && len > 0 {
            let n = msg.len().min(len - 1);
            ptr::copy_nonoverlapping(msg.as_ptr() as *const c_char, buf, n);
            *buf.add(n) = 0;
        }
        msg.len()
    })
}

/// Creates a space by id (`complex-grassmannian`, `real-grassmannian`,
/// `quaternionic-grassmannian`, `su-so`, `so-u`, `sp-u`, `su-sp`). `m` is
/// ignored for the non-Grassmannian families.
///
/// # Safety
/// `id` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn liesym_space_new(
    id: *const c_char,
    m: usize,
    n: usize,
    out: *mut *mut LiesymSpace,
) -> LiesymStatus {
    guard(|| {
        let name = text(id, "space id")?;
        let id = SpaceId::parse(name).ok_or_else(|| {
            Failure(
                LiesymStatus::InvalidArgument,
                format!("unknown space '{name}'"),
            )
        })?;
        let spec = id.space(m, n)?;
        write(out, Box::into_raw(Box::new(LiesymSpace { id, m, n, spec })))
    })
}

/// # Safety
/// `space` must be null or a handle from [`liesym_space_new`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn liesym_space_free(space: *mut LiesymSpace) {
    if !space.is_null() {
        drop(Box::from_raw(space));
    }
}

/// Side length of the ambient matrices; 0 for a null handle.
///
/// # Safety
/// `space` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn liesym_space_matrix_size(space: *const LiesymSpace) -> usize {
    space.as_ref().map_or(0, |s| s.spec.matrix_size())
}

/// Dimension of the space; 0 for a null handle.
///
/// # Safety
/// `space` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn liesym_space_dim(space: *const LiesymSpace) -> usize {
    space.as_ref().map_or(0, |s| s.spec.dim())
}

/// Writes a seeded ambient group element, row-major, into `out`.
///
/// # Safety
/// `space` must be a live handle and `out` valid for `len` entries.
#[no_mangle]
pub unsafe extern "C" fn liesym_space_sample(
    space: *const LiesymSpace,
    seed: u64,
    out: *mut LiesymComplex,
    len: usize,
) -> LiesymStatus {
    guard(|| {
        let s = handle(space, "space")?;
        let p = s.spec.ambient.sample(seed)?;
        write_matrix(&p, out, len)
    })
}

/// `Φ(p) = p·σ(p)⁻¹`.
///
/// # Safety
/// `p` and `out` must be valid for `len` entries.
#[no_mangle]
pub unsafe extern "C" fn liesym_space_cartan_map(
    space: *const LiesymSpace,
    p: *const LiesymComplex,
    out: *mut LiesymComplex,
    len: usize,
) -> LiesymStatus {
    guard(|| {
        let s = handle(space, "space")?;
        let p = read_matrix(p, len, s.spec.matrix_size())?;
        write_matrix(&cartan_map(&s.spec, &p)?, out, len)
    })
}

/// Looks up a catalog candidate by label; vector parameters are drawn from `seed`.
///
/// # Safety
/// `space` must be a live handle, `label` a NUL-terminated string and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn liesym_candidate_new(
    space: *const LiesymSpace,
    label: *const c_char,
    seed: u64,
    out: *mut *mut LiesymCandidate,
) -> LiesymStatus {
    guard(|| {
        let s = handle(space, "space")?;
        let label = text(label, "label")?;
        if label == "all" {
            return Err(Failure(
                LiesymStatus::InvalidArgument,
                "name a single candidate".into(),
            ));
        }
        let mut families = select_candidate(s.id.catalog(s.m, s.n, seed)?, label)?;
        let inner = families.remove(0).remove(0);
        write(out, Box::into_raw(Box::new(LiesymCandidate { inner })))
    })
}

/// # Safety
/// `candidate` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn liesym_candidate_free(candidate: *mut LiesymCandidate) {
    if !candidate.is_null() {
        drop(Box::from_raw(candidate));
    }
}

/// Claimed tension and conformality eigenvalues.
///
/// # Safety
/// `candidate` must be a live handle; `lambda` and `mu` valid pointers.
#[no_mangle]
pub unsafe extern "C" fn liesym_candidate_eigenvalues(
    candidate: *const LiesymCandidate,
    lambda: *mut LiesymComplex,
    mu: *mut LiesymComplex,
) -> LiesymStatus {
    guard(|| {
        let c = handle(candidate, "candidate")?;
        write(lambda, complex(c.inner.lambda))?;
        write(mu, complex(c.inner.mu))
    })
}

/// Value of the candidate at a group element.
///
/// # Safety
/// `point` must be valid for `len` entries and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn liesym_candidate_eval(
    candidate: *const LiesymCandidate,
    point: *const LiesymComplex,
    len: usize,
    out: *mut LiesymComplex,
) -> LiesymStatus {
    guard(|| {
        let c = handle(candidate, "candidate")?;
        let p = read_matrix(point, len, c.inner.field.size())?;
        write(out, complex(c.inner.field.value(&p)?))
    })
}

/// Tension `τ(ψ)` and conformality `κ(ψ, ψ)` at a group element.
///
/// # Safety
/// `point` must be valid for `len` entries; `tau` and `kappa` valid pointers.
#[no_mangle]
pub unsafe extern "C" fn liesym_candidate_operators(
    candidate: *const LiesymCandidate,
    point: *const LiesymComplex,
    len: usize,
    tau: *mut LiesymComplex,
    kappa: *mut LiesymComplex,
) -> LiesymStatus {
    guard(|| {
        let c = handle(candidate, "candidate")?;
        let p = read_matrix(point, len, c.inner.field.size())?;
        c.inner.space.ambient.check_member(&p)?;
        let basis = c.inner.space.ambient.algebra_basis()?;
        let j = Frame::new(&basis, &p)?.jets(&c.inner.field, &p)?;
        write(tau, complex(j.tension()))?;
        write(kappa, complex(j.conformality(&j)))
    })
}

/// Checks the catalog (or one labelled candidate) of a space at `samples` seeded points.
///
/// # Safety
/// `space` must be a live handle, `candidate` a NUL-terminated string
/// (`"all"` for the whole catalog) and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn liesym_verify(
    space: *const LiesymSpace,
    candidate: *const c_char,
    samples: usize,
    seed: u64,
    tolerance: f64,
    out: *mut LiesymVerifyResult,
) -> LiesymStatus {
    guard(|| {
        let s = handle(space, "space")?;
        let candidate = text(candidate, "candidate")?;
        let config = VerifyConfig {
            samples,
            seed,
            tolerance,
            timing: false,
        };
        let r = verify_space(s.id, s.m, s.n, candidate, &config)?;
        write(
            out,
            LiesymVerifyResult {
                max_tau_residual: r.max_tau_residual,
                max_kappa_residual: r.max_kappa_residual,
                max_cross_residual: r.max_cross_residual,
                passed: r.passed,
            },
        )
    })
}

/// Killing form `B(X, Y)` on `so`, `u`, `su` or `sp`; closed form, or the
/// trace of `ad_X∘ad_Y` when `brute_force` is set.
///
/// # Safety
/// `group` must be a NUL-terminated string, `x` and `y` valid for `len` entries.
#[no_mangle]
pub unsafe extern "C" fn liesym_killing_form(
    group: *const c_char,
    n: usize,
    x: *const LiesymComplex,
    y: *const LiesymComplex,
    len: usize,
    brute_force: bool,
    out: *mut f64,
) -> LiesymStatus {
    guard(|| {
        let name = text(group, "group")?;
        let family = GroupFamily::parse(name).ok_or_else(|| {
            Failure(
                LiesymStatus::InvalidArgument,
                format!("unknown group '{name}'"),
            )
        })?;
        let g = GroupSpec::new(family, n)?;
        let x = read_matrix(x, len, g.matrix_size())?;
        let y = read_matrix(y, len, g.matrix_size())?;
        let b = if brute_force {
            killing_form_bruteforce(&g, &x, &y)?
        } else {
            killing_form(&g, &x, &y)?
        };
        write(out, b)
    })
}
