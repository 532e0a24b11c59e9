//! C ABI over the `paired` library.
//!
//! Objects cross the boundary as opaque handles created by `paired_*_new`,
//! `paired_*_parse` or an operation, and released with the matching
//! `paired_*_free`. Every fallible call returns a [`PairedStatus`]; on failure
//! `paired_last_error()` describes the error until the next call on the same
//! thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use num_complex::Complex64;
use paired::kernels::{coburn_check, kernel_basis_with, KernelBasis, KernelOptions};
use paired::operators::{apply_s, apply_sigma, op_norm};
use paired::properties::{run_all, run_suite, SuiteConfig, SUITES};
use paired::{parse_symbol, Error, LaurentPoly, PairedSpec};

/// Status codes returned by every fallible function.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PairedStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    Degenerate = 4,
    Ambiguous = 5,
    Membership = 6,
    Precondition = 7,
    Numerical = 8,
    OutOfRange = 9,
    Panic = 10,
}

/// Laurent polynomial (also used for coefficient vectors).
pub struct PairedPoly(LaurentPoly);

/// The pair `(a, b)` defining `S_{a,b} = a P+ + b P-`.
pub struct PairedSpecHandle(PairedSpec);

/// Orthonormal kernel basis on a band.
pub struct PairedKernel(KernelBasis);

/// Kernel dimensions behind the Coburn-type dichotomy.
#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct PairedCoburn {
    pub band: usize,
    pub dim_ab: usize,
    pub dim_ba: usize,
    pub dim_conj: usize,
    pub dim_adjoint: usize,
    pub dichotomy: bool,
    pub j_dims_match: bool,
    pub holds: bool,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("interior nul removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn fail(status: PairedStatus, msg: impl Into<String>) -> PairedStatus {
    set_error(msg.into());
    status
}

fn status_of(e: &Error) -> PairedStatus {
    match e {
        Error::Parse { .. } => PairedStatus::Parse,
        Error::Degenerate { .. } => PairedStatus::Degenerate,
        Error::Ambiguous { .. } => PairedStatus::Ambiguous,
        Error::Membership { .. } => PairedStatus::Membership,
        Error::Precondition(_) | Error::ZeroInput(_) | Error::Unsupported(_) => PairedStatus::Precondition,
        _ => PairedStatus::Numerical,
    }
}

fn from_error(e: Error) -> PairedStatus {
    fail(status_of(&e), e.to_string())
}

/// Runs `f` with panics mapped to [`PairedStatus::Panic`].
fn guard<F: FnOnce() -> PairedStatus>(f: F) -> PairedStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(p) => {
            let msg = p
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| p.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            fail(PairedStatus::Panic, msg)
        }
    }
}

unsafe fn str_arg<'a>(s: *const c_char) -> Result<&'a str, PairedStatus> {
    if s.is_null() {
        return Err(fail(PairedStatus::NullPointer, "null string"));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|e| fail(PairedStatus::InvalidUtf8, e.to_string()))
}

unsafe fn handle<'a, T>(p: *const T) -> Result<&'a T, PairedStatus> {
    p.as_ref().ok_or_else(|| fail(PairedStatus::NullPointer, "null handle"))
}

unsafe fn put<T>(out: *mut T, v: T) -> PairedStatus {
    if out.is_null() {
        return fail(PairedStatus::NullPointer, "null output pointer");
    }
    out.write(v);
    PairedStatus::Ok
}

fn ok(s: PairedStatus) -> Result<(), PairedStatus> {
    match s {
        PairedStatus::Ok => Ok(()),
        s => Err(s),
    }
}

macro_rules! tri {
    ($e:expr) => {
        match $e {
            Ok(v) => v,
            Err(s) => return s,
        }
    };
}

/// Message for the last failed call on this thread, or null. Owned by the
/// library; valid until the next call on this thread.
#[no_mangle]
pub extern "C" fn paired_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn paired_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Parses a symbol expression such as `"1 + 2z - 3z^-2"`.
///
/// # Safety
/// `expr` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn paired_poly_parse(expr: *const c_char, out: *mut *mut PairedPoly) -> PairedStatus {
    guard(|| {
        let s = tri!(str_arg(expr));
        match parse_symbol(s) {
            Ok(p) => put(out, Box::into_raw(Box::new(PairedPoly(p)))),
            Err(e) => from_error(e),
        }
    })
}

/// Builds `sum_j (re[j] + i im[j]) z^(kmin + j)`.
///
/// # Safety
/// `re` and `im` must point to `len` doubles each (either may be null when `len` is 0).
#[no_mangle]
pub unsafe extern "C" fn paired_poly_from_coeffs(
    kmin: i64,
    re: *const f64,
    im: *const f64,
    len: usize,
    out: *mut *mut PairedPoly,
) -> PairedStatus {
    guard(|| {
        let coeffs = if len == 0 {
            Vec::new()
        } else {
            if re.is_null() || im.is_null() {
                return fail(PairedStatus::NullPointer, "null coefficient array");
            }
            let re = std::slice::from_raw_parts(re, len);
            let im = std::slice::from_raw_parts(im, len);
            re.iter().zip(im).map(|(&r, &i)| Complex64::new(r, i)).collect()
        };
        let p = LaurentPoly::from_dense(kmin, coeffs);
        if !p.is_finite() {
            return fail(PairedStatus::Precondition, "non-finite coefficient");
        }
        put(out, Box::into_raw(Box::new(PairedPoly(p))))
    })
}

/// # Safety
/// `p` must be null or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn paired_poly_free(p: *mut PairedPoly) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Number of stored coefficients (`kmax - kmin + 1`, or 0 for the zero polynomial).
///
/// # Safety
/// `p` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn paired_poly_len(p: *const PairedPoly, out: *mut usize) -> PairedStatus {
    guard(|| {
        let p = tri!(handle(p));
        put(out, p.0.dense().len())
    })
}

/// Writes `kmin` and the dense coefficients. Fails with `OutOfRange` if
/// `cap` is smaller than [`paired_poly_len`].
///
/// # Safety
/// `p` must be a live handle; `kmin` writable; `re`, `im` writable for `cap` doubles.
#[no_mangle]
pub unsafe extern "C" fn paired_poly_coeffs(
    p: *const PairedPoly,
    kmin: *mut i64,
    re: *mut f64,
    im: *mut f64,
    cap: usize,
) -> PairedStatus {
    guard(|| {
        let p = tri!(handle(p));
        let dense = p.0.dense();
        if dense.len() > cap {
            return fail(PairedStatus::OutOfRange, format!("need {} slots, have {cap}", dense.len()));
        }
        if !dense.is_empty() && (re.is_null() || im.is_null()) {
            return fail(PairedStatus::NullPointer, "null coefficient array");
        }
        for (j, c) in dense.iter().enumerate() {
            re.add(j).write(c.re);
            im.add(j).write(c.im);
        }
        put(kmin, p.0.kmin().unwrap_or(0))
    })
}

/// Coefficient of `z^k`.
///
/// # Safety
/// `p` must be a live handle; `re` and `im` writable.
#[no_mangle]
pub unsafe extern "C" fn paired_poly_coeff(p: *const PairedPoly, k: i64, re: *mut f64, im: *mut f64) -> PairedStatus {
    guard(|| {
        let p = tri!(handle(p));
        let c = p.0.coeff(k);
        tri!(ok(put(re, c.re)));
        put(im, c.im)
    })
}

/// The pair `(a, b)`. Degenerate pairs are accepted; operations that need a
/// nondegenerate pair report `Degenerate`.
///
/// # Safety
/// `a`, `b` must be live handles (copied, not consumed); `out` writable.
#[no_mangle]
pub unsafe extern "C" fn paired_spec_new(
    a: *const PairedPoly,
    b: *const PairedPoly,
    out: *mut *mut PairedSpecHandle,
) -> PairedStatus {
    guard(|| {
        let a = tri!(handle(a));
        let b = tri!(handle(b));
        let spec = PairedSpec::new(a.0.clone(), b.0.clone());
        put(out, Box::into_raw(Box::new(PairedSpecHandle(spec))))
    })
}

/// # Safety
/// `s` must be null or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn paired_spec_free(s: *mut PairedSpecHandle) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// `S_{a,b} f`, or `Sigma_{a,b} f` when `sigma` is true.
///
/// # Safety
/// `spec`, `f` must be live handles; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn paired_apply(
    spec: *const PairedSpecHandle,
    f: *const PairedPoly,
    sigma: bool,
    out: *mut *mut PairedPoly,
) -> PairedStatus {
    guard(|| {
        let spec = tri!(handle(spec));
        let f = tri!(handle(f));
        let v = if sigma { apply_sigma(&spec.0, &f.0) } else { apply_s(&spec.0, &f.0) };
        put(out, Box::into_raw(Box::new(PairedPoly(v))))
    })
}

/// Largest singular value of the `S` finite section on `[-n, n]`.
///
/// # Safety
/// `spec` must be a live handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn paired_op_norm(spec: *const PairedSpecHandle, n: usize, out: *mut f64) -> PairedStatus {
    guard(|| {
        let spec = tri!(handle(spec));
        match op_norm(&spec.0, n) {
            Ok(v) => put(out, v),
            Err(e) => from_error(e),
        }
    })
}

/// Kernel of `S_{a,b}` on `[-n, n]`, widening the band by 16 up to
/// `escalations` times when the null space is ambiguous.
///
/// # Safety
/// `spec` must be a live handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn paired_kernel(
    spec: *const PairedSpecHandle,
    n: usize,
    escalations: usize,
    out: *mut *mut PairedKernel,
) -> PairedStatus {
    guard(|| {
        let spec = tri!(handle(spec));
        match kernel_basis_with(&spec.0, n, &KernelOptions::escalating(escalations)) {
            Ok(k) => put(out, Box::into_raw(Box::new(PairedKernel(k)))),
            Err(e) => from_error(e),
        }
    })
}

/// # Safety
/// `k` must be null or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn paired_kernel_free(k: *mut PairedKernel) {
    if !k.is_null() {
        drop(Box::from_raw(k));
    }
}

/// # Safety
/// `k` must be a live handle; `dim` writable.
#[no_mangle]
pub unsafe extern "C" fn paired_kernel_dim(k: *const PairedKernel, dim: *mut usize) -> PairedStatus {
    guard(|| {
        let k = tri!(handle(k));
        put(dim, k.0.dim())
    })
}

/// Band actually used (after escalation).
///
/// # Safety
/// `k` must be a live handle; `band` writable.
#[no_mangle]
pub unsafe extern "C" fn paired_kernel_band(k: *const PairedKernel, band: *mut usize) -> PairedStatus {
    guard(|| {
        let k = tri!(handle(k));
        put(band, k.0.band)
    })
}

/// Copy of basis vector `i` as a new polynomial handle.
///
/// # Safety
/// `k` must be a live handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn paired_kernel_vector(k: *const PairedKernel, i: usize, out: *mut *mut PairedPoly) -> PairedStatus {
    guard(|| {
        let k = tri!(handle(k));
        match k.0.basis.get(i) {
            Some(v) => put(out, Box::into_raw(Box::new(PairedPoly(v.clone())))),
            None => fail(PairedStatus::OutOfRange, format!("index {i} >= dim {}", k.0.dim())),
        }
    })
}

/// Coburn-type dichotomy check on `[-n, n]`.
///
/// # Safety
/// `spec` must be a live handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn paired_coburn(
    spec: *const PairedSpecHandle,
    n: usize,
    escalations: usize,
    out: *mut PairedCoburn,
) -> PairedStatus {
    guard(|| {
        let spec = tri!(handle(spec));
        match coburn_check(&spec.0, n, &KernelOptions::escalating(escalations)) {
            Ok(r) => put(
                out,
                PairedCoburn {
                    band: r.band,
                    dim_ab: r.dim_ab,
                    dim_ba: r.dim_ba,
                    dim_conj: r.dim_conj,
                    dim_adjoint: r.dim_adjoint,
                    dichotomy: r.dichotomy,
                    j_dims_match: r.j_dims_match,
                    holds: r.holds,
                },
            ),
            Err(e) => from_error(e),
        }
    })
}

/// Runs a property suite (or `"all"`) and returns its JSON report, runtime
/// fields zeroed. `trials < 0` uses the per-suite default. `exit_code`
/// receives 0 (pass), 1 (violations) or 2 (ambiguities only).
///
/// # Safety
/// `name` must be a NUL-terminated string; `json` and `exit_code` writable.
/// Free the string with [`paired_string_free`].
#[no_mangle]
pub unsafe extern "C" fn paired_suite_json(
    name: *const c_char,
    seed: u64,
    trials: i64,
    json: *mut *mut c_char,
    exit_code: *mut i32,
) -> PairedStatus {
    guard(|| {
        let name = tri!(str_arg(name));
        let cfg = SuiteConfig {
            seed,
            trials: usize::try_from(trials).ok(),
            ..SuiteConfig::default()
        };
        let (text, code) = if name == "all" {
            let r = run_all(&cfg).without_runtime();
            (serde_json::to_string(&r), r.exit_code())
        } else if SUITES.contains(&name) {
            let mut r = match run_suite(name, &cfg) {
                Ok(r) => r,
                Err(e) => return from_error(e),
            };
            r.runtime_ms = 0.0;
            (serde_json::to_string(&r), r.exit_code())
        } else {
            return fail(PairedStatus::Precondition, format!("unknown suite {name:?}"));
        };
        let text = match text {
            Ok(t) => t,
            Err(e) => return fail(PairedStatus::Numerical, e.to_string()),
        };
        let c = CString::new(text).expect("JSON has no interior nul");
        tri!(ok(put(exit_code, code)));
        put(json, c.into_raw())
    })
}

/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn paired_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
