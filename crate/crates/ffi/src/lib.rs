//! C ABI over `ncpos`.
//!
//! Every fallible call returns an [`NcposStatus`]; on failure a message is kept per
//! thread and can be read with [`ncpos_last_error`]. Strings handed out by the
//! library must be released with [`ncpos_string_free`], handles with their `_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use ncpos::algebra::{Element, Presentation, PresetKind};
use ncpos::expr::parse_element;
use ncpos::fraction::{membership_in_x, Membership};
use ncpos::poly::RatPoly;
use ncpos::rep::{sturm_positive, Positivity};
use ncpos::scalar::parse_rational;
use ncpos::sohs::{positivstellensatz_search, SearchMode, SearchOptions, SearchOutcome};
use ncpos::Error;

#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum NcposStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    InvalidParameters = 4,
    PresetMismatch = 5,
    NotHermitian = 6,
    /// the computation finished without a decision
    Inconclusive = 7,
    Failed = 8,
    Panic = 9,
}

#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum NcposPreset {
    Weyl = 0,
    Axb = 1,
    Comm = 2,
}

/// Opaque presentation handle.
pub struct NcposPresentation {
    inner: Presentation,
}

/// Opaque element handle; remembers the presentation it was built in.
pub struct NcposElement {
    pres: Presentation,
    inner: Element,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let text = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(text).ok());
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

fn status_of(err: &Error) -> NcposStatus {
    match err {
        Error::SyntaxError { .. } | Error::UnknownGenerator(_) | Error::BadInverse(_) | Error::NotPolynomial(_) => {
            NcposStatus::Parse
        }
        Error::InvalidParameters(_) => NcposStatus::InvalidParameters,
        Error::PresetMismatch => NcposStatus::PresetMismatch,
        Error::NotHermitian => NcposStatus::NotHermitian,
        _ => NcposStatus::Failed,
    }
}

struct Fail(NcposStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(status_of(&e), e.to_string())
    }
}

/// Runs `f`, recording its error message and turning panics into [`NcposStatus::Panic`].
fn guard(f: impl FnOnce() -> Result<NcposStatus, Fail>) -> NcposStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(status)) => status,
        Ok(Err(Fail(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("panic inside ncpos");
            NcposStatus::Panic
        }
    }
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(Fail(NcposStatus::NullPointer, format!("{what} is null")));
    }
    CStr::from_ptr(p).to_str().map_err(|_| Fail(NcposStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn handle<'a, T>(p: *const T, what: &str) -> Result<&'a T, Fail> {
    p.as_ref().ok_or_else(|| Fail(NcposStatus::NullPointer, format!("{what} is null")))
}

fn out_ptr<T>(p: *mut T, what: &str) -> Result<(), Fail> {
    if p.is_null() {
        Err(Fail(NcposStatus::NullPointer, format!("{what} is null")))
    } else {
        Ok(())
    }
}

fn c_string(s: String) -> Result<*mut c_char, Fail> {
    CString::new(s).map(CString::into_raw).map_err(|_| Fail(NcposStatus::Failed, "string contains NUL".into()))
}

fn element(pres: &Presentation, inner: Element) -> *mut NcposElement {
    Box::into_raw(Box::new(NcposElement { pres: pres.clone(), inner }))
}

fn same(a: &NcposElement, b: &NcposElement) -> Result<(), Fail> {
    if a.pres == b.pres {
        Ok(())
    } else {
        Err(Error::PresetMismatch.into())
    }
}

/// Message of the last failed call on this thread, or null. Valid until the next call.
#[no_mangle]
pub extern "C" fn ncpos_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ncpos_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Creates a presentation. `alpha` and `beta` are rationals such as `"-3/2"`; null selects the preset default.
///
/// # Safety
/// String arguments must be null or NUL-terminated; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ncpos_presentation_new(
    preset: NcposPreset,
    alpha: *const c_char,
    beta: *const c_char,
    out: *mut *mut NcposPresentation,
) -> NcposStatus {
    guard(|| {
        out_ptr(out, "out")?;
        let kind = match preset {
            NcposPreset::Weyl => PresetKind::Weyl,
            NcposPreset::Axb => PresetKind::AxB,
            NcposPreset::Comm => PresetKind::CommPoly,
        };
        let base = Presentation::default_for(kind);
        let param = |p: *const c_char, name: &str, default| -> Result<_, Fail> {
            if p.is_null() {
                return Ok(default);
            }
            let t = text(p, name)?;
            parse_rational(t).ok_or_else(|| Fail(NcposStatus::Parse, format!("{name} `{t}` is not a rational")))
        };
        let a = param(alpha, "alpha", base.alpha.clone())?;
        let b = param(beta, "beta", base.beta.clone())?;
        let inner = Presentation::new(kind, a, b)?;
        *out = Box::into_raw(Box::new(NcposPresentation { inner }));
        Ok(NcposStatus::Ok)
    })
}

/// # Safety
/// `p` must be null or a live handle from [`ncpos_presentation_new`].
#[no_mangle]
pub unsafe extern "C" fn ncpos_presentation_free(p: *mut NcposPresentation) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Parses a polynomial expression such as `"p^2 + q^2 + 1"`.
///
/// # Safety
/// `pres` must be a live handle, `expr` NUL-terminated and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ncpos_element_parse(
    pres: *const NcposPresentation,
    expr: *const c_char,
    out: *mut *mut NcposElement,
) -> NcposStatus {
    guard(|| {
        let pres = &handle(pres, "presentation")?.inner;
        let e = parse_element(pres, text(expr, "expression")?)?;
        out_ptr(out, "out")?;
        *out = element(pres, e);
        Ok(NcposStatus::Ok)
    })
}

/// # Safety
/// `e` must be null or a live element handle.
#[no_mangle]
pub unsafe extern "C" fn ncpos_element_free(e: *mut NcposElement) {
    if !e.is_null() {
        drop(Box::from_raw(e));
    }
}

/// # Safety
/// `a`, `b` must be live element handles and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ncpos_element_add(
    a: *const NcposElement,
    b: *const NcposElement,
    out: *mut *mut NcposElement,
) -> NcposStatus {
    guard(|| {
        let (a, b) = (handle(a, "a")?, handle(b, "b")?);
        same(a, b)?;
        out_ptr(out, "out")?;
        *out = element(&a.pres, a.inner.add(&b.inner));
        Ok(NcposStatus::Ok)
    })
}

/// # Safety
/// `a`, `b` must be live element handles and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ncpos_element_mul(
    a: *const NcposElement,
    b: *const NcposElement,
    out: *mut *mut NcposElement,
) -> NcposStatus {
    guard(|| {
        let (a, b) = (handle(a, "a")?, handle(b, "b")?);
        same(a, b)?;
        out_ptr(out, "out")?;
        *out = element(&a.pres, a.pres.mul(&a.inner, &b.inner));
        Ok(NcposStatus::Ok)
    })
}

/// Involution `e ↦ e*`.
///
/// # Safety
/// `e` must be a live element handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ncpos_element_star(e: *const NcposElement, out: *mut *mut NcposElement) -> NcposStatus {
    guard(|| {
        let e = handle(e, "element")?;
        out_ptr(out, "out")?;
        *out = element(&e.pres, e.pres.star(&e.inner));
        Ok(NcposStatus::Ok)
    })
}

/// # Safety
/// `a`, `b` must be live element handles and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ncpos_element_equal(a: *const NcposElement, b: *const NcposElement, out: *mut bool) -> NcposStatus {
    guard(|| {
        let (a, b) = (handle(a, "a")?, handle(b, "b")?);
        same(a, b)?;
        out_ptr(out, "out")?;
        *out = a.inner == b.inner;
        Ok(NcposStatus::Ok)
    })
}

/// # Safety
/// `e` must be a live element handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ncpos_element_is_hermitian(e: *const NcposElement, out: *mut bool) -> NcposStatus {
    guard(|| {
        let e = handle(e, "element")?;
        out_ptr(out, "out")?;
        *out = e.pres.is_hermitian(&e.inner);
        Ok(NcposStatus::Ok)
    })
}

/// Multidegree `(d1, d2)`; the zero element has none.
///
/// # Safety
/// `e` must be a live element handle; `d1`, `d2` writable.
#[no_mangle]
pub unsafe extern "C" fn ncpos_element_multidegree(e: *const NcposElement, d1: *mut i64, d2: *mut i64) -> NcposStatus {
    guard(|| {
        let e = handle(e, "element")?;
        out_ptr(d1, "d1")?;
        out_ptr(d2, "d2")?;
        let d = e.pres.multidegree(&e.inner)?;
        *d1 = d.d1();
        *d2 = d.d2();
        Ok(NcposStatus::Ok)
    })
}

/// Canonical normal-form text; free with [`ncpos_string_free`].
///
/// # Safety
/// `e` must be a live element handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ncpos_element_to_string(e: *const NcposElement, out: *mut *mut c_char) -> NcposStatus {
    guard(|| {
        let e = handle(e, "element")?;
        out_ptr(out, "out")?;
        *out = c_string(e.pres.element_to_text(&e.inner))?;
        Ok(NcposStatus::Ok)
    })
}

/// Membership of a fraction such as `"p*inv(s1*s2)"` in the bounded subalgebra.
///
/// Sets `out` and returns `Ok` when a witness is found, `Inconclusive` when the degree criterion fails.
///
/// # Safety
/// `pres` must be a live handle, `expr` NUL-terminated and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ncpos_member(pres: *const NcposPresentation, expr: *const c_char, out: *mut bool) -> NcposStatus {
    guard(|| {
        let pres = &handle(pres, "presentation")?.inner;
        out_ptr(out, "out")?;
        let f = ncpos::expr::parse_fraction(pres, text(expr, "expression")?)?;
        match membership_in_x(pres, &f)? {
            Membership::InX(_) => {
                *out = true;
                Ok(NcposStatus::Ok)
            }
            Membership::CriterionFailed { .. } => {
                *out = false;
                Ok(NcposStatus::Inconclusive)
            }
        }
    })
}

/// Strict sum-of-hermitian-squares search over denominators of length at most `max_denom_len`.
///
/// Writes the JSON report to `json` in both outcomes; returns `Ok` if a certificate
/// was found and `Inconclusive` otherwise.
///
/// # Safety
/// `e` must be a live element handle and `json` writable.
#[no_mangle]
pub unsafe extern "C" fn ncpos_sohs_search(
    e: *const NcposElement,
    max_denom_len: usize,
    json: *mut *mut c_char,
) -> NcposStatus {
    guard(|| {
        let e = handle(e, "element")?;
        out_ptr(json, "json")?;
        let opts = SearchOptions { max_denom_len, ..SearchOptions::default() };
        let outcome = positivstellensatz_search(&e.pres, &e.inner, &SearchMode::Strict, &opts)?;
        let report = serde_json::to_string(&outcome).map_err(|err| Fail(NcposStatus::Failed, err.to_string()))?;
        *json = c_string(report)?;
        Ok(match outcome {
            SearchOutcome::Found { .. } => NcposStatus::Ok,
            SearchOutcome::NotFoundWithinCaps { .. } => NcposStatus::Inconclusive,
        })
    })
}

/// Exact strict positivity on ℝ of `Σ coeffs[k] x^k`.
///
/// # Safety
/// `coeffs` must point to `len` readable values and `out` be writable.
#[no_mangle]
pub unsafe extern "C" fn ncpos_sturm_positive(coeffs: *const i64, len: usize, out: *mut bool) -> NcposStatus {
    guard(|| {
        if coeffs.is_null() && len > 0 {
            return Err(Fail(NcposStatus::NullPointer, "coeffs is null".into()));
        }
        out_ptr(out, "out")?;
        let c = if len == 0 { &[][..] } else { std::slice::from_raw_parts(coeffs, len) };
        *out = matches!(sturm_positive(&RatPoly::from_ints(c))?, Positivity::StrictlyPositive);
        Ok(NcposStatus::Ok)
    })
}

/// Library version, static.
#[no_mangle]
pub extern "C" fn ncpos_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}
