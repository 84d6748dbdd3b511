//! C ABI over prodfrac.
//!
//! Conventions:
//! - every fallible function returns a [`PfStatus`] and writes its result
//!   through an out-pointer only on `PF_STATUS_OK`;
//! - on failure, [`pf_last_error_message`] describes the error for the
//!   calling thread;
//! - strings returned through `char **` are owned by the caller and must be
//!   released with [`pf_string_free`]; handles with their own `*_free`;
//! - big integers cross the boundary as decimal strings, structured results
//!   as JSON text.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use num_bigint::BigInt;
use serde_json::{json, Value};

use prodfrac::analysis;
use prodfrac::cf::CfExpansion;
use prodfrac::cli::{expand, parse_poly, parse_rational, render};
use prodfrac::families;
use prodfrac::polycore::guard;
use prodfrac::specialize;
use prodfrac::{Error, Poly};

/// Status codes. `PF_STATUS_OK` is zero; the others mirror the library's
/// error codes plus boundary failures.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PfStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    InvalidArgument = 4,
    ZeroDivisor = 5,
    ZeroDenominator = 6,
    ZeroIterate = 7,
    ResourceLimit = 8,
    ConstantInput = 9,
    ClassMismatch = 10,
    NonIntegral = 11,
    NonSpecializable = 12,
    OrbitViolation = 13,
    Precondition = 14,
    Internal = 15,
    Panic = 16,
}

impl From<&Error> for PfStatus {
    fn from(e: &Error) -> Self {
        match e {
            Error::ZeroDivisor => PfStatus::ZeroDivisor,
            Error::ZeroDenominator => PfStatus::ZeroDenominator,
            Error::ZeroIterate { .. } => PfStatus::ZeroIterate,
            Error::ResourceLimit { .. } => PfStatus::ResourceLimit,
            Error::ConstantInput => PfStatus::ConstantInput,
            Error::InvalidArgument(_) => PfStatus::InvalidArgument,
            Error::ClassMismatch { .. } => PfStatus::ClassMismatch,
            Error::NonIntegral { .. } => PfStatus::NonIntegral,
            Error::NonSpecializable { .. } => PfStatus::NonSpecializable,
            Error::OrbitViolation { .. } => PfStatus::OrbitViolation,
            Error::Precondition(_) => PfStatus::Precondition,
            Error::Parse { .. } => PfStatus::ParseError,
            Error::Internal(_) => PfStatus::Internal,
        }
    }
}

/// Opaque polynomial handle.
pub struct PfPoly(Poly);

/// Opaque handle to a symbolic expansion Sₙ of a polynomial.
pub struct PfExpansion {
    poly: Poly,
    n: usize,
    cf: CfExpansion,
    first_non_integral: Option<usize>,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

struct Failure(PfStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure((&e).into(), format!("{}: {e}", e.code()))
    }
}

type Res<T> = Result<T, Failure>;

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

/// Run `body`, converting errors and panics into a status code.
fn guarded(body: impl FnOnce() -> Res<()>) -> PfStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => {
            set_error("");
            PfStatus::Ok
        }
        Ok(Err(Failure(status, msg))) => {
            set_error(&msg);
            status
        }
        Err(_) => {
            set_error("PANIC: internal panic");
            PfStatus::Panic
        }
    }
}

fn null() -> Failure {
    Failure(PfStatus::NullPointer, "NULL_POINTER: null pointer argument".into())
}

unsafe fn arg_str<'a>(s: *const c_char) -> Res<&'a str> {
    if s.is_null() {
        return Err(null());
    }
    // SAFETY: caller passes a NUL-terminated string
    unsafe { CStr::from_ptr(s) }
        .to_str()
        .map_err(|_| Failure(PfStatus::InvalidUtf8, "INVALID_UTF8: argument is not UTF-8".into()))
}

unsafe fn arg_int(s: *const c_char) -> Res<BigInt> {
    let text = unsafe { arg_str(s) }?;
    text.trim()
        .parse()
        .map_err(|_| Error::InvalidArgument(format!("not an integer: {text}")).into())
}

unsafe fn arg_ref<'a, T>(p: *const T) -> Res<&'a T> {
    // SAFETY: caller passes a live handle obtained from this library
    unsafe { p.as_ref() }.ok_or_else(null)
}

unsafe fn put<T>(out: *mut T, v: T) -> Res<()> {
    if out.is_null() {
        return Err(null());
    }
    // SAFETY: checked non-null; caller provides writable storage
    unsafe { out.write(v) };
    Ok(())
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Res<()> {
    let c = CString::new(s).map_err(|_| Error::Internal("interior NUL".into()))?;
    unsafe { put(out, c.into_raw()) }
}

fn strings<T: ToString>(items: impl IntoIterator<Item = T>) -> Vec<String> {
    items.into_iter().map(|t| t.to_string()).collect()
}

fn class_json(c: &families::FamilyClass) -> Value {
    json!({
        "class": c.kind.as_str(),
        "witnessName": c.kind.witness_name().filter(|_| c.witness.is_some()),
        "witness": c.witness.as_ref().map(render),
        "k": c.k.map(|k| k.to_string()),
    })
}

/// Message for the last failed call on this thread; empty after a success.
/// The pointer stays valid until the next call into this library on the
/// same thread.
#[no_mangle]
pub extern "C" fn pf_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Static name of a status code, e.g. "ORBIT_VIOLATION".
#[no_mangle]
pub extern "C" fn pf_status_name(status: PfStatus) -> *const c_char {
    let name: &'static CStr = match status {
        PfStatus::Ok => c"OK",
        PfStatus::NullPointer => c"NULL_POINTER",
        PfStatus::InvalidUtf8 => c"INVALID_UTF8",
        PfStatus::ParseError => c"PARSE_ERROR",
        PfStatus::InvalidArgument => c"INVALID_ARGUMENT",
        PfStatus::ZeroDivisor => c"ZERO_DIVISOR",
        PfStatus::ZeroDenominator => c"ZERO_DENOMINATOR",
        PfStatus::ZeroIterate => c"ZERO_ITERATE",
        PfStatus::ResourceLimit => c"RESOURCE_LIMIT",
        PfStatus::ConstantInput => c"CONSTANT_INPUT",
        PfStatus::ClassMismatch => c"CLASS_MISMATCH",
        PfStatus::NonIntegral => c"NON_INTEGRAL",
        PfStatus::NonSpecializable => c"NON_SPECIALIZABLE",
        PfStatus::OrbitViolation => c"ORBIT_VIOLATION",
        PfStatus::Precondition => c"PRECONDITION",
        PfStatus::Internal => c"INTERNAL",
        PfStatus::Panic => c"PANIC",
    };
    name.as_ptr()
}

/// Release a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn pf_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(unsafe { CString::from_raw(s) });
    }
}

/// Process-wide limit on predicted coefficient storage, in 64-bit words.
#[no_mangle]
pub extern "C" fn pf_set_max_coeff_words(limit: u64) {
    guard::set_max_coeff_words(limit);
}

#[no_mangle]
pub extern "C" fn pf_max_coeff_words() -> u64 {
    guard::max_coeff_words()
}

/// Parse an expression such as "x^2*(x+1)".
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pf_poly_parse(text: *const c_char, out: *mut *mut PfPoly) -> PfStatus {
    guarded(|| {
        let f = parse_poly(unsafe { arg_str(text) }?)?;
        unsafe { put(out, Box::into_raw(Box::new(PfPoly(f)))) }
    })
}

/// # Safety
/// `p` must be null or a handle from this library that was not yet freed.
#[no_mangle]
pub unsafe extern "C" fn pf_poly_free(p: *mut PfPoly) {
    if !p.is_null() {
        drop(unsafe { Box::from_raw(p) });
    }
}

/// Degree of the polynomial, −1 for zero or a null handle.
///
/// # Safety
/// `p` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn pf_poly_degree(p: *const PfPoly) -> i64 {
    unsafe { p.as_ref() }
        .and_then(|p| p.0.degree())
        .map_or(-1, |d| d as i64)
}

/// Canonical text, e.g. "x^3 + x^2".
///
/// # Safety
/// `p` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pf_poly_render(p: *const PfPoly, out: *mut *mut c_char) -> PfStatus {
    guarded(|| {
        let p = unsafe { arg_ref(p) }?;
        unsafe { put_string(out, render(&p.0)) }
    })
}

/// Value at an integer given in decimal.
///
/// # Safety
/// `p` must be a live handle, `x` a NUL-terminated string, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn pf_poly_eval(p: *const PfPoly, x: *const c_char, out: *mut *mut c_char) -> PfStatus {
    guarded(|| {
        let p = unsafe { arg_ref(p) }?;
        let x = unsafe { arg_int(x) }?;
        unsafe { put_string(out, p.0.eval(&x).to_string()) }
    })
}

/// Chebyshev polynomial T_l, l ≥ 1.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pf_chebyshev(l: u32, out: *mut *mut PfPoly) -> PfStatus {
    guarded(|| {
        let t = analysis::chebyshev(l)?;
        unsafe { put(out, Box::into_raw(Box::new(PfPoly(t)))) }
    })
}

/// JSON array of every family the polynomial belongs to.
///
/// # Safety
/// `p` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pf_classify_json(p: *const PfPoly, out: *mut *mut c_char) -> PfStatus {
    guarded(|| {
        let p = unsafe { arg_ref(p) }?;
        let classes = families::classify(&p.0)?;
        let v: Vec<Value> = classes.iter().map(class_json).collect();
        unsafe { put_string(out, Value::Array(v).to_string()) }
    })
}

/// Sₙ by the first matching family's construction, or by the Euclidean
/// algorithm when no family applies.
///
/// # Safety
/// `p` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pf_expand(p: *const PfPoly, n: usize, out: *mut *mut PfExpansion) -> PfStatus {
    guarded(|| {
        let p = unsafe { arg_ref(p) }?;
        let e = expand(&p.0, n, None)?;
        let handle = PfExpansion {
            poly: p.0.clone(),
            n,
            cf: e.cf,
            first_non_integral: e.first_non_integral,
        };
        unsafe { put(out, Box::into_raw(Box::new(handle))) }
    })
}

/// # Safety
/// `e` must be null or a handle from this library that was not yet freed.
#[no_mangle]
pub unsafe extern "C" fn pf_expansion_free(e: *mut PfExpansion) {
    if !e.is_null() {
        drop(unsafe { Box::from_raw(e) });
    }
}

/// Number of partial quotients including the head; 0 for a null handle.
///
/// # Safety
/// `e` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn pf_expansion_len(e: *const PfExpansion) -> usize {
    unsafe { e.as_ref() }.map_or(0, |e| e.cf.len() + 1)
}

/// 1-based position of the first quotient outside ℤ[x], or 0 if all are
/// integral.
///
/// # Safety
/// `e` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn pf_expansion_first_non_integral(e: *const PfExpansion) -> usize {
    unsafe { e.as_ref() }
        .and_then(|e| e.first_non_integral)
        .unwrap_or(0)
}

/// Quotient `i` (0 is the head) as text.
///
/// # Safety
/// `e` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pf_expansion_quotient(e: *const PfExpansion, i: usize, out: *mut *mut c_char) -> PfStatus {
    guarded(|| {
        let e = unsafe { arg_ref(e) }?;
        let q = e
            .cf
            .quotients()
            .nth(i)
            .ok_or_else(|| Error::InvalidArgument(format!("index {i} out of range")))?;
        unsafe { put_string(out, q.to_string()) }
    })
}

/// Regular continued fraction of the expansion at x = M as a JSON array of
/// decimal strings.
///
/// # Safety
/// `e` must be a live handle, `at` a NUL-terminated string, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn pf_expansion_specialize_json(
    e: *const PfExpansion,
    at: *const c_char,
    out: *mut *mut c_char,
) -> PfStatus {
    guarded(|| {
        let e = unsafe { arg_ref(e) }?;
        let m = unsafe { arg_int(at) }?;
        specialize::orbit(&e.poly, &m, e.n)?;
        if let Some(index) = e.first_non_integral {
            return Err(Error::NonSpecializable { index }.into());
        }
        let reg = specialize::regularize(&specialize::eval_cf(&e.cf, &m)?)?;
        unsafe { put_string(out, json!(strings(reg.terms())).to_string()) }
    })
}

/// Exact ∏ⱼ₌₀ⁿ(1 + 1/fⱼ(M)) as reduced numerator and denominator.
///
/// # Safety
/// `p` must be a live handle, `at` a NUL-terminated string, `num` and `den`
/// writable.
#[no_mangle]
pub unsafe extern "C" fn pf_product_value(
    p: *const PfPoly,
    at: *const c_char,
    n: usize,
    num: *mut *mut c_char,
    den: *mut *mut c_char,
) -> PfStatus {
    guarded(|| {
        let p = unsafe { arg_ref(p) }?;
        let m = unsafe { arg_int(at) }?;
        if num.is_null() || den.is_null() {
            return Err(null());
        }
        let v = specialize::product_value(&p.0, &m, n)?;
        unsafe {
            put_string(num, v.numer().to_string())?;
            put_string(den, v.denom().to_string())
        }
    })
}

/// Canonical regular continued fraction of p/q (q > 0) as a JSON array.
///
/// # Safety
/// `p` and `q` must be NUL-terminated strings; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pf_rational_to_cf_json(p: *const c_char, q: *const c_char, out: *mut *mut c_char) -> PfStatus {
    guarded(|| {
        let (p, q) = unsafe { (arg_int(p)?, arg_int(q)?) };
        let cf = specialize::rational_to_cf(&p, &q)?;
        unsafe { put_string(out, json!(strings(cf.terms())).to_string()) }
    })
}

/// Irrationality-exponent evidence as JSON; `epsilon` is "p/q" or a decimal.
/// Numeric evidence only, not a proof.
///
/// # Safety
/// `p` must be a live handle, `at` and `epsilon` NUL-terminated strings,
/// `out` writable.
#[no_mangle]
pub unsafe extern "C" fn pf_evidence_json(
    p: *const PfPoly,
    at: *const c_char,
    depth: usize,
    epsilon: *const c_char,
    out: *mut *mut c_char,
) -> PfStatus {
    guarded(|| {
        let p = unsafe { arg_ref(p) }?;
        let m = unsafe { arg_int(at) }?;
        let eps = parse_rational(unsafe { arg_str(epsilon) }?).map_err(Error::InvalidArgument)?;
        let ev = analysis::approx_exponent(&p.0, &m, depth, &eps)?;
        let records: Vec<Value> = ev
            .records
            .iter()
            .map(|r| {
                json!({
                    "n": r.n.to_string(),
                    "qDigits": r.q_digits.to_string(),
                    "gap": analysis::decimal::scientific(&r.gap, 20),
                    "exponent": r.exponent,
                    "exponentLo": r.exponent_lo,
                    "exponentHi": r.exponent_hi,
                })
            })
            .collect();
        let v = json!({
            "family": class_json(&ev.class),
            "records": records,
            "threshold": ev.threshold(),
            "verdict": ev.verdict,
        });
        unsafe { put_string(out, v.to_string()) }
    })
}

/// Near-exception comparison as JSON {lhs, rhs, agreeDigits, precision}.
///
/// # Safety
/// `at` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pf_near_exception_json(at: *const c_char, n: usize, out: *mut *mut c_char) -> PfStatus {
    guarded(|| {
        let m = unsafe { arg_int(at) }?;
        let r = analysis::near_exception(&m, n)?;
        let v = json!({
            "lhs": r.lhs,
            "rhs": r.rhs,
            "agreeDigits": r.agree_digits.to_string(),
            "precision": r.precision.to_string(),
        });
        unsafe { put_string(out, v.to_string()) }
    })
}
