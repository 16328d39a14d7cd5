//! C ABI over `adcforms`.
//!
//! Forms live behind an opaque `AdcForm` handle. Ring elements and vectors
//! cross the boundary as JSON text in the same encoding the form
//! descriptors use (decimal strings for integers and rationals, coefficient
//! arrays for polynomials). Every call returns an `AdcStatus`; on failure the
//! message is available from `adc_last_error` until the next call on the
//! same thread. Strings handed out must be released with `adc_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use adcforms::cli::{exit_code_for, EXIT_INCONCLUSIVE, EXIT_NEGATIVE};
use adcforms::descent::{
    adc_descend, represents_integrally, witness_search, Outcome, Representation, SearchRing, WitnessSearch,
};
use adcforms::euclid::is_euclidean;
use adcforms::forms::descriptor::load_fixture;
use adcforms::forms::QuadraticForm;
use adcforms::localglobal::{sum_three_squares, three_squares_predicate, ThreeSquares};
use adcforms::rings::context::parse_bigint;
use adcforms::rings::ElemCodec;
use adcforms::{AnyForm, Error, Limits};
use serde_json::{json, Value};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AdcStatus {
    Ok = 0,
    /// The answer is no (not represented, descent failed, ...).
    Negative = 1,
    InvalidArgument = 2,
    /// A search bound or the enumeration cap was reached first.
    Inconclusive = 3,
    NullPointer = 4,
    Panic = 5,
}

/// Opaque quadratic form.
pub struct AdcForm {
    inner: AnyForm,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

fn status_for(e: &Error) -> AdcStatus {
    match exit_code_for(e) {
        EXIT_NEGATIVE => AdcStatus::Negative,
        EXIT_INCONCLUSIVE => AdcStatus::Inconclusive,
        _ => AdcStatus::InvalidArgument,
    }
}

struct Failure(AdcStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(status_for(&e), e.to_string())
    }
}

type CallResult = std::result::Result<AdcStatus, Failure>;

fn guard(f: impl FnOnce() -> CallResult) -> AdcStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(status)) => status,
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            AdcStatus::Panic
        }
    }
}

fn null() -> Failure {
    Failure(AdcStatus::NullPointer, "null pointer argument".into())
}

/// # Safety
/// `s` is null or a NUL-terminated string.
unsafe fn read_str<'a>(s: *const c_char) -> std::result::Result<&'a str, Failure> {
    if s.is_null() {
        return Err(null());
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| Failure(AdcStatus::InvalidArgument, "string is not UTF-8".into()))
}

fn read_json(s: &str) -> std::result::Result<Value, Failure> {
    serde_json::from_str(s).map_err(|e| Failure(AdcStatus::InvalidArgument, format!("invalid JSON: {e}")))
}

/// # Safety
/// `out` is null or writable.
unsafe fn write_string(out: *mut *mut c_char, v: &Value) -> std::result::Result<(), Failure> {
    if out.is_null() {
        return Err(null());
    }
    let s = CString::new(v.to_string()).expect("JSON has no NUL bytes");
    *out = s.into_raw();
    Ok(())
}

/// # Safety
/// `form` is null or a live handle.
unsafe fn form_ref<'a>(form: *const AdcForm) -> std::result::Result<&'a AnyForm, Failure> {
    form.as_ref().map(|f| &f.inner).ok_or_else(null)
}

macro_rules! on_form {
    ($form:expr, $q:ident => $body:expr) => {
        match $form {
            AnyForm::Z($q) => $body,
            AnyForm::FqT($q) => $body,
            AnyForm::Zloc($q) => $body,
        }
    };
}

/// # Safety
/// `out` is writable.
unsafe fn publish(form: AnyForm, out: *mut *mut AdcForm) -> CallResult {
    if out.is_null() {
        return Err(null());
    }
    *out = Box::into_raw(Box::new(AdcForm { inner: form }));
    Ok(AdcStatus::Ok)
}

/// Parse a form descriptor such as
/// `{"ring":"Z","dim":2,"coeffs":[[1,1,"1"],[2,2,"3"]]}`.
///
/// # Safety
/// `json` is a NUL-terminated string and `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn adc_form_from_json(json: *const c_char, out: *mut *mut AdcForm) -> AdcStatus {
    guard(|| {
        let form = AnyForm::from_json(read_str(json)?)?;
        publish(form, out)
    })
}

/// Load a built-in form by name (`sum3`, `q1`, `nebe5`, `fqt-sum2`, ...).
///
/// # Safety
/// `name` is a NUL-terminated string and `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn adc_form_from_fixture(name: *const c_char, out: *mut *mut AdcForm) -> AdcStatus {
    guard(|| {
        let form = load_fixture(read_str(name)?)?;
        publish(form, out)
    })
}

/// # Safety
/// `form` is null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn adc_form_free(form: *mut AdcForm) {
    if !form.is_null() {
        drop(Box::from_raw(form));
    }
}

/// # Safety
/// `form` is a live handle and `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn adc_form_dim(form: *const AdcForm, out: *mut usize) -> AdcStatus {
    guard(|| {
        let f = form_ref(form)?;
        if out.is_null() {
            return Err(null());
        }
        *out = f.dim();
        Ok(AdcStatus::Ok)
    })
}

/// The form's descriptor as JSON.
///
/// # Safety
/// `form` is a live handle and `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn adc_form_to_json(form: *const AdcForm, out: *mut *mut c_char) -> AdcStatus {
    guard(|| {
        let f = form_ref(form)?;
        write_string(out, &read_json(&f.to_json())?)?;
        Ok(AdcStatus::Ok)
    })
}

fn evaluate_json<R: ElemCodec>(q: &QuadraticForm<R>, x: &Value) -> adcforms::Result<Value> {
    let r = q.ring();
    let x = r.frac_vec_from_json(x)?;
    Ok(r.frac_to_json(&q.evaluate(&x)?))
}

/// `q(x)` for a JSON array `x` of fraction-field elements.
///
/// # Safety
/// `form` is a live handle, `x_json` a NUL-terminated string, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn adc_form_evaluate(form: *const AdcForm, x_json: *const c_char, out: *mut *mut c_char) -> AdcStatus {
    guard(|| {
        let f = form_ref(form)?;
        let x = read_json(read_str(x_json)?)?;
        let v = on_form!(f, q => evaluate_json(q, &x))?;
        write_string(out, &v)?;
        Ok(AdcStatus::Ok)
    })
}

fn represents_json<R: SearchRing>(q: &QuadraticForm<R>, d: &Value, box_bound: u32) -> adcforms::Result<(AdcStatus, Value)> {
    let r = q.ring();
    let d = r.elem_from_json(d)?;
    Ok(match represents_integrally(q, &d, box_bound, &Limits::from_env())? {
        Representation::Yes(x) => (AdcStatus::Ok, json!({"represents": "yes", "x": r.vec_to_json(&x)})),
        Representation::No => (AdcStatus::Negative, json!({"represents": "no"})),
        Representation::NoUpTo(b) => (AdcStatus::Inconclusive, json!({"represents": "no_up_to", "bound": b})),
    })
}

/// Integral representation of `d` (a JSON ring element). Returns `Ok` with
/// the solution, `Negative` when none exists, `Inconclusive` when the search
/// within `box_bound` was not exhaustive.
///
/// # Safety
/// `form` is a live handle, `d_json` a NUL-terminated string, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn adc_form_represents(
    form: *const AdcForm,
    d_json: *const c_char,
    box_bound: u32,
    out: *mut *mut c_char,
) -> AdcStatus {
    guard(|| {
        let f = form_ref(form)?;
        let d = read_json(read_str(d_json)?)?;
        let (status, v) = on_form!(f, q => represents_json(q, &d, box_bound))?;
        write_string(out, &v)?;
        Ok(status)
    })
}

fn descend_json<R: SearchRing>(q: &QuadraticForm<R>, d: &Value, t_bound: u32) -> adcforms::Result<(AdcStatus, Value)> {
    let r = q.ring();
    let d = r.elem_from_json(d)?;
    let limits = Limits::from_env();
    let w = match witness_search(q, &d, t_bound, &limits)? {
        WitnessSearch::Found(w) => w,
        WitnessSearch::NotFoundUpTo(b) => return Ok((AdcStatus::Inconclusive, json!({"not_found_up_to": b}))),
    };
    let trace = adc_descend(q, &w, &limits)?;
    let status = match trace.outcome {
        Outcome::Success(_) => AdcStatus::Ok,
        Outcome::Stalled(_) => AdcStatus::Inconclusive,
    };
    Ok((status, trace.to_json(r)))
}

/// Witness search for `d` up to `t_bound`, then descent; writes the trace.
///
/// # Safety
/// `form` is a live handle, `d_json` a NUL-terminated string, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn adc_form_descend(
    form: *const AdcForm,
    d_json: *const c_char,
    t_bound: u32,
    out: *mut *mut c_char,
) -> AdcStatus {
    guard(|| {
        let f = form_ref(form)?;
        let d = read_json(read_str(d_json)?)?;
        let (status, v) = on_form!(f, q => descend_json(q, &d, t_bound))?;
        write_string(out, &v)?;
        Ok(status)
    })
}

/// Euclidean classification as JSON `{"class": ..., "reason": ...}`.
///
/// # Safety
/// `form` is a live handle and `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn adc_form_is_euclidean(form: *const AdcForm, out: *mut *mut c_char) -> AdcStatus {
    guard(|| {
        let f = form_ref(form)?;
        let v = is_euclidean(f, &Limits::from_env())?;
        write_string(out, &v.to_json())?;
        Ok(AdcStatus::Ok)
    })
}

/// Whether the decimal integer `n` is a sum of three squares.
///
/// # Safety
/// `n` is a NUL-terminated string and `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn adc_three_squares_predicate(n: *const c_char, out: *mut bool) -> AdcStatus {
    guard(|| {
        let n = parse_bigint(read_str(n)?)?;
        if out.is_null() {
            return Err(null());
        }
        *out = three_squares_predicate(&n);
        Ok(AdcStatus::Ok)
    })
}

/// Three squares summing to the decimal integer `n`, as a JSON array of
/// decimal strings. `Negative` (with the obstruction as the message) when
/// there are none.
///
/// # Safety
/// `n` is a NUL-terminated string and `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn adc_sum_three_squares(n: *const c_char, t_bound: u32, out: *mut *mut c_char) -> AdcStatus {
    guard(|| {
        let n = parse_bigint(read_str(n)?)?;
        match sum_three_squares(&n, t_bound, &Limits::from_env())? {
            ThreeSquares::Found { y, .. } => {
                let v = json!(y.iter().map(|a| a.to_string()).collect::<Vec<_>>());
                write_string(out, &v)?;
                Ok(AdcStatus::Ok)
            }
            ThreeSquares::Impossible(ob) => Err(Failure(AdcStatus::Negative, ob.to_string())),
        }
    })
}

/// # Safety
/// `s` is null or a string returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn adc_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message for the last failed call on this thread, or null. The pointer is
/// valid until the next call into the library on the same thread.
#[no_mangle]
pub extern "C" fn adc_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}
