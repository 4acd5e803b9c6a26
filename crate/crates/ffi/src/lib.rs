//! C interface. Elements cross the boundary as opaque handles or as JSON
//! strings in the same format the `decat` binary prints.
//!
//! Every function returns a [`DecatStatus`]; on failure the message is kept in
//! a thread-local slot readable through [`decat_last_error`]. Strings handed
//! out by the library are released with [`decat_string_free`], handles with
//! the matching `*_free` function.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use decat::hochschild::{self as hc, FinLinCat};
use decat::suites::{self, Bounds};
use decat::symfunc::SymElement;
use decat::tracecat::{self, TraceElement};
use decat::{currentalg, Error};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DecatStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    /// weights, shapes or bounds that do not fit together
    Domain = 4,
    NonIntegral = 5,
    SizeGuard = 6,
    UnknownSuite = 7,
    Panic = 8,
}

impl From<&Error> for DecatStatus {
    fn from(e: &Error) -> Self {
        match e {
            Error::Parse(_) | Error::Json(_) => DecatStatus::Parse,
            Error::NonIntegral { .. } => DecatStatus::NonIntegral,
            Error::SizeGuard { .. } => DecatStatus::SizeGuard,
            Error::UnknownSuite(_) => DecatStatus::UnknownSuite,
            _ => DecatStatus::Domain,
        }
    }
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(c));
}

/// Runs `f`, turning errors and panics into status codes.
fn guard(f: impl FnOnce() -> Result<(), (DecatStatus, String)>) -> DecatStatus {
    LAST_ERROR.with(|slot| *slot.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => DecatStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            DecatStatus::Panic
        }
    }
}

fn lib<T>(r: decat::Result<T>) -> Result<T, (DecatStatus, String)> {
    r.map_err(|e| (DecatStatus::from(&e), e.to_string()))
}

unsafe fn read_str<'a>(p: *const c_char) -> Result<&'a str, (DecatStatus, String)> {
    if p.is_null() {
        return Err((DecatStatus::NullPointer, "null string argument".into()));
    }
    CStr::from_ptr(p).to_str().map_err(|_| (DecatStatus::InvalidUtf8, "argument is not UTF-8".into()))
}

unsafe fn read_json(p: *const c_char) -> Result<serde_json::Value, (DecatStatus, String)> {
    let s = read_str(p)?;
    serde_json::from_str(s).map_err(|e| (DecatStatus::Parse, e.to_string()))
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), (DecatStatus, String)> {
    if out.is_null() {
        return Err((DecatStatus::NullPointer, "null output pointer".into()));
    }
    *out = CString::new(s).expect("JSON has no nul").into_raw();
    Ok(())
}

unsafe fn write_handle<T>(out: *mut *mut T, value: T) -> Result<(), (DecatStatus, String)> {
    if out.is_null() {
        return Err((DecatStatus::NullPointer, "null output pointer".into()));
    }
    *out = Box::into_raw(Box::new(value));
    Ok(())
}

unsafe fn borrow<'a, T>(p: *const T) -> Result<&'a T, (DecatStatus, String)> {
    p.as_ref().ok_or((DecatStatus::NullPointer, "null handle".into()))
}

/// Opaque symmetric function.
pub struct DecatSym(SymElement);

/// Opaque morphism of the trace category.
pub struct DecatTrace(TraceElement);

/// Opaque finite linear category.
pub struct DecatCategory(FinLinCat);

/// Message of the last failure on this thread, or null. Valid until the next call.
#[no_mangle]
pub extern "C" fn decat_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// # Safety
/// `s` must be null or a string returned by this library.
#[no_mangle]
pub unsafe extern "C" fn decat_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses `[{"partition": [..], "coeff": ".."}, ...]`.
///
/// # Safety
/// `json` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn decat_sym_from_json(json: *const c_char, out: *mut *mut DecatSym) -> DecatStatus {
    guard(|| {
        let x = lib(SymElement::from_json(&read_json(json)?))?;
        write_handle(out, DecatSym(x))
    })
}

/// # Safety
/// Handles must come from this library; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn decat_sym_mul(x: *const DecatSym, y: *const DecatSym, out: *mut *mut DecatSym) -> DecatStatus {
    guard(|| {
        let z = &borrow(x)?.0 * &borrow(y)?.0;
        write_handle(out, DecatSym(z))
    })
}

/// # Safety
/// `x` must come from this library; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn decat_sym_to_json(x: *const DecatSym, out: *mut *mut c_char) -> DecatStatus {
    guard(|| write_string(out, borrow(x)?.0.to_json().to_string()))
}

/// # Safety
/// `x` must be null or a handle from this library, not freed before.
#[no_mangle]
pub unsafe extern "C" fn decat_sym_free(x: *mut DecatSym) {
    if !x.is_null() {
        drop(Box::from_raw(x));
    }
}

/// Parses `{"source", "target", "terms": [{b, mu, tau, a, lambda, coeff}]}`.
///
/// # Safety
/// `json` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn decat_trace_from_json(json: *const c_char, out: *mut *mut DecatTrace) -> DecatStatus {
    guard(|| {
        let x = lib(TraceElement::from_json(&read_json(json)?))?;
        write_handle(out, DecatTrace(x))
    })
}

/// `x ∘ y`, with `y` applied first.
///
/// # Safety
/// Handles must come from this library; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn decat_trace_compose(
    x: *const DecatTrace,
    y: *const DecatTrace,
    out: *mut *mut DecatTrace,
) -> DecatStatus {
    guard(|| {
        let z = lib(tracecat::compose(&borrow(x)?.0, &borrow(y)?.0))?;
        write_handle(out, DecatTrace(z))
    })
}

/// # Safety
/// `x` must come from this library; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn decat_trace_to_json(x: *const DecatTrace, out: *mut *mut c_char) -> DecatStatus {
    guard(|| write_string(out, borrow(x)?.0.to_json().to_string()))
}

/// Image in the current algebra, as Garland-basis JSON.
///
/// # Safety
/// `x` must come from this library; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn decat_trace_to_current_json(x: *const DecatTrace, out: *mut *mut c_char) -> DecatStatus {
    guard(|| {
        let y = lib(tracecat::to_current(&borrow(x)?.0))?;
        write_string(out, y.to_json().to_string())
    })
}

/// # Safety
/// `x` must be null or a handle from this library, not freed before.
#[no_mangle]
pub unsafe extern "C" fn decat_trace_free(x: *mut DecatTrace) {
    if !x.is_null() {
        drop(Box::from_raw(x));
    }
}

/// Garland normal form of a word such as `E0 F1^(2)` acting on `1_n`.
///
/// # Safety
/// `word` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn decat_current_normal_form(word: *const c_char, n: i64, out: *mut *mut c_char) -> DecatStatus {
    guard(|| {
        let w = lib(currentalg::parse_word(read_str(word)?))?;
        let x = lib(currentalg::normal_form(&w, n))?;
        write_string(out, x.to_json().to_string())
    })
}

/// # Safety
/// `json` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn decat_category_from_json(json: *const c_char, out: *mut *mut DecatCategory) -> DecatStatus {
    guard(|| {
        let c = lib(FinLinCat::from_json_str(read_str(json)?))?;
        write_handle(out, DecatCategory(c))
    })
}

/// `HH_0 .. HH_{max_degree - 1}` as a JSON array of `{free, torsion}`.
///
/// # Safety
/// `c` must come from this library; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn decat_category_hh_json(
    c: *const DecatCategory,
    max_degree: usize,
    out: *mut *mut c_char,
) -> DecatStatus {
    guard(|| {
        let groups = lib(hc::hh(&borrow(c)?.0, max_degree))?;
        write_string(out, serde_json::to_string(&groups).expect("serializable"))
    })
}

/// # Safety
/// `c` must be null or a handle from this library, not freed before.
#[no_mangle]
pub unsafe extern "C" fn decat_category_free(c: *mut DecatCategory) {
    if !c.is_null() {
        drop(Box::from_raw(c));
    }
}

/// Runs a verification suite. `bounds` is null or a JSON object of integer
/// overrides. `passed` receives 1 or 0, `report` the JSON report.
///
/// # Safety
/// `name` must be a nul-terminated string, `bounds` null or one, and the
/// output pointers valid.
#[no_mangle]
pub unsafe extern "C" fn decat_run_suite(
    name: *const c_char,
    bounds: *const c_char,
    passed: *mut i32,
    report: *mut *mut c_char,
) -> DecatStatus {
    guard(|| {
        let name = read_str(name)?;
        let mut b = Bounds::new();
        if !bounds.is_null() {
            let v = read_json(bounds)?;
            let obj = v.as_object().ok_or((DecatStatus::Parse, "bounds must be a JSON object".into()))?;
            for (k, x) in obj {
                let x = x.as_i64().ok_or((DecatStatus::Parse, format!("bound {k} is not an integer")))?;
                b = b.set(k, x);
            }
        }
        let r = lib(suites::run_suite(name, &b))?;
        if passed.is_null() {
            return Err((DecatStatus::NullPointer, "null output pointer".into()));
        }
        *passed = i32::from(r.passed());
        write_string(report, r.to_json().to_string())
    })
}
