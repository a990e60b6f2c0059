//! C ABI for torus specs and vertex-type censuses.
//!
//! Every call returns a [`ToralStatus`]. On failure the message is kept per
//! thread and can be read with [`toral_last_error_message`]. Handles are
//! opaque; release them with the matching `_free` function. Strings handed
//! out by the library are released with [`toral_string_free`].
//!
//! Rationals cross the boundary as `(numerator, denominator)` pairs of
//! `int64_t`, in lowest terms with a positive denominator.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use toral::census::{run_census, CensusInput, CensusReport};
use toral::rational::Rational;
use toral::torus::{is_single_facet_closure, torus_radius, TorusSpec};
use toral::Error;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ToralStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    Config = 4,
    Contract = 5,
    NotApplicable = 6,
    CrossValidation = 7,
    Internal = 8,
    Panic = 9,
}

/// A parsed torus spec.
pub struct ToralTorus {
    spec: TorusSpec,
}

/// The result of a census run.
pub struct ToralCensus {
    report: CensusReport,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

struct Failure(ToralStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::Config(_) => ToralStatus::Config,
            Error::Contract(_) => ToralStatus::Contract,
            Error::Parse(_) => ToralStatus::Parse,
            Error::NotApplicable(_) => ToralStatus::NotApplicable,
            Error::CrossValidation(_) => ToralStatus::CrossValidation,
            Error::Internal(_) => ToralStatus::Internal,
        };
        Failure(status, e.to_string())
    }
}

fn set_last_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("NUL bytes removed");
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(c));
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> ToralStatus {
    LAST_ERROR.with(|slot| *slot.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => ToralStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_last_error(msg);
            status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            set_last_error(format!("panic: {msg}"));
            ToralStatus::Panic
        }
    }
}

fn null(what: &str) -> Failure {
    Failure(ToralStatus::NullPointer, format!("{what} is null"))
}

unsafe fn deref<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    unsafe { p.as_ref() }.ok_or_else(|| null(what))
}

unsafe fn write<T>(out: *mut T, value: T, what: &str) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null(what));
    }
    unsafe { out.write(value) };
    Ok(())
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null(what));
    }
    unsafe { CStr::from_ptr(p) }
        .to_str()
        .map_err(|e| Failure(ToralStatus::InvalidUtf8, format!("{what}: {e}")))
}

fn rational(num: i64, den: i64) -> Result<Rational, Failure> {
    if den == 0 {
        return Err(Failure(ToralStatus::Contract, "denominator is zero".into()));
    }
    Ok(Rational::new(num, den))
}

fn out_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).expect("NUL bytes removed").into_raw()
}

/// The message of the last failed call on this thread, or null. The pointer
/// stays valid until the next call into the library on the same thread.
#[no_mangle]
pub extern "C" fn toral_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Releases a string returned by the library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn toral_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(unsafe { CString::from_raw(s) });
    }
}

/// Parses a spec such as `"u½ r^3 u0"` or `"r2"`.
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn toral_torus_parse(text: *const c_char, out: *mut *mut ToralTorus) -> ToralStatus {
    guard(|| {
        let text = unsafe { read_str(text, "text") }?;
        let spec: TorusSpec = text.parse()?;
        unsafe { write(out, Box::into_raw(Box::new(ToralTorus { spec })), "out") }
    })
}

/// Builds the rank-`n` torus with `m` unramified factors at ½, `l` ramified
/// factors and `n - m - l` unramified factors at 0.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn toral_torus_from_counts(m: usize, l: usize, n: usize, out: *mut *mut ToralTorus) -> ToralStatus {
    guard(|| {
        let spec = TorusSpec::from_counts(m, l, n)?;
        unsafe { write(out, Box::into_raw(Box::new(ToralTorus { spec })), "out") }
    })
}

/// # Safety
/// `t` must come from this library and not have been freed. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn toral_torus_free(t: *mut ToralTorus) {
    if !t.is_null() {
        drop(unsafe { Box::from_raw(t) });
    }
}

/// `m` and `l` as in [`toral_torus_from_counts`]; `n` is the rank.
///
/// # Safety
/// `t` must be a live handle; the outputs must be writable.
#[no_mangle]
pub unsafe extern "C" fn toral_torus_counts(
    t: *const ToralTorus,
    m: *mut usize,
    l: *mut usize,
    n: *mut usize,
) -> ToralStatus {
    guard(|| {
        let spec = &unsafe { deref(t, "torus") }?.spec;
        unsafe {
            write(m, spec.m(), "m")?;
            write(l, spec.l(), "l")?;
            write(n, spec.n(), "n")
        }
    })
}

/// Canonical text form, e.g. `"u½ r^3 u0"`. Free with [`toral_string_free`].
///
/// # Safety
/// `t` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn toral_torus_to_string(t: *const ToralTorus, out: *mut *mut c_char) -> ToralStatus {
    guard(|| {
        let spec = &unsafe { deref(t, "torus") }?.spec;
        unsafe { write(out, out_string(spec.to_string()), "out") }
    })
}

/// Simplicial radius of the fixed region about the attachment point.
///
/// # Safety
/// `t` must be a live handle; the outputs must be writable.
#[no_mangle]
pub unsafe extern "C" fn toral_torus_radius(t: *const ToralTorus, num: *mut i64, den: *mut i64) -> ToralStatus {
    guard(|| {
        let r = torus_radius(&unsafe { deref(t, "torus") }?.spec);
        unsafe {
            write(num, *r.numer(), "num")?;
            write(den, *r.denom(), "den")
        }
    })
}

/// Whether the fixed region is the closure of a single facet.
///
/// # Safety
/// `t` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn toral_torus_single_facet(t: *const ToralTorus, out: *mut bool) -> ToralStatus {
    guard(|| {
        let v = is_single_facet_closure(&unsafe { deref(t, "torus") }?.spec);
        unsafe { write(out, v, "out") }
    })
}

/// Runs the census at depth `s0 = s0_num / s0_den`.
///
/// # Safety
/// `t` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn toral_census_run(
    t: *const ToralTorus,
    s0_num: i64,
    s0_den: i64,
    out: *mut *mut ToralCensus,
) -> ToralStatus {
    guard(|| {
        let spec = unsafe { deref(t, "torus") }?.spec.clone();
        let input = CensusInput::new(spec, rational(s0_num, s0_den)?)?;
        let report = run_census(&input)?;
        unsafe { write(out, Box::into_raw(Box::new(ToralCensus { report })), "out") }
    })
}

/// # Safety
/// `c` must come from this library and not have been freed. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn toral_census_free(c: *mut ToralCensus) {
    if !c.is_null() {
        drop(unsafe { Box::from_raw(c) });
    }
}

/// Number of vertex types, `n + 1` for `Sp_2n`.
///
/// # Safety
/// `c` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn toral_census_type_count(c: *const ToralCensus, out: *mut usize) -> ToralStatus {
    guard(|| {
        let n = unsafe { deref(c, "census") }?.report.counts.len();
        unsafe { write(out, n, "out") }
    })
}

/// Vertices of the given type in the fixed region.
///
/// # Safety
/// `c` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn toral_census_count(c: *const ToralCensus, vertex_type: usize, out: *mut usize) -> ToralStatus {
    guard(|| {
        let report = &unsafe { deref(c, "census") }?.report;
        let Some(&k) = report.counts.get(vertex_type) else {
            return Err(Failure(
                ToralStatus::Contract,
                format!("vertex type {vertex_type} out of range 0..{}", report.counts.len()),
            ));
        };
        unsafe { write(out, k, "out") }
    })
}

/// # Safety
/// `c` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn toral_census_total(c: *const ToralCensus, out: *mut usize) -> ToralStatus {
    guard(|| {
        let total = unsafe { deref(c, "census") }?.report.total();
        unsafe { write(out, total, "out") }
    })
}

/// Whether `s0` exceeds the fixed-region radius.
///
/// # Safety
/// `c` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn toral_census_applicable(c: *const ToralCensus, out: *mut bool) -> ToralStatus {
    guard(|| {
        let v = unsafe { deref(c, "census") }?.report.applicable;
        unsafe { write(out, v, "out") }
    })
}

/// # Safety
/// `c` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn toral_census_strong_unicity(c: *const ToralCensus, out: *mut bool) -> ToralStatus {
    guard(|| {
        let v = unsafe { deref(c, "census") }?.report.strong_unicity;
        unsafe { write(out, v, "out") }
    })
}

/// The report as pretty JSON. Free with [`toral_string_free`].
///
/// # Safety
/// `c` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn toral_census_to_json(c: *const ToralCensus, out: *mut *mut c_char) -> ToralStatus {
    guard(|| {
        let json = unsafe { deref(c, "census") }?.report.to_json();
        unsafe { write(out, out_string(json), "out") }
    })
}
