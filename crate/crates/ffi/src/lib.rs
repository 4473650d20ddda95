//! C interface to `orekit`.
//!
//! Objects are opaque handles released with their `_free` function. Strings
//! returned through out-parameters are owned by the caller and released with
//! [`orekit_string_free`]. Every fallible call returns an [`OrekitStatus`];
//! on failure [`orekit_last_error`] describes what went wrong.

use std::cell::RefCell;
use std::ffi::{c_char, c_int, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use orekit::counting::count_factorizations;
use orekit::error::Error;
use orekit::factorize::is_irreducible_skew;
use orekit::fields::FieldTower;
use orekit::parse::{parse_skew, tower_from_text};
use orekit::phimod::{is_similar, optimal_bound, psi};
use orekit::skewpoly::SkewPoly;
use orekit::splitting::splitting_degree;

/// Status codes. Values 2 to 4 match the command-line exit codes.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OrekitStatus {
    Ok = 0,
    /// Null pointer or invalid UTF-8 argument.
    InvalidArgument = 1,
    ParseError = 2,
    DomainError = 3,
    BudgetExceeded = 4,
    /// A Rust panic was caught at the boundary.
    Internal = 5,
}

/// A field tower `F_p ⊂ F_q ⊂ F_{q^r}`.
pub struct OrekitTower {
    inner: FieldTower,
}

/// A skew polynomial over the top field of a tower.
pub struct OrekitPoly {
    inner: SkewPoly,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

struct Fail(OrekitStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        let status = match e.exit_code() {
            2 => OrekitStatus::ParseError,
            4 => OrekitStatus::BudgetExceeded,
            _ => OrekitStatus::DomainError,
        };
        Fail(status, e.to_string())
    }
}

fn invalid(msg: &str) -> Fail {
    Fail(OrekitStatus::InvalidArgument, msg.to_string())
}

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> OrekitStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => OrekitStatus::Ok,
        Ok(Err(Fail(status, msg))) => {
            set_error(&msg);
            status
        }
        Err(_) => {
            set_error("internal error");
            OrekitStatus::Internal
        }
    }
}

unsafe fn str_arg<'a>(s: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if s.is_null() {
        return Err(invalid(&format!("{what} is null")));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| invalid(&format!("{what} is not UTF-8")))
}

unsafe fn opt_str_arg<'a>(s: *const c_char, what: &str) -> Result<Option<&'a str>, Fail> {
    if s.is_null() {
        Ok(None)
    } else {
        str_arg(s, what).map(Some)
    }
}

unsafe fn handle<'a, T>(h: *const T, what: &str) -> Result<&'a T, Fail> {
    h.as_ref().ok_or_else(|| invalid(&format!("{what} is null")))
}

unsafe fn write_out<T>(out: *mut T, v: T) -> Result<(), Fail> {
    if out.is_null() {
        return Err(invalid("output pointer is null"));
    }
    out.write(v);
    Ok(())
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), Fail> {
    let c = CString::new(s).map_err(|_| invalid("string contains NUL"))?;
    write_out(out, c.into_raw())
}

/// Message for the most recent failure on this thread. The pointer stays
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn orekit_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn orekit_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Builds a tower. `f` and `h` are moduli in `Y` and may be null to use the
/// defaults.
///
/// # Safety
/// String arguments must be null or NUL-terminated; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn orekit_tower_new(
    p: u64,
    a: usize,
    r: usize,
    f: *const c_char,
    h: *const c_char,
    out: *mut *mut OrekitTower,
) -> OrekitStatus {
    guard(|| {
        let f = opt_str_arg(f, "f")?;
        let h = opt_str_arg(h, "h")?;
        let inner = tower_from_text(p, a, r, f, h)?;
        write_out(out, Box::into_raw(Box::new(OrekitTower { inner })))
    })
}

/// # Safety
/// `t` must be null or a live handle from [`orekit_tower_new`].
#[no_mangle]
pub unsafe extern "C" fn orekit_tower_free(t: *mut OrekitTower) {
    if !t.is_null() {
        drop(Box::from_raw(t));
    }
}

/// Tower as JSON `{p, a, r, f, h}`.
///
/// # Safety
/// `t` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn orekit_tower_to_json(t: *const OrekitTower, out: *mut *mut c_char) -> OrekitStatus {
    guard(|| {
        let t = handle(t, "tower")?;
        let json = serde_json::to_string(&t.inner.spec()).map_err(|e| invalid(&e.to_string()))?;
        write_string(out, json)
    })
}

/// Parses a polynomial such as `X^3 + w*X^2 - w^2` over the tower.
///
/// # Safety
/// `t` must be a live handle, `text` NUL-terminated, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn orekit_poly_parse(
    t: *const OrekitTower,
    text: *const c_char,
    out: *mut *mut OrekitPoly,
) -> OrekitStatus {
    guard(|| {
        let t = handle(t, "tower")?;
        let text = str_arg(text, "text")?;
        let inner = parse_skew(text, &t.inner)?;
        write_out(out, Box::into_raw(Box::new(OrekitPoly { inner })))
    })
}

/// # Safety
/// `p` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn orekit_poly_free(p: *mut OrekitPoly) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// # Safety
/// `p` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn orekit_poly_to_string(p: *const OrekitPoly, out: *mut *mut c_char) -> OrekitStatus {
    guard(|| write_string(out, handle(p, "poly")?.inner.to_string()))
}

/// Degree, or -1 for the zero polynomial and for a null handle.
///
/// # Safety
/// `p` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn orekit_poly_degree(p: *const OrekitPoly) -> i64 {
    p.as_ref()
        .and_then(|p| p.inner.degree())
        .map_or(-1, |d| d as i64)
}

/// Product `a·b`.
///
/// # Safety
/// Both handles must be live and share a tower; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn orekit_poly_mul(
    a: *const OrekitPoly,
    b: *const OrekitPoly,
    out: *mut *mut OrekitPoly,
) -> OrekitStatus {
    guard(|| {
        let inner = handle(a, "a")?.inner.try_mul(&handle(b, "b")?.inner)?;
        write_out(out, Box::into_raw(Box::new(OrekitPoly { inner })))
    })
}

/// `Ψ(P)` printed as a polynomial in `Y` over `F_q`.
///
/// # Safety
/// `p` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn orekit_psi(p: *const OrekitPoly, out: *mut *mut c_char) -> OrekitStatus {
    guard(|| write_string(out, psi(&handle(p, "poly")?.inner)?.to_string()))
}

/// Optimal central bound of `P`.
///
/// # Safety
/// `p` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn orekit_optimal_bound(p: *const OrekitPoly, out: *mut *mut OrekitPoly) -> OrekitStatus {
    guard(|| {
        let inner = optimal_bound(&handle(p, "poly")?.inner)?;
        write_out(out, Box::into_raw(Box::new(OrekitPoly { inner })))
    })
}

/// Number of factorizations into monic irreducibles, in decimal.
///
/// # Safety
/// `p` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn orekit_count_factorizations(p: *const OrekitPoly, out: *mut *mut c_char) -> OrekitStatus {
    guard(|| write_string(out, count_factorizations(&handle(p, "poly")?.inner)?.to_string()))
}

/// Degree of the splitting field of `L_P` over `F_{q^r}`, in decimal.
///
/// # Safety
/// `p` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn orekit_splitting_degree(p: *const OrekitPoly, out: *mut *mut c_char) -> OrekitStatus {
    guard(|| write_string(out, splitting_degree(&handle(p, "poly")?.inner)?.to_string()))
}

/// # Safety
/// `p` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn orekit_is_irreducible(p: *const OrekitPoly, out: *mut bool) -> OrekitStatus {
    guard(|| write_out(out, is_irreducible_skew(&handle(p, "poly")?.inner)?))
}

/// # Safety
/// Both handles must be live; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn orekit_is_similar(
    a: *const OrekitPoly,
    b: *const OrekitPoly,
    out: *mut bool,
) -> OrekitStatus {
    guard(|| write_out(out, is_similar(&handle(a, "a")?.inner, &handle(b, "b")?.inner)?))
}

/// Runs the command-line front end on `argv` (without the program name).
/// Returns the exit code; `out` and `err`, when not null, receive the
/// captured output.
///
/// # Safety
/// `argv` must hold `argc` NUL-terminated strings; `out` and `err` must be
/// null or writable.
#[no_mangle]
pub unsafe extern "C" fn orekit_cli_run(
    argc: c_int,
    argv: *const *const c_char,
    out: *mut *mut c_char,
    err: *mut *mut c_char,
) -> c_int {
    let mut args = vec!["orekit".to_string()];
    for i in 0..argc.max(0) as usize {
        match str_arg(*argv.add(i), "argument") {
            Ok(s) => args.push(s.to_string()),
            Err(Fail(status, msg)) => {
                set_error(&msg);
                return status as c_int;
            }
        }
    }
    let Ok((code, stdout, stderr)) = catch_unwind(|| orekit::cli::run(args)) else {
        set_error("internal error");
        return OrekitStatus::Internal as c_int;
    };
    for (dst, text) in [(out, stdout), (err, stderr)] {
        if !dst.is_null() {
            *dst = CString::new(text).map_or(ptr::null_mut(), CString::into_raw);
        }
    }
    code
}
