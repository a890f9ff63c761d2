//! C ABI over the `lghap` kernel.
//!
//! Families and polynomials are opaque heap handles owned by the caller and
//! released with the matching `*_free`. Every fallible call returns an
//! [`LghStatus`]; on failure a message is kept per thread and can be read
//! with [`lgh_last_error_message`]. Strings handed out by the library must be
//! released with [`lgh_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use lghap::algebra::{format_rational, parse_rational};
use lghap::cli::{expand_with, Method};
use lghap::{AppellFamily, Error, LghParams, Poly3};

/// Result codes. Zero is success.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LghStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    UnknownFamily = 4,
    InvalidParameter = 5,
    NormalizationMismatch = 6,
    DegenerateFamily = 7,
    Unsupported = 8,
    Internal = 9,
    Panic = 10,
}

/// Construction routes accepted by [`lgh_expand`].
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LghMethod {
    Series = 0,
    Binomial = 1,
    GeneratingFunction = 2,
    Determinant = 3,
    Operator = 4,
}

/// Opaque Appell family descriptor.
pub struct LghFamily(AppellFamily);

/// Opaque exact polynomial in x, y, z.
pub struct LghPoly(Poly3);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).expect("interior nuls removed");
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(c));
}

fn clear_last_error() {
    LAST_ERROR.with(|slot| *slot.borrow_mut() = None);
}

fn status_of(err: &Error) -> LghStatus {
    match err {
        Error::Parse(_) => LghStatus::Parse,
        Error::UnknownFamily(_) => LghStatus::UnknownFamily,
        Error::InvalidParameter(_) | Error::ConstraintViolation(_) | Error::InvalidGrid(_) => {
            LghStatus::InvalidParameter
        }
        Error::NormalizationMismatch(_) => LghStatus::NormalizationMismatch,
        Error::DegenerateFamily(_) => LghStatus::DegenerateFamily,
        Error::UnsupportedCase(_) => LghStatus::Unsupported,
        Error::NonZeroConstantTerm
        | Error::ZeroConstantTerm
        | Error::IndexBeyondOrder { .. }
        | Error::ShapeViolation(_)
        | Error::DimensionTooLarge { .. } => LghStatus::Internal,
    }
}

struct Failure(LghStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(status_of(&e), e.to_string())
    }
}

fn guard(body: impl FnOnce() -> Result<(), Failure>) -> LghStatus {
    clear_last_error();
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => LghStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_last_error(&msg);
            status
        }
        Err(_) => {
            set_last_error("panic inside lghap");
            LghStatus::Panic
        }
    }
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure(LghStatus::NullArgument, format!("{what} is null")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure(LghStatus::InvalidUtf8, format!("{what} is not valid UTF-8")))
}

unsafe fn deref<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| Failure(LghStatus::NullArgument, format!("{what} is null")))
}

fn check_out<T>(out: *mut T) -> Result<(), Failure> {
    if out.is_null() {
        Err(Failure(LghStatus::NullArgument, "output pointer is null".into()))
    } else {
        Ok(())
    }
}

fn into_c_string(s: String) -> *mut c_char {
    CString::new(s).expect("library strings contain no nul").into_raw()
}

/// Parses a family spec such as `bernoulli` or `apostol-euler:alpha=2,lambda=1/2`.
///
/// # Safety
/// `spec` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lgh_family_new(spec: *const c_char, out: *mut *mut LghFamily) -> LghStatus {
    guard(|| {
        check_out(out)?;
        let family = lghap::make_family(read_str(spec, "spec")?)?;
        *out = Box::into_raw(Box::new(LghFamily(family)));
        Ok(())
    })
}

/// # Safety
/// `family` must come from [`lgh_family_new`] and not be used afterwards. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn lgh_family_free(family: *mut LghFamily) {
    if !family.is_null() {
        drop(Box::from_raw(family));
    }
}

/// Canonical name of the family, e.g. `apostol-euler:alpha=2,lambda=1/2`.
///
/// # Safety
/// `family` must be a live handle; `out` must be writable. Free the string with [`lgh_string_free`].
#[no_mangle]
pub unsafe extern "C" fn lgh_family_name(family: *const LghFamily, out: *mut *mut c_char) -> LghStatus {
    guard(|| {
        check_out(out)?;
        let f = deref(family, "family")?;
        *out = into_c_string(f.0.name().to_string());
        Ok(())
    })
}

/// Builds the degree-`n` polynomial for indices (m, r).
///
/// # Safety
/// `family` must be a live handle; `out` must be writable. Free the result with [`lgh_poly_free`].
#[no_mangle]
pub unsafe extern "C" fn lgh_expand(
    family: *const LghFamily,
    m: u32,
    r: u32,
    n: u32,
    method: LghMethod,
    out: *mut *mut LghPoly,
) -> LghStatus {
    guard(|| {
        check_out(out)?;
        let f = deref(family, "family")?;
        let p = LghParams::new(m, r)?;
        let method = match method {
            LghMethod::Series => Method::Series,
            LghMethod::Binomial => Method::Binomial,
            LghMethod::GeneratingFunction => Method::Gf,
            LghMethod::Determinant => Method::Det,
            LghMethod::Operator => Method::Op,
        };
        let poly = expand_with(&f.0, p, n as usize, method)?;
        *out = Box::into_raw(Box::new(LghPoly(poly)));
        Ok(())
    })
}

/// # Safety
/// `poly` must come from this library and not be used afterwards. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn lgh_poly_free(poly: *mut LghPoly) {
    if !poly.is_null() {
        drop(Box::from_raw(poly));
    }
}

/// Canonical text form, e.g. `y^4 - 2*y^3 + y^2 + 24*x*y - 12*x - 1/30`.
///
/// # Safety
/// `poly` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lgh_poly_to_string(poly: *const LghPoly, out: *mut *mut c_char) -> LghStatus {
    guard(|| {
        check_out(out)?;
        *out = into_c_string(deref(poly, "poly")?.0.to_string());
        Ok(())
    })
}

/// Number of nonzero terms.
///
/// # Safety
/// `poly` must be a live handle or null (which yields 0).
#[no_mangle]
pub unsafe extern "C" fn lgh_poly_term_count(poly: *const LghPoly) -> usize {
    poly.as_ref().map_or(0, |p| p.0.len())
}

/// Exact value at (x, y, z), each given as `p/q` or an integer; result written as `p/q`.
///
/// # Safety
/// All string arguments must be nul-terminated; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lgh_poly_eval(
    poly: *const LghPoly,
    x: *const c_char,
    y: *const c_char,
    z: *const c_char,
    out: *mut *mut c_char,
) -> LghStatus {
    guard(|| {
        check_out(out)?;
        let p = deref(poly, "poly")?;
        let x = parse_rational(read_str(x, "x")?)?;
        let y = parse_rational(read_str(y, "y")?)?;
        let z = parse_rational(read_str(z, "z")?)?;
        *out = into_c_string(format_rational(&p.0.eval(&x, &y, &z)));
        Ok(())
    })
}

/// # Safety
/// `s` must come from this library and not be used afterwards. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn lgh_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message for the last failed call on this thread, or null. Valid until the
/// next library call on the same thread.
#[no_mangle]
pub extern "C" fn lgh_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}
