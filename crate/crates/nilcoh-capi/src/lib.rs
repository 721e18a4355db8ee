//! C interface over the nilcoh library.
//!
//! Handles are opaque pointers owned by the caller and released with
//! the matching `_free` function. Every fallible call returns a
//! `NilcohStatus`; on failure, `nilcoh_last_error` returns a
//! NUL-terminated message that stays valid until the next failing call
//! on the same thread. Strings returned through out-parameters are
//! released with `nilcoh_string_free`. All functions are safe to call
//! from multiple threads as long as a single handle is not used
//! concurrently.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use nilcoh::bounds;
use nilcoh::catalog;
use nilcoh::ce_complex::CEComplex;
use nilcoh::cohomology::CohomologyRing;
use nilcoh::error::Error;
use nilcoh::invariants;
use nilcoh::io;
use nilcoh::lie::LieAlgebra;

/// Opaque handle to a validated-or-not Lie algebra presentation.
pub struct NilcohAlgebra(LieAlgebra);

/// Opaque handle to a computed cohomology ring.
pub struct NilcohRing(CohomologyRing);

/// Result of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum NilcohStatus {
    Ok = 0,
    /// A required pointer argument was NULL.
    NullArgument = 1,
    /// A string argument was not valid UTF-8.
    InvalidUtf8 = 2,
    /// Malformed input: JSON schema, expression, or catalog name.
    ParseError = 3,
    /// The presentation violates the Jacobi identity.
    InvalidAlgebra = 4,
    /// The request is refused on mathematical grounds.
    Unsupported = 5,
    /// An internal invariant failed; please report.
    InternalError = 6,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(message: &str) {
    let sanitized = message.replace('\0', " ");
    LAST_ERROR.with(|slot| {
        *slot.borrow_mut() = CString::new(sanitized).unwrap_or_default();
    });
}

fn status_of(err: &Error) -> NilcohStatus {
    match err {
        Error::Jacobi { .. } => NilcohStatus::InvalidAlgebra,
        Error::Unsupported(_) => NilcohStatus::Unsupported,
        Error::Internal(_) => NilcohStatus::InternalError,
        Error::Parse { .. } | Error::UnknownCatalog(_) | Error::Input(_) => {
            NilcohStatus::ParseError
        }
    }
}

fn fail(err: &Error) -> NilcohStatus {
    set_error(&err.to_string());
    status_of(err)
}

/// Run a body, translating panics into `InternalError` so unwinding
/// never crosses the FFI boundary.
fn guarded(body: impl FnOnce() -> NilcohStatus) -> NilcohStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(status) => status,
        Err(_) => {
            set_error("internal panic");
            NilcohStatus::InternalError
        }
    }
}

unsafe fn read_utf8<'a>(ptr: *const c_char) -> Result<&'a str, NilcohStatus> {
    if ptr.is_null() {
        set_error("NULL string argument");
        return Err(NilcohStatus::NullArgument);
    }
    CStr::from_ptr(ptr).to_str().map_err(|_| {
        set_error("string argument is not valid UTF-8");
        NilcohStatus::InvalidUtf8
    })
}

fn give_string(text: String, out: *mut *mut c_char) -> NilcohStatus {
    let c = match CString::new(text) {
        Ok(c) => c,
        Err(_) => {
            set_error("output contained an interior NUL byte");
            return NilcohStatus::InternalError;
        }
    };
    unsafe { *out = c.into_raw() };
    NilcohStatus::Ok
}

/// Version of the underlying library as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn nilcoh_version() -> *const c_char {
    static VERSION: &str = concat!(env!("CARGO_PKG_VERSION"), "\0");
    VERSION.as_ptr() as *const c_char
}

/// Message for the most recent failure on this thread. Never NULL;
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn nilcoh_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}

/// Parse an algebra from JSON text.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a valid pointer.
/// On `Ok`, `*out` owns a handle to release with `nilcoh_algebra_free`.
#[no_mangle]
pub unsafe extern "C" fn nilcoh_algebra_from_json(
    json: *const c_char,
    out: *mut *mut NilcohAlgebra,
) -> NilcohStatus {
    guarded(|| {
        if out.is_null() {
            set_error("NULL out-parameter");
            return NilcohStatus::NullArgument;
        }
        let text = match read_utf8(json) {
            Ok(t) => t,
            Err(status) => return status,
        };
        match io::algebra_from_json(text) {
            Ok(a) => {
                *out = Box::into_raw(Box::new(NilcohAlgebra(a)));
                NilcohStatus::Ok
            }
            Err(e) => fail(&e),
        }
    })
}

/// Look up a built-in algebra, e.g. "heisenberg(3)" or "torus(4)".
///
/// # Safety
/// `name` must be a NUL-terminated string and `out` a valid pointer.
/// On `Ok`, `*out` owns a handle to release with `nilcoh_algebra_free`.
#[no_mangle]
pub unsafe extern "C" fn nilcoh_algebra_from_catalog(
    name: *const c_char,
    out: *mut *mut NilcohAlgebra,
) -> NilcohStatus {
    guarded(|| {
        if out.is_null() {
            set_error("NULL out-parameter");
            return NilcohStatus::NullArgument;
        }
        let name = match read_utf8(name) {
            Ok(t) => t,
            Err(status) => return status,
        };
        match catalog::lookup(name) {
            Ok(a) => {
                *out = Box::into_raw(Box::new(NilcohAlgebra(a)));
                NilcohStatus::Ok
            }
            Err(e) => fail(&e),
        }
    })
}

/// Release an algebra handle. NULL is accepted and ignored.
///
/// # Safety
/// `algebra` must be NULL or a pointer produced by this library that
/// has not been freed before.
#[no_mangle]
pub unsafe extern "C" fn nilcoh_algebra_free(algebra: *mut NilcohAlgebra) {
    if !algebra.is_null() {
        drop(Box::from_raw(algebra));
    }
}

/// Dimension of the algebra.
///
/// # Safety
/// `algebra` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn nilcoh_algebra_dim(
    algebra: *const NilcohAlgebra,
    out: *mut usize,
) -> NilcohStatus {
    guarded(|| {
        if algebra.is_null() || out.is_null() {
            set_error("NULL argument");
            return NilcohStatus::NullArgument;
        }
        *out = (*algebra).0.dim();
        NilcohStatus::Ok
    })
}

/// Check the Jacobi identity; `InvalidAlgebra` on violation.
///
/// # Safety
/// `algebra` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn nilcoh_algebra_validate(
    algebra: *const NilcohAlgebra,
) -> NilcohStatus {
    guarded(|| {
        if algebra.is_null() {
            set_error("NULL argument");
            return NilcohStatus::NullArgument;
        }
        match (*algebra).0.validate() {
            Ok(()) => NilcohStatus::Ok,
            Err(e) => fail(&e),
        }
    })
}

/// Render the algebra in the canonical JSON file format.
///
/// # Safety
/// `algebra` must be a live handle and `out` a valid pointer. On `Ok`,
/// `*out` owns a string to release with `nilcoh_string_free`.
#[no_mangle]
pub unsafe extern "C" fn nilcoh_algebra_to_json(
    algebra: *const NilcohAlgebra,
    out: *mut *mut c_char,
) -> NilcohStatus {
    guarded(|| {
        if algebra.is_null() || out.is_null() {
            set_error("NULL argument");
            return NilcohStatus::NullArgument;
        }
        give_string(io::algebra_to_json(&(*algebra).0), out)
    })
}

/// Validate and build the cohomology ring.
///
/// # Safety
/// `algebra` must be a live handle and `out` a valid pointer. On `Ok`,
/// `*out` owns a handle to release with `nilcoh_ring_free`.
#[no_mangle]
pub unsafe extern "C" fn nilcoh_ring_new(
    algebra: *const NilcohAlgebra,
    out: *mut *mut NilcohRing,
) -> NilcohStatus {
    guarded(|| {
        if algebra.is_null() || out.is_null() {
            set_error("NULL argument");
            return NilcohStatus::NullArgument;
        }
        let a = &(*algebra).0;
        if let Err(e) = a.validate() {
            return fail(&e);
        }
        let ring = CEComplex::build(a.clone()).and_then(CohomologyRing::new);
        match ring {
            Ok(r) => {
                *out = Box::into_raw(Box::new(NilcohRing(r)));
                NilcohStatus::Ok
            }
            Err(e) => fail(&e),
        }
    })
}

/// Release a ring handle. NULL is accepted and ignored.
///
/// # Safety
/// `ring` must be NULL or a pointer produced by this library that has
/// not been freed before.
#[no_mangle]
pub unsafe extern "C" fn nilcoh_ring_free(ring: *mut NilcohRing) {
    if !ring.is_null() {
        drop(Box::from_raw(ring));
    }
}

/// Betti number in one degree (0 above the top dimension).
///
/// # Safety
/// `ring` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn nilcoh_ring_betti(
    ring: *const NilcohRing,
    degree: usize,
    out: *mut usize,
) -> NilcohStatus {
    guarded(|| {
        if ring.is_null() || out.is_null() {
            set_error("NULL argument");
            return NilcohStatus::NullArgument;
        }
        *out = (*ring).0.betti(degree);
        NilcohStatus::Ok
    })
}

/// Euler characteristic (always 0 in positive dimensions, kept as a
/// consistency probe).
///
/// # Safety
/// `ring` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn nilcoh_ring_euler_characteristic(
    ring: *const NilcohRing,
    out: *mut i64,
) -> NilcohStatus {
    guarded(|| {
        if ring.is_null() || out.is_null() {
            set_error("NULL argument");
            return NilcohStatus::NullArgument;
        }
        *out = (*ring).0.euler_characteristic();
        NilcohStatus::Ok
    })
}

/// Cup-length of the ring.
///
/// # Safety
/// `ring` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn nilcoh_ring_cup_length(
    ring: *const NilcohRing,
    out: *mut usize,
) -> NilcohStatus {
    guarded(|| {
        if ring.is_null() || out.is_null() {
            set_error("NULL argument");
            return NilcohStatus::NullArgument;
        }
        match invariants::cup_length(&(*ring).0) {
            Ok(r) => {
                *out = r.cup_length;
                NilcohStatus::Ok
            }
            Err(e) => fail(&e),
        }
    })
}

/// Cohomological symplecticness: writes 1 or 0. `Unsupported` in odd
/// dimensions.
///
/// # Safety
/// `ring` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn nilcoh_ring_is_symplectic(
    ring: *const NilcohRing,
    out: *mut i32,
) -> NilcohStatus {
    guarded(|| {
        if ring.is_null() || out.is_null() {
            set_error("NULL argument");
            return NilcohStatus::NullArgument;
        }
        match invariants::is_cohomologically_symplectic(&(*ring).0) {
            Ok(r) => {
                *out = i32::from(r.is_cohomologically_symplectic);
                NilcohStatus::Ok
            }
            Err(e) => fail(&e),
        }
    })
}

/// Full orbit-bounds report as a JSON document (the same schema the
/// CLI prints). Even dimensions only.
///
/// # Safety
/// `algebra` must be a live handle and `out` a valid pointer. On `Ok`,
/// `*out` owns a string to release with `nilcoh_string_free`.
#[no_mangle]
pub unsafe extern "C" fn nilcoh_report_json(
    algebra: *const NilcohAlgebra,
    out: *mut *mut c_char,
) -> NilcohStatus {
    guarded(|| {
        if algebra.is_null() || out.is_null() {
            set_error("NULL argument");
            return NilcohStatus::NullArgument;
        }
        match bounds::full_report(&(*algebra).0) {
            Ok(report) => match serde_json::to_string_pretty(&report) {
                Ok(text) => give_string(text, out),
                Err(e) => {
                    set_error(&e.to_string());
                    NilcohStatus::InternalError
                }
            },
            Err(e) => fail(&e),
        }
    })
}

/// Release a string produced by this library. NULL is accepted.
///
/// # Safety
/// `text` must be NULL or a string produced by this library that has
/// not been freed before.
#[no_mangle]
pub unsafe extern "C" fn nilcoh_string_free(text: *mut c_char) {
    if !text.is_null() {
        drop(CString::from_raw(text));
    }
}
