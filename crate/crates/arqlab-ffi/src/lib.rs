//! C ABI for the arqlab algebra library.
//!
//! Conventions, mirrored in the generated `include/arqlab.h`:
//!
//! * Algebras are opaque handles (`ArqAlgebra*`). Constructors return a
//!   handle or `NULL`; release handles with [`arq_algebra_free`].
//! * Strings returned by the library are NUL-terminated UTF-8 owned by the
//!   caller; release them with [`arq_string_free`].
//! * Fallible functions either return `NULL` or report a status code:
//!   `ARQ_OK` (0), `ARQ_ERR_PARAM` (2) for parameter, parse, and
//!   precondition failures, `ARQ_ERR_BUDGET` (4) when a knitting budget is
//!   exhausted, and `ARQ_ERR_INTERNAL` (5) for internal-consistency
//!   failures. The codes coincide with the `arqlab` CLI exit codes.
//! * After any failure, [`arq_last_error`] returns a message describing it.
//!   The message is owned by the library, is valid on the calling thread
//!   until the next failing call there, and must not be freed.
//! * No function unwinds across the boundary; a Rust panic is caught and
//!   converted into `ARQ_ERR_INTERNAL`.

use std::cell::RefCell;
use std::ffi::{c_char, c_int, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::Arc;

use arqlab::algebra::Algebra;
use arqlab::analysis::{short_cycles, theorem_check, Verdict};
use arqlab::artheory::{knit, Budgets};
use arqlab::error::Error;
use arqlab::export::{ar_quiver_dot, certificate_json};
use arqlab::field::FieldSpec;
use arqlab::module::is_selfinjective;
use arqlab::textfmt::{parse, render};
use arqlab::zoo::{nakayama_selfinjective, trivial_extension_r};

/// Success.
pub const ARQ_OK: c_int = 0;
/// Invalid parameter, parse failure, or unmet precondition.
pub const ARQ_ERR_PARAM: c_int = 2;
/// A knitting budget (node count or dimension cap) was exhausted.
pub const ARQ_ERR_BUDGET: c_int = 4;
/// An internal consistency check failed.
pub const ARQ_ERR_INTERNAL: c_int = 5;

/// Verdict of a short-cycle scan: no short cycle exists.
pub const ARQ_VERDICT_FREE: c_int = 0;
/// Verdict of a short-cycle scan: a short cycle was found.
pub const ARQ_VERDICT_HAS_SHORT_CYCLE: c_int = 1;

/// An opaque finite-dimensional algebra handle.
pub struct ArqAlgebra {
    inner: Arc<Algebra>,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn store_error(msg: &str) {
    let sanitized: String = msg.chars().map(|c| if c == '\0' { ' ' } else { c }).collect();
    LAST_ERROR.with(|slot| {
        *slot.borrow_mut() = CString::new(sanitized).unwrap_or_default();
    });
}

fn status_of(e: &Error) -> c_int {
    match e {
        Error::BudgetExceeded(_) => ARQ_ERR_BUDGET,
        Error::InternalInconsistency(_)
        | Error::CheckFailed(_)
        | Error::DecompositionStalled(_)
        | Error::IsoSearchInconclusive(_)
        | Error::UndefinedTranslate(_)
        | Error::SocleNotUnique(_) => ARQ_ERR_INTERNAL,
        _ => ARQ_ERR_PARAM,
    }
}

fn report(e: &Error) -> c_int {
    store_error(&e.to_string());
    status_of(e)
}

/// Runs `f` with panics converted into an `ARQ_ERR_INTERNAL` last error.
fn guarded<T>(fallback: T, f: impl FnOnce() -> T) -> T {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(v) => v,
        Err(_) => {
            store_error("internal panic");
            fallback
        }
    }
}

/// The prime-field characteristic must exceed the algebra dimension for the
/// bilinear-form computations used by the analyses; enforced on every
/// constructor, exactly as the CLI enforces it when loading input.
fn guard_field(a: &Algebra) -> std::result::Result<(), Error> {
    if let FieldSpec::Prime(p) = a.field {
        if p as usize <= a.dim {
            return Err(Error::CharacteristicTooSmall(format!(
                "field GF({p}) needs p > dim = {}",
                a.dim
            )));
        }
    }
    Ok(())
}

fn into_handle(a: Algebra) -> *mut ArqAlgebra {
    Box::into_raw(Box::new(ArqAlgebra { inner: Arc::new(a) }))
}

/// Returns `None` (with the last error set) when the handle is null.
unsafe fn deref<'a>(a: *const ArqAlgebra) -> Option<&'a Arc<Algebra>> {
    if a.is_null() {
        store_error("null algebra handle");
        None
    } else {
        Some(&(*a).inner)
    }
}

fn budgets(max_nodes: usize, max_dim: usize) -> std::result::Result<Budgets, Error> {
    if max_nodes == 0 || max_dim == 0 {
        return Err(Error::InvalidParameter("budgets must be positive".into()));
    }
    Ok(Budgets { max_nodes, max_dim })
}

fn string_out(s: String) -> *mut c_char {
    match CString::new(s) {
        Ok(c) => c.into_raw(),
        Err(_) => {
            store_error("output contained an interior NUL byte");
            std::ptr::null_mut()
        }
    }
}

/// Message for the most recent failure on the calling thread, or an empty
/// string when no failure has been recorded. Owned by the library: valid
/// until the next failing call on this thread, and must not be freed.
#[no_mangle]
pub extern "C" fn arq_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}

/// Frees a string previously returned by this library. A null pointer is
/// ignored.
///
/// # Safety
///
/// `s` must be null or a pointer obtained from an `arq_` function that
/// documents `arq_string_free` as its deallocator, passed at most once.
#[no_mangle]
pub unsafe extern "C" fn arq_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Frees an algebra handle. A null pointer is ignored.
///
/// # Safety
///
/// `a` must be null or a pointer obtained from an `arq_algebra_*`
/// constructor, passed at most once.
#[no_mangle]
pub unsafe extern "C" fn arq_algebra_free(a: *mut ArqAlgebra) {
    if !a.is_null() {
        drop(Box::from_raw(a));
    }
}

/// Parses an algebra from its textual description (the `arqlab v1` format
/// produced by `arq_algebra_render` and the CLI). Returns `NULL` on failure.
///
/// # Safety
///
/// `text` must be a valid NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn arq_algebra_parse(text: *const c_char) -> *mut ArqAlgebra {
    if text.is_null() {
        store_error("null input text");
        return std::ptr::null_mut();
    }
    let raw = CStr::from_ptr(text);
    guarded(std::ptr::null_mut(), || {
        let text = match raw.to_str() {
            Ok(t) => t,
            Err(_) => {
                store_error("input text is not valid UTF-8");
                return std::ptr::null_mut();
            }
        };
        match parse(text).and_then(|a| {
            guard_field(&a)?;
            Ok(a)
        }) {
            Ok(a) => into_handle(a),
            Err(e) => {
                report(&e);
                std::ptr::null_mut()
            }
        }
    })
}

/// Builds the selfinjective Nakayama algebra with `m` vertices and Loewy
/// length `ell` over the rationals. Returns `NULL` on failure.
#[no_mangle]
pub extern "C" fn arq_algebra_nakayama(m: usize, ell: usize) -> *mut ArqAlgebra {
    guarded(std::ptr::null_mut(), || {
        match nakayama_selfinjective(m, ell, FieldSpec::Rationals) {
            Ok(a) => into_handle(a),
            Err(e) => {
                report(&e);
                std::ptr::null_mut()
            }
        }
    })
}

/// Builds the `r`-fold trivial extension of the algebra `b`. Returns `NULL`
/// on failure.
///
/// # Safety
///
/// `b` must be a valid algebra handle.
#[no_mangle]
pub unsafe extern "C" fn arq_algebra_trivial_extension(
    b: *const ArqAlgebra,
    r: usize,
) -> *mut ArqAlgebra {
    let Some(base) = deref(b) else {
        return std::ptr::null_mut();
    };
    guarded(std::ptr::null_mut(), || {
        match trivial_extension_r(base, r, None).and_then(|a| {
            guard_field(&a)?;
            Ok(a)
        }) {
            Ok(a) => into_handle(a),
            Err(e) => {
                report(&e);
                std::ptr::null_mut()
            }
        }
    })
}

/// Renders an algebra in the `arqlab v1` text format. Returns `NULL` on
/// failure; free the result with `arq_string_free`.
///
/// # Safety
///
/// `a` must be a valid algebra handle.
#[no_mangle]
pub unsafe extern "C" fn arq_algebra_render(a: *const ArqAlgebra) -> *mut c_char {
    let Some(alg) = deref(a) else {
        return std::ptr::null_mut();
    };
    guarded(std::ptr::null_mut(), || match render(alg) {
        Ok(s) => string_out(s),
        Err(e) => {
            report(&e);
            std::ptr::null_mut()
        }
    })
}

/// Total dimension of the algebra over its scalar field, or `-1` for a null
/// handle.
///
/// # Safety
///
/// `a` must be null or a valid algebra handle.
#[no_mangle]
pub unsafe extern "C" fn arq_algebra_dim(a: *const ArqAlgebra) -> i64 {
    match deref(a) {
        Some(alg) => alg.dim as i64,
        None => -1,
    }
}

/// Number of vertices of the underlying quiver, or `-1` for a null handle.
///
/// # Safety
///
/// `a` must be null or a valid algebra handle.
#[no_mangle]
pub unsafe extern "C" fn arq_algebra_vertices(a: *const ArqAlgebra) -> i64 {
    match deref(a) {
        Some(alg) => alg.n_vertices as i64,
        None => -1,
    }
}

/// Whether the algebra is selfinjective: `1` yes, `0` no, `-1` for a null
/// handle.
///
/// # Safety
///
/// `a` must be null or a valid algebra handle.
#[no_mangle]
pub unsafe extern "C" fn arq_algebra_is_selfinjective(a: *const ArqAlgebra) -> c_int {
    let Some(alg) = deref(a) else { return -1 };
    guarded(-1, || is_selfinjective(alg) as c_int)
}

/// Scans the Auslander-Reiten quiver for short cycles. On success writes
/// `ARQ_VERDICT_FREE` or `ARQ_VERDICT_HAS_SHORT_CYCLE` to `verdict_out` and
/// returns `ARQ_OK`; otherwise returns an error status.
///
/// # Safety
///
/// `a` must be a valid algebra handle and `verdict_out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn arq_short_cycles(
    a: *const ArqAlgebra,
    max_nodes: usize,
    max_dim: usize,
    verdict_out: *mut c_int,
) -> c_int {
    let Some(alg) = deref(a) else {
        return ARQ_ERR_PARAM;
    };
    if verdict_out.is_null() {
        store_error("null verdict output pointer");
        return ARQ_ERR_PARAM;
    }
    guarded(ARQ_ERR_INTERNAL, || {
        let b = match budgets(max_nodes, max_dim) {
            Ok(b) => b,
            Err(e) => return report(&e),
        };
        match short_cycles(alg, &b, false) {
            Ok(cert) => {
                *verdict_out = match cert.verdict {
                    Verdict::ShortCycleFree => ARQ_VERDICT_FREE,
                    Verdict::HasShortCycle => ARQ_VERDICT_HAS_SHORT_CYCLE,
                };
                ARQ_OK
            }
            Err(e) => report(&e),
        }
    })
}

/// Runs the full freeness check on a selfinjective algebra and returns the
/// certificate as a JSON document (the same schema the CLI prints for
/// `theorem-check`). Returns `NULL` on failure; free the result with
/// `arq_string_free`. Note that a short cycle is a verdict inside the
/// certificate, not a failure.
///
/// # Safety
///
/// `a` must be a valid algebra handle.
#[no_mangle]
pub unsafe extern "C" fn arq_theorem_check_json(
    a: *const ArqAlgebra,
    max_nodes: usize,
    max_dim: usize,
) -> *mut c_char {
    let Some(alg) = deref(a) else {
        return std::ptr::null_mut();
    };
    guarded(std::ptr::null_mut(), || {
        let b = match budgets(max_nodes, max_dim) {
            Ok(b) => b,
            Err(e) => {
                report(&e);
                return std::ptr::null_mut();
            }
        };
        let cert = match theorem_check(alg, &b) {
            Ok(c) => c,
            Err(e) => {
                report(&e);
                return std::ptr::null_mut();
            }
        };
        let ar = knit(alg, &b).ok();
        let doc = certificate_json(&cert, ar.as_ref());
        string_out(format!("{:#}\n", doc))
    })
}

/// Renders the Auslander-Reiten quiver in Graphviz dot format. Returns
/// `NULL` on failure; free the result with `arq_string_free`.
///
/// # Safety
///
/// `a` must be a valid algebra handle.
#[no_mangle]
pub unsafe extern "C" fn arq_ar_quiver_dot(
    a: *const ArqAlgebra,
    max_nodes: usize,
    max_dim: usize,
) -> *mut c_char {
    let Some(alg) = deref(a) else {
        return std::ptr::null_mut();
    };
    guarded(std::ptr::null_mut(), || {
        let b = match budgets(max_nodes, max_dim) {
            Ok(b) => b,
            Err(e) => {
                report(&e);
                return std::ptr::null_mut();
            }
        };
        match knit(alg, &b) {
            Ok(ar) => string_out(ar_quiver_dot(&ar)),
            Err(e) => {
                report(&e);
                std::ptr::null_mut()
            }
        }
    })
}
