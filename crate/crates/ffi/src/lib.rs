//! C ABI over `cubecx`.
//!
//! Conventions:
//! * every fallible call returns a [`CubecxStatus`]; results go through out-pointers;
//! * objects are opaque handles created by `*_new`/`*_from_*` and released by
//!   the matching `*_free` (passing NULL to a free function is a no-op);
//! * strings returned to the caller are NUL-terminated, owned by the caller and
//!   released with [`cubecx_string_free`];
//! * after a non-`Ok` status, [`cubecx_last_error`] describes the failure; the
//!   message belongs to the calling thread and stays valid until its next call.

use cubecx::boundary::transfer_character;
use cubecx::cocycle::{median_cocycle, SparseVec};
use cubecx::complex::CubeComplex;
use cubecx::doc;
use cubecx::generate::GenKind;
use cubecx::verify::{run_suite, Config};
use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

/// Result of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CubecxStatus {
    Ok = 0,
    /// A required pointer argument was NULL.
    NullPointer = 1,
    /// A string argument was not UTF-8.
    InvalidUtf8 = 2,
    /// A document or generator spec could not be parsed.
    Parse = 3,
    /// The input parsed but is not a valid pocset, complex, measure or universe.
    Invalid = 4,
    /// A vertex, element or parameter is out of range.
    OutOfRange = 5,
    /// A verification found a violation.
    Violation = 6,
    /// An internal invariant failed; please report with the last error message.
    Internal = 7,
}

/// A finite CAT(0) cube complex.
pub struct CubecxComplex(CubeComplex);

/// A finitely supported integer vector on tightly nested sequences.
pub struct CubecxVector(SparseVec);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl Into<String>) {
    let msg = CString::new(msg.into().replace('\0', " ")).expect("NULs removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = msg);
}

type Outcome<T> = Result<T, (CubecxStatus, String)>;

/// Runs `f`, storing its value through `out` and mapping errors and panics to a status.
fn guard<T>(out: *mut T, f: impl FnOnce() -> Outcome<T>) -> CubecxStatus {
    if out.is_null() {
        set_error("output pointer is NULL");
        return CubecxStatus::NullPointer;
    }
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(v)) => {
            // SAFETY: `out` is non-null and the caller guarantees it is writable.
            unsafe { out.write(v) };
            set_error("");
            CubecxStatus::Ok
        }
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(panic) => {
            let msg = panic
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| panic.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "unknown panic".into());
            set_error(format!("internal error: {msg}"));
            CubecxStatus::Internal
        }
    }
}

fn fail<T>(status: CubecxStatus, msg: impl std::fmt::Display) -> Outcome<T> {
    Err((status, msg.to_string()))
}

/// # Safety
/// `s` is NULL or a NUL-terminated string.
unsafe fn text<'a>(s: *const c_char) -> Outcome<&'a str> {
    if s.is_null() {
        return fail(CubecxStatus::NullPointer, "string argument is NULL");
    }
    // SAFETY: non-null and NUL-terminated per the contract.
    unsafe { CStr::from_ptr(s) }.to_str().or_else(|e| fail(CubecxStatus::InvalidUtf8, e))
}

/// # Safety
/// `p` is NULL or a live handle produced by this library.
unsafe fn handle<'a, T>(p: *const T) -> Outcome<&'a T> {
    // SAFETY: live handle per the contract.
    unsafe { p.as_ref() }.map_or_else(|| fail(CubecxStatus::NullPointer, "handle is NULL"), Ok)
}

fn owned_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).expect("NULs removed").into_raw()
}

fn complex_of_pocset(p: &cubecx::pocset::Pocset) -> Outcome<*mut CubecxComplex> {
    let c = CubeComplex::build(p).or_else(|e| fail(CubecxStatus::Invalid, format!("complex: {e}")))?;
    Ok(Box::into_raw(Box::new(CubecxComplex(c))))
}

fn check_vertices(c: &CubeComplex, vs: &[usize]) -> Outcome<()> {
    for &v in vs {
        c.check_vertex(v).or_else(|e| fail(CubecxStatus::OutOfRange, format!("complex: {e}")))?;
    }
    Ok(())
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn cubecx_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message for the last failed call on this thread; empty after a success.
/// The pointer stays valid until the next call into this library on the thread.
#[no_mangle]
pub extern "C" fn cubecx_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Releases a string returned by this library.
///
/// # Safety
/// `s` is NULL or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn cubecx_string_free(s: *mut c_char) {
    if !s.is_null() {
        // SAFETY: produced by `CString::into_raw` in this library.
        drop(unsafe { CString::from_raw(s) });
    }
}

/// Builds the complex of a document's `pocset` (or `graph`) section.
///
/// # Safety
/// `document` is a NUL-terminated string; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn cubecx_complex_from_document(document: *const c_char, out: *mut *mut CubecxComplex) -> CubecxStatus {
    guard(out, || {
        // SAFETY: forwarded caller contract.
        let d = doc::parse(unsafe { text(document) }?).or_else(|e| fail(CubecxStatus::Parse, format!("document: {e}")))?;
        let p = d.pocset().or_else(|e| fail(CubecxStatus::Invalid, format!("document: {e}")))?;
        complex_of_pocset(&p)
    })
}

/// Builds a standard family from a spec such as `cube:3`, `tripod:2`,
/// `grid:2x3`, `closure:3:000,110,011` or `product:path:2*path:1`.
///
/// # Safety
/// `spec` is a NUL-terminated string; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn cubecx_complex_generate(spec: *const c_char, out: *mut *mut CubecxComplex) -> CubecxStatus {
    guard(out, || {
        // SAFETY: forwarded caller contract.
        let p = GenKind::parse(unsafe { text(spec) }?)
            .and_then(|g| g.build())
            .or_else(|e| fail(CubecxStatus::Parse, format!("generate: {e}")))?;
        complex_of_pocset(&p)
    })
}

/// # Safety
/// `c` is NULL or a live complex handle; it must not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn cubecx_complex_free(c: *mut CubecxComplex) {
    if !c.is_null() {
        // SAFETY: produced by `Box::into_raw` in this library.
        drop(unsafe { Box::from_raw(c) });
    }
}

/// # Safety
/// `c` is a live complex handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn cubecx_complex_vertex_count(c: *const CubecxComplex, out: *mut usize) -> CubecxStatus {
    // SAFETY: forwarded caller contract.
    guard(out, || Ok(unsafe { handle(c) }?.0.vertex_count()))
}

/// Number of hyperplanes (halfspace pairs).
///
/// # Safety
/// `c` is a live complex handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn cubecx_complex_hyperplane_count(c: *const CubecxComplex, out: *mut usize) -> CubecxStatus {
    // SAFETY: forwarded caller contract.
    guard(out, || Ok(unsafe { handle(c) }?.0.pocset().n_pairs()))
}

/// # Safety
/// `c` is a live complex handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn cubecx_complex_dimension(c: *const CubecxComplex, out: *mut usize) -> CubecxStatus {
    // SAFETY: forwarded caller contract.
    guard(out, || Ok(unsafe { handle(c) }?.0.pocset().dimension()))
}

/// Combinatorial distance: the number of hyperplanes separating `u` and `v`.
///
/// # Safety
/// `c` is a live complex handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn cubecx_complex_distance(c: *const CubecxComplex, u: usize, v: usize, out: *mut usize) -> CubecxStatus {
    guard(out, || {
        // SAFETY: forwarded caller contract.
        let c = &unsafe { handle(c) }?.0;
        check_vertices(c, &[u, v])?;
        Ok(c.distance(u, v))
    })
}

/// # Safety
/// `c` is a live complex handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn cubecx_complex_median(
    c: *const CubecxComplex,
    u: usize,
    v: usize,
    w: usize,
    out: *mut usize,
) -> CubecxStatus {
    guard(out, || {
        // SAFETY: forwarded caller contract.
        let c = &unsafe { handle(c) }?.0;
        check_vertices(c, &[u, v, w])?;
        Ok(c.median(u, v, w))
    })
}

/// The median cocycle `c⁽ⁿ⁾(u1, u2, u3)`.
///
/// # Safety
/// `c` is a live complex handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn cubecx_cocycle(
    c: *const CubecxComplex,
    u1: usize,
    u2: usize,
    u3: usize,
    n: usize,
    out: *mut *mut CubecxVector,
) -> CubecxStatus {
    guard(out, || {
        // SAFETY: forwarded caller contract.
        let c = &unsafe { handle(c) }?.0;
        check_vertices(c, &[u1, u2, u3])?;
        if n == 0 {
            return fail(CubecxStatus::OutOfRange, "cocycle: n must be at least 1");
        }
        Ok(Box::into_raw(Box::new(CubecxVector(median_cocycle(c, u1, u2, u3, n)))))
    })
}

/// # Safety
/// `v` is NULL or a live vector handle; it must not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn cubecx_vector_free(v: *mut CubecxVector) {
    if !v.is_null() {
        // SAFETY: produced by `Box::into_raw` in this library.
        drop(unsafe { Box::from_raw(v) });
    }
}

/// # Safety
/// `v` is a live vector handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn cubecx_vector_support_size(v: *const CubecxVector, out: *mut usize) -> CubecxStatus {
    // SAFETY: forwarded caller contract.
    guard(out, || Ok(unsafe { handle(v) }?.0.support_size()))
}

/// Exact ℓ¹ norm.
///
/// # Safety
/// `v` is a live vector handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn cubecx_vector_l1(v: *const CubecxVector, out: *mut i64) -> CubecxStatus {
    guard(out, || {
        // SAFETY: forwarded caller contract.
        let norms = unsafe { handle(v) }?.0.norms(1.0).or_else(|e| fail(CubecxStatus::OutOfRange, format!("cocycle: {e}")))?;
        Ok(norms.l1)
    })
}

/// ℓᵖ norm for `p ≥ 1`.
///
/// # Safety
/// `v` is a live vector handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn cubecx_vector_lp(v: *const CubecxVector, p: f64, out: *mut f64) -> CubecxStatus {
    guard(out, || {
        // SAFETY: forwarded caller contract.
        let norms = unsafe { handle(v) }?.0.norms(p).or_else(|e| fail(CubecxStatus::OutOfRange, format!("cocycle: {e}")))?;
        Ok(norms.lp)
    })
}

/// Text form, one `h1,…,hn value` line per nonzero entry; free with [`cubecx_string_free`].
///
/// # Safety
/// `v` is a live vector handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn cubecx_vector_to_text(v: *const CubecxVector, out: *mut *mut c_char) -> CubecxStatus {
    // SAFETY: forwarded caller contract.
    guard(out, || Ok(owned_string(unsafe { handle(v) }?.0.to_text())))
}

/// Transfer character of element `index` of a document's `universe` section.
///
/// # Safety
/// `document` is a NUL-terminated string; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn cubecx_transfer_character(document: *const c_char, index: usize, out: *mut i64) -> CubecxStatus {
    guard(out, || {
        // SAFETY: forwarded caller contract.
        let d = doc::parse(unsafe { text(document) }?).or_else(|e| fail(CubecxStatus::Parse, format!("document: {e}")))?;
        let Some(u) = d.universe else { return fail(CubecxStatus::Invalid, "document: no `universe` section") };
        let Some(g) = u.elements.get(index) else {
            return fail(CubecxStatus::OutOfRange, format!("universe: element {index} of {}", u.elements.len()));
        };
        transfer_character(g, &u.set).or_else(|e| fail(CubecxStatus::Invalid, format!("universe: {e}")))
    })
}

/// Runs the seeded invariant suite and stores the number of failed checks.
/// Returns `Violation` when any check fails; the last error then holds the
/// first failure's description and witness document.
///
/// # Safety
/// `failed` is writable.
#[no_mangle]
pub unsafe extern "C" fn cubecx_verify(seed: u64, complexes: usize, failed: *mut usize) -> CubecxStatus {
    let mut first = None;
    let status = guard(failed, || {
        let outcomes = run_suite(&Config { seed, complexes, ..Config::default() });
        let bad: Vec<_> = outcomes.into_iter().filter_map(|o| o.failure.map(|w| (o.name, w))).collect();
        first = bad.first().map(|(name, w)| format!("{name}: {}\n{}", w.description, w.document));
        Ok(bad.len())
    });
    match first {
        Some(msg) if status == CubecxStatus::Ok => {
            set_error(msg);
            CubecxStatus::Violation
        }
        _ => status,
    }
}
