//! C interface to `algconn-core`.
//!
//! Bundles and anchors on the projective line are opaque handles built from
//! the same JSON documents the `algconn` CLI reads. Every entry point returns
//! an [`AlgconnStatus`]; on failure a message is available from
//! [`algconn_last_error`] until the next call on the same thread. Strings
//! returned through `char **` out-parameters are owned by the caller and
//! must be released with [`algconn_string_free`]. No call unwinds across the
//! boundary: panics are reported as `ALGCONN_STATUS_INTERNAL`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use algconn_core::decision::decide_connection;
use algconn_core::jets::{construct_connection, obstruction_cocycle, ConcreteAnchor};
use algconn_core::p1::{birkhoff_split, cohomology_dims, P1Bundle};
use algconn_core::schema::{
    parse_algebroid, parse_anchor, parse_formal_bundle, parse_p1_bundle, InputError,
};
use serde_json::json;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AlgconnStatus {
    Ok = 0,
    /// A required pointer argument was null.
    NullArgument = 1,
    /// A string argument was not valid UTF-8.
    InvalidUtf8 = 2,
    /// Malformed JSON, unknown fields, bad Laurent syntax or shape mismatch.
    Schema = 3,
    /// Well-formed input violating a mathematical precondition.
    Invalid = 4,
    /// An output buffer was too small; the required length was written.
    BufferTooSmall = 5,
    /// A bug: internal consistency check or panic.
    Internal = 6,
}

/// A vector bundle on the projective line.
pub struct AlgconnBundle(P1Bundle);

/// A map `V → TX` on the projective line.
pub struct AlgconnAnchor(ConcreteAnchor);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

struct Failure(AlgconnStatus, String);

impl From<InputError> for Failure {
    fn from(e: InputError) -> Failure {
        match e {
            InputError::Schema(m) => Failure(AlgconnStatus::Schema, m),
            InputError::Invalid(m) => Failure(AlgconnStatus::Invalid, m),
        }
    }
}

fn invalid(e: impl std::fmt::Display) -> Failure {
    Failure(AlgconnStatus::Invalid, e.to_string())
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).expect("NULs removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

/// Runs `body`, records its error message and converts panics.
fn guard(body: impl FnOnce() -> Result<(), Failure>) -> AlgconnStatus {
    set_error("");
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => AlgconnStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_error(&msg);
            status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| payload.downcast_ref::<&str>().map(|s| (*s).to_owned()))
                .unwrap_or_else(|| "unknown panic".into());
            set_error(&format!("internal error: {msg}"));
            AlgconnStatus::Internal
        }
    }
}

fn non_null<T>(p: *const T, name: &str) -> Result<(), Failure> {
    if p.is_null() {
        Err(Failure(AlgconnStatus::NullArgument, format!("{name} is null")))
    } else {
        Ok(())
    }
}

unsafe fn read_str<'a>(p: *const c_char, name: &str) -> Result<&'a str, Failure> {
    non_null(p, name)?;
    CStr::from_ptr(p)
        .to_str()
        .map_err(|e| Failure(AlgconnStatus::InvalidUtf8, format!("{name}: {e}")))
}

unsafe fn write_json(out: *mut *mut c_char, value: &serde_json::Value) -> Result<(), Failure> {
    let text = serde_json::to_string(value).map_err(|e| Failure(AlgconnStatus::Internal, e.to_string()))?;
    let c = CString::new(text).map_err(|e| Failure(AlgconnStatus::Internal, e.to_string()))?;
    *out = c.into_raw();
    Ok(())
}

/// Message for the most recent failure on this thread (empty after a
/// success). The pointer stays valid until the next `algconn_*` call on
/// this thread.
#[no_mangle]
pub extern "C" fn algconn_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn algconn_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Parses `{"rank": r, "transition": [[...]]}` into a new handle.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn algconn_bundle_from_json(
    json: *const c_char,
    out: *mut *mut AlgconnBundle,
) -> AlgconnStatus {
    guard(|| {
        non_null(out, "out")?;
        *out = ptr::null_mut();
        let bundle = parse_p1_bundle(read_str(json, "json")?)?;
        *out = Box::into_raw(Box::new(AlgconnBundle(bundle)));
        Ok(())
    })
}

/// Releases a bundle handle; null is ignored.
///
/// # Safety
/// `bundle` must come from `algconn_bundle_from_json` and not be used again.
#[no_mangle]
pub unsafe extern "C" fn algconn_bundle_free(bundle: *mut AlgconnBundle) {
    if !bundle.is_null() {
        drop(Box::from_raw(bundle));
    }
}

/// Rank and degree of a bundle.
///
/// # Safety
/// `bundle` must be a live handle; `rank` and `degree` writable pointers.
#[no_mangle]
pub unsafe extern "C" fn algconn_bundle_info(
    bundle: *const AlgconnBundle,
    rank: *mut usize,
    degree: *mut i64,
) -> AlgconnStatus {
    guard(|| {
        non_null(bundle, "bundle")?;
        non_null(rank, "rank")?;
        non_null(degree, "degree")?;
        let b = &(*bundle).0;
        *rank = b.rank();
        *degree = b.degree();
        Ok(())
    })
}

/// Writes the splitting type (non-increasing) into `out[0..rank)`. `len`
/// always receives the rank; if `capacity` is smaller, nothing else is
/// written and `ALGCONN_STATUS_BUFFER_TOO_SMALL` is returned.
///
/// # Safety
/// `bundle` must be a live handle, `len` writable, and `out` valid for
/// `capacity` writes (it may be null when `capacity` is 0).
#[no_mangle]
pub unsafe extern "C" fn algconn_splitting_type(
    bundle: *const AlgconnBundle,
    out: *mut i64,
    capacity: usize,
    len: *mut usize,
) -> AlgconnStatus {
    guard(|| {
        non_null(bundle, "bundle")?;
        non_null(len, "len")?;
        let b = &(*bundle).0;
        *len = b.rank();
        if capacity < b.rank() {
            return Err(Failure(
                AlgconnStatus::BufferTooSmall,
                format!("need {} entries, have {capacity}", b.rank()),
            ));
        }
        non_null(out, "out")?;
        let split = birkhoff_split(b).map_err(invalid)?;
        if !split.verify(b.transition()) {
            return Err(Failure(AlgconnStatus::Internal, "splitting failed re-verification".into()));
        }
        std::slice::from_raw_parts_mut(out, b.rank()).copy_from_slice(&split.splitting_type);
        Ok(())
    })
}

/// `h⁰` and `h¹` of a bundle.
///
/// # Safety
/// `bundle` must be a live handle; `h0` and `h1` writable pointers.
#[no_mangle]
pub unsafe extern "C" fn algconn_cohomology(
    bundle: *const AlgconnBundle,
    h0: *mut u64,
    h1: *mut u64,
) -> AlgconnStatus {
    guard(|| {
        non_null(bundle, "bundle")?;
        non_null(h0, "h0")?;
        non_null(h1, "h1")?;
        let dims = cohomology_dims(&(*bundle).0).map_err(invalid)?;
        *h0 = dims.h0;
        *h1 = dims.h1;
        Ok(())
    })
}

/// Parses `{"V": <bundle>, "phi_row": [...]}` into a new handle.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn algconn_anchor_from_json(
    json: *const c_char,
    out: *mut *mut AlgconnAnchor,
) -> AlgconnStatus {
    guard(|| {
        non_null(out, "out")?;
        *out = ptr::null_mut();
        let anchor = parse_anchor(read_str(json, "json")?)?;
        *out = Box::into_raw(Box::new(AlgconnAnchor(anchor)));
        Ok(())
    })
}

/// Releases an anchor handle; null is ignored.
///
/// # Safety
/// `anchor` must come from `algconn_anchor_from_json` and not be used again.
#[no_mangle]
pub unsafe extern "C" fn algconn_anchor_free(anchor: *mut AlgconnAnchor) {
    if !anchor.is_null() {
        drop(Box::from_raw(anchor));
    }
}

/// Obstruction cocycle and, when it is a coboundary, a verified connection:
/// `{"exists": bool, "cocycle": [[...]], "cert": {"A0", "A1"}?}`.
///
/// # Safety
/// `bundle` and `anchor` must be live handles and `out` a writable pointer;
/// the string written to `*out` must be freed with `algconn_string_free`.
#[no_mangle]
pub unsafe extern "C" fn algconn_connect_json(
    bundle: *const AlgconnBundle,
    anchor: *const AlgconnAnchor,
    out: *mut *mut c_char,
) -> AlgconnStatus {
    guard(|| {
        non_null(out, "out")?;
        *out = ptr::null_mut();
        non_null(bundle, "bundle")?;
        non_null(anchor, "anchor")?;
        let (e, anchor) = (&(*bundle).0, &(*anchor).0);
        let cocycle = obstruction_cocycle(e, anchor);
        let cert = construct_connection(e, anchor).map_err(invalid)?;
        let mut doc = json!({
            "exists": cert.is_some(),
            "cocycle": cocycle.overlap_matrix,
        });
        if let Some(cert) = cert {
            doc["cert"] = json!(cert);
        }
        write_json(out, &doc)
    })
}

/// Decides existence from slope data: `algebroid` is
/// `{"V": <formal bundle>, "anchor": {"kind": ...}}`, `bundle` is
/// `{"genus": g, "atoms": [...]}`; the decision is written as JSON.
///
/// # Safety
/// `algebroid` and `bundle` must be NUL-terminated strings and `out` a
/// writable pointer; the string written to `*out` must be freed with
/// `algconn_string_free`.
#[no_mangle]
pub unsafe extern "C" fn algconn_decide_json(
    algebroid: *const c_char,
    bundle: *const c_char,
    out: *mut *mut c_char,
) -> AlgconnStatus {
    guard(|| {
        non_null(out, "out")?;
        *out = ptr::null_mut();
        let desc = parse_algebroid(read_str(algebroid, "algebroid")?)?;
        let e = parse_formal_bundle(read_str(bundle, "bundle")?)?;
        let decision = decide_connection(&desc, &e).map_err(invalid)?;
        write_json(out, &json!(decision))
    })
}

/// Releases a string returned by this library; null is ignored.
///
/// # Safety
/// `s` must come from an `algconn_*` out-parameter and not be used again.
#[no_mangle]
pub unsafe extern "C" fn algconn_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
