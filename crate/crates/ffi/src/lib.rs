//! C ABI over the `sptw` library.
//!
//! Graphs and bound reports are opaque handles owned by the caller and
//! released with the matching `*_free` function. Every fallible call returns
//! an [`SptwStatus`]; on failure [`sptw_last_error`] describes what went
//! wrong on the calling thread. Strings returned by the library must be
//! released with [`sptw_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use sptw::certificates::{certify, CertificateError};
use sptw::exact::ExactError;
use sptw::{bounds_report, exact_tw, parse_edge_list, parse_pace_gr, BoundReport, Family, Graph};

/// Result code of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SptwStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    InvalidGraph = 3,
    TooLarge = 4,
    NotApplicable = 5,
    Numerical = 6,
    CertificateFailed = 7,
    InvalidArgument = 8,
    Panic = 9,
}

/// Which bound to read from a report.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SptwBound {
    Cs03 = 0,
    Ghnoo24 = 1,
    Thm1 = 2,
    Thm2 = 3,
}

/// Opaque graph handle.
pub struct SptwGraph(Graph);

/// Opaque bound report handle.
pub struct SptwBounds(BoundReport);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl ToString) {
    let text = CString::new(msg.to_string().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(text));
}

fn fail(status: SptwStatus, msg: impl ToString) -> SptwStatus {
    set_error(msg);
    status
}

/// Clears the thread's error, runs `f`, and turns a panic into `Panic`.
fn guard(f: impl FnOnce() -> SptwStatus) -> SptwStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(p) => {
            let msg = p
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| p.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            fail(SptwStatus::Panic, msg)
        }
    }
}

unsafe fn read_str<'a>(s: *const c_char) -> Result<&'a str, SptwStatus> {
    if s.is_null() {
        return Err(fail(SptwStatus::NullPointer, "string argument is null"));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|e| fail(SptwStatus::InvalidUtf8, e))
}

unsafe fn put_graph(g: Graph, out: *mut *mut SptwGraph) -> SptwStatus {
    *out = Box::into_raw(Box::new(SptwGraph(g)));
    SptwStatus::Ok
}

fn exact_status(e: &ExactError) -> SptwStatus {
    match e {
        ExactError::TooLarge { .. } => SptwStatus::TooLarge,
        _ => SptwStatus::InvalidArgument,
    }
}

/// Builds a graph on `n` vertices from `m` pairs stored flat in `edges`
/// (`edges[2k]`, `edges[2k+1]`, 0-indexed). `edges` may be null when `m` is 0.
///
/// # Safety
/// `edges` must point to `2 * m` readable values and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sptw_graph_from_edges(
    n: usize,
    edges: *const usize,
    m: usize,
    out: *mut *mut SptwGraph,
) -> SptwStatus {
    guard(|| {
        if out.is_null() || (edges.is_null() && m > 0) {
            return fail(SptwStatus::NullPointer, "null argument");
        }
        let flat = if m == 0 {
            &[][..]
        } else {
            std::slice::from_raw_parts(edges, 2 * m)
        };
        match Graph::new(n, flat.chunks_exact(2).map(|e| (e[0], e[1]))) {
            Ok(g) => put_graph(g, out),
            Err(e) => fail(SptwStatus::InvalidGraph, e),
        }
    })
}

/// Parses PACE `.gr` text (1-indexed, `p tw n m` header).
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sptw_graph_from_pace(
    text: *const c_char,
    out: *mut *mut SptwGraph,
) -> SptwStatus {
    guard(|| {
        if out.is_null() {
            return fail(SptwStatus::NullPointer, "out is null");
        }
        let text = match read_str(text) {
            Ok(t) => t,
            Err(s) => return s,
        };
        match parse_pace_gr(text) {
            Ok(g) => put_graph(g, out),
            Err(e) => fail(SptwStatus::InvalidGraph, e),
        }
    })
}

/// Parses a 0-indexed edge list, one `u v` pair per line.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sptw_graph_from_edge_list(
    text: *const c_char,
    out: *mut *mut SptwGraph,
) -> SptwStatus {
    guard(|| {
        if out.is_null() {
            return fail(SptwStatus::NullPointer, "out is null");
        }
        let text = match read_str(text) {
            Ok(t) => t,
            Err(s) => return s,
        };
        match parse_edge_list(text) {
            Ok(g) => put_graph(g, out),
            Err(e) => fail(SptwStatus::InvalidGraph, e),
        }
    })
}

/// Generates a graph from a descriptor such as `grid:3,4` or `gnp:10,0.3,7`.
///
/// # Safety
/// `descriptor` must be a NUL-terminated string and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sptw_graph_from_family(
    descriptor: *const c_char,
    out: *mut *mut SptwGraph,
) -> SptwStatus {
    guard(|| {
        if out.is_null() {
            return fail(SptwStatus::NullPointer, "out is null");
        }
        let desc = match read_str(descriptor) {
            Ok(t) => t,
            Err(s) => return s,
        };
        match desc.parse::<Family>().and_then(|f| f.generate()) {
            Ok(g) => put_graph(g, out),
            Err(e) => fail(SptwStatus::InvalidArgument, e),
        }
    })
}

/// Releases a graph. Null is ignored.
///
/// # Safety
/// `graph` must come from one of the constructors and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn sptw_graph_free(graph: *mut SptwGraph) {
    if !graph.is_null() {
        drop(Box::from_raw(graph));
    }
}

/// Vertex count, or 0 for a null handle.
///
/// # Safety
/// `graph` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn sptw_graph_order(graph: *const SptwGraph) -> usize {
    graph.as_ref().map_or(0, |g| g.0.n())
}

/// Edge count, or 0 for a null handle.
///
/// # Safety
/// `graph` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn sptw_graph_size(graph: *const SptwGraph) -> usize {
    graph.as_ref().map_or(0, |g| g.0.m())
}

/// Computes the spectrum and all four bounds.
///
/// # Safety
/// `graph` must be a live handle and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sptw_bounds_compute(
    graph: *const SptwGraph,
    out: *mut *mut SptwBounds,
) -> SptwStatus {
    guard(|| {
        let Some(g) = graph.as_ref() else {
            return fail(SptwStatus::NullPointer, "graph is null");
        };
        if out.is_null() {
            return fail(SptwStatus::NullPointer, "out is null");
        }
        match bounds_report(&g.0) {
            Ok(r) => {
                *out = Box::into_raw(Box::new(SptwBounds(r)));
                SptwStatus::Ok
            }
            Err(e) => fail(SptwStatus::Numerical, e),
        }
    })
}

/// Releases a bound report. Null is ignored.
///
/// # Safety
/// `bounds` must come from [`sptw_bounds_compute`] and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn sptw_bounds_free(bounds: *mut SptwBounds) {
    if !bounds.is_null() {
        drop(Box::from_raw(bounds));
    }
}

/// Reads one bound. Returns `NotApplicable` for a graph without edges.
///
/// # Safety
/// `bounds` must be a live handle and `value` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sptw_bounds_value(
    bounds: *const SptwBounds,
    which: SptwBound,
    value: *mut f64,
) -> SptwStatus {
    guard(|| {
        let (Some(b), false) = (bounds.as_ref(), value.is_null()) else {
            return fail(SptwStatus::NullPointer, "null argument");
        };
        let v = &b.0.bounds;
        let got = match which {
            SptwBound::Cs03 => v.cs03,
            SptwBound::Ghnoo24 => v.ghnoo24,
            SptwBound::Thm1 => v.thm1,
            SptwBound::Thm2 => v.thm2,
        };
        match got {
            Some(x) => {
                *value = x;
                SptwStatus::Ok
            }
            None => fail(SptwStatus::NotApplicable, "graph has no edges"),
        }
    })
}

/// Second-smallest Laplacian eigenvalue (0 for a single vertex).
///
/// # Safety
/// `bounds` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn sptw_bounds_lambda2(bounds: *const SptwBounds) -> f64 {
    bounds.as_ref().map_or(f64::NAN, |b| b.0.inputs.lambda2)
}

/// Largest Laplacian eigenvalue.
///
/// # Safety
/// `bounds` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn sptw_bounds_lambda_max(bounds: *const SptwBounds) -> f64 {
    bounds.as_ref().map_or(f64::NAN, |b| b.0.inputs.lambda_max)
}

/// Largest integer lower bound on the treewidth implied by the report.
///
/// # Safety
/// `bounds` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn sptw_bounds_best_integer(bounds: *const SptwBounds) -> u64 {
    bounds.as_ref().map_or(0, |b| b.0.best_integer)
}

/// The report as JSON; free with [`sptw_string_free`]. Null on error.
///
/// # Safety
/// `bounds` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn sptw_bounds_to_json(bounds: *const SptwBounds) -> *mut c_char {
    let Some(b) = bounds.as_ref() else {
        set_error("bounds is null");
        return ptr::null_mut();
    };
    CString::new(b.0.to_json().to_string()).map_or(ptr::null_mut(), CString::into_raw)
}

/// Exact treewidth for graphs with at most `limit` vertices (at most 24).
///
/// # Safety
/// `graph` must be a live handle and `width` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sptw_exact_treewidth(
    graph: *const SptwGraph,
    limit: usize,
    width: *mut usize,
) -> SptwStatus {
    guard(|| {
        let (Some(g), false) = (graph.as_ref(), width.is_null()) else {
            return fail(SptwStatus::NullPointer, "null argument");
        };
        match exact_tw(&g.0, limit) {
            Ok(r) => {
                *width = r.width;
                SptwStatus::Ok
            }
            Err(e) => fail(exact_status(&e), e),
        }
    })
}

/// Builds and checks the separator certificates. Returns `Ok` when every
/// check passes and `CertificateFailed` otherwise. When `json` is not null
/// it receives the full certificate (free with [`sptw_string_free`]) in
/// both of those cases.
///
/// # Safety
/// `graph` must be a live handle; `json` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn sptw_certify(
    graph: *const SptwGraph,
    limit: usize,
    json: *mut *mut c_char,
) -> SptwStatus {
    guard(|| {
        let Some(g) = graph.as_ref() else {
            return fail(SptwStatus::NullPointer, "graph is null");
        };
        let cert = match certify(&g.0, limit) {
            Ok(c) => c,
            Err(CertificateError::Exact(e)) => return fail(exact_status(&e), e),
            Err(CertificateError::Spectrum(e)) => return fail(SptwStatus::Numerical, e),
            Err(e) => return fail(SptwStatus::CertificateFailed, e),
        };
        if let Some(slot) = json.as_mut() {
            let text = cert.to_json();
            *slot = CString::new(text).map_or(ptr::null_mut(), CString::into_raw);
        }
        if cert.passed() {
            SptwStatus::Ok
        } else {
            fail(SptwStatus::CertificateFailed, cert.failures().join(", "))
        }
    })
}

/// Message for the last failed call on this thread, or null. The pointer
/// stays valid until the next call into the library from the same thread.
#[no_mangle]
pub extern "C" fn sptw_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Releases a string returned by the library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn sptw_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Library version, a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn sptw_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}
