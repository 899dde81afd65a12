//! C interface to `cage-expander`.
//!
//! Graphs live behind an opaque `CeGraph` handle. Fallible calls return a
//! `CeStatus` and write results through out-pointers; the message for the
//! last failure on the calling thread is available from
//! `ce_last_error_message`. Strings returned by the library must be released
//! with `ce_string_free`, graphs with `ce_graph_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::ptr;

use cage_expander::catalog::by_name;
use cage_expander::cheeger::cheeger_exact;
use cage_expander::formats::{from_graph6, load_graph, to_graph6};
use cage_expander::moore::moore_cage_bound;
use cage_expander::report::{analyze, AnalyzeOptions};
use cage_expander::spectral::{spectrum, DEFAULT_TOL};
use cage_expander::{Error, Graph};
use num_traits::ToPrimitive;

/// Status codes. The non-zero values match the command-line exit codes.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CeStatus {
    Ok = 0,
    /// A required pointer argument was null.
    NullPointer = 1,
    /// Malformed input, unreadable file or invalid graph.
    Parse = 2,
    /// Invalid argument, unmet hypothesis or disconnected graph.
    Hypothesis = 3,
    /// Graph too large for exhaustive enumeration.
    CapExceeded = 4,
    /// Internal failure, including a caught panic or a result that does not
    /// fit the output type.
    Internal = 5,
}

/// Opaque graph handle.
pub struct CeGraph {
    graph: Graph,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

fn clear_last_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

fn status_of(err: &Error) -> CeStatus {
    match err.exit_code() {
        2 => CeStatus::Parse,
        3 => CeStatus::Hypothesis,
        4 => CeStatus::CapExceeded,
        _ => CeStatus::Internal,
    }
}

enum Failure {
    Lib(Error),
    Null(&'static str),
    Other(CeStatus, String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

/// Runs `body`, records any failure and converts it to a status.
fn guard(body: impl FnOnce() -> Result<(), Failure>) -> CeStatus {
    clear_last_error();
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => CeStatus::Ok,
        Ok(Err(Failure::Lib(e))) => {
            set_last_error(e.to_string());
            status_of(&e)
        }
        Ok(Err(Failure::Null(what))) => {
            set_last_error(format!("null pointer: {what}"));
            CeStatus::NullPointer
        }
        Ok(Err(Failure::Other(status, msg))) => {
            set_last_error(msg);
            status
        }
        Err(_) => {
            set_last_error("internal error: panic in cage-expander");
            CeStatus::Internal
        }
    }
}

unsafe fn graph_ref<'a>(g: *const CeGraph) -> Result<&'a Graph, Failure> {
    g.as_ref().map(|h| &h.graph).ok_or(Failure::Null("graph"))
}

unsafe fn str_arg<'a>(s: *const c_char, what: &'static str) -> Result<&'a str, Failure> {
    if s.is_null() {
        return Err(Failure::Null(what));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| Failure::Other(CeStatus::Parse, format!("{what} is not valid UTF-8")))
}

unsafe fn put<T>(out: *mut T, value: T, what: &'static str) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure::Null(what));
    }
    out.write(value);
    Ok(())
}

unsafe fn put_graph(out: *mut *mut CeGraph, graph: Graph) -> Result<(), Failure> {
    put(out, Box::into_raw(Box::new(CeGraph { graph })), "out")
}

fn to_c_string(s: String) -> Result<*mut c_char, Failure> {
    CString::new(s)
        .map(CString::into_raw)
        .map_err(|_| Failure::Other(CeStatus::Internal, "string contains NUL".into()))
}

/// Message describing the last failure on this thread, or null after a
/// successful call. Valid until the next library call on the same thread.
#[no_mangle]
pub extern "C" fn ce_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Decodes a graph6 string (optional `>>graph6<<` header, trailing newline
/// allowed).
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn ce_graph_from_graph6(text: *const c_char, out: *mut *mut CeGraph) -> CeStatus {
    guard(|| {
        let text = str_arg(text, "text")?;
        put_graph(out, from_graph6(text.trim_end())?)
    })
}

/// Builds a graph on `n` vertices from `m` edges stored as `2 m` vertex
/// indices `u0 v0 u1 v1 ...`.
///
/// # Safety
/// `edges` must point to `2 m` readable values (it may be null when `m` is
/// 0) and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ce_graph_from_edges(
    n: usize,
    edges: *const usize,
    m: usize,
    out: *mut *mut CeGraph,
) -> CeStatus {
    guard(|| {
        let flat: &[usize] = if m == 0 {
            &[]
        } else if edges.is_null() {
            return Err(Failure::Null("edges"));
        } else {
            std::slice::from_raw_parts(edges, 2 * m)
        };
        let g = Graph::from_edges(n, flat.chunks_exact(2).map(|e| (e[0], e[1])))?;
        put_graph(out, g)
    })
}

/// Builds a catalog graph by name, e.g. `"petersen"` or `"K3,3"`.
///
/// # Safety
/// `name` must be a NUL-terminated string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn ce_graph_from_catalog(name: *const c_char, out: *mut *mut CeGraph) -> CeStatus {
    guard(|| {
        let name = str_arg(name, "name")?;
        let entry = by_name(name).map_err(|e| Error::InvalidGraph(e.to_string()))?;
        put_graph(out, entry.graph())
    })
}

/// Reads a graph6 or adjacency-list file, detecting the format.
///
/// # Safety
/// `path` must be a NUL-terminated string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn ce_graph_load(path: *const c_char, out: *mut *mut CeGraph) -> CeStatus {
    guard(|| {
        let path = str_arg(path, "path")?;
        put_graph(out, load_graph(Path::new(path), None)?)
    })
}

/// Releases a graph. Null is ignored.
///
/// # Safety
/// `g` must come from one of the constructors and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn ce_graph_free(g: *mut CeGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Number of vertices; 0 for a null handle.
///
/// # Safety
/// `g` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn ce_graph_order(g: *const CeGraph) -> usize {
    g.as_ref().map_or(0, |h| h.graph.order())
}

/// Number of edges; 0 for a null handle.
///
/// # Safety
/// `g` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn ce_graph_edge_count(g: *const CeGraph) -> usize {
    g.as_ref().map_or(0, |h| h.graph.edge_count())
}

/// Length of a shortest cycle, or 0 for an acyclic graph.
///
/// # Safety
/// `g` must be a live handle and `girth` writable.
#[no_mangle]
pub unsafe extern "C" fn ce_graph_girth(g: *const CeGraph, girth: *mut usize) -> CeStatus {
    guard(|| {
        let g = graph_ref(g)?;
        put(girth, g.girth().finite().unwrap_or(0), "girth")
    })
}

/// Moore bound for degree `k` and girth `g`.
///
/// # Safety
/// `bound` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ce_moore_bound(k: u64, g: u64, bound: *mut u64) -> CeStatus {
    guard(|| {
        let b = moore_cage_bound(k, g)?;
        let v = b
            .to_u64()
            .ok_or_else(|| Failure::Other(CeStatus::Internal, format!("moore bound {b} exceeds 64 bits")))?;
        put(bound, v, "bound")
    })
}

/// Exact edge expansion `h = num / den` by exhaustive enumeration. Fails with
/// `CapExceeded` when the order exceeds `cap`.
///
/// # Safety
/// `g` must be a live handle; `num` and `den` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ce_graph_cheeger_exact(
    g: *const CeGraph,
    cap: usize,
    num: *mut u64,
    den: *mut u64,
) -> CeStatus {
    guard(|| {
        let g = graph_ref(g)?;
        let r = cheeger_exact(g, cap)?;
        let (p, q) = (r.h.numer().to_u64(), r.h.denom().to_u64());
        let (Some(p), Some(q)) = (p, q) else {
            return Err(Failure::Other(CeStatus::Internal, "ratio exceeds 64 bits".into()));
        };
        put(num, p, "num")?;
        put(den, q, "den")
    })
}

/// Second adjacency eigenvalue `lambda_1` and the largest non-trivial
/// absolute eigenvalue `lambda = max(|lambda_1|, |lambda_min|)`. Either
/// out-pointer may be null.
///
/// # Safety
/// `g` must be a live handle; non-null out-pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn ce_graph_second_eigenvalue(
    g: *const CeGraph,
    lambda_1: *mut f64,
    lambda: *mut f64,
) -> CeStatus {
    guard(|| {
        let g = graph_ref(g)?;
        if g.order() < 2 {
            return Err(Error::invalid("ffi", "graph needs at least 2 vertices").into());
        }
        let s = spectrum(g, DEFAULT_TOL)?;
        if !lambda_1.is_null() {
            lambda_1.write(s.eigenvalues[1]);
        }
        if !lambda.is_null() {
            lambda.write(s.lambda.expect("n >= 2"));
        }
        Ok(())
    })
}

/// graph6 encoding without header or newline.
///
/// # Safety
/// `g` must be a live handle and `out` writable. Free the string with
/// `ce_string_free`.
#[no_mangle]
pub unsafe extern "C" fn ce_graph_to_graph6(g: *const CeGraph, out: *mut *mut c_char) -> CeStatus {
    guard(|| {
        let g = graph_ref(g)?;
        put(out, to_c_string(to_graph6(g))?, "out")
    })
}

/// Full expansion report as JSON with default settings and the given seed.
///
/// # Safety
/// `g` must be a live handle and `out` writable. Free the string with
/// `ce_string_free`.
#[no_mangle]
pub unsafe extern "C" fn ce_graph_analyze_json(g: *const CeGraph, seed: u64, out: *mut *mut c_char) -> CeStatus {
    guard(|| {
        let g = graph_ref(g)?;
        let opts = AnalyzeOptions {
            seed,
            ..AnalyzeOptions::default()
        };
        let report = analyze(g, &opts)?;
        put(out, to_c_string(report.to_json())?, "out")
    })
}

/// Releases a string returned by the library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn ce_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
