//! C ABI over `qblock`.
//!
//! Graphs and results are opaque heap handles owned by the caller and
//! released with the matching `*_free` function. Fallible calls return a
//! `QbStatus` code; the message of the most recent failure on the calling
//! thread is available from `qb_last_error`. Strings returned by this
//! library must be released with `qb_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use qblock::classrec::classify;
use qblock::engine::{qut_with, shadow_check, Options};
use qblock::graph::{parse_graph, ColoredGraph, Format};
use qblock::qexpr::{classical_shadow_order, is_classical, render, Fmt, QGroupExpr};
use qblock::{Error, GraphClass};

/// Status codes; the non-zero values match the exit codes of the CLI.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QbStatus {
    Ok = 0,
    Failure = 1,
    Parse = 2,
    Unsupported = 3,
    OrbitGap = 4,
    ShadowMismatch = 5,
    InvalidArgument = 6,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QbFormat {
    EdgeList = 0,
    Graph6 = 1,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QbRender {
    Text = 0,
    Json = 1,
    Latex = 2,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QbClass {
    Forest = 0,
    Outerplanar = 1,
    BlockGraph = 2,
    Unsupported = 3,
}

/// Opaque graph handle.
pub struct QbGraph {
    graph: ColoredGraph,
}

/// Opaque result handle.
pub struct QbResult {
    expr: QGroupExpr,
    assumptions: usize,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).unwrap_or_default());
}

fn status_of(e: &Error) -> QbStatus {
    match e {
        Error::Parse { .. } | Error::DuplicateEdge(..) | Error::SelfLoop(_) | Error::UnknownVertex(_) => {
            QbStatus::Parse
        }
        Error::ClassRefused(_) | Error::UnsupportedBlock(_) | Error::Unsupported => QbStatus::Unsupported,
        Error::OrbitGap { .. } => QbStatus::OrbitGap,
        _ => QbStatus::Failure,
    }
}

fn fail(e: Error) -> QbStatus {
    set_error(e.to_string());
    status_of(&e)
}

fn invalid(msg: &str) -> QbStatus {
    set_error(msg);
    QbStatus::InvalidArgument
}

/// Runs `f`, turning a panic into `QbStatus::Failure`.
fn guarded(f: impl FnOnce() -> QbStatus) -> QbStatus {
    catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| {
        set_error("internal panic");
        QbStatus::Failure
    })
}

fn into_c_string(s: String) -> *mut c_char {
    CString::new(s).map_or(ptr::null_mut(), CString::into_raw)
}

/// Message of the last failed call on this thread, or an empty string.
/// The pointer stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn qb_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Parses `text` (NUL-terminated) into a new graph stored in `*out`.
///
/// # Safety
/// `text` must be a valid C string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qb_graph_parse(text: *const c_char, format: QbFormat, out: *mut *mut QbGraph) -> QbStatus {
    if text.is_null() || out.is_null() {
        return invalid("null argument");
    }
    guarded(|| {
        let Ok(s) = CStr::from_ptr(text).to_str() else {
            return fail(Error::Parse {
                line: 0,
                reason: "input is not UTF-8".into(),
            });
        };
        let format = match format {
            QbFormat::EdgeList => Format::EdgeList,
            QbFormat::Graph6 => Format::Graph6,
        };
        match parse_graph(s, format) {
            Ok(graph) => {
                *out = Box::into_raw(Box::new(QbGraph { graph }));
                QbStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// # Safety
/// `g` must be null or a handle from `qb_graph_parse` not yet freed.
#[no_mangle]
pub unsafe extern "C" fn qb_graph_free(g: *mut QbGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// # Safety
/// `g` must be a live graph handle.
#[no_mangle]
pub unsafe extern "C" fn qb_graph_vertex_count(g: *const QbGraph) -> usize {
    g.as_ref().map_or(0, |g| g.graph.n())
}

/// # Safety
/// `g` must be a live graph handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qb_classify(g: *const QbGraph, out: *mut QbClass) -> QbStatus {
    let (Some(g), false) = (g.as_ref(), out.is_null()) else {
        return invalid("null argument");
    };
    guarded(|| {
        *out = match classify(&g.graph) {
            GraphClass::Forest => QbClass::Forest,
            GraphClass::Outerplanar => QbClass::Outerplanar,
            GraphClass::BlockGraph => QbClass::BlockGraph,
            GraphClass::Unsupported => QbClass::Unsupported,
        };
        QbStatus::Ok
    })
}

/// Computes the quantum automorphism group of `g` into `*out`. With
/// `force`, graphs outside the supported classes are attempted; `jobs`
/// of 0 or 1 runs on the calling thread.
///
/// # Safety
/// `g` must be a live graph handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qb_qut(g: *const QbGraph, force: bool, jobs: usize, out: *mut *mut QbResult) -> QbStatus {
    let (Some(g), false) = (g.as_ref(), out.is_null()) else {
        return invalid("null argument");
    };
    guarded(|| match qut_with(&g.graph, Options { force, jobs: jobs.max(1) }) {
        Ok(r) => {
            *out = Box::into_raw(Box::new(QbResult {
                expr: r.expr,
                assumptions: r.assumptions.len(),
            }));
            QbStatus::Ok
        }
        Err(e) => fail(e),
    })
}

/// # Safety
/// `r` must be null or a handle from `qb_qut` not yet freed.
#[no_mangle]
pub unsafe extern "C" fn qb_result_free(r: *mut QbResult) {
    if !r.is_null() {
        drop(Box::from_raw(r));
    }
}

/// Renders the expression; returns null on a null handle.
///
/// # Safety
/// `r` must be a live result handle.
#[no_mangle]
pub unsafe extern "C" fn qb_result_render(r: *const QbResult, fmt: QbRender) -> *mut c_char {
    let Some(r) = r.as_ref() else {
        set_error("null argument");
        return ptr::null_mut();
    };
    let fmt = match fmt {
        QbRender::Text => Fmt::Text,
        QbRender::Json => Fmt::Json,
        QbRender::Latex => Fmt::Latex,
    };
    into_c_string(render(&r.expr, fmt))
}

/// Order of the classical shadow as a decimal string.
///
/// # Safety
/// `r` must be a live result handle.
#[no_mangle]
pub unsafe extern "C" fn qb_result_shadow_order(r: *const QbResult) -> *mut c_char {
    let Some(r) = r.as_ref() else {
        set_error("null argument");
        return ptr::null_mut();
    };
    into_c_string(classical_shadow_order(&r.expr).to_string())
}

/// # Safety
/// `r` must be a live result handle.
#[no_mangle]
pub unsafe extern "C" fn qb_result_is_classical(r: *const QbResult) -> bool {
    r.as_ref().is_some_and(|r| is_classical(&r.expr))
}

/// Number of assumptions the result depends on (non-zero only for forced runs).
///
/// # Safety
/// `r` must be a live result handle.
#[no_mangle]
pub unsafe extern "C" fn qb_result_assumption_count(r: *const QbResult) -> usize {
    r.as_ref().map_or(0, |r| r.assumptions)
}

/// Compares the classical shadow of `r` with a brute-force automorphism
/// count of `g` (at most 12 vertices). Returns `ShadowMismatch` when they
/// differ.
///
/// # Safety
/// `r` and `g` must be live handles.
#[no_mangle]
pub unsafe extern "C" fn qb_result_check_aut(r: *const QbResult, g: *const QbGraph) -> QbStatus {
    let (Some(r), Some(g)) = (r.as_ref(), g.as_ref()) else {
        return invalid("null argument");
    };
    guarded(|| match shadow_check(&g.graph, &r.expr) {
        Ok(v) if v.agree => QbStatus::Ok,
        Ok(v) => {
            set_error(format!("shadow order {} but |Aut| = {}", v.shadow_order, v.aut_order));
            QbStatus::ShadowMismatch
        }
        Err(e) => fail(e),
    })
}

/// # Safety
/// `s` must be null or a string returned by this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn qb_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
