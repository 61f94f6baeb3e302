//! C interface to `isg-core`.
//!
//! Semigroups and graphs are passed across the boundary as opaque handles
//! created from JSON documents (the same schema the `isg` binary reads).
//! Every function returns an [`IsgStatus`]; on failure the message is
//! available from [`isg_last_error`]. Strings returned by the library must be
//! released with [`isg_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use isg_core::cli::{run_job, Job, Status};
use isg_core::graph::{orthogonality_check, GraphInverseSemigroup};
use isg_core::io::{load_context, Context, FiniteContext};
use isg_core::semigroup::{is_e_unitary, natural_leq};
use isg_core::suite::{shift_min_eig, shift_norm_bound};
use isg_core::IsgError;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IsgStatus {
    Ok = 0,
    /// A mathematical assertion failed.
    AssertionFailed = 1,
    InputError = 2,
    NullPointer = 3,
    OutOfRange = 4,
    /// A Rust panic was caught at the boundary.
    Internal = 5,
}

/// A finite inverse semigroup given by a table or generators.
pub struct IsgSemigroup {
    inner: FiniteContext,
}

/// The graph inverse semigroup of a finite directed graph.
pub struct IsgGraph {
    inner: GraphInverseSemigroup,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

fn fail(status: IsgStatus, msg: impl Into<String>) -> IsgStatus {
    set_error(msg);
    status
}

fn from_core(e: IsgError) -> IsgStatus {
    let status = if e.is_mathematical() { IsgStatus::AssertionFailed } else { IsgStatus::InputError };
    fail(status, e.to_string())
}

fn guard(f: impl FnOnce() -> IsgStatus) -> IsgStatus {
    catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| fail(IsgStatus::Internal, "panic inside isg"))
}

unsafe fn read_str<'a>(p: *const c_char) -> Result<&'a str, IsgStatus> {
    if p.is_null() {
        return Err(fail(IsgStatus::NullPointer, "null string argument"));
    }
    CStr::from_ptr(p).to_str().map_err(|_| fail(IsgStatus::InputError, "argument is not UTF-8"))
}

unsafe fn read_context(json: *const c_char) -> Result<Context, IsgStatus> {
    let text = read_str(json)?;
    let value: serde_json::Value =
        serde_json::from_str(text).map_err(|e| fail(IsgStatus::InputError, format!("invalid JSON: {e}")))?;
    load_context(&value).map_err(from_core)
}

macro_rules! out_ptr {
    ($p:expr) => {
        if $p.is_null() {
            return fail(IsgStatus::NullPointer, "null output pointer");
        }
    };
}

macro_rules! handle {
    ($h:expr) => {
        match $h.as_ref() {
            Some(h) => &h.inner,
            None => return fail(IsgStatus::NullPointer, "null handle"),
        }
    };
}

/// Message of the most recent failure on this thread, or null. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn isg_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(std::ptr::null(), |s| s.as_ptr()))
}

/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn isg_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Builds a finite semigroup from a JSON document.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn isg_semigroup_from_json(json: *const c_char, out: *mut *mut IsgSemigroup) -> IsgStatus {
    guard(|| {
        out_ptr!(out);
        match read_context(json) {
            Ok(Context::Finite(inner)) => {
                *out = Box::into_raw(Box::new(IsgSemigroup { inner }));
                IsgStatus::Ok
            }
            Ok(_) => fail(IsgStatus::InputError, "document does not describe a finite semigroup"),
            Err(status) => status,
        }
    })
}

/// # Safety
/// `h` must be null or a handle from [`isg_semigroup_from_json`], not yet freed.
#[no_mangle]
pub unsafe extern "C" fn isg_semigroup_free(h: *mut IsgSemigroup) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}

/// # Safety
/// `h` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn isg_semigroup_size(h: *const IsgSemigroup, out: *mut usize) -> IsgStatus {
    let ctx = handle!(h);
    out_ptr!(out);
    *out = ctx.semigroup.len();
    IsgStatus::Ok
}

fn in_range(ctx: &FiniteContext, ids: &[usize]) -> Result<(), IsgStatus> {
    match ids.iter().find(|&&a| a >= ctx.semigroup.len()) {
        Some(a) => Err(fail(IsgStatus::OutOfRange, format!("element id {a} out of range"))),
        None => Ok(()),
    }
}

/// # Safety
/// `h` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn isg_semigroup_product(h: *const IsgSemigroup, a: usize, b: usize, out: *mut usize) -> IsgStatus {
    let ctx = handle!(h);
    out_ptr!(out);
    if let Err(s) = in_range(ctx, &[a, b]) {
        return s;
    }
    *out = ctx.semigroup.op(a, b);
    IsgStatus::Ok
}

/// # Safety
/// `h` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn isg_semigroup_star(h: *const IsgSemigroup, a: usize, out: *mut usize) -> IsgStatus {
    let ctx = handle!(h);
    out_ptr!(out);
    if let Err(s) = in_range(ctx, &[a]) {
        return s;
    }
    *out = ctx.semigroup.inv(a);
    IsgStatus::Ok
}

/// Writes whether `a ≤ b` in the natural partial order.
///
/// # Safety
/// `h` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn isg_semigroup_natural_leq(h: *const IsgSemigroup, a: usize, b: usize, out: *mut bool) -> IsgStatus {
    let ctx = handle!(h);
    out_ptr!(out);
    if let Err(s) = in_range(ctx, &[a, b]) {
        return s;
    }
    *out = natural_leq(&ctx.semigroup, a, b);
    IsgStatus::Ok
}

/// # Safety
/// `h` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn isg_semigroup_is_e_unitary(h: *const IsgSemigroup, out: *mut bool) -> IsgStatus {
    let ctx = handle!(h);
    out_ptr!(out);
    guard(|| {
        *out = is_e_unitary(&ctx.semigroup);
        IsgStatus::Ok
    })
}

/// Builds a graph inverse semigroup from `{"vertices", "edges"}`.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn isg_graph_from_json(json: *const c_char, out: *mut *mut IsgGraph) -> IsgStatus {
    guard(|| {
        out_ptr!(out);
        match read_context(json) {
            Ok(Context::Graph(inner)) => {
                *out = Box::into_raw(Box::new(IsgGraph { inner }));
                IsgStatus::Ok
            }
            Ok(_) => fail(IsgStatus::InputError, "document does not describe a graph"),
            Err(status) => status,
        }
    })
}

/// # Safety
/// `h` must be null or a handle from [`isg_graph_from_json`], not yet freed.
#[no_mangle]
pub unsafe extern "C" fn isg_graph_free(h: *mut IsgGraph) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}

/// Scans fibers over paths of length at most `max_len` and writes the number
/// of nonzero cross products between distinct edges. Returns
/// `ISG_STATUS_ASSERTION_FAILED` when that number is positive.
///
/// # Safety
/// `h` must be a live handle and `violations` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn isg_graph_orthogonality(h: *const IsgGraph, max_len: usize, violations: *mut usize) -> IsgStatus {
    let sg = handle!(h);
    out_ptr!(violations);
    guard(|| {
        let report = orthogonality_check(sg.graph(), max_len);
        *violations = report.violation_count;
        if report.passed() {
            IsgStatus::Ok
        } else {
            fail(IsgStatus::AssertionFailed, format!("{} nonzero cross products", report.violation_count))
        }
    })
}

/// Smallest eigenvalue of the truncated shift expectation `e − b − b*` on
/// `{0..window}`.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn isg_shift_min_eig(window: usize, out: *mut f64) -> IsgStatus {
    out_ptr!(out);
    guard(|| match shift_min_eig(window) {
        Ok(v) => {
            *out = v;
            IsgStatus::Ok
        }
        Err(e) => from_core(e),
    })
}

/// Operator norm lower bound for the same truncation.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn isg_shift_norm_bound(window: usize, out: *mut f64) -> IsgStatus {
    out_ptr!(out);
    guard(|| match shift_norm_bound(window) {
        Ok(v) => {
            *out = v;
            IsgStatus::Ok
        }
        Err(e) => from_core(e),
    })
}

/// Runs any CLI command. `job_json` is
/// `{"command", "input"?, "window"?, "length"?, "seed"?, "tol"?}`; the JSON
/// report is written to `*report` (free with [`isg_string_free`]) whenever
/// the job could be parsed.
///
/// # Safety
/// `job_json` must be a NUL-terminated string and `report` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn isg_run_command(job_json: *const c_char, report: *mut *mut c_char) -> IsgStatus {
    guard(|| {
        out_ptr!(report);
        *report = std::ptr::null_mut();
        let text = match read_str(job_json) {
            Ok(t) => t,
            Err(s) => return s,
        };
        let job: Job = match serde_json::from_str(text) {
            Ok(j) => j,
            Err(e) => return fail(IsgStatus::InputError, format!("invalid job: {e}")),
        };
        let out = run_job(&job);
        let rendered = out.report.to_string().replace('\0', " ");
        *report = CString::new(rendered).expect("NUL removed").into_raw();
        match out.status {
            Status::Ok => IsgStatus::Ok,
            Status::AssertionFailed => fail(IsgStatus::AssertionFailed, out.report["error"].as_str().unwrap_or("assertion failed")),
            Status::InputError => fail(IsgStatus::InputError, out.report["error"].as_str().unwrap_or("input error")),
        }
    })
}
