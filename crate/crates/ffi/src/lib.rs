//! C interface to `graphdyn`.
//!
//! Maps are opaque `GraphdynMap` handles. Every fallible call returns a
//! `GraphdynStatus`; on failure `graphdyn_last_error` describes the error for
//! the calling thread. Strings handed out by the library are NUL-terminated
//! UTF-8 and must be released with `graphdyn_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use graphdyn::backward::{steer_branch, SteeringPlan, RECURRENCE_PERIOD_BOUND};
use graphdyn::orbits::{Certificate, PeriodicOrbit};
use graphdyn::structure::{entropy, markov_partition};
use graphdyn::suites::{self, Suite, SuiteConfig};
use graphdyn::{builtins, report, Error, Limits, PlMap};

/// Result of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphdynStatus {
    Ok = 0,
    /// A required pointer argument was null.
    NullArgument = 1,
    /// A string argument was not valid UTF-8.
    InvalidUtf8 = 2,
    Parse = 3,
    Structure = 4,
    Domain = 5,
    /// A configured cap was exceeded.
    Resource = 6,
    NotMarkov = 7,
    Contract = 8,
    Internal = 9,
    /// The library panicked; the handle involved should be discarded.
    Panic = 10,
}

impl From<&Error> for GraphdynStatus {
    fn from(e: &Error) -> Self {
        match e {
            Error::Parse(_) => GraphdynStatus::Parse,
            Error::Structure(_) => GraphdynStatus::Structure,
            Error::Domain(_) => GraphdynStatus::Domain,
            Error::Resource(_) => GraphdynStatus::Resource,
            Error::NotMarkov { .. } => GraphdynStatus::NotMarkov,
            Error::Contract(_) => GraphdynStatus::Contract,
            Error::Internal(_) => GraphdynStatus::Internal,
        }
    }
}

/// Opaque handle to a piecewise-linear graph map.
pub struct GraphdynMap {
    map: PlMap,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(msg: String) {
    let msg = CString::new(msg.replace('\0', " ")).expect("NUL bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

struct Failure(GraphdynStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(GraphdynStatus::from(&e), e.to_string())
    }
}

fn guard(body: impl FnOnce() -> Result<(), Failure>) -> GraphdynStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => GraphdynStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_last_error(msg);
            status
        }
        Err(_) => {
            set_last_error("panic inside graphdyn".into());
            GraphdynStatus::Panic
        }
    }
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure(GraphdynStatus::NullArgument, format!("{what} is null")));
    }
    CStr::from_ptr(p).to_str().map_err(|_| Failure(GraphdynStatus::InvalidUtf8, format!("{what} is not valid UTF-8")))
}

unsafe fn handle<'a>(m: *const GraphdynMap) -> Result<&'a PlMap, Failure> {
    m.as_ref().map(|h| &h.map).ok_or_else(|| Failure(GraphdynStatus::NullArgument, "map handle is null".into()))
}

unsafe fn put<T>(out: *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure(GraphdynStatus::NullArgument, "output pointer is null".into()));
    }
    out.write(value);
    Ok(())
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    let c = CString::new(s).map_err(|_| Failure(GraphdynStatus::Internal, "NUL byte in output".into()))?;
    if out.is_null() {
        return Err(Failure(GraphdynStatus::NullArgument, "output pointer is null".into()));
    }
    out.write(c.into_raw());
    Ok(())
}

unsafe fn put_map(out: *mut *mut GraphdynMap, map: PlMap) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure(GraphdynStatus::NullArgument, "output pointer is null".into()));
    }
    out.write(Box::into_raw(Box::new(GraphdynMap { map })));
    Ok(())
}

/// Message for the last failed call on this thread, or null if none.
/// The pointer stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn graphdyn_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn graphdyn_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Creates a builtin map such as `"tent"` or `"cantor_bumps:3"`.
///
/// # Safety
/// `name` must be a NUL-terminated string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn graphdyn_map_builtin(name: *const c_char, out: *mut *mut GraphdynMap) -> GraphdynStatus {
    guard(|| {
        let name = text(name, "name")?;
        put_map(out, builtins::builtin(name)?)
    })
}

/// Creates a map from its JSON specification.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn graphdyn_map_from_json(json: *const c_char, out: *mut *mut GraphdynMap) -> GraphdynStatus {
    guard(|| {
        let json = text(json, "json")?;
        put_map(out, PlMap::from_json(json)?)
    })
}

/// Releases a map. Null is ignored.
///
/// # Safety
/// `map` must come from a `graphdyn_map_*` constructor and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn graphdyn_map_free(map: *mut GraphdynMap) {
    if !map.is_null() {
        drop(Box::from_raw(map));
    }
}

/// Canonical JSON specification of the map.
///
/// # Safety
/// `map` must be a live handle and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn graphdyn_map_to_json(map: *const GraphdynMap, out: *mut *mut c_char) -> GraphdynStatus {
    guard(|| {
        let f = handle(map)?;
        put_string(out, f.to_json())
    })
}

/// Image of a point given as `"edge:p/q"`.
///
/// # Safety
/// `map` must be a live handle, `point` a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn graphdyn_evaluate(
    map: *const GraphdynMap,
    point: *const c_char,
    out: *mut *mut c_char,
) -> GraphdynStatus {
    guard(|| {
        let f = handle(map)?;
        let x = f.parse_point(text(point, "point")?)?;
        put_string(out, f.format_point(&f.evaluate(&x)?))
    })
}

/// All preimages of a point as a JSON array of `"edge:p/q"` strings.
///
/// # Safety
/// `map` must be a live handle, `point` a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn graphdyn_preimages(
    map: *const GraphdynMap,
    point: *const c_char,
    out: *mut *mut c_char,
) -> GraphdynStatus {
    guard(|| {
        let f = handle(map)?;
        let x = f.parse_point(text(point, "point")?)?;
        let pre = f.preimages(&x)?;
        put_string(out, report::points(f.graph(), &pre.points).to_string())
    })
}

/// Topological entropy from the Markov partition found within `depth` steps.
///
/// # Safety
/// `map` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn graphdyn_entropy(map: *const GraphdynMap, depth: usize, out: *mut f64) -> GraphdynStatus {
    guard(|| {
        let f = handle(map)?;
        let mp = markov_partition(f, depth)?;
        put(out, entropy(&mp.matrix)?)
    })
}

/// Backward branch of length `depth` from `start`, steered toward the
/// periodic orbit through `target`, as the JSON branch export.
///
/// # Safety
/// `map` must be a live handle, `start` and `target` NUL-terminated strings
/// and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn graphdyn_steer(
    map: *const GraphdynMap,
    start: *const c_char,
    target: *const c_char,
    depth: usize,
    out: *mut *mut c_char,
) -> GraphdynStatus {
    guard(|| {
        let f = handle(map)?;
        let x = f.parse_point(text(start, "start")?)?;
        let z = f.parse_point(text(target, "target")?)?;
        let orbit = PeriodicOrbit::from_point(f, &z, RECURRENCE_PERIOD_BOUND, Certificate::ExactSolve)
            .ok_or_else(|| Error::Domain(format!("{} is not periodic", f.format_point(&z))))?;
        let plan = SteeringPlan::toward(&orbit.cycle)?;
        let branch = steer_branch(f, &x, &plan, depth)?;
        put_string(out, report::branch_export(f, &branch, Some(&plan)).to_string())
    })
}

/// Runs a verification suite (`"mixing"`, `"zero-entropy"`, `"figure2"`,
/// `"chain"`) on the map and returns the suite report as JSON.
///
/// # Safety
/// `map` must be a live handle, `suite` a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn graphdyn_verify(
    map: *const GraphdynMap,
    suite: *const c_char,
    seed: u64,
    out: *mut *mut c_char,
) -> GraphdynStatus {
    guard(|| {
        let f = handle(map)?;
        let suite = Suite::parse(text(suite, "suite")?)?;
        let cfg = SuiteConfig { budget: None, seed, limits: Limits::default() };
        let rep = suites::run(suite, f, &cfg)?;
        put_string(out, serde_json::to_string(&rep).map_err(|e| Failure(GraphdynStatus::Internal, e.to_string()))?)
    })
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn graphdyn_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
