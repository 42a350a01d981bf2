use std::ffi::{c_char, CStr, CString};
use std::ptr;

use graphdyn_ffi::*;

fn owned(s: *mut c_char) -> String {
    assert!(!s.is_null());
    let text = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_string();
    unsafe { graphdyn_string_free(s) };
    text
}

fn last_error() -> String {
    let p = graphdyn_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_string()
}

fn builtin(name: &str) -> *mut GraphdynMap {
    let name = CString::new(name).unwrap();
    let mut map = ptr::null_mut();
    assert_eq!(unsafe { graphdyn_map_builtin(name.as_ptr(), &mut map) }, GraphdynStatus::Ok);
    map
}

#[test]
fn evaluate_and_preimages() {
    let map = builtin("tent");
    let p = CString::new("e0:2/5").unwrap();
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { graphdyn_evaluate(map, p.as_ptr(), &mut out) }, GraphdynStatus::Ok);
    assert_eq!(owned(out), "e0:4/5");
    assert_eq!(unsafe { graphdyn_preimages(map, p.as_ptr(), &mut out) }, GraphdynStatus::Ok);
    assert_eq!(owned(out), r#"["e0:1/5","e0:4/5"]"#);
    unsafe { graphdyn_map_free(map) };
}

#[test]
fn entropy_of_tent() {
    let map = builtin("tent");
    let mut h = 0.0;
    assert_eq!(unsafe { graphdyn_entropy(map, 64, &mut h) }, GraphdynStatus::Ok);
    assert!((h - 2f64.ln()).abs() < 1e-9);
    unsafe { graphdyn_map_free(map) };
}

#[test]
fn json_round_trip() {
    let map = builtin("figure2");
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { graphdyn_map_to_json(map, &mut out) }, GraphdynStatus::Ok);
    let json = CString::new(owned(out)).unwrap();
    let mut copy = ptr::null_mut();
    assert_eq!(unsafe { graphdyn_map_from_json(json.as_ptr(), &mut copy) }, GraphdynStatus::Ok);
    assert_eq!(unsafe { graphdyn_map_to_json(copy, &mut out) }, GraphdynStatus::Ok);
    assert_eq!(owned(out).as_bytes(), json.as_bytes());
    unsafe {
        graphdyn_map_free(map);
        graphdyn_map_free(copy);
    }
}

#[test]
fn steer_returns_verified_branch() {
    let map = builtin("tent");
    let (start, target) = (CString::new("e0:1/2").unwrap(), CString::new("e0:2/3").unwrap());
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { graphdyn_steer(map, start.as_ptr(), target.as_ptr(), 20, &mut out) }, GraphdynStatus::Ok);
    let v: serde_json::Value = serde_json::from_str(&owned(out)).unwrap();
    assert_eq!(v["verified"], true);
    assert_eq!(v["depth"], 20);
    unsafe { graphdyn_map_free(map) };
}

#[test]
fn verify_runs_a_suite() {
    let map = builtin("figure2");
    let suite = CString::new("figure2").unwrap();
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { graphdyn_verify(map, suite.as_ptr(), 1, &mut out) }, GraphdynStatus::Ok);
    let v: serde_json::Value = serde_json::from_str(&owned(out)).unwrap();
    assert_eq!(v["passed"], true);
    unsafe { graphdyn_map_free(map) };
}

#[test]
fn errors_carry_status_and_message() {
    let mut map = ptr::null_mut();
    let bad = CString::new("no_such_map").unwrap();
    assert_eq!(unsafe { graphdyn_map_builtin(bad.as_ptr(), &mut map) }, GraphdynStatus::Parse);
    assert!(map.is_null());
    assert!(last_error().contains("no_such_map"));

    assert_eq!(unsafe { graphdyn_map_builtin(ptr::null(), &mut map) }, GraphdynStatus::NullArgument);
    let mut h = 0.0;
    assert_eq!(unsafe { graphdyn_entropy(ptr::null(), 64, &mut h) }, GraphdynStatus::NullArgument);

    let tent = builtin("tent");
    let p = CString::new("e0:3/2").unwrap();
    let mut out = ptr::null_mut();
    assert_ne!(unsafe { graphdyn_evaluate(tent, p.as_ptr(), &mut out) }, GraphdynStatus::Ok);
    assert!(out.is_null());
    let (start, target) = (CString::new("e0:1/2").unwrap(), CString::new("e0:1/7").unwrap());
    assert_eq!(unsafe { graphdyn_steer(tent, start.as_ptr(), target.as_ptr(), 5, &mut out) }, GraphdynStatus::Domain);
    let invalid = [0xffu8, 0];
    assert_eq!(unsafe { graphdyn_evaluate(tent, invalid.as_ptr().cast(), &mut out) }, GraphdynStatus::InvalidUtf8);
    unsafe { graphdyn_map_free(tent) };
}

#[test]
fn malformed_map_json_is_rejected() {
    let json = CString::new(
        r#"{"name":"odd","graph":{"vertices":["a","b"],"edges":[{"id":"e0","from":"a","to":"b","length":"1"}]},"pieces":[]}"#,
    )
    .unwrap();
    let mut map = ptr::null_mut();
    let status = unsafe { graphdyn_map_from_json(json.as_ptr(), &mut map) };
    assert_ne!(status, GraphdynStatus::Ok);
    assert!(!last_error().is_empty());
}

#[test]
fn not_markov_is_reported() {
    use graphdyn::rational::{q, qi};
    let f = graphdyn::plmap::interval_map(&[qi(0), q(1, 3), qi(1)], &[qi(0), qi(1), q(1, 7)], "odd").unwrap();
    let json = CString::new(f.to_json()).unwrap();
    let mut map = ptr::null_mut();
    assert_eq!(unsafe { graphdyn_map_from_json(json.as_ptr(), &mut map) }, GraphdynStatus::Ok);
    let mut h = -1.0;
    assert_eq!(unsafe { graphdyn_entropy(map, 3, &mut h) }, GraphdynStatus::NotMarkov);
    assert_eq!(h, -1.0);
    assert!(last_error().contains("not Markov"));
    unsafe { graphdyn_map_free(map) };
}

#[test]
fn free_functions_accept_null() {
    unsafe {
        graphdyn_map_free(ptr::null_mut());
        graphdyn_string_free(ptr::null_mut());
    }
    let v = unsafe { CStr::from_ptr(graphdyn_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}
