use std::ffi::{CStr, CString};
use std::os::raw::c_char;
use std::ptr;

use decat_ffi::*;

fn take(s: *mut c_char) -> String {
    assert!(!s.is_null());
    let out = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_string();
    unsafe { decat_string_free(s) };
    out
}

fn last_error() -> String {
    let p = decat_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_string()
}

#[test]
fn sym_round_trip() {
    let s1 = CString::new(r#"[{"partition": [1], "coeff": "1"}]"#).unwrap();
    unsafe {
        let mut x = ptr::null_mut();
        assert_eq!(decat_sym_from_json(s1.as_ptr(), &mut x), DecatStatus::Ok);
        let mut y = ptr::null_mut();
        assert_eq!(decat_sym_mul(x, x, &mut y), DecatStatus::Ok);
        let mut out = ptr::null_mut();
        assert_eq!(decat_sym_to_json(y, &mut out), DecatStatus::Ok);
        let v: serde_json::Value = serde_json::from_str(&take(out)).unwrap();
        assert_eq!(v, serde_json::json!([{"partition": [1, 1], "coeff": "1"}, {"partition": [2], "coeff": "1"}]));
        decat_sym_free(x);
        decat_sym_free(y);
    }
}

#[test]
fn errors_are_reported() {
    let bad = CString::new("[{\"partition\": [1, 2], \"coeff\": \"1\"}]").unwrap();
    unsafe {
        let mut x = ptr::null_mut();
        assert_eq!(decat_sym_from_json(bad.as_ptr(), &mut x), DecatStatus::Domain);
        assert!(x.is_null());
        assert!(!last_error().is_empty());
        assert_eq!(decat_sym_from_json(ptr::null(), &mut x), DecatStatus::NullPointer);
        let junk = CString::new("not json").unwrap();
        assert_eq!(decat_sym_from_json(junk.as_ptr(), &mut x), DecatStatus::Parse);
        let mut passed = 0;
        let mut report = ptr::null_mut();
        let name = CString::new("nope").unwrap();
        assert_eq!(decat_run_suite(name.as_ptr(), ptr::null(), &mut passed, &mut report), DecatStatus::UnknownSuite);
        // a success clears the slot
        let ok = CString::new("[]").unwrap();
        assert_eq!(decat_sym_from_json(ok.as_ptr(), &mut x), DecatStatus::Ok);
        assert!(decat_last_error().is_null());
        decat_sym_free(x);
        decat_sym_free(ptr::null_mut());
    }
}

#[test]
fn current_normal_form() {
    let w = CString::new("E0 F0").unwrap();
    unsafe {
        let mut out = ptr::null_mut();
        assert_eq!(decat_current_normal_form(w.as_ptr(), 1, &mut out), DecatStatus::Ok);
        let v: serde_json::Value = serde_json::from_str(&take(out)).unwrap();
        assert_eq!(v["terms"].as_array().unwrap().len(), 2);
        let odd = CString::new("E0^(2) F0^(3)").unwrap();
        assert_eq!(decat_current_normal_form(odd.as_ptr(), 0, &mut out), DecatStatus::Ok);
        take(out);
    }
}

#[test]
fn trace_compose_and_transport() {
    // Ê 1_0 then F̂ 1_2
    let e = CString::new(r#"{"source": 0, "target": 2, "terms": [{"b": 0, "mu": [], "tau": [], "a": 1, "lambda": [], "coeff": "1"}]}"#).unwrap();
    let f = CString::new(r#"{"source": 2, "target": 0, "terms": [{"b": 1, "mu": [], "tau": [], "a": 0, "lambda": [], "coeff": "1"}]}"#).unwrap();
    unsafe {
        let (mut x, mut y, mut z) = (ptr::null_mut(), ptr::null_mut(), ptr::null_mut());
        assert_eq!(decat_trace_from_json(e.as_ptr(), &mut x), DecatStatus::Ok);
        assert_eq!(decat_trace_from_json(f.as_ptr(), &mut y), DecatStatus::Ok);
        assert_eq!(decat_trace_compose(y, x, &mut z), DecatStatus::Ok);
        let mut out = ptr::null_mut();
        assert_eq!(decat_trace_to_json(z, &mut out), DecatStatus::Ok);
        let v: serde_json::Value = serde_json::from_str(&take(out)).unwrap();
        assert_eq!(v["source"], 0);
        assert_eq!(v["target"], 0);
        assert_eq!(decat_trace_to_current_json(z, &mut out), DecatStatus::Ok);
        take(out);
        // wrong order: weights do not match
        let mut w = ptr::null_mut();
        assert_eq!(decat_trace_compose(x, x, &mut w), DecatStatus::Domain);
        decat_trace_free(x);
        decat_trace_free(y);
        decat_trace_free(z);
    }
}

#[test]
fn hochschild_of_a_chain() {
    let c = CString::new(
        r#"{"objects": ["x", "y"],
            "homs": {"x->x": {"rank": 1, "basis": ["1x"]}, "y->y": {"rank": 1, "basis": ["1y"]}, "x->y": {"rank": 1, "basis": ["f"]}},
            "compose": [
              {"g": "1x", "f": "1x", "result": [{"basis": "1x", "coeff": 1}]},
              {"g": "1y", "f": "1y", "result": [{"basis": "1y", "coeff": 1}]},
              {"g": "1y", "f": "f", "result": [{"basis": "f", "coeff": 1}]},
              {"g": "f", "f": "1x", "result": [{"basis": "f", "coeff": 1}]}],
            "identities": {"x": [{"basis": "1x", "coeff": 1}], "y": [{"basis": "1y", "coeff": 1}]}}"#,
    )
    .unwrap();
    unsafe {
        let mut cat = ptr::null_mut();
        assert_eq!(decat_category_from_json(c.as_ptr(), &mut cat), DecatStatus::Ok);
        let mut out = ptr::null_mut();
        assert_eq!(decat_category_hh_json(cat, 4, &mut out), DecatStatus::Ok);
        let v: serde_json::Value = serde_json::from_str(&take(out)).unwrap();
        assert_eq!(v[0]["free"], 2);
        for i in 1..4 {
            assert_eq!(v[i]["free"], 0);
        }
        decat_category_free(cat);
    }
}

#[test]
fn run_suite_with_bounds() {
    let name = CString::new("r7").unwrap();
    let bounds = CString::new(r#"{"index": 3, "weight": 2}"#).unwrap();
    unsafe {
        let mut passed = -1;
        let mut report = ptr::null_mut();
        assert_eq!(decat_run_suite(name.as_ptr(), bounds.as_ptr(), &mut passed, &mut report), DecatStatus::Ok);
        assert_eq!(passed, 1);
        let v: serde_json::Value = serde_json::from_str(&take(report)).unwrap();
        assert_eq!(v["suite"], "r7");
        let bad = CString::new(r#"{"nonsense": 3}"#).unwrap();
        assert_eq!(decat_run_suite(name.as_ptr(), bad.as_ptr(), &mut passed, &mut report), DecatStatus::Parse);
    }
}

#[test]
fn header_declares_every_export() {
    let header = include_str!("../include/decat.h");
    let src = include_str!("../src/lib.rs");
    let exported: Vec<&str> = src
        .lines()
        .filter_map(|l| l.split("extern \"C\" fn ").nth(1))
        .map(|rest| rest.split('(').next().unwrap())
        .collect();
    assert!(exported.len() >= 15, "{exported:?}");
    for name in exported {
        assert!(header.contains(&format!("{name}(")), "{name} missing from header");
    }
}

#[test]
fn header_compiles_as_c() {
    let Ok(cc) = which_cc() else { return };
    let dir = env!("CARGO_MANIFEST_DIR");
    let status = std::process::Command::new(cc)
        .args(["-fsyntax-only", "-Wall", "-Werror", "-x", "c", &format!("{dir}/include/decat.h")])
        .status()
        .unwrap();
    assert!(status.success());
}

fn which_cc() -> Result<&'static str, ()> {
    for cc in ["cc", "gcc", "clang"] {
        if std::process::Command::new(cc).arg("--version").output().is_ok() {
            return Ok(cc);
        }
    }
    Err(())
}
