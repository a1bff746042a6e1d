use std::ffi::{CStr, CString};
use std::ptr;

use hyperherm_ffi::*;

fn take(s: *mut std::ffi::c_char) -> String {
    assert!(!s.is_null());
    let out = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_string();
    unsafe { hh_string_free(s) };
    out
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(hh_last_error()) }.to_str().unwrap().to_string()
}

#[test]
fn numeric_report() {
    let lam = CString::new("1,2,2,1").unwrap();
    let mut rep = ptr::null_mut();
    assert_eq!(unsafe { hh_analyze(lam.as_ptr(), &mut rep) }, HhStatus::Ok);
    let mut tau = ptr::null_mut();
    assert_eq!(unsafe { hh_report_tau(rep, &mut tau) }, HhStatus::Ok);
    assert_eq!(take(tau), "0");
    let mut iso = false;
    assert_eq!(unsafe { hh_report_isotropic_hyper(rep, &mut iso) }, HhStatus::Ok);
    assert!(iso);
    let mut json = ptr::null_mut();
    assert_eq!(unsafe { hh_report_json(rep, &mut json) }, HhStatus::Ok);
    let json = take(json);
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v["flags"]["isotropic_hyper"], true);
    unsafe { hh_report_free(rep) };
}

#[test]
fn symbolic_report_from_null_lambda() {
    let mut rep = ptr::null_mut();
    assert_eq!(unsafe { hh_analyze(ptr::null(), &mut rep) }, HhStatus::Ok);
    let mut tau = ptr::null_mut();
    assert_eq!(unsafe { hh_report_tau(rep, &mut tau) }, HhStatus::Ok);
    assert_eq!(take(tau), "-3/2*(l1^2 + l2^2 - l3^2 - l4^2)");
    let mut text = ptr::null_mut();
    assert_eq!(unsafe { hh_report_text(rep, &mut text) }, HhStatus::Ok);
    assert!(take(text).contains("tau = -3/2*"));
    unsafe { hh_report_free(rep) };
}

#[test]
fn errors_are_reported() {
    let bad = CString::new("1,2,0.5,1").unwrap();
    let mut rep = ptr::null_mut();
    assert_eq!(unsafe { hh_analyze(bad.as_ptr(), &mut rep) }, HhStatus::Usage);
    assert!(rep.is_null());
    assert!(last_error().contains("decimal"));
    assert_eq!(unsafe { hh_analyze(ptr::null(), ptr::null_mut()) }, HhStatus::NullPointer);
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { hh_report_json(ptr::null(), &mut s) }, HhStatus::NullPointer);
    let invalid = [0xffu8, 0];
    assert_eq!(unsafe { hh_analyze(invalid.as_ptr().cast(), &mut rep) }, HhStatus::InvalidUtf8);
    unsafe {
        hh_report_free(ptr::null_mut());
        hh_verify_free(ptr::null_mut());
        hh_string_free(ptr::null_mut());
    }
    assert_eq!(unsafe { hh_verify_exit_code(ptr::null()) }, -1);
}

#[test]
fn verify_handle() {
    let skip = CString::new("projectors, structural-group").unwrap();
    let mut v = ptr::null_mut();
    assert_eq!(unsafe { hh_verify(false, skip.as_ptr(), &mut v) }, HhStatus::Ok);
    assert_eq!(unsafe { hh_verify_exit_code(v) }, 0);
    assert!(unsafe { hh_verify_flag_count(v) } >= 1);
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { hh_verify_render(v, &mut out) }, HhStatus::Ok);
    assert!(take(out).contains("summary:"));
    unsafe { hh_verify_free(v) };

    let mut strict = ptr::null_mut();
    assert_eq!(unsafe { hh_verify(true, skip.as_ptr(), &mut strict) }, HhStatus::Ok);
    assert_eq!(unsafe { hh_verify_exit_code(strict) }, 2);
    unsafe { hh_verify_free(strict) };

    let unknown = CString::new("nope").unwrap();
    let mut x = ptr::null_mut();
    assert_eq!(unsafe { hh_verify(false, unknown.as_ptr(), &mut x) }, HhStatus::Usage);
}

#[test]
fn decompose_seeded_and_text() {
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { hh_decompose(2, ptr::null(), 11, &mut out) }, HhStatus::Ok);
    let v: serde_json::Value = serde_json::from_str(&take(out)).unwrap();
    assert_eq!(v["reconstructs"], true);

    let g = CString::new("-1 0 0 0\n0 -1 0 0\n0 0 1 0\n0 0 0 1\n").unwrap();
    assert_eq!(unsafe { hh_decompose(1, g.as_ptr(), 0, &mut out) }, HhStatus::Ok);
    let v: serde_json::Value = serde_json::from_str(&take(out)).unwrap();
    assert_eq!(v["parts"][1]["matrix"], v["input"]);

    assert_eq!(unsafe { hh_decompose(2, g.as_ptr(), 0, &mut out) }, HhStatus::Usage);
    assert!(out.is_null());
    assert_eq!(unsafe { hh_decompose(0, ptr::null(), 0, &mut out) }, HhStatus::Usage);
}

#[test]
fn header_declares_every_export() {
    let header = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/hyperherm.h")).unwrap();
    for sym in [
        "hh_analyze", "hh_report_free", "hh_report_json", "hh_report_text", "hh_report_tau",
        "hh_report_isotropic_hyper", "hh_verify", "hh_verify_exit_code", "hh_verify_flag_count",
        "hh_verify_render", "hh_verify_free", "hh_decompose", "hh_last_error", "hh_string_free",
        "typedef struct HhReport HhReport", "typedef struct HhVerify HhVerify", "HH_STATUS_USAGE = 3",
    ] {
        assert!(header.contains(sym), "{sym} missing from header");
    }
}
