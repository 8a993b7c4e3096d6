use std::ffi::{CStr, CString};
use std::os::raw::c_char;
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use troplog_ffi::*;

unsafe fn take(s: *mut c_char) -> String {
    assert!(!s.is_null());
    let out = CStr::from_ptr(s).to_str().unwrap().to_owned();
    troplog_string_free(s);
    out
}

fn fixture(name: &str) -> CString {
    let p = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/fixtures").join(name);
    CString::new(std::fs::read_to_string(p).unwrap()).unwrap()
}

#[test]
fn kontsevich_numbers() {
    let expect = ["1", "1", "12", "620", "87304"];
    for (d, e) in (1..=5).zip(expect) {
        let mut s = ptr::null_mut();
        assert_eq!(unsafe { troplog_kontsevich(d, &mut s) }, TroplogStatus::Ok);
        assert_eq!(unsafe { take(s) }, e);
    }
}

#[test]
fn conic_count_through_handle() {
    unsafe {
        let mut r = ptr::null_mut();
        assert_eq!(troplog_count(2, 0, 7, 5, &mut r), TroplogStatus::Ok);
        let mut s = ptr::null_mut();
        assert_eq!(troplog_count_report_total(r, &mut s), TroplogStatus::Ok);
        assert_eq!(take(s), "1");
        let mut n = 0usize;
        assert_eq!(troplog_count_report_len(r, &mut n), TroplogStatus::Ok);
        assert_eq!(n, 1);
        assert_eq!(troplog_count_report_to_json(r, true, &mut s), TroplogStatus::Ok);
        let v: serde_json::Value = serde_json::from_str(&take(s)).unwrap();
        assert_eq!(v["count"], serde_json::json!(1));
        assert!(v["per_type"][0]["solution"].is_object());
        troplog_count_report_free(r);
    }
}

#[test]
fn errors_carry_status_and_message() {
    unsafe {
        let mut s = ptr::null_mut();
        assert_eq!(troplog_kontsevich(0, &mut s), TroplogStatus::OutOfRange);
        assert!(take(troplog_last_error()).contains("positive"));
        assert_eq!(troplog_kontsevich(1, ptr::null_mut()), TroplogStatus::NullPointer);
        let bad = CString::new("{not json").unwrap();
        assert_eq!(troplog_flatten_json(bad.as_ptr(), 4, &mut s), TroplogStatus::InvalidInput);
        assert_eq!(troplog_flatten_json(ptr::null(), 4, &mut s), TroplogStatus::NullPointer);
        let mut r = ptr::null_mut();
        assert_eq!(troplog_count(9, 0, 0, 0, &mut r), TroplogStatus::BoundsExceeded);
        assert!(r.is_null());
        troplog_count_report_free(ptr::null_mut());
        troplog_rigid_free(ptr::null_mut());
        troplog_string_free(ptr::null_mut());
    }
}

#[test]
fn rigid_data_of_line_and_chain() {
    unsafe {
        let mut h = ptr::null_mut();
        assert_eq!(troplog_rigid_from_json(fixture("line_setup.json").as_ptr(), &mut h), TroplogStatus::Ok);
        let mut n = 0usize;
        assert_eq!(troplog_rigid_len(h, &mut n), TroplogStatus::Ok);
        assert_eq!(n, 1);
        let mut s = ptr::null_mut();
        assert_eq!(troplog_rigid_coefficient(h, 0, &mut s), TroplogStatus::Ok);
        assert_eq!(take(s), "1");
        assert_eq!(troplog_rigid_coefficient(h, 1, &mut s), TroplogStatus::OutOfRange);
        assert_eq!(troplog_rigid_to_json(h, 0, &mut s), TroplogStatus::Ok);
        let v: serde_json::Value = serde_json::from_str(&take(s)).unwrap();
        assert_eq!(v["coefficient"], "1");
        troplog_rigid_free(h);

        assert_eq!(troplog_rigid_from_json(fixture("chain_setup.json").as_ptr(), &mut h), TroplogStatus::Ok);
        assert_eq!(troplog_rigid_len(h, &mut n), TroplogStatus::Ok);
        let coeffs: Vec<String> = (0..n)
            .map(|i| {
                let mut s = ptr::null_mut();
                assert_eq!(troplog_rigid_coefficient(h, i, &mut s), TroplogStatus::Ok);
                take(s)
            })
            .collect();
        let mut sorted = coeffs.clone();
        sorted.sort();
        assert_eq!(sorted, ["1/2", "1/2", "2"]);
        troplog_rigid_free(h);
    }
}

#[test]
fn flatten_and_quotient() {
    unsafe {
        let mut s = ptr::null_mut();
        assert_eq!(troplog_flatten_json(fixture("eval_chain.json").as_ptr(), 8, &mut s), TroplogStatus::Ok);
        let v: serde_json::Value = serde_json::from_str(&take(s)).unwrap();
        assert_eq!(v["flat"], true);
        assert_eq!(v["domain_subdivided"], false);
        assert_eq!(troplog_flatten_json(fixture("eval_chain.json").as_ptr(), 0, &mut s), TroplogStatus::IterationLimit);

        let p2 = CString::new(r#"{"rank":2,"cones":[{"rays":[[1,0],[0,1]]},{"rays":[[0,1],[-1,-1]]},{"rays":[[-1,-1],[1,0]]}]}"#).unwrap();
        let dir = [1i64, 1];
        assert_eq!(troplog_quotient_fan_json(p2.as_ptr(), dir.as_ptr(), 2, &mut s), TroplogStatus::Ok);
        let v: serde_json::Value = serde_json::from_str(&take(s)).unwrap();
        assert_eq!(v["rank"], 1);
        assert_eq!(v["cones"].as_array().unwrap().len(), 2);
    }
}

/// Compiles a C program against the generated header and links it with the static library.
#[test]
fn c_program_links_against_header() {
    let root = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let header = root.join("include/troplog.h");
    assert!(std::fs::read_to_string(&header).unwrap().contains("troplog_count_report_free"));
    let target = std::env::var_os("CARGO_TARGET_DIR").map(PathBuf::from).unwrap_or_else(|| root.join("../../target"));
    let profile = if cfg!(debug_assertions) { "debug" } else { "release" };
    let lib = target.join(profile).join("libtroplog_ffi.a");
    let cc = std::env::var("CC").unwrap_or_else(|_| "cc".into());
    if !lib.exists() || Command::new(&cc).arg("--version").output().is_err() {
        eprintln!("skipping link test: no C compiler or static library");
        return;
    }
    let dir = tempfile::tempdir().unwrap();
    let exe = dir.path().join("smoke");
    let st = Command::new(&cc)
        .arg(root.join("tests/c/smoke.c"))
        .arg("-I")
        .arg(root.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .unwrap();
    assert!(st.success());
    let out = Command::new(&exe).output().unwrap();
    assert!(out.status.success(), "exit {:?}", out.status.code());
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "ok");
}
