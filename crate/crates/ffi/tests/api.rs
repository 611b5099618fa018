use std::ffi::{CStr, CString};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::ptr;

use pkarr_ffi::*;
use serde_json::Value;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

fn take(p: *mut std::ffi::c_char) -> Value {
    assert!(!p.is_null());
    let v = serde_json::from_str(unsafe { CStr::from_ptr(p) }.to_str().unwrap()).unwrap();
    unsafe { pkarr_string_free(p) };
    v
}

fn last_error() -> String {
    let p = pkarr_last_error();
    assert!(!p.is_null(), "expected an error message");
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

fn catalog(name: &str, params: &[i64]) -> *mut PkarrArrangement {
    let mut h = ptr::null_mut();
    let st = unsafe { pkarr_catalog_build(c(name).as_ptr(), params.as_ptr(), params.len(), &mut h) };
    assert_eq!(st, PkarrStatus::Ok);
    h
}

#[test]
fn lattice_and_check_round_trip() {
    let h = catalog("hesse", &[]);
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { pkarr_lattice_json(h, &mut out) }, PkarrStatus::Ok);
    let v = take(out);
    assert_eq!(v["signature"]["4"], 9);
    assert_eq!(v["signature"]["2"], 12);
    assert!(pkarr_last_error().is_null());

    let mut passes = false;
    let st = unsafe {
        pkarr_check_json(h, PKARR_CHECK_REQUIRE_EQUALITY | PKARR_CHECK_DOUBLES_AS_SINGULAR, &mut out, &mut passes)
    };
    assert_eq!(st, PkarrStatus::Ok);
    let v = take(out);
    assert!(passes);
    assert_eq!(v["check"]["classification"], "pk_candidate_equality");
    assert_eq!(v["doubles_as_singular"]["agree"], true);
    unsafe { pkarr_arrangement_free(h) };
}

#[test]
fn weights_from_json_drive_the_verdict() {
    let h = catalog("quadrilateral", &[]);
    let w = c(r#"{"x":"2/3","y":"2/3","z":"2/3","x-y":"2/3","y-z":"2/3","x-z":"2/3"}"#);
    assert_eq!(unsafe { pkarr_arrangement_set_weights_json(h, w.as_ptr()) }, PkarrStatus::Ok);
    let mut out = ptr::null_mut();
    let mut passes = true;
    assert_eq!(unsafe { pkarr_check_json(h, 0, &mut out, &mut passes) }, PkarrStatus::Ok);
    let v = take(out);
    assert!(!passes);
    assert_eq!(v["check"]["eq1_residuals"][0]["value"], "1/3");

    let partial = c(r#"{"x":"1/2"}"#);
    assert_eq!(unsafe { pkarr_arrangement_set_weights_json(h, partial.as_ptr()) }, PkarrStatus::WeightsMissing);
    assert!(last_error().contains("weights"));
    unsafe { pkarr_arrangement_free(h) };
}

#[test]
fn solve_and_parabolic() {
    let h = catalog("quadrilateral", &[]);
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { pkarr_solve_json(h, &mut out) }, PkarrStatus::Ok);
    assert_eq!(take(out)["solve"]["dimension"], 3);
    let mut passes = false;
    assert_eq!(unsafe { pkarr_parabolic_json(h, 0, false, &mut out, &mut passes) }, PkarrStatus::Ok);
    let v = take(out);
    assert!(passes);
    assert_eq!(v["stability"]["n_min"], 25);
    assert_eq!(v["parabolic"]["pardeg"], "0");
    unsafe { pkarr_arrangement_free(h) };

    let np = catalog("near_pencil", &[5]);
    assert_eq!(
        unsafe { pkarr_parabolic_json(np, 0, false, &mut out, ptr::null_mut()) },
        PkarrStatus::InadmissibleWeights
    );
    unsafe { pkarr_arrangement_free(np) };
}

#[test]
fn arrangement_from_json_and_connection() {
    let text = c(r#"{"field": "rational", "lines": [
        {"name": "x", "coeffs": ["1","0","0"]}, {"name": "y", "coeffs": ["0","1","0"]},
        {"name": "z", "coeffs": ["0","0","1"]}, {"name": "w", "coeffs": ["1","1","1"]}]}"#);
    let mut h = ptr::null_mut();
    assert_eq!(unsafe { pkarr_arrangement_from_json(text.as_ptr(), &mut h) }, PkarrStatus::Ok);
    let mut n = 0usize;
    assert_eq!(unsafe { pkarr_arrangement_line_count(h, &mut n) }, PkarrStatus::Ok);
    assert_eq!(n, 4);
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { pkarr_check_json(h, 0, &mut out, ptr::null_mut()) }, PkarrStatus::WeightsMissing);
    assert!(out.is_null());
    unsafe { pkarr_arrangement_free(h) };

    let conn = c(r#"{"origin_lines": [["1","0"],["0","1"],["1","1"]], "weights": ["1/2","1/2","1/2"]}"#);
    let mut passes = false;
    assert_eq!(unsafe { pkarr_connection_verify_json(conn.as_ptr(), &mut out, &mut passes) }, PkarrStatus::Ok);
    assert!(passes);
    assert_eq!(take(out)["dimension"], 0);
}

#[test]
fn error_codes() {
    let mut h = ptr::null_mut();
    let bad = c("{ not json");
    assert_eq!(unsafe { pkarr_arrangement_from_json(bad.as_ptr(), &mut h) }, PkarrStatus::ParseError);
    assert!(h.is_null());
    assert_eq!(unsafe { pkarr_arrangement_from_json(ptr::null(), &mut h) }, PkarrStatus::NullPointer);
    let name = c("quadrilateral");
    assert_eq!(
        unsafe { pkarr_catalog_build(name.as_ptr(), ptr::null(), 0, ptr::null_mut()) },
        PkarrStatus::NullPointer
    );
    let np = c("near_pencil");
    assert_eq!(unsafe { pkarr_catalog_build(np.as_ptr(), [1i64].as_ptr(), 1, &mut h) }, PkarrStatus::InvalidInput);
    assert!(last_error().contains("out of range"));
    let dup = c(
        r#"{"field": "rational", "lines": [{"name": "a", "coeffs": ["1","0","0"]}, {"name": "b", "coeffs": ["2","0","0"]}]}"#,
    );
    assert_eq!(unsafe { pkarr_arrangement_from_json(dup.as_ptr(), &mut h) }, PkarrStatus::InvalidInput);
    let invalid = [0xffu8, 0];
    assert_eq!(unsafe { pkarr_arrangement_from_json(invalid.as_ptr().cast(), &mut h) }, PkarrStatus::InvalidUtf8);
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { pkarr_lattice_json(ptr::null(), &mut out) }, PkarrStatus::NullPointer);
    unsafe {
        pkarr_arrangement_free(ptr::null_mut());
        pkarr_string_free(ptr::null_mut());
    }
}

fn target_dir() -> PathBuf {
    // tests/ runs from target/<profile>/deps
    let exe = std::env::current_exe().unwrap();
    exe.parent().unwrap().parent().unwrap().to_path_buf()
}

#[test]
fn header_is_current_and_c_program_links() {
    let root = Path::new(env!("CARGO_MANIFEST_DIR"));
    let header = std::fs::read_to_string(root.join("include/pkarr.h")).unwrap();
    for sym in [
        "pkarr_catalog_build",
        "pkarr_check_json",
        "pkarr_last_error",
        "PKARR_STATUS_INADMISSIBLE_WEIGHTS",
        "typedef struct PkarrArrangement",
    ] {
        assert!(header.contains(sym), "header lacks {sym}");
    }
    let lib = target_dir().join("libpkarr_ffi.a");
    let cc = Command::new("cc").arg("--version").output();
    if !lib.exists() || cc.is_err() {
        eprintln!("skipping C link check: {} or cc unavailable", lib.display());
        return;
    }
    let dir = tempfile::TempDir::new().unwrap();
    let exe = dir.path().join("smoke");
    let status = Command::new("cc")
        .arg(root.join("tests/c/smoke.c"))
        .arg("-I")
        .arg(root.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .unwrap();
    assert!(status.success(), "C smoke program failed to build");
    let run = Command::new(&exe).output().unwrap();
    assert!(run.status.success(), "{}", String::from_utf8_lossy(&run.stderr));
    assert!(String::from_utf8_lossy(&run.stdout).starts_with("ok "));
}
