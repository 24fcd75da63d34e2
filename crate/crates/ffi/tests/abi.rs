use std::ffi::{CStr, CString};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::ptr;

use convex_codes_ffi::*;

const C22: &str = "134,1357,257,356,13,35,57";
const C24: &str = "123,1246,145,356,12,14,3,5,6";

fn parse(s: &str) -> *mut CcCode {
    let text = CString::new(s).unwrap();
    let mut code = ptr::null_mut();
    assert_eq!(unsafe { cc_code_parse(text.as_ptr(), &mut code) }, CcStatus::Ok);
    assert!(!code.is_null());
    code
}

fn take(s: *mut std::ffi::c_char) -> String {
    assert!(!s.is_null());
    let out = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_string();
    unsafe { cc_string_free(s) };
    out
}

fn last_error() -> String {
    let p = cc_last_error_message();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_string()
}

fn verdict(s: &str) -> CcVerdict {
    let code = parse(s);
    let mut v = CcVerdict::Unknown;
    assert_eq!(unsafe { cc_decide(code, 0, &mut v) }, CcStatus::Ok);
    unsafe { cc_code_free(code) };
    v
}

#[test]
fn verdicts_match_the_library() {
    assert_eq!(verdict(C22), CcVerdict::Convex);
    assert_eq!(verdict(C24), CcVerdict::Nonconvex);
    assert_eq!(verdict("12,23"), CcVerdict::Nonconvex);
    assert_eq!(verdict("123,134,145,2345,13,14,23,34,45,4,5,3"), CcVerdict::Nonconvex);
}

#[test]
fn code_handles() {
    let code = parse("{1,3},{2}");
    let (mut n, mut len) = (0u32, 0usize);
    assert_eq!(unsafe { cc_code_size(code, &mut n, &mut len) }, CcStatus::Ok);
    assert_eq!((n, len), (3, 3));
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { cc_code_to_text(code, &mut out) }, CcStatus::Ok);
    assert_eq!(take(out), "{},2,13");
    unsafe { cc_code_free(code) };
    unsafe { cc_code_free(ptr::null_mut()) };
}

#[test]
fn errors_are_reported() {
    let mut code = ptr::null_mut();
    let bad = CString::new("1,x").unwrap();
    assert_eq!(unsafe { cc_code_parse(bad.as_ptr(), &mut code) }, CcStatus::ParseError);
    assert!(code.is_null());
    assert!(last_error().contains("parse error"), "{}", last_error());
    assert_eq!(unsafe { cc_code_parse(ptr::null(), &mut code) }, CcStatus::NullPointer);
    let invalid = [0xffu8, 0];
    assert_eq!(unsafe { cc_code_parse(invalid.as_ptr().cast(), &mut code) }, CcStatus::InvalidUtf8);
    let mut v = CcVerdict::Convex;
    assert_eq!(unsafe { cc_decide(ptr::null(), 0, &mut v) }, CcStatus::NullPointer);
}

#[test]
fn realize_and_verify() {
    let code = parse(C22);
    let mut doc = ptr::null_mut();
    assert_eq!(unsafe { cc_realize_json(code, &mut doc) }, CcStatus::Ok);
    let text = take(doc);
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["dimension"], 2);
    assert!(v["construction"].as_str().unwrap().starts_with("L22Case"));

    let ctext = CString::new(text).unwrap();
    let mut report = ptr::null_mut();
    assert_eq!(unsafe { cc_verify_json(code, ctext.as_ptr(), &mut report) }, CcStatus::Ok);
    assert_eq!(serde_json::from_str::<serde_json::Value>(&take(report)).unwrap()["ok"], true);

    // the same document against a smaller code
    let other = parse("134,1357,257,356,13,35");
    assert_eq!(unsafe { cc_verify_json(other, ctext.as_ptr(), &mut report) }, CcStatus::VerificationFailed);
    let r: serde_json::Value = serde_json::from_str(&take(report)).unwrap();
    assert_eq!(r["extra"], serde_json::json!([[5, 7]]));
    let junk = CString::new("{").unwrap();
    assert_eq!(unsafe { cc_verify_json(other, junk.as_ptr(), ptr::null_mut()) }, CcStatus::DocumentError);
    unsafe { cc_code_free(other) };
    unsafe { cc_code_free(code) };

    let c24 = parse(C24);
    assert_eq!(unsafe { cc_realize_json(c24, &mut doc) }, CcStatus::Precondition);
    assert!(doc.is_null());
    unsafe { cc_code_free(c24) };
    let uncovered = parse("12,23,2");
    assert_eq!(unsafe { cc_realize_json(uncovered, &mut doc) }, CcStatus::NotCovered);
    unsafe { cc_code_free(uncovered) };
}

#[test]
fn analyze_json_has_report_keys() {
    let code = parse(C24);
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { cc_analyze_json(code, 0, &mut out) }, CcStatus::Ok);
    let v: serde_json::Value = serde_json::from_str(&take(out)).unwrap();
    assert_eq!(v["verdict"], "NONCONVEX");
    assert_eq!(v["sprocket"]["valid"], true);
    unsafe { cc_code_free(code) };
}

#[test]
fn header_declares_the_api() {
    let header = std::fs::read_to_string(Path::new(env!("CARGO_MANIFEST_DIR")).join("include/convex_codes.h")).unwrap();
    for name in [
        "typedef struct CcCode CcCode;",
        "CC_STATUS_NOT_COVERED = 5",
        "CC_VERDICT_UNKNOWN = 2",
        "cc_code_parse(",
        "cc_code_free(",
        "cc_decide(",
        "cc_analyze_json(",
        "cc_realize_json(",
        "cc_verify_json(",
        "cc_string_free(",
        "cc_last_error_message(void)",
    ] {
        assert!(header.contains(name), "header lacks {name}");
    }
}

fn target_dir() -> PathBuf {
    // tests/abi-<hash> lives in target/<profile>/deps
    let exe = std::env::current_exe().unwrap();
    exe.parent().unwrap().parent().unwrap().to_path_buf()
}

#[test]
fn c_program_links_against_the_static_library() {
    let lib = target_dir().join("libconvex_codes_ffi.a");
    if !lib.exists() || Command::new("cc").arg("--version").output().is_err() {
        eprintln!("skipping: no C compiler or static library at {}", lib.display());
        return;
    }
    let dir = Path::new(env!("CARGO_MANIFEST_DIR"));
    let exe = std::env::temp_dir().join(format!("convex-codes-smoke-{}", std::process::id()));
    let status = Command::new("cc")
        .arg("-std=c99")
        .arg("-Wall")
        .arg("-Werror")
        .arg("-I")
        .arg(dir.join("include"))
        .arg(dir.join("tests/c/smoke.c"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .unwrap();
    assert!(status.success(), "C compile failed");
    let out = Command::new(&exe).output().unwrap();
    let _ = std::fs::remove_file(&exe);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("ok 0.1.0"));
}
