//! C ABI over `convex_codes`.
//!
//! Every fallible function returns a [`CcStatus`]. On failure the message is
//! kept per thread and read with [`cc_last_error_message`]. Strings handed
//! out by the library are NUL-terminated UTF-8 and must be released with
//! [`cc_string_free`]; codes with [`cc_code_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use convex_codes::decider::{decide_with, DecideOptions, Status};
use convex_codes::realize::{build_realization, export, verify_realization};
use convex_codes::report::analyze_with;
use convex_codes::{parse_code, Error, NeuralCode};

/// Result of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CcStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    Precondition = 4,
    /// No construction covers the code.
    NotCovered = 5,
    VerificationFailed = 6,
    /// Malformed realization document.
    DocumentError = 7,
    /// A panic was caught at the boundary.
    Internal = 8,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CcVerdict {
    Convex = 0,
    Nonconvex = 1,
    Unknown = 2,
}

/// Opaque parsed neural code.
pub struct CcCode(NeuralCode);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let mut msg = msg.into();
    msg.retain(|c| c != '\0');
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(CString::new(msg).expect("NULs removed")));
}

fn fail(status: CcStatus, msg: impl Into<String>) -> CcStatus {
    set_error(msg);
    status
}

fn status_of(e: &Error) -> CcStatus {
    match e {
        Error::Parse { .. } | Error::NeuronOutOfRange(_) | Error::DeclaredNeuronsTooSmall { .. } => {
            CcStatus::ParseError
        }
        Error::Document(_) => CcStatus::DocumentError,
        Error::InvalidRealization(_) => CcStatus::VerificationFailed,
        _ => CcStatus::Precondition,
    }
}

fn guard(f: impl FnOnce() -> CcStatus) -> CcStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(p) => {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".to_string());
            fail(CcStatus::Internal, msg)
        }
    }
}

unsafe fn read_str<'a>(s: *const c_char) -> Result<&'a str, CcStatus> {
    if s.is_null() {
        return Err(fail(CcStatus::NullPointer, "null string argument"));
    }
    CStr::from_ptr(s).to_str().map_err(|e| fail(CcStatus::InvalidUtf8, e.to_string()))
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> CcStatus {
    match CString::new(s) {
        Ok(c) => {
            *out = c.into_raw();
            CcStatus::Ok
        }
        Err(e) => fail(CcStatus::Internal, e.to_string()),
    }
}

fn options(budget: u64) -> DecideOptions {
    if budget == 0 {
        DecideOptions::default()
    } else {
        DecideOptions { budget }
    }
}

fn pretty(v: &serde_json::Value) -> String {
    serde_json::to_string_pretty(v).expect("json value")
}

/// Parses code text such as `"134,1357,13"` or `"{1,3},{2}"`.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cc_code_parse(text: *const c_char, out: *mut *mut CcCode) -> CcStatus {
    guard(|| {
        if out.is_null() {
            return fail(CcStatus::NullPointer, "null output pointer");
        }
        *out = ptr::null_mut();
        let text = match read_str(text) {
            Ok(t) => t,
            Err(s) => return s,
        };
        match parse_code(text) {
            Ok(c) => {
                *out = Box::into_raw(Box::new(CcCode(c)));
                CcStatus::Ok
            }
            Err(e) => fail(status_of(&e), e.to_string()),
        }
    })
}

/// # Safety
/// `code` must come from [`cc_code_parse`] and not be freed twice. NULL is ignored.
#[no_mangle]
pub unsafe extern "C" fn cc_code_free(code: *mut CcCode) {
    if !code.is_null() {
        drop(Box::from_raw(code));
    }
}

/// Declared neuron count and number of codewords (including the empty one).
///
/// # Safety
/// `code` must be a live handle; either output pointer may be NULL.
#[no_mangle]
pub unsafe extern "C" fn cc_code_size(code: *const CcCode, neurons: *mut u32, codewords: *mut usize) -> CcStatus {
    let Some(c) = code.as_ref() else {
        return fail(CcStatus::NullPointer, "null code");
    };
    if !neurons.is_null() {
        *neurons = c.0.n();
    }
    if !codewords.is_null() {
        *codewords = c.0.len();
    }
    CcStatus::Ok
}

/// Compact text form, e.g. `"{},13,35,134,356,1357"`.
///
/// # Safety
/// `code` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cc_code_to_text(code: *const CcCode, out: *mut *mut c_char) -> CcStatus {
    guard(|| {
        let Some(c) = code.as_ref() else {
            return fail(CcStatus::NullPointer, "null code");
        };
        if out.is_null() {
            return fail(CcStatus::NullPointer, "null output pointer");
        }
        write_string(out, c.0.to_text(true))
    })
}

/// Decides convexity. `budget` caps the sprocket search; 0 uses the default.
///
/// # Safety
/// `code` must be a live handle and `verdict` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cc_decide(code: *const CcCode, budget: u64, verdict: *mut CcVerdict) -> CcStatus {
    guard(|| {
        let Some(c) = code.as_ref() else {
            return fail(CcStatus::NullPointer, "null code");
        };
        if verdict.is_null() {
            return fail(CcStatus::NullPointer, "null output pointer");
        }
        *verdict = match decide_with(&c.0, options(budget)).status {
            Status::Convex => CcVerdict::Convex,
            Status::NonConvex => CcVerdict::Nonconvex,
            Status::Unknown => CcVerdict::Unknown,
        };
        CcStatus::Ok
    })
}

/// Full report as JSON, including a realization when one is built.
///
/// # Safety
/// `code` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cc_analyze_json(code: *const CcCode, budget: u64, out: *mut *mut c_char) -> CcStatus {
    guard(|| {
        let Some(c) = code.as_ref() else {
            return fail(CcStatus::NullPointer, "null code");
        };
        if out.is_null() {
            return fail(CcStatus::NullPointer, "null output pointer");
        }
        *out = ptr::null_mut();
        write_string(out, pretty(&analyze_with(&c.0, options(budget), true).to_json()))
    })
}

/// Builds and verifies a realization and returns its JSON document.
/// Returns `NotCovered` when no construction applies and `Precondition`
/// when the code is not CONVEX.
///
/// # Safety
/// `code` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cc_realize_json(code: *const CcCode, out: *mut *mut c_char) -> CcStatus {
    guard(|| {
        let Some(c) = code.as_ref() else {
            return fail(CcStatus::NullPointer, "null code");
        };
        if out.is_null() {
            return fail(CcStatus::NullPointer, "null output pointer");
        }
        *out = ptr::null_mut();
        match build_realization(&c.0) {
            Ok(Some((r, tag))) => {
                let mut doc = export::to_json(&r);
                doc["construction"] = serde_json::Value::String(tag.to_string());
                write_string(out, pretty(&doc))
            }
            Ok(None) => fail(CcStatus::NotCovered, "no construction covers this code"),
            Err(e) => fail(status_of(&e), e.to_string()),
        }
    })
}

/// Checks a realization document against the code. Returns `Ok` when it
/// realizes the code exactly and `VerificationFailed` otherwise. When
/// `report` is not NULL it receives the verification JSON in both cases.
///
/// # Safety
/// `code` must be a live handle, `realization` a NUL-terminated string and
/// `report` NULL or a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cc_verify_json(
    code: *const CcCode,
    realization: *const c_char,
    report: *mut *mut c_char,
) -> CcStatus {
    guard(|| {
        let Some(c) = code.as_ref() else {
            return fail(CcStatus::NullPointer, "null code");
        };
        if !report.is_null() {
            *report = ptr::null_mut();
        }
        let text = match read_str(realization) {
            Ok(t) => t,
            Err(s) => return s,
        };
        let doc: serde_json::Value = match serde_json::from_str(text) {
            Ok(d) => d,
            Err(e) => return fail(CcStatus::DocumentError, format!("realization: {e}")),
        };
        let r = match export::from_json(&doc) {
            Ok(r) => r,
            Err(e) => return fail(status_of(&e), e.to_string()),
        };
        let v = verify_realization(&r, &c.0);
        if !report.is_null() {
            let s = write_string(report, pretty(&serde_json::to_value(&v).expect("verification serializes")));
            if s != CcStatus::Ok {
                return s;
            }
        }
        if v.ok {
            CcStatus::Ok
        } else {
            fail(CcStatus::VerificationFailed, "realization does not generate the code")
        }
    })
}

/// # Safety
/// `s` must come from this library and not be freed twice. NULL is ignored.
#[no_mangle]
pub unsafe extern "C" fn cc_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message of the last failure on this thread, or NULL. The pointer stays
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn cc_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn cc_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}
