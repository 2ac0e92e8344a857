//! C ABI over the `fitkernel` command dispatcher.
//!
//! A context fixes a group and a prime; every request is a verb name plus a JSON object whose
//! `group` and `p` fields are filled in from the context. Reports come back as JSON strings owned
//! by the library and released with `fk_string_free`. Failures return a status code and leave a
//! message retrievable with `fk_last_error` on the same thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use fitkernel::cli::{dispatch, error_report, Verb};
use fitkernel::Error;
use serde_json::{json, Value};

/// Result of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FkStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Schema = 3,
    UnsupportedField = 4,
    UnknownGroup = 5,
    Math = 6,
    Panic = 7,
}

/// Opaque handle holding a group and a prime.
pub struct FkContext {
    group: Value,
    p: u64,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).expect("interior nul bytes were removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn clear_last_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

fn status_of(e: &Error) -> FkStatus {
    match e {
        Error::Schema(_) | Error::UnknownElement(_) => FkStatus::Schema,
        Error::UnsupportedField(_) => FkStatus::UnsupportedField,
        Error::UnknownGroup(_) => FkStatus::UnknownGroup,
        _ => FkStatus::Math,
    }
}

fn fail(status: FkStatus, msg: &str) -> FkStatus {
    set_last_error(msg);
    status
}

fn fail_with(e: &Error) -> FkStatus {
    fail(status_of(e), &error_report(e).to_string())
}

/// Borrows a NUL-terminated UTF-8 string.
unsafe fn read_str<'a>(s: *const c_char) -> Result<&'a str, FkStatus> {
    if s.is_null() {
        return Err(fail(FkStatus::NullPointer, "null string argument"));
    }
    CStr::from_ptr(s).to_str().map_err(|_| fail(FkStatus::InvalidUtf8, "argument is not valid UTF-8"))
}

fn guarded(f: impl FnOnce() -> FkStatus) -> FkStatus {
    clear_last_error();
    catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| fail(FkStatus::Panic, "internal panic"))
}

/// Creates a context for the group described by `group_json` (for example
/// `{"family": "dihedral", "param": 8}`) and the prime `p`.
///
/// # Safety
/// `group_json` must be a valid NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn fk_context_new(group_json: *const c_char, p: u64, out: *mut *mut FkContext) -> FkStatus {
    guarded(|| {
        if out.is_null() {
            return fail(FkStatus::NullPointer, "null output pointer");
        }
        *out = ptr::null_mut();
        let text = match read_str(group_json) {
            Ok(t) => t,
            Err(s) => return s,
        };
        let group: Value = match serde_json::from_str(text) {
            Ok(v) => v,
            Err(e) => return fail(FkStatus::Schema, &format!("invalid group JSON: {e}")),
        };
        if let Err(e) = dispatch(Verb::Classify, &json!({ "group": group, "p": p })) {
            return fail_with(&e);
        }
        *out = Box::into_raw(Box::new(FkContext { group, p }));
        FkStatus::Ok
    })
}

/// Releases a context; null is ignored.
///
/// # Safety
/// `ctx` must come from `fk_context_new` and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn fk_context_free(ctx: *mut FkContext) {
    if !ctx.is_null() {
        drop(Box::from_raw(ctx));
    }
}

/// Runs `verb` on `input_json` (null means `{}`) and stores the JSON report in `*out`.
///
/// # Safety
/// `ctx` must be a live context, `verb` a valid string, `input_json` null or a valid string and
/// `out` a valid pointer. The report must be released with `fk_string_free`.
#[no_mangle]
pub unsafe extern "C" fn fk_run(
    ctx: *const FkContext,
    verb: *const c_char,
    input_json: *const c_char,
    out: *mut *mut c_char,
) -> FkStatus {
    guarded(|| {
        if ctx.is_null() || out.is_null() {
            return fail(FkStatus::NullPointer, "null context or output pointer");
        }
        *out = ptr::null_mut();
        let ctx = &*ctx;
        let verb = match read_str(verb).map(Verb::parse) {
            Ok(Ok(v)) => v,
            Ok(Err(e)) => return fail_with(&e),
            Err(s) => return s,
        };
        let mut input: Value = if input_json.is_null() {
            json!({})
        } else {
            let text = match read_str(input_json) {
                Ok(t) => t,
                Err(s) => return s,
            };
            match serde_json::from_str(text) {
                Ok(v @ Value::Object(_)) => v,
                Ok(_) => return fail(FkStatus::Schema, "request must be a JSON object"),
                Err(e) => return fail(FkStatus::Schema, &format!("invalid JSON: {e}")),
            }
        };
        input["group"] = ctx.group.clone();
        input["p"] = json!(ctx.p);
        match dispatch(verb, &input) {
            Ok(report) => {
                let s = CString::new(report.to_string()).expect("JSON has no interior nul bytes");
                *out = s.into_raw();
                FkStatus::Ok
            }
            Err(e) => fail_with(&e),
        }
    })
}

/// Releases a string returned by `fk_run`; null is ignored.
///
/// # Safety
/// `s` must come from `fk_run` and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn fk_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message of the last failure on this thread, or null. Valid until the next call on the thread.
#[no_mangle]
pub extern "C" fn fk_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}
