//! C ABI over `qwc`. Presentations are opaque handles; results come back as
//! JSON strings that the caller releases with `qwc_string_free`. Every entry
//! point returns a `QwcStatus`; on failure `qwc_last_error` describes it.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use qwc::cli::{analysis, exit_code, run_verification, Identity, VerifyParams};
use qwc::toric::{GitPresentation, Toric};
use qwc::Error;

/// Result codes. The first four match the `qwc` command's exit codes.
#[repr(C)]
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum QwcStatus {
    Ok = 0,
    /// A verification ran and at least one cell failed.
    Failed = 1,
    Invalid = 2,
    Unsupported = 3,
    NullPointer = 4,
    Utf8 = 5,
    Panic = 6,
}

/// A validated toric GIT presentation.
pub struct QwcPresentation {
    inner: Toric,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn from_error(e: &Error) -> QwcStatus {
    set_error(&e.to_string());
    match exit_code(e) {
        1 => QwcStatus::Failed,
        3 => QwcStatus::Unsupported,
        _ => QwcStatus::Invalid,
    }
}

fn guard(f: impl FnOnce() -> QwcStatus) -> QwcStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => {
            if s == QwcStatus::Ok {
                set_error("");
            }
            s
        }
        Err(_) => {
            set_error("internal panic");
            QwcStatus::Panic
        }
    }
}

unsafe fn read_str<'a>(p: *const c_char) -> Result<&'a str, QwcStatus> {
    if p.is_null() {
        set_error("null string argument");
        return Err(QwcStatus::NullPointer);
    }
    CStr::from_ptr(p).to_str().map_err(|_| {
        set_error("string argument is not UTF-8");
        QwcStatus::Utf8
    })
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> QwcStatus {
    match CString::new(s) {
        Ok(c) => {
            *out = c.into_raw();
            QwcStatus::Ok
        }
        Err(_) => {
            set_error("result contains a NUL byte");
            QwcStatus::Panic
        }
    }
}

unsafe fn store_presentation(out: *mut *mut QwcPresentation, r: qwc::Result<Toric>) -> QwcStatus {
    match r {
        Ok(t) => {
            *out = Box::into_raw(Box::new(QwcPresentation { inner: t }));
            QwcStatus::Ok
        }
        Err(e) => from_error(&e),
    }
}

/// Message for the most recent failure on this thread, or "". The pointer
/// stays valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn qwc_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Load a built-in presentation by name (`p1`, `p2`, `f2`, `local-p2`, ...).
///
/// # Safety
/// `name` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qwc_presentation_from_preset(
    name: *const c_char,
    out: *mut *mut QwcPresentation,
) -> QwcStatus {
    guard(|| {
        if out.is_null() {
            set_error("null output pointer");
            return QwcStatus::NullPointer;
        }
        *out = ptr::null_mut();
        let name = match read_str(name) {
            Ok(s) => s,
            Err(s) => return s,
        };
        store_presentation(out, Toric::preset(name))
    })
}

/// Parse and validate a JSON presentation document.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qwc_presentation_from_json(
    json: *const c_char,
    out: *mut *mut QwcPresentation,
) -> QwcStatus {
    guard(|| {
        if out.is_null() {
            set_error("null output pointer");
            return QwcStatus::NullPointer;
        }
        *out = ptr::null_mut();
        let text = match read_str(json) {
            Ok(s) => s,
            Err(s) => return s,
        };
        let t = GitPresentation::from_json(text).and_then(|p| Toric::load_named(p, "custom"));
        store_presentation(out, t)
    })
}

/// # Safety
/// `p` must come from a `qwc_presentation_*` constructor and not be used
/// afterwards. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn qwc_presentation_free(p: *mut QwcPresentation) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Fixed points, tangent weights, positivity flags and `chi_top` as JSON.
///
/// # Safety
/// `p` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qwc_analyze(p: *const QwcPresentation, out: *mut *mut c_char) -> QwcStatus {
    guard(|| {
        if p.is_null() || out.is_null() {
            set_error("null argument");
            return QwcStatus::NullPointer;
        }
        *out = ptr::null_mut();
        match analysis(&(*p).inner) {
            Ok(v) => write_string(out, v.to_string()),
            Err(e) => from_error(&e),
        }
    })
}

/// Run one identity check (`i-equals-j`, `truncation`, `v-s`, `string`,
/// `dilaton`, `divisor`, `trr`, `i0-lemma`, `point-wallcross`) and return
/// the report as JSON. `p` may be null for `point-wallcross`, which reads
/// `degree` as the largest light-point count and checks up to six heavy
/// points. `epsilon` may be null for the default of 1. Returns `Failed`
/// (with the report still written) when a cell fails.
///
/// # Safety
/// String arguments must be NUL-terminated or null where allowed; `out`
/// must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qwc_verify(
    p: *const QwcPresentation,
    identity: *const c_char,
    degree: i64,
    z_order: i64,
    epsilon: *const c_char,
    seed: u64,
    out: *mut *mut c_char,
) -> QwcStatus {
    guard(|| {
        if out.is_null() {
            set_error("null output pointer");
            return QwcStatus::NullPointer;
        }
        *out = ptr::null_mut();
        let id: Identity = match read_str(identity).map(str::parse) {
            Ok(Ok(id)) => id,
            Ok(Err(e)) => return from_error(&e),
            Err(s) => return s,
        };
        let mut params = VerifyParams { degree, z_order, seed, ..VerifyParams::default() };
        if id == Identity::PointWallcross {
            params.dmax = degree.max(0) as usize;
        }
        if !epsilon.is_null() {
            match read_str(epsilon).map(str::parse) {
                Ok(Ok(e)) => params.epsilon = e,
                Ok(Err(e)) => return from_error(&e),
                Err(s) => return s,
            }
        }
        let t = if p.is_null() { None } else { Some(&(*p).inner) };
        match run_verification(id, t, &params) {
            Ok(report) => {
                let status = match report.status() {
                    qwc::wallcross::Status::Pass => QwcStatus::Ok,
                    qwc::wallcross::Status::Fail => {
                        set_error("verification failed");
                        QwcStatus::Failed
                    }
                    qwc::wallcross::Status::Unsupported => {
                        set_error("verification unsupported for this input");
                        QwcStatus::Unsupported
                    }
                };
                let w = write_string(out, report.to_json());
                if w != QwcStatus::Ok {
                    return w;
                }
                // `guard` clears the message only on success.
                status
            }
            Err(e) => from_error(&e),
        }
    })
}

/// Run the `qwc` command line with `argc` arguments (excluding the program
/// name). Standard output and error are returned as strings; the return
/// value is the exit code.
///
/// # Safety
/// `argv` must hold `argc` NUL-terminated strings; `out_stdout` and
/// `out_stderr` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn qwc_cli_run(
    argc: usize,
    argv: *const *const c_char,
    out_stdout: *mut *mut c_char,
    out_stderr: *mut *mut c_char,
) -> i32 {
    let r = catch_unwind(AssertUnwindSafe(|| {
        if out_stdout.is_null() || out_stderr.is_null() || (argc > 0 && argv.is_null()) {
            return None;
        }
        let mut args = vec!["qwc".to_string()];
        for i in 0..argc {
            match read_str(*argv.add(i)) {
                Ok(s) => args.push(s.to_string()),
                Err(_) => return None,
            }
        }
        Some(qwc::cli::run(args))
    }));
    match r {
        Ok(Some(o)) => {
            let a = write_string(out_stdout, o.stdout);
            let b = write_string(out_stderr, o.stderr);
            if a != QwcStatus::Ok || b != QwcStatus::Ok {
                return QwcStatus::Panic as i32;
            }
            o.code
        }
        Ok(None) => QwcStatus::NullPointer as i32,
        Err(_) => {
            set_error("internal panic");
            QwcStatus::Panic as i32
        }
    }
}

/// Release a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn qwc_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn qwc_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}
