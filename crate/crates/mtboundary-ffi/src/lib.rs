//! C ABI over `mtboundary`. Inputs and reports are opaque handles; every call
//! returns an `MtbStatus`, and the message of the last failure on the calling
//! thread is available from `mtb_last_error`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use mtboundary::boundary::{analyze, AnalysisInput, AnalysisOptions, BoundaryReport};
use mtboundary::cli::exit_code;
use mtboundary::corpus;
use mtboundary::Error;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MtbStatus {
    Ok = 0,
    /// Well-formed input that fails a mathematical requirement.
    CriterionFailed = 1,
    MalformedInput = 2,
    NullPointer = 3,
    InvalidUtf8 = 4,
    Panic = 5,
}

/// Parsed analysis input.
pub struct MtbInput(AnalysisInput);

/// Boundary-component report.
pub struct MtbReport(BoundaryReport);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> MtbStatus {
    set_error(&e.to_string());
    match exit_code(e) {
        2 => MtbStatus::MalformedInput,
        _ => MtbStatus::CriterionFailed,
    }
}

fn guard(f: impl FnOnce() -> MtbStatus) -> MtbStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(_) => {
            set_error("internal panic");
            MtbStatus::Panic
        }
    }
}

unsafe fn read_str<'a>(p: *const c_char) -> Result<&'a str, MtbStatus> {
    if p.is_null() {
        set_error("null string argument");
        return Err(MtbStatus::NullPointer);
    }
    CStr::from_ptr(p).to_str().map_err(|_| {
        set_error("string argument is not UTF-8");
        MtbStatus::InvalidUtf8
    })
}

fn into_c_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).expect("nul bytes removed").into_raw()
}

/// Message of the last failed call on this thread, or "" if none. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn mtb_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn mtb_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Parses an analysis-input JSON document.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mtb_input_from_json(json: *const c_char, out: *mut *mut MtbInput) -> MtbStatus {
    guard(|| {
        if out.is_null() {
            set_error("null output pointer");
            return MtbStatus::NullPointer;
        }
        *out = ptr::null_mut();
        let s = match read_str(json) {
            Ok(s) => s,
            Err(st) => return st,
        };
        match AnalysisInput::from_json_str(s) {
            Ok(i) => {
                *out = Box::into_raw(Box::new(MtbInput(i)));
                MtbStatus::Ok
            }
            Err(e) => status_of(&e),
        }
    })
}

/// The input of a built-in fixture such as "so41_N".
///
/// # Safety
/// `name` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mtb_input_from_fixture(name: *const c_char, out: *mut *mut MtbInput) -> MtbStatus {
    guard(|| {
        if out.is_null() {
            set_error("null output pointer");
            return MtbStatus::NullPointer;
        }
        *out = ptr::null_mut();
        let s = match read_str(name) {
            Ok(s) => s,
            Err(st) => return st,
        };
        match corpus::build(s) {
            Ok(fx) => {
                *out = Box::into_raw(Box::new(MtbInput(fx.input)));
                MtbStatus::Ok
            }
            Err(e) => status_of(&e),
        }
    })
}

/// Serializes an input back to JSON. Free the result with `mtb_string_free`.
///
/// # Safety
/// `input` must come from this library or be null.
#[no_mangle]
pub unsafe extern "C" fn mtb_input_to_json(input: *const MtbInput) -> *mut c_char {
    match input.as_ref() {
        Some(i) => into_c_string(i.0.to_json_pretty()),
        None => ptr::null_mut(),
    }
}

/// # Safety
/// `input` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn mtb_input_free(input: *mut MtbInput) {
    if !input.is_null() {
        drop(Box::from_raw(input));
    }
}

/// Runs the full analysis. `sign_b` is +1 or −1 to override the sign of B, or
/// 0 to use the input's. A report is produced even when it records failed
/// criteria; the status is then `CriterionFailed`.
///
/// # Safety
/// `input` must come from this library and `out` be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mtb_analyze(
    input: *const MtbInput,
    sign_b: i32,
    skip_orbit_check: bool,
    out: *mut *mut MtbReport,
) -> MtbStatus {
    guard(|| {
        if out.is_null() || input.is_null() {
            set_error("null pointer argument");
            return MtbStatus::NullPointer;
        }
        *out = ptr::null_mut();
        let sign = match sign_b {
            0 => None,
            1 | -1 => Some(sign_b),
            _ => {
                set_error("sign_b must be 0, 1 or -1");
                return MtbStatus::MalformedInput;
            }
        };
        let opts = AnalysisOptions { sign_b: sign, skip_orbit_check };
        match analyze(&(*input).0, opts) {
            Ok(a) => {
                let report = BoundaryReport::from_analysis(&a);
                let pass = report.criteria_pass();
                *out = Box::into_raw(Box::new(MtbReport(report)));
                if pass {
                    MtbStatus::Ok
                } else {
                    set_error("the report records failed criteria");
                    MtbStatus::CriterionFailed
                }
            }
            Err(e) => status_of(&e),
        }
    })
}

/// # Safety
/// `report` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn mtb_report_free(report: *mut MtbReport) {
    if !report.is_null() {
        drop(Box::from_raw(report));
    }
}

/// The report as JSON; free with `mtb_string_free`. Null if `report` is null.
///
/// # Safety
/// `report` must come from this library or be null.
#[no_mangle]
pub unsafe extern "C" fn mtb_report_json(report: *const MtbReport) -> *mut c_char {
    match report.as_ref() {
        Some(r) => into_c_string(r.0.to_json()),
        None => ptr::null_mut(),
    }
}

/// The report as text, identical to the CLI's `analyze` output.
///
/// # Safety
/// `report` must come from this library or be null.
#[no_mangle]
pub unsafe extern "C" fn mtb_report_text(report: *const MtbReport) -> *mut c_char {
    match report.as_ref() {
        Some(r) => into_c_string(r.0.render_text()),
        None => ptr::null_mut(),
    }
}

/// The one-line classification summary.
///
/// # Safety
/// `report` must come from this library or be null.
#[no_mangle]
pub unsafe extern "C" fn mtb_report_summary(report: *const MtbReport) -> *mut c_char {
    match report.as_ref() {
        Some(r) => into_c_string(r.0.classification.summary.clone()),
        None => ptr::null_mut(),
    }
}

/// Complex dimension of the boundary component, or −1 for a null report.
///
/// # Safety
/// `report` must come from this library or be null.
#[no_mangle]
pub unsafe extern "C" fn mtb_report_total_dim(report: *const MtbReport) -> i64 {
    report.as_ref().map_or(-1, |r| r.0.dims.total as i64)
}

/// 1 if F spans a nilpotent orbit, 0 if not, −1 if unchecked or null.
///
/// # Safety
/// `report` must come from this library or be null.
#[no_mangle]
pub unsafe extern "C" fn mtb_report_is_nilpotent_orbit(report: *const MtbReport) -> i32 {
    match report.as_ref().and_then(|r| r.0.orbit.as_ref()) {
        Some(o) => o.nilpotent_orbit as i32,
        None => -1,
    }
}

/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn mtb_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn status_follows_cli_exit_codes() {
        assert_eq!(status_of(&Error::Parse("x".into())), MtbStatus::MalformedInput);
        assert_eq!(status_of(&Error::NotNilpotent), MtbStatus::MalformedInput);
        assert_eq!(status_of(&Error::Mhs("x".into())), MtbStatus::CriterionFailed);
        let msg = unsafe { CStr::from_ptr(mtb_last_error()) };
        assert!(msg.to_str().unwrap().contains('x'));
    }

    #[test]
    fn panics_become_a_status() {
        assert_eq!(guard(|| panic!("boom")), MtbStatus::Panic);
    }
}
