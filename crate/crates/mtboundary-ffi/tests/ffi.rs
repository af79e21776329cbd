use std::ffi::{CStr, CString};
use std::ptr;

use mtboundary_ffi::*;

fn take(s: *mut std::ffi::c_char) -> String {
    assert!(!s.is_null());
    let out = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_owned();
    unsafe { mtb_string_free(s) };
    out
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(mtb_last_error()) }.to_str().unwrap().to_owned()
}

fn fixture(name: &str) -> *mut MtbInput {
    let n = CString::new(name).unwrap();
    let mut inp = ptr::null_mut();
    assert_eq!(unsafe { mtb_input_from_fixture(n.as_ptr(), &mut inp) }, MtbStatus::Ok);
    inp
}

#[test]
fn fixture_analysis_round_trip() {
    let inp = fixture("sp4_w1_N1");
    let mut rep = ptr::null_mut();
    assert_eq!(unsafe { mtb_analyze(inp, 0, false, &mut rep) }, MtbStatus::Ok);
    assert_eq!(unsafe { mtb_report_total_dim(rep) }, 2);
    assert_eq!(unsafe { mtb_report_is_nilpotent_orbit(rep) }, 1);
    let summary = take(unsafe { mtb_report_summary(rep) });
    assert!(summary.contains("abelian"), "{summary}");
    let json: serde_json::Value = serde_json::from_str(&take(unsafe { mtb_report_json(rep) })).unwrap();
    assert_eq!(json["dims"]["total"], 2);
    assert!(!take(unsafe { mtb_report_text(rep) }).is_empty());
    unsafe {
        mtb_report_free(rep);
        mtb_input_free(inp);
    }
}

#[test]
fn json_input_matches_fixture() {
    let inp = fixture("sp4_w1_sigma");
    let text = CString::new(take(unsafe { mtb_input_to_json(inp) })).unwrap();
    let mut again = ptr::null_mut();
    assert_eq!(unsafe { mtb_input_from_json(text.as_ptr(), &mut again) }, MtbStatus::Ok);
    let (mut a, mut b) = (ptr::null_mut(), ptr::null_mut());
    unsafe {
        assert_eq!(mtb_analyze(inp, 0, false, &mut a), MtbStatus::Ok);
        assert_eq!(mtb_analyze(again, 0, false, &mut b), MtbStatus::Ok);
        assert_eq!(take(mtb_report_json(a)), take(mtb_report_json(b)));
        mtb_report_free(a);
        mtb_report_free(b);
        mtb_input_free(inp);
        mtb_input_free(again);
    }
}

#[test]
fn null_arguments() {
    let mut inp = ptr::null_mut();
    assert_eq!(unsafe { mtb_input_from_json(ptr::null(), &mut inp) }, MtbStatus::NullPointer);
    assert!(inp.is_null());
    let mut rep = ptr::null_mut();
    assert_eq!(unsafe { mtb_analyze(ptr::null(), 0, false, &mut rep) }, MtbStatus::NullPointer);
    unsafe {
        assert!(mtb_report_json(ptr::null()).is_null());
        assert_eq!(mtb_report_total_dim(ptr::null()), -1);
        mtb_report_free(ptr::null_mut());
        mtb_input_free(ptr::null_mut());
        mtb_string_free(ptr::null_mut());
    }
}

#[test]
fn malformed_input_codes() {
    let bad = CString::new("{not json").unwrap();
    let mut inp = ptr::null_mut();
    assert_eq!(unsafe { mtb_input_from_json(bad.as_ptr(), &mut inp) }, MtbStatus::MalformedInput);
    assert!(!last_error().is_empty());

    let unknown = CString::new("no_such_fixture").unwrap();
    assert_eq!(unsafe { mtb_input_from_fixture(unknown.as_ptr(), &mut inp) }, MtbStatus::MalformedInput);

    let not_utf8 = [0xffu8, 0xfe, 0];
    assert_eq!(
        unsafe { mtb_input_from_json(not_utf8.as_ptr().cast(), &mut inp) },
        MtbStatus::InvalidUtf8
    );

    let inp = fixture("sp4_w1_N1");
    let mut rep = ptr::null_mut();
    assert_eq!(unsafe { mtb_analyze(inp, 2, false, &mut rep) }, MtbStatus::MalformedInput);
    assert!(rep.is_null());
    unsafe { mtb_input_free(inp) };
}

#[test]
fn version_string() {
    let v = unsafe { CStr::from_ptr(mtb_version()) }.to_str().unwrap();
    assert_eq!(v, env!("CARGO_PKG_VERSION"));
}

#[test]
fn header_declares_the_api() {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/include/mtboundary.h");
    let header = std::fs::read_to_string(path).unwrap();
    for name in [
        "typedef struct MtbInput MtbInput;",
        "typedef struct MtbReport MtbReport;",
        "MTB_STATUS_MALFORMED_INPUT = 2",
        "mtb_input_from_json",
        "mtb_analyze",
        "mtb_report_json",
        "mtb_string_free",
        "mtb_last_error",
    ] {
        assert!(header.contains(name), "header lacks {name}");
    }
    // Compile the header when a C compiler is available.
    if let Ok(out) = std::process::Command::new("cc").args(["-fsyntax-only", "-x", "c", path]).output() {
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    }
}
