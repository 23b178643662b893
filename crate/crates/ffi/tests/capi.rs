use std::ffi::{c_char, CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use xmodkit_ffi::*;

fn fixture(name: &str) -> CString {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name);
    CString::new(std::fs::read_to_string(path).unwrap()).unwrap()
}

fn take(s: *mut c_char) -> String {
    assert!(!s.is_null());
    let owned = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_string();
    unsafe { xmk_string_free(s) };
    owned
}

fn last_error() -> String {
    let p = xmk_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

fn parse(name: &str) -> *mut XmkDocument {
    let text = fixture(name);
    let mut doc = ptr::null_mut();
    assert_eq!(unsafe { xmk_document_parse(text.as_ptr(), &mut doc) }, XmkStatus::Ok);
    doc
}

#[test]
fn parse_serialize_is_byte_identical() {
    let text = fixture("fix-a.xmod.json");
    let doc = parse("fix-a.xmod.json");
    let kind = unsafe { CStr::from_ptr(xmk_document_kind(doc)) };
    assert_eq!(kind.to_str().unwrap(), "xmod");
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { xmk_document_to_json(doc, &mut out) }, XmkStatus::Ok);
    assert_eq!(take(out), text.to_str().unwrap());
    unsafe { xmk_document_free(doc) };
}

#[test]
fn status_codes_mirror_exit_codes() {
    let bad = CString::new("{").unwrap();
    assert_eq!(unsafe { xmk_validate(bad.as_ptr()) }, XmkStatus::Parse);
    let raw = fixture("fix-d-raw.splitepi.json");
    assert_eq!(unsafe { xmk_validate(raw.as_ptr()) }, XmkStatus::Invalid);
    assert!(last_error().contains("not a functor"));
    assert_eq!(unsafe { xmk_validate(ptr::null()) }, XmkStatus::NullArgument);
    assert!(xmk_last_error().is_null() || !last_error().is_empty());
}

#[test]
fn convert_reports_the_peiffer_witness() {
    let doc = parse("fix-e.prexmod.json");
    let to = CString::new("relcat").unwrap();
    let mut out = ptr::null_mut();
    let status = unsafe { xmk_document_convert(doc, to.as_ptr(), ptr::null(), &mut out) };
    assert_eq!(status, XmkStatus::Invalid);
    assert!(last_error().contains("Peiffer"));
    assert!(out.is_null());
    unsafe { xmk_document_free(doc) };
}

#[test]
fn convert_along_a_chain() {
    let doc = parse("fix-b.xmod.json");
    let (to, via) = (CString::new("splitepi").unwrap(), CString::new("prexmod,reflgraph").unwrap());
    let mut out = ptr::null_mut();
    assert_eq!(
        unsafe { xmk_document_convert(doc, to.as_ptr(), via.as_ptr(), &mut out) },
        XmkStatus::Ok
    );
    let kind = unsafe { CStr::from_ptr(xmk_document_kind(out)) };
    assert_eq!(kind.to_str().unwrap(), "splitepi");
    let direct = unsafe { xmk_document_convert(doc, to.as_ptr(), ptr::null(), &mut ptr::null_mut()) };
    assert_eq!(direct, XmkStatus::Parse);
    unsafe {
        xmk_document_free(out);
        xmk_document_free(doc);
    }
}

#[test]
fn roundtrip_and_check() {
    let doc = parse("fix-b.xmod.json");
    let mut report = ptr::null_mut();
    assert_eq!(unsafe { xmk_document_roundtrip(doc, &mut report) }, XmkStatus::Ok);
    assert!(take(report).contains("\"ok\":true"));
    let prop = CString::new("d-unique").unwrap();
    assert_eq!(unsafe { xmk_document_check(doc, prop.as_ptr(), 0, &mut report) }, XmkStatus::Ok);
    assert!(take(report).contains("exactly one composition"));
    unsafe { xmk_document_free(doc) };

    let doc = parse("fix-e.prexmod.json");
    let prop = CString::new("peiffer").unwrap();
    assert_eq!(
        unsafe { xmk_document_check(doc, prop.as_ptr(), 0, &mut report) },
        XmkStatus::Invalid
    );
    assert!(take(report).contains("\"witness\""));
    unsafe { xmk_document_free(doc) };
}

#[test]
fn enumerate_and_budget() {
    let z2 = fixture("z2.category.json");
    let kind = CString::new("xmod").unwrap();
    let mut out = ptr::null_mut();
    assert_eq!(
        unsafe { xmk_enumerate_json(kind.as_ptr(), z2.as_ptr(), z2.as_ptr(), 0, &mut out) },
        XmkStatus::Ok
    );
    assert_eq!(take(out).lines().count(), 2);
    let s3 = fixture("s3.category.json");
    let kind = CString::new("action").unwrap();
    assert_eq!(
        unsafe { xmk_enumerate_json(kind.as_ptr(), s3.as_ptr(), s3.as_ptr(), 10, &mut out) },
        XmkStatus::BudgetExceeded
    );
}

#[test]
fn header_compiles_as_c() {
    let header = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("include/xmodkit.h");
    assert!(header.exists());
    let Ok(status) = Command::new("cc")
        .args(["-fsyntax-only", "-x", "c", "-Wall", "-Werror"])
        .arg(&header)
        .status()
    else {
        eprintln!("no C compiler available; skipped");
        return;
    };
    assert!(status.success());
}
