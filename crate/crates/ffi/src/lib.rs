//! C interface to xmodkit.
//!
//! Documents are opaque [`XmkDocument`] handles. Every fallible call
//! returns an [`XmkStatus`] whose first four values mirror the exit codes
//! of the command line tool; the message of the last failure on the
//! calling thread is available from [`xmk_last_error`]. Strings handed
//! out by the library are freed with [`xmk_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use clap::ValueEnum;
use xmodkit::cli::{self, CommandError, EnumKind, Property};
use xmodkit::document::{Document, Kind, Payload};
use xmodkit::oracle::{enumerate_actions, enumerate_prexmods, enumerate_xmods, Budget};
use xmodkit::report::OracleReport;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum XmkStatus {
    Ok = 0,
    Invalid = 1,
    Parse = 2,
    BudgetExceeded = 3,
    NullArgument = 4,
    Panic = 5,
}

/// A parsed and validated document.
pub struct XmkDocument {
    inner: Document,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

fn status_of(e: &CommandError) -> XmkStatus {
    match e.code() {
        cli::EXIT_INVALID => XmkStatus::Invalid,
        cli::EXIT_BUDGET => XmkStatus::BudgetExceeded,
        _ => XmkStatus::Parse,
    }
}

struct Fail(XmkStatus, String);

impl From<CommandError> for Fail {
    fn from(e: CommandError) -> Self {
        Fail(status_of(&e), e.to_string())
    }
}

fn guard(f: impl FnOnce() -> Result<XmkStatus, Fail>) -> XmkStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(s)) => s,
        Ok(Err(Fail(s, msg))) => {
            set_error(msg);
            s
        }
        Err(_) => {
            set_error("internal panic");
            XmkStatus::Panic
        }
    }
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(Fail(XmkStatus::NullArgument, format!("{what} is null")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Fail(XmkStatus::Parse, format!("{what} is not UTF-8")))
}

unsafe fn doc_arg<'a>(p: *const XmkDocument) -> Result<&'a Document, Fail> {
    p.as_ref()
        .map(|d| &d.inner)
        .ok_or_else(|| Fail(XmkStatus::NullArgument, "document is null".into()))
}

unsafe fn write_out<T>(out: *mut *mut T, value: *mut T) -> Result<(), Fail> {
    if out.is_null() {
        return Err(Fail(XmkStatus::NullArgument, "output pointer is null".into()));
    }
    *out = value;
    Ok(())
}

fn into_c(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).expect("no interior NUL").into_raw()
}

fn parse_doc(text: &str) -> Result<Document, Fail> {
    Document::parse(text).map_err(|e| CommandError::from(e).into())
}

fn report_status(r: &OracleReport) -> XmkStatus {
    if r.ok {
        XmkStatus::Ok
    } else {
        set_error(r.to_string());
        XmkStatus::Invalid
    }
}

fn budget(limit: u64) -> Budget {
    if limit == 0 {
        Budget::from_env()
    } else {
        Budget::new(limit)
    }
}

/// Parses and validates `json`. On success `*out` owns a new document.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn xmk_document_parse(json: *const c_char, out: *mut *mut XmkDocument) -> XmkStatus {
    guard(|| {
        let doc = parse_doc(str_arg(json, "json")?)?;
        write_out(out, Box::into_raw(Box::new(XmkDocument { inner: doc })))?;
        Ok(XmkStatus::Ok)
    })
}

/// # Safety
/// `doc` must come from this library and not have been freed; null is a no-op.
#[no_mangle]
pub unsafe extern "C" fn xmk_document_free(doc: *mut XmkDocument) {
    if !doc.is_null() {
        drop(Box::from_raw(doc));
    }
}

/// Validation status of `json` without keeping the document.
///
/// # Safety
/// `json` must be a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn xmk_validate(json: *const c_char) -> XmkStatus {
    guard(|| {
        parse_doc(str_arg(json, "json")?)?;
        Ok(XmkStatus::Ok)
    })
}

/// The kind name of `doc` as a static string, or null.
///
/// # Safety
/// `doc` must be null or a live document.
#[no_mangle]
pub unsafe extern "C" fn xmk_document_kind(doc: *const XmkDocument) -> *const c_char {
    let Some(d) = doc.as_ref() else {
        return ptr::null();
    };
    match d.inner.kind() {
        Kind::Category => c"category",
        Kind::SplitEpi => c"splitepi",
        Kind::ReflGraph => c"reflgraph",
        Kind::Action => c"action",
        Kind::PreX => c"prexmod",
        Kind::Xmod => c"xmod",
        Kind::RelCat => c"relcat",
    }
    .as_ptr()
}

/// Canonical JSON text of `doc`, freed with [`xmk_string_free`].
///
/// # Safety
/// `doc` must be a live document and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn xmk_document_to_json(doc: *const XmkDocument, out: *mut *mut c_char) -> XmkStatus {
    guard(|| {
        let text = doc_arg(doc)?.to_json();
        write_out(out, into_c(text))?;
        Ok(XmkStatus::Ok)
    })
}

/// Converts to kind `to`. `via` is null or a comma separated list of
/// intermediate kinds. The input document is left untouched.
///
/// # Safety
/// Pointers must be valid; `via` may be null.
#[no_mangle]
pub unsafe extern "C" fn xmk_document_convert(
    doc: *const XmkDocument,
    to: *const c_char,
    via: *const c_char,
    out: *mut *mut XmkDocument,
) -> XmkStatus {
    guard(|| {
        let d = doc_arg(doc)?.clone();
        let parse_kind = |s: &str| -> Result<Kind, Fail> {
            s.trim().parse().map_err(|m| Fail(XmkStatus::Parse, m))
        };
        let to = parse_kind(str_arg(to, "to")?)?;
        let via = if via.is_null() {
            Vec::new()
        } else {
            str_arg(via, "via")?
                .split(',')
                .filter(|s| !s.trim().is_empty())
                .map(parse_kind)
                .collect::<Result<Vec<_>, _>>()?
        };
        let converted = cli::convert(d, &via, to)?;
        write_out(out, Box::into_raw(Box::new(XmkDocument { inner: converted })))?;
        Ok(XmkStatus::Ok)
    })
}

/// Round-trip check. `*report_json` receives the report whenever the check
/// ran, and the status is `XMK_STATUS_INVALID` if it failed.
///
/// # Safety
/// `doc` must be a live document and `report_json` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn xmk_document_roundtrip(
    doc: *const XmkDocument,
    report_json: *mut *mut c_char,
) -> XmkStatus {
    guard(|| {
        let report = cli::round_trip(&doc_arg(doc)?.payload)?;
        write_out(report_json, into_c(report.to_json()))?;
        Ok(report_status(&report))
    })
}

/// Runs the verifier named `property` (as on the command line, e.g.
/// `"peiffer"` or `"d-unique"`). A zero `budget_limit` means the default or
/// `XMODKIT_BUDGET`.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn xmk_document_check(
    doc: *const XmkDocument,
    property: *const c_char,
    budget_limit: u64,
    report_json: *mut *mut c_char,
) -> XmkStatus {
    guard(|| {
        let d = doc_arg(doc)?;
        let name = str_arg(property, "property")?;
        let property = Property::from_str(name, false)
            .map_err(|_| Fail(XmkStatus::Parse, format!("unknown property `{name}`")))?;
        let report = cli::check(property, &d.payload, &mut budget(budget_limit))?;
        write_out(report_json, into_c(report.to_json()))?;
        Ok(report_status(&report))
    })
}

/// Enumerates instances of `kind` (`"action"`, `"prexmod"` or `"xmod"`)
/// over two category documents; `*out` receives one JSON document per line.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn xmk_enumerate_json(
    kind: *const c_char,
    base_json: *const c_char,
    fiber_json: *const c_char,
    budget_limit: u64,
    out: *mut *mut c_char,
) -> XmkStatus {
    guard(|| {
        let name = str_arg(kind, "kind")?;
        let kind = EnumKind::from_str(name, false)
            .map_err(|_| Fail(XmkStatus::Parse, format!("unknown enumeration kind `{name}`")))?;
        let category = |p, what| -> Result<_, Fail> {
            match parse_doc(str_arg(p, what)?)?.payload {
                Payload::Category(c) => Ok(c),
                other => Err(Fail(XmkStatus::Parse, format!("{what} holds a {}", other.kind()))),
            }
        };
        let (base, fiber) = (category(base_json, "base")?, category(fiber_json, "fiber")?);
        let mut b = budget(budget_limit);
        let over = |e: xmodkit::oracle::BudgetExceeded| Fail::from(CommandError::Budget(e));
        let docs: Vec<Document> = match kind {
            EnumKind::Action => enumerate_actions(&base, &fiber, &mut b)
                .map_err(over)?
                .into_iter()
                .map(|a| Document::new(Payload::Action(a)))
                .collect(),
            EnumKind::Prexmod => enumerate_prexmods(&base, &fiber, &mut b)
                .map_err(over)?
                .into_iter()
                .map(|p| Document::new(Payload::PreX(p)))
                .collect(),
            EnumKind::Xmod => enumerate_xmods(&base, &fiber, &mut b)
                .map_err(over)?
                .into_iter()
                .map(|x| Document::new(Payload::Xmod(x)))
                .collect(),
        };
        let text: String = docs.iter().map(|d| d.to_json_line() + "\n").collect();
        write_out(out, into_c(text))?;
        Ok(XmkStatus::Ok)
    })
}

/// # Safety
/// `s` must be null or a string returned by this library.
#[no_mangle]
pub unsafe extern "C" fn xmk_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message of the last failure on this thread, or null. Valid until the
/// next call into the library from the same thread.
#[no_mangle]
pub extern "C" fn xmk_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}
