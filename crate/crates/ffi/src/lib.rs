//! C ABI over the `tubular` decision procedures.
//!
//! Presentations are opaque handles created by [`tg_presentation_parse`] or
//! [`tg_builtin`] and released with [`tg_presentation_free`]. Every fallible
//! call returns a [`TgStatus`]; on failure [`tg_last_error_message`] describes
//! the error for the calling thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use tubular::analyze::{cat0_report, fbc_report, vspecial_report};
use tubular::special::cocompact_cubulation_decide;
use tubular::{AnalyzeOptions, DecisionReport, Input, TubularPresentation, Verdict};

/// Opaque presentation handle.
pub struct TgPresentation {
    input: Input,
    graph: TubularPresentation,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TgStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    InvalidInput = 4,
    Panic = 5,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TgVerdict {
    No = 0,
    Yes = 1,
    Unknown = 2,
}

impl From<Verdict> for TgVerdict {
    fn from(v: Verdict) -> Self {
        match v {
            Verdict::No => TgVerdict::No,
            Verdict::Yes => TgVerdict::Yes,
            Verdict::Unknown => TgVerdict::Unknown,
        }
    }
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

struct Failure(TgStatus, String);

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> TgStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => TgStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            TgStatus::Panic
        }
    }
}

unsafe fn read_str<'a>(s: *const c_char) -> Result<&'a str, Failure> {
    if s.is_null() {
        return Err(Failure(TgStatus::NullPointer, "null string".into()));
    }
    CStr::from_ptr(s).to_str().map_err(|e| Failure(TgStatus::InvalidUtf8, e.to_string()))
}

unsafe fn handle<'a>(p: *const TgPresentation) -> Result<&'a TgPresentation, Failure> {
    p.as_ref().ok_or_else(|| Failure(TgStatus::NullPointer, "null presentation".into()))
}

fn check_out<T>(out: *mut T) -> Result<(), Failure> {
    if out.is_null() {
        Err(Failure(TgStatus::NullPointer, "null output pointer".into()))
    } else {
        Ok(())
    }
}

fn invalid(e: tubular::Error) -> Failure {
    Failure(TgStatus::InvalidInput, e.to_string())
}

fn boxed(input: Input) -> *mut TgPresentation {
    let mut graph = input.to_tubular();
    graph.name = input.name();
    Box::into_raw(Box::new(TgPresentation { input, graph }))
}

/// Parses a presentation in the text format. On success `*out` owns a new
/// handle.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tg_presentation_parse(text: *const c_char, out: *mut *mut TgPresentation) -> TgStatus {
    guard(|| {
        check_out(out)?;
        let text = read_str(text)?;
        let input = tubular::parse(text).map_err(|e| Failure(TgStatus::ParseError, e.to_string()))?;
        *out = boxed(input);
        Ok(())
    })
}

/// Looks up a built-in example by name, e.g. `"gersten"` or `"lyman-psi(2,3)"`.
///
/// # Safety
/// `name` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tg_builtin(name: *const c_char, out: *mut *mut TgPresentation) -> TgStatus {
    guard(|| {
        check_out(out)?;
        let input = tubular::corpus::builtin(read_str(name)?).map_err(invalid)?;
        *out = boxed(input);
        Ok(())
    })
}

/// # Safety
/// `p` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn tg_presentation_free(p: *mut TgPresentation) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// # Safety
/// `p` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tg_vertex_count(p: *const TgPresentation, out: *mut usize) -> TgStatus {
    guard(|| {
        check_out(out)?;
        *out = handle(p)?.graph.vertices.len();
        Ok(())
    })
}

/// # Safety
/// `p` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tg_edge_count(p: *const TgPresentation, out: *mut usize) -> TgStatus {
    guard(|| {
        check_out(out)?;
        *out = handle(p)?.graph.edges.len();
        Ok(())
    })
}

unsafe fn decide(
    p: *const TgPresentation,
    out: *mut TgVerdict,
    f: impl FnOnce(&TgPresentation) -> tubular::Result<DecisionReport>,
) -> TgStatus {
    guard(|| {
        check_out(out)?;
        *out = f(handle(p)?).map_err(invalid)?.verdict.into();
        Ok(())
    })
}

/// # Safety
/// `p` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tg_decide_cat0(p: *const TgPresentation, out: *mut TgVerdict) -> TgStatus {
    decide(p, out, |h| cat0_report(&h.graph))
}

/// # Safety
/// `p` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tg_decide_fbc(p: *const TgPresentation, out: *mut TgVerdict) -> TgStatus {
    decide(p, out, |h| Ok(fbc_report(&h.graph)?.0))
}

/// # Safety
/// `p` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tg_decide_vspecial(p: *const TgPresentation, out: *mut TgVerdict) -> TgStatus {
    decide(p, out, |h| {
        let (_, fbc) = fbc_report(&h.graph)?;
        vspecial_report(&h.input, &h.graph, &fbc)
    })
}

/// # Safety
/// `p` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tg_decide_cocompact(p: *const TgPresentation, out: *mut TgVerdict) -> TgStatus {
    decide(p, out, |h| {
        let cat0 = cat0_report(&h.graph)?.verdict == Verdict::Yes;
        Ok(cocompact_cubulation_decide(&h.graph, cat0))
    })
}

/// Runs every decider and writes the reports as a JSON array. Release the
/// string with [`tg_string_free`].
///
/// # Safety
/// `p` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tg_analyze_json(p: *const TgPresentation, out: *mut *mut c_char) -> TgStatus {
    guard(|| {
        check_out(out)?;
        let reports = tubular::analyze(&handle(p)?.input, &AnalyzeOptions::default()).map_err(invalid)?;
        let json = serde_json::to_string(&reports).map_err(|e| Failure(TgStatus::InvalidInput, e.to_string()))?;
        *out = CString::new(json).expect("JSON has no NUL").into_raw();
        Ok(())
    })
}

/// # Safety
/// `s` must be null or a string returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn tg_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message for the last failed call on this thread, or null. The pointer
/// stays valid until the next call into the library on the same thread.
#[no_mangle]
pub extern "C" fn tg_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}
