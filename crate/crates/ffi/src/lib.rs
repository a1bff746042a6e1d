//! C ABI over `hyperherm`.
//!
//! Results come back through opaque handles or heap strings owned by the
//! caller: free handles with their `_free` function and strings with
//! [`hh_string_free`]. Every call returns an [`HhStatus`]; on failure,
//! [`hh_last_error`] describes the problem.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use hyperherm::decompose::{run_decompose, FormSource};
use hyperherm::report::{run_analysis, LambdaSpec, ReportDocument};
use hyperherm::verify::{run_verify, VerifyOptions, VerifySummary};
use hyperherm::Error;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HhStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    /// Malformed parameters or input.
    Usage = 3,
    /// An internal identity failed; the message names it.
    Invariant = 4,
    Panic = 5,
}

/// Analysis report for one parameter vector or the symbolic family.
pub struct HhReport {
    doc: ReportDocument,
}

/// Result of a verification run.
pub struct HhVerify {
    summary: VerifySummary,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl Into<String>) {
    let s = CString::new(msg.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = s);
}

fn fail(status: HhStatus, msg: impl Into<String>) -> HhStatus {
    set_error(msg);
    status
}

fn from_error(e: Error) -> HhStatus {
    let status = if e.exit_code() == 1 { HhStatus::Usage } else { HhStatus::Invariant };
    fail(status, e.to_string())
}

/// Runs `f`, mapping panics to [`HhStatus::Panic`].
fn guard<F: FnOnce() -> HhStatus>(f: F) -> HhStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => {
            if s == HhStatus::Ok {
                set_error("");
            }
            s
        }
        Err(p) => {
            let msg = p
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| p.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            fail(HhStatus::Panic, msg)
        }
    }
}

/// # Safety
/// `s` is null or a valid NUL-terminated string.
unsafe fn opt_str<'a>(s: *const c_char) -> Result<Option<&'a str>, HhStatus> {
    if s.is_null() {
        return Ok(None);
    }
    CStr::from_ptr(s)
        .to_str()
        .map(Some)
        .map_err(|_| fail(HhStatus::InvalidUtf8, "argument is not valid UTF-8"))
}

fn write_string(out: *mut *mut c_char, s: String) -> HhStatus {
    match CString::new(s) {
        Ok(c) => {
            // SAFETY: caller checked `out` is non-null.
            unsafe { *out = c.into_raw() };
            HhStatus::Ok
        }
        Err(_) => fail(HhStatus::Invariant, "output contains NUL"),
    }
}

/// Analyzes the family at `lambda` (`"p1,p2,p3,p4"`), or symbolically when
/// `lambda` is null.
///
/// # Safety
/// `lambda` is null or a NUL-terminated string; `out` is a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn hh_analyze(lambda: *const c_char, out: *mut *mut HhReport) -> HhStatus {
    guard(|| {
        if out.is_null() {
            return fail(HhStatus::NullPointer, "out is null");
        }
        *out = ptr::null_mut();
        let spec = match opt_str(lambda) {
            Ok(None) => LambdaSpec::Symbolic,
            Ok(Some(s)) => match LambdaSpec::parse(s) {
                Ok(spec) => spec,
                Err(e) => return from_error(e),
            },
            Err(s) => return s,
        };
        match run_analysis(&spec) {
            Ok(doc) => {
                *out = Box::into_raw(Box::new(HhReport { doc }));
                HhStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

/// # Safety
/// `report` comes from [`hh_analyze`] and has not been freed.
#[no_mangle]
pub unsafe extern "C" fn hh_report_free(report: *mut HhReport) {
    if !report.is_null() {
        drop(Box::from_raw(report));
    }
}

unsafe fn report_string<F: FnOnce(&ReportDocument) -> String>(report: *const HhReport, out: *mut *mut c_char, f: F) -> HhStatus {
    guard(|| {
        if report.is_null() || out.is_null() {
            return fail(HhStatus::NullPointer, "null argument");
        }
        write_string(out, f(&(*report).doc))
    })
}

/// The report as JSON.
///
/// # Safety
/// `report` is a live handle; `out` is a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn hh_report_json(report: *const HhReport, out: *mut *mut c_char) -> HhStatus {
    report_string(report, out, ReportDocument::to_json)
}

/// The report as plain text.
///
/// # Safety
/// `report` is a live handle; `out` is a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn hh_report_text(report: *const HhReport, out: *mut *mut c_char) -> HhStatus {
    report_string(report, out, ReportDocument::to_text)
}

/// Scalar curvature, as a rational or a polynomial in `l1..l4`.
///
/// # Safety
/// `report` is a live handle; `out` is a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn hh_report_tau(report: *const HhReport, out: *mut *mut c_char) -> HhStatus {
    report_string(report, out, |d| d.scalars.tau.clone())
}

/// Whether the structure is isotropic hyper-Kaehler.
///
/// # Safety
/// `report` is a live handle; `out` is a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn hh_report_isotropic_hyper(report: *const HhReport, out: *mut bool) -> HhStatus {
    guard(|| {
        if report.is_null() || out.is_null() {
            return fail(HhStatus::NullPointer, "null argument");
        }
        *out = (*report).doc.flags.isotropic_hyper;
        HhStatus::Ok
    })
}

/// Runs the verification suites. `skip` is null or a comma-separated list
/// of suite names.
///
/// # Safety
/// `skip` is null or a NUL-terminated string; `out` is a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn hh_verify(strict: bool, skip: *const c_char, out: *mut *mut HhVerify) -> HhStatus {
    guard(|| {
        if out.is_null() {
            return fail(HhStatus::NullPointer, "out is null");
        }
        *out = ptr::null_mut();
        let skip = match opt_str(skip) {
            Ok(s) => s
                .map(|s| s.split(',').map(str::trim).filter(|t| !t.is_empty()).map(String::from).collect())
                .unwrap_or_default(),
            Err(s) => return s,
        };
        match run_verify(&VerifyOptions { strict, skip, baseline: None }) {
            Ok(summary) => {
                *out = Box::into_raw(Box::new(HhVerify { summary }));
                HhStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

/// CLI exit status of the run: 0 or 2; -1 for a null handle.
///
/// # Safety
/// `v` is null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn hh_verify_exit_code(v: *const HhVerify) -> i32 {
    if v.is_null() {
        return -1;
    }
    (*v).summary.exit_code()
}

/// Number of FLAG items, expected or not.
///
/// # Safety
/// `v` is null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn hh_verify_flag_count(v: *const HhVerify) -> usize {
    if v.is_null() {
        return 0;
    }
    (*v).summary.flags().count()
}

/// One line per item plus a summary line.
///
/// # Safety
/// `v` is a live handle; `out` is a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn hh_verify_render(v: *const HhVerify, out: *mut *mut c_char) -> HhStatus {
    guard(|| {
        if v.is_null() || out.is_null() {
            return fail(HhStatus::NullPointer, "null argument");
        }
        write_string(out, (*v).summary.render())
    })
}

/// # Safety
/// `v` comes from [`hh_verify`] and has not been freed.
#[no_mangle]
pub unsafe extern "C" fn hh_verify_free(v: *mut HhVerify) {
    if !v.is_null() {
        drop(Box::from_raw(v));
    }
}

/// Decomposes a form on `R^{4n}` given as matrix text (rows on lines,
/// whitespace-separated rationals), or a random form from `seed` when
/// `matrix` is null. Writes the JSON report to `out`.
///
/// # Safety
/// `matrix` is null or a NUL-terminated string; `out` is a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn hh_decompose(n: u32, matrix: *const c_char, seed: u64, out: *mut *mut c_char) -> HhStatus {
    guard(|| {
        if out.is_null() {
            return fail(HhStatus::NullPointer, "out is null");
        }
        *out = ptr::null_mut();
        let source = match opt_str(matrix) {
            Ok(Some(t)) => FormSource::Text(t.to_string()),
            Ok(None) => FormSource::Seed(seed),
            Err(s) => return s,
        };
        match run_decompose(n as usize, &source) {
            Ok(r) => write_string(out, r.to_json()),
            Err(e) => from_error(e),
        }
    })
}

/// Message for the last failing call on this thread; empty after a
/// success. Valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn hh_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// # Safety
/// `s` is null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn hh_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
