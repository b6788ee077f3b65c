//! C interface to `mgrack`.
//!
//! Structures and diagrams live behind opaque handles created by the
//! `*_from_json` and `*_sample` functions and released with the matching
//! `*_free`. Every fallible call returns a [`MgrackStatus`]; on failure the
//! message is available from [`mgrack_last_error`] on the same thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use mgrack::diagram::{apply_move, parse, MoveSpec};
use mgrack::formats::{parse_structure, Structure};
use mgrack::{check_property_star, count_colorings, samples, Diagram, Error, MultipleGroupRack};

/// Opaque multiple group rack.
pub struct MgrackMgr(MultipleGroupRack);

/// Opaque validated diagram.
pub struct MgrackDiagram(Diagram);

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MgrackStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    /// Malformed JSON or a file of the wrong shape.
    Format = 3,
    /// A structure fails its axioms.
    InvalidStructure = 4,
    /// A diagram fails validation.
    InvalidDiagram = 5,
    /// A move site does not match the move's pattern.
    MoveMismatch = 6,
    Usage = 7,
    /// The result does not fit the output type.
    Overflow = 8,
    OutOfRange = 9,
    Panic = 10,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MgrackSample {
    /// 18 elements over the Z3 family of S3.
    Associated = 0,
    /// 108 elements over S3 ⋉ S3.
    Semidirect = 1,
    /// 9 elements from the shift rack on three points.
    ShiftRack = 2,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).expect("nul removed"));
}

fn status_of(e: &Error) -> MgrackStatus {
    match e {
        Error::Format(_) | Error::Json(_) | Error::Io(_) | Error::TooLarge { .. } => MgrackStatus::Format,
        Error::NotAGroup
        | Error::NotNormal
        | Error::NotARack(_)
        | Error::NotAGFamily(_)
        | Error::CocycleInvalid(_)
        | Error::InvalidMgr(_) => MgrackStatus::InvalidStructure,
        Error::InvalidDiagram(_) => MgrackStatus::InvalidDiagram,
        Error::MoveMismatch { .. } => MgrackStatus::MoveMismatch,
        Error::Usage(_) => MgrackStatus::Usage,
    }
}

struct Fail(MgrackStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Fail {
        Fail(status_of(&e), e.to_string())
    }
}

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> MgrackStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            MgrackStatus::Ok
        }
        Ok(Err(Fail(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            MgrackStatus::Panic
        }
    }
}

fn null(what: &str) -> Fail {
    Fail(MgrackStatus::NullArgument, format!("{what} is null"))
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Fail(MgrackStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn borrow<'a, T>(p: *const T, what: &str) -> Result<&'a T, Fail> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn write<T>(out: *mut T, value: T, what: &str) -> Result<(), Fail> {
    if out.is_null() {
        return Err(null(what));
    }
    out.write(value);
    Ok(())
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn mgrack_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message of the last failed call on this thread, empty after a success.
/// Valid until the next call on this thread.
#[no_mangle]
pub extern "C" fn mgrack_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Parses an MGR file and checks the axioms.
///
/// # Safety
/// `json` is a NUL-terminated string; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn mgrack_mgr_from_json(json: *const c_char, out: *mut *mut MgrackMgr) -> MgrackStatus {
    guard(|| {
        let m = match parse_structure(text(json, "json")?)? {
            Structure::Mgr(m) => m,
            other => {
                return Err(Fail(
                    MgrackStatus::Usage,
                    format!("expected an MGR, found a {}", other.kind()),
                ))
            }
        };
        if let Some(v) = m.verify_mgr_axioms().first_violation {
            return Err(Error::InvalidMgr(v).into());
        }
        write(out, Box::into_raw(Box::new(MgrackMgr(m))), "out")
    })
}

/// # Safety
/// `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn mgrack_mgr_sample(which: MgrackSample, out: *mut *mut MgrackMgr) -> MgrackStatus {
    guard(|| {
        let m = match which {
            MgrackSample::Associated => samples::associated_example(),
            MgrackSample::Semidirect => samples::semidirect_example(),
            MgrackSample::ShiftRack => samples::associated_shift_rack(),
        };
        write(out, Box::into_raw(Box::new(MgrackMgr(m))), "out")
    })
}

/// Number of elements; 0 for a null handle.
///
/// # Safety
/// `m` is null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn mgrack_mgr_len(m: *const MgrackMgr) -> usize {
    m.as_ref().map_or(0, |m| m.0.len())
}

/// `u ∗ v` by global element index.
///
/// # Safety
/// `m` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn mgrack_mgr_star(m: *const MgrackMgr, u: usize, v: usize, out: *mut usize) -> MgrackStatus {
    guard(|| {
        let m = &borrow(m, "mgr")?.0;
        if u >= m.len() || v >= m.len() {
            return Err(Fail(MgrackStatus::OutOfRange, format!("index out of range for {} elements", m.len())));
        }
        write(out, m.star(u, v), "out")
    })
}

/// Re-runs the axiom check; `*ok` is false when some axiom fails.
///
/// # Safety
/// `m` is a live handle; `ok` is writable.
#[no_mangle]
pub unsafe extern "C" fn mgrack_mgr_verify(m: *const MgrackMgr, ok: *mut bool) -> MgrackStatus {
    guard(|| {
        let report = borrow(m, "mgr")?.0.verify_mgr_axioms();
        write(ok, report.ok, "ok")
    })
}

/// # Safety
/// `m` is null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn mgrack_mgr_free(m: *mut MgrackMgr) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

/// Parses and validates a diagram.
///
/// # Safety
/// `json` is a NUL-terminated string; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn mgrack_diagram_from_json(json: *const c_char, out: *mut *mut MgrackDiagram) -> MgrackStatus {
    guard(|| {
        let d = parse(text(json, "json")?)?.validated()?;
        write(out, Box::into_raw(Box::new(MgrackDiagram(d))), "out")
    })
}

/// Applies a move given as JSON and returns a new diagram.
///
/// # Safety
/// `d` is a live handle; `move_json` is a NUL-terminated string; `out` is
/// writable.
#[no_mangle]
pub unsafe extern "C" fn mgrack_diagram_apply_move(
    d: *const MgrackDiagram,
    move_json: *const c_char,
    out: *mut *mut MgrackDiagram,
) -> MgrackStatus {
    guard(|| {
        let d = &borrow(d, "diagram")?.0;
        let mv: MoveSpec = serde_json::from_str(text(move_json, "move_json")?).map_err(Error::from)?;
        let next = apply_move(d, &mv)?;
        write(out, Box::into_raw(Box::new(MgrackDiagram(next))), "out")
    })
}

/// Number of arcs; 0 for a null handle.
///
/// # Safety
/// `d` is null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn mgrack_diagram_arcs(d: *const MgrackDiagram) -> usize {
    d.as_ref().map_or(0, |d| d.0.arcs.len())
}

/// # Safety
/// `d` is null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn mgrack_diagram_free(d: *mut MgrackDiagram) {
    if !d.is_null() {
        drop(Box::from_raw(d));
    }
}

/// Counts colorings using `jobs` worker threads (0 means 1).
/// Returns `Overflow` when the count exceeds `u64`.
///
/// # Safety
/// `d` and `m` are live handles; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn mgrack_count_colorings(
    d: *const MgrackDiagram,
    m: *const MgrackMgr,
    jobs: usize,
    out: *mut u64,
) -> MgrackStatus {
    guard(|| {
        let (d, m) = (&borrow(d, "diagram")?.0, &borrow(m, "mgr")?.0);
        let n = count_colorings(d, m, jobs.max(1))?;
        let n = u64::try_from(n).map_err(|_| Fail(MgrackStatus::Overflow, format!("{n} colorings do not fit in 64 bits")))?;
        write(out, n, "out")
    })
}

/// Whether some coloring gives the marked arc a non-identity color. When
/// it does and `color` is not null, `*color` receives that color.
///
/// # Safety
/// `d` and `m` are live handles; `holds` is writable; `color` is null or
/// writable.
#[no_mangle]
pub unsafe extern "C" fn mgrack_check_property_star(
    d: *const MgrackDiagram,
    m: *const MgrackMgr,
    holds: *mut bool,
    color: *mut usize,
) -> MgrackStatus {
    guard(|| {
        let d = &borrow(d, "diagram")?.0;
        let r = check_property_star(d, &borrow(m, "mgr")?.0)?;
        if let (Some(w), false) = (&r.witness, color.is_null()) {
            color.write(w.color_of(d, r.marked_arc).expect("marked arc exists"));
        }
        write(holds, r.holds, "holds")
    })
}
