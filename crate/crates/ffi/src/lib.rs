//! C ABI over `lincomp`.
//!
//! Objects are opaque handles created by `*_parse` and released by `*_free`.
//! Every fallible call returns a [`LincompStatus`]; on failure the message is
//! available from [`lincomp_last_error`] on the same thread. Strings returned
//! through out-parameters are owned by the caller and released with
//! [`lincomp_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use lincomp::code::{self, LinearCode, TargetMatrix};
use lincomp::equiv::{self, Classification};
use lincomp::mvpoly::{self, Verdict};
use lincomp::synth::{self, Outcome, SynthError, SynthOptions};
use lincomp::{cuts, Network};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LincompStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    /// The input failed to parse or validate.
    InvalidInput = 3,
    /// A computation rejected its inputs (shape or field mismatch, budget exhausted).
    Computation = 4,
    /// An internal invariant failed.
    Panic = 5,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LincompVerdict {
    Solvable = 0,
    Unsolvable = 1,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LincompClass {
    IdentityLike = 0,
    SumLike = 1,
    AllUnits = 2,
    HasZero = 3,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LincompOutcome {
    Solved = 0,
    Unsolvable = 1,
    SolvableNoConstructor = 2,
    CutViolation = 3,
}

pub struct LincompNetwork(Network);
pub struct LincompTarget(TargetMatrix);
pub struct LincompCode(LinearCode);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

struct Fail(LincompStatus, String);

fn set_error(message: String) {
    let c = CString::new(message.replace('\0', " ")).expect("interior NULs removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> LincompStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => LincompStatus::Ok,
        Ok(Err(Fail(status, message))) => {
            set_error(message);
            status
        }
        Err(panic) => {
            let message = panic
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| panic.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_error(message);
            LincompStatus::Panic
        }
    }
}

fn input(e: impl std::fmt::Display) -> Fail {
    Fail(LincompStatus::InvalidInput, e.to_string())
}

fn computation(e: impl std::fmt::Display) -> Fail {
    Fail(LincompStatus::Computation, e.to_string())
}

unsafe fn deref<'a, T>(p: *const T, what: &str) -> Result<&'a T, Fail> {
    p.as_ref().ok_or_else(|| Fail(LincompStatus::NullPointer, format!("{what} is NULL")))
}

unsafe fn write_out<T>(out: *mut T, v: T, what: &str) -> Result<(), Fail> {
    if out.is_null() {
        return Err(Fail(LincompStatus::NullPointer, format!("{what} is NULL")));
    }
    out.write(v);
    Ok(())
}

unsafe fn read_str<'a>(s: *const c_char) -> Result<&'a str, Fail> {
    if s.is_null() {
        return Err(Fail(LincompStatus::NullPointer, "string argument is NULL".into()));
    }
    CStr::from_ptr(s).to_str().map_err(|e| Fail(LincompStatus::InvalidUtf8, e.to_string()))
}

fn owned_string(s: String) -> *mut c_char {
    CString::new(s).expect("JSON has no interior NUL").into_raw()
}

/// Message of the last failed call on this thread, or NULL. The pointer stays
/// valid until the next failing call on this thread.
#[no_mangle]
pub extern "C" fn lincomp_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// # Safety
/// `s` must be NULL or a string returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn lincomp_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a network JSON document.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lincomp_network_parse(json: *const c_char, out: *mut *mut LincompNetwork) -> LincompStatus {
    guard(|| {
        let net = Network::parse(read_str(json)?).map_err(input)?;
        write_out(out, Box::into_raw(Box::new(LincompNetwork(net))), "out")
    })
}

/// # Safety
/// `net` must be NULL or a handle from [`lincomp_network_parse`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn lincomp_network_free(net: *mut LincompNetwork) {
    if !net.is_null() {
        drop(Box::from_raw(net));
    }
}

/// # Safety
/// `net` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lincomp_network_num_sources(net: *const LincompNetwork, out: *mut usize) -> LincompStatus {
    guard(|| write_out(out, deref(net, "net")?.0.num_sources(), "out"))
}

/// # Safety
/// `net` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lincomp_network_num_edges(net: *const LincompNetwork, out: *mut usize) -> LincompStatus {
    guard(|| write_out(out, deref(net, "net")?.0.num_edges(), "out"))
}

/// Canonical JSON form, edges in topological order.
///
/// # Safety
/// `net` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lincomp_network_to_json(net: *const LincompNetwork, out: *mut *mut c_char) -> LincompStatus {
    guard(|| write_out(out, owned_string(deref(net, "net")?.0.to_json()), "out"))
}

/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lincomp_target_parse(json: *const c_char, out: *mut *mut LincompTarget) -> LincompStatus {
    guard(|| {
        let t = TargetMatrix::parse(read_str(json)?).map_err(input)?;
        write_out(out, Box::into_raw(Box::new(LincompTarget(t))), "out")
    })
}

/// # Safety
/// `t` must be NULL or a handle from [`lincomp_target_parse`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn lincomp_target_free(t: *mut LincompTarget) {
    if !t.is_null() {
        drop(Box::from_raw(t));
    }
}

/// Number of rows `l` and columns `s`.
///
/// # Safety
/// `t` must be a live handle; `out_l` and `out_s` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lincomp_target_shape(
    t: *const LincompTarget,
    out_l: *mut usize,
    out_s: *mut usize,
) -> LincompStatus {
    guard(|| {
        let t = &deref(t, "t")?.0;
        write_out(out_l, t.l(), "out_l")?;
        write_out(out_s, t.s(), "out_s")
    })
}

/// # Safety
/// `t` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lincomp_target_to_json(t: *const LincompTarget, out: *mut *mut c_char) -> LincompStatus {
    guard(|| write_out(out, owned_string(deref(t, "t")?.0.to_json()), "out"))
}

/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lincomp_code_parse(json: *const c_char, out: *mut *mut LincompCode) -> LincompStatus {
    guard(|| {
        let c = LinearCode::parse(read_str(json)?).map_err(input)?;
        write_out(out, Box::into_raw(Box::new(LincompCode(c))), "out")
    })
}

/// # Safety
/// `code` must be NULL or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn lincomp_code_free(code: *mut LincompCode) {
    if !code.is_null() {
        drop(Box::from_raw(code));
    }
}

/// # Safety
/// `code` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lincomp_code_to_json(code: *const LincompCode, out: *mut *mut c_char) -> LincompStatus {
    guard(|| write_out(out, owned_string(deref(code, "code")?.0.to_json()), "out"))
}

/// Min-cut ratio as a reduced fraction `num / den`.
///
/// # Safety
/// Handles must be live; `out_num` and `out_den` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lincomp_mincut(
    net: *const LincompNetwork,
    t: *const LincompTarget,
    out_num: *mut usize,
    out_den: *mut usize,
) -> LincompStatus {
    guard(|| {
        let r = cuts::mincut_ratio(&deref(net, "net")?.0, &deref(t, "t")?.0).map_err(computation)?;
        write_out(out_num, *r.value.numer(), "out_num")?;
        write_out(out_den, *r.value.denom(), "out_den")
    })
}

/// Gröbner-basis solvability verdict.
///
/// # Safety
/// Handles must be live; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lincomp_solvable(
    net: *const LincompNetwork,
    t: *const LincompTarget,
    out: *mut LincompVerdict,
) -> LincompStatus {
    guard(|| {
        let v = mvpoly::solvable(&deref(net, "net")?.0, &deref(t, "t")?.0).map_err(computation)?;
        let v = match v {
            Verdict::Solvable => LincompVerdict::Solvable,
            Verdict::Unsolvable => LincompVerdict::Unsolvable,
        };
        write_out(out, v, "out")
    })
}

/// # Safety
/// `t` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lincomp_classify(t: *const LincompTarget, out: *mut LincompClass) -> LincompStatus {
    guard(|| {
        let class = match equiv::classify(&deref(t, "t")?.0).map_err(computation)? {
            Classification::IdentityLike(_) => LincompClass::IdentityLike,
            Classification::SumLike(_) => LincompClass::SumLike,
            Classification::AllUnits(_) => LincompClass::AllUnits,
            Classification::HasZero(_) => LincompClass::HasZero,
        };
        write_out(out, class, "out")
    })
}

/// Runs the synthesis dispatcher. On `Solved`, `*out_code` receives a new code
/// handle; otherwise it is set to NULL.
///
/// # Safety
/// Handles must be live; `out_outcome` and `out_code` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lincomp_synthesize(
    net: *const LincompNetwork,
    t: *const LincompTarget,
    seed: u64,
    out_outcome: *mut LincompOutcome,
    out_code: *mut *mut LincompCode,
) -> LincompStatus {
    guard(|| {
        let opts = SynthOptions { seed, ..SynthOptions::default() };
        let (outcome, code) = match synth::synthesize(&deref(net, "net")?.0, &deref(t, "t")?.0, opts) {
            Ok(Outcome::Solved(r)) => (LincompOutcome::Solved, Box::into_raw(Box::new(LincompCode(r.code)))),
            Ok(Outcome::Unsolvable) => (LincompOutcome::Unsolvable, ptr::null_mut()),
            Ok(Outcome::SolvableNoConstructor) => (LincompOutcome::SolvableNoConstructor, ptr::null_mut()),
            Err(SynthError::CutViolation(_)) => (LincompOutcome::CutViolation, ptr::null_mut()),
            Err(e) => return Err(computation(e)),
        };
        if out_code.is_null() {
            lincomp_code_free(code);
            return Err(Fail(LincompStatus::NullPointer, "out_code is NULL".into()));
        }
        out_code.write(code);
        write_out(out_outcome, outcome, "out_outcome")
    })
}

/// Whether `code` computes `t` on `net` (transfer-matrix equality).
///
/// # Safety
/// Handles must be live; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lincomp_is_solution(
    net: *const LincompNetwork,
    code: *const LincompCode,
    t: *const LincompTarget,
    out: *mut bool,
) -> LincompStatus {
    guard(|| {
        let ok = code::is_solution(&deref(net, "net")?.0, &deref(code, "code")?.0, &deref(t, "t")?.0)
            .map_err(computation)?;
        write_out(out, ok, "out")
    })
}
