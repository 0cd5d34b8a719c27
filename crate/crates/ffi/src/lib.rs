//! C ABI for the hk-lattice engine.
//!
//! Every entry point returns an [`HkStatus`]. On failure a message is kept per
//! thread and can be read with [`hk_last_error_message`]. Strings handed out by
//! the library are released with [`hk_string_free`], lattices with
//! [`hk_lattice_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use hk_lattice::mukai::{self, MukaiVector};
use hk_lattice::scenario::{Scenario, ScenarioError};
use hk_lattice::IntegralLattice;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HkStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    /// Malformed input: bad JSON, wrong dimensions, unparsable scalars.
    InvalidInput = 3,
    /// A mathematical precondition failed or the computation was obstructed.
    Engine = 4,
    /// The value exists but does not fit the output type.
    Overflow = 5,
    Panic = 6,
}

/// Opaque handle to an even integral lattice.
pub struct HkLattice {
    inner: IntegralLattice,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = CString::new(msg.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

fn fail(status: HkStatus, msg: impl Into<String>) -> HkStatus {
    set_error(msg);
    status
}

fn guard(f: impl FnOnce() -> HkStatus) -> HkStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| fail(HkStatus::Panic, "internal panic"))
}

unsafe fn read_str<'a>(s: *const c_char) -> Result<&'a str, HkStatus> {
    if s.is_null() {
        return Err(fail(HkStatus::NullPointer, "null string argument"));
    }
    CStr::from_ptr(s).to_str().map_err(|_| fail(HkStatus::InvalidUtf8, "argument is not valid UTF-8"))
}

unsafe fn write_string(out: *mut *mut c_char, text: String) -> HkStatus {
    match CString::new(text) {
        Ok(c) => {
            *out = c.into_raw();
            HkStatus::Ok
        }
        Err(_) => fail(HkStatus::Engine, "output contains a NUL byte"),
    }
}

fn scenario_status(e: ScenarioError) -> HkStatus {
    let status = match e {
        ScenarioError::Input(_) => HkStatus::InvalidInput,
        ScenarioError::Engine(_) => HkStatus::Engine,
    };
    fail(status, e.to_string())
}

/// Message of the last failed call on this thread, or NULL.
///
/// The pointer stays valid until the next call into the library on the same thread.
#[no_mangle]
pub extern "C" fn hk_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// # Safety
/// `s` must be NULL or a string returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn hk_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Builds a lattice from a row-major `rank × rank` Gram matrix.
///
/// # Safety
/// `gram` must point to `rank * rank` readable values and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hk_lattice_new(gram: *const i64, rank: usize, out: *mut *mut HkLattice) -> HkStatus {
    guard(|| {
        if out.is_null() || (gram.is_null() && rank > 0) {
            return fail(HkStatus::NullPointer, "null argument");
        }
        let Some(len) = rank.checked_mul(rank) else {
            return fail(HkStatus::InvalidInput, "rank is too large");
        };
        let flat: &[i64] = if len == 0 { &[] } else { std::slice::from_raw_parts(gram, len) };
        let rows: Vec<Vec<i64>> = flat.chunks(rank.max(1)).map(<[i64]>::to_vec).collect();
        let inner = if rank == 0 { Ok(IntegralLattice::zero()) } else { IntegralLattice::new(rows) };
        match inner {
            Ok(inner) => {
                *out = Box::into_raw(Box::new(HkLattice { inner }));
                HkStatus::Ok
            }
            Err(e) => fail(HkStatus::InvalidInput, e.to_string()),
        }
    })
}

/// # Safety
/// `lattice` must be NULL or a handle from [`hk_lattice_new`] that has not been freed.
#[no_mangle]
pub unsafe extern "C" fn hk_lattice_free(lattice: *mut HkLattice) {
    if !lattice.is_null() {
        drop(Box::from_raw(lattice));
    }
}

/// # Safety
/// `lattice` must be a live handle; `rank` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hk_lattice_rank(lattice: *const HkLattice, rank: *mut usize) -> HkStatus {
    guard(|| {
        let (Some(l), false) = (lattice.as_ref(), rank.is_null()) else {
            return fail(HkStatus::NullPointer, "null argument");
        };
        *rank = l.inner.rank();
        HkStatus::Ok
    })
}

/// # Safety
/// `lattice` must be a live handle; `positive` and `negative` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hk_lattice_signature(
    lattice: *const HkLattice,
    positive: *mut usize,
    negative: *mut usize,
) -> HkStatus {
    guard(|| {
        let (Some(l), false) = (lattice.as_ref(), positive.is_null() || negative.is_null()) else {
            return fail(HkStatus::NullPointer, "null argument");
        };
        (*positive, *negative) = l.inner.signature();
        HkStatus::Ok
    })
}

/// # Safety
/// `lattice` must be a live handle; `det` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hk_lattice_determinant(lattice: *const HkLattice, det: *mut i64) -> HkStatus {
    guard(|| {
        let (Some(l), false) = (lattice.as_ref(), det.is_null()) else {
            return fail(HkStatus::NullPointer, "null argument");
        };
        match i64::try_from(l.inner.det()) {
            Ok(d) => {
                *det = d;
                HkStatus::Ok
            }
            Err(_) => fail(HkStatus::Overflow, "determinant does not fit in 64 bits"),
        }
    })
}

/// Invariants `(r, a, δ)` of a 2-elementary lattice.
///
/// # Safety
/// `lattice` must be a live handle; the output pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn hk_lattice_two_elementary(
    lattice: *const HkLattice,
    r: *mut u32,
    a: *mut u32,
    delta: *mut u8,
) -> HkStatus {
    guard(|| {
        let (Some(l), false) = (lattice.as_ref(), r.is_null() || a.is_null() || delta.is_null()) else {
            return fail(HkStatus::NullPointer, "null argument");
        };
        match l.inner.two_elementary_invariants() {
            Ok(t) => {
                (*r, *a, *delta) = (t.r, t.a, t.delta);
                HkStatus::Ok
            }
            Err(e) => fail(HkStatus::Engine, e.to_string()),
        }
    })
}

/// Elementary divisors of the discriminant group as a JSON array of decimal strings.
///
/// # Safety
/// `lattice` must be a live handle; `out` must be writable. Free the result with [`hk_string_free`].
#[no_mangle]
pub unsafe extern "C" fn hk_lattice_discriminant_json(lattice: *const HkLattice, out: *mut *mut c_char) -> HkStatus {
    guard(|| {
        let (Some(l), false) = (lattice.as_ref(), out.is_null()) else {
            return fail(HkStatus::NullPointer, "null argument");
        };
        match l.inner.discriminant_group() {
            Ok(g) => {
                let divisors: Vec<String> = g.elementary_divisors.iter().map(ToString::to_string).collect();
                write_string(out, serde_json::Value::from(divisors).to_string())
            }
            Err(e) => fail(HkStatus::Engine, e.to_string()),
        }
    })
}

unsafe fn run_scenario<T: serde::Serialize>(
    scenario_json: *const c_char,
    out: *mut *mut c_char,
    run: impl FnOnce(&Scenario) -> Result<T, ScenarioError>,
) -> HkStatus {
    guard(|| {
        if out.is_null() {
            return fail(HkStatus::NullPointer, "null output pointer");
        }
        let text = match read_str(scenario_json) {
            Ok(t) => t,
            Err(s) => return s,
        };
        let report = Scenario::from_json(text).and_then(|s| run(&s));
        match report {
            Ok(r) => match serde_json::to_string(&r) {
                Ok(json) => write_string(out, json),
                Err(e) => fail(HkStatus::Engine, e.to_string()),
            },
            Err(e) => scenario_status(e),
        }
    })
}

/// Runs the mirror pipeline on a scenario and returns the report as JSON.
///
/// # Safety
/// `scenario_json` must be a NUL-terminated string; `out` must be writable.
/// Free the result with [`hk_string_free`].
#[no_mangle]
pub unsafe extern "C" fn hk_mirror_report_json(scenario_json: *const c_char, out: *mut *mut c_char) -> HkStatus {
    run_scenario(scenario_json, out, Scenario::run_mirror)
}

/// Classifies a scenario's involution and returns the report as JSON.
///
/// # Safety
/// `scenario_json` must be a NUL-terminated string; `out` must be writable.
/// Free the result with [`hk_string_free`].
#[no_mangle]
pub unsafe extern "C" fn hk_involution_report_json(scenario_json: *const c_char, out: *mut *mut c_char) -> HkStatus {
    run_scenario(scenario_json, out, Scenario::run_involution)
}

/// Moduli dimension `v² + 2` for `v` written as `r;d1,...,dk;s` over a Picard lattice.
///
/// # Safety
/// `vector` must be a NUL-terminated string, `picard` a live handle, `dim` writable.
#[no_mangle]
pub unsafe extern "C" fn hk_mukai_dimension(
    vector: *const c_char,
    picard: *const HkLattice,
    dim: *mut i64,
) -> HkStatus {
    guard(|| {
        let (Some(p), false) = (picard.as_ref(), dim.is_null()) else {
            return fail(HkStatus::NullPointer, "null argument");
        };
        let text = match read_str(vector) {
            Ok(t) => t,
            Err(s) => return s,
        };
        let v: MukaiVector = match text.parse() {
            Ok(v) => v,
            Err(e) => return fail(HkStatus::InvalidInput, format!("{e}")),
        };
        match mukai::moduli_dimension(&v, &p.inner) {
            Ok(d) => match i64::try_from(d) {
                Ok(d) => {
                    *dim = d;
                    HkStatus::Ok
                }
                Err(_) => fail(HkStatus::Overflow, "dimension does not fit in 64 bits"),
            },
            Err(e) => fail(HkStatus::InvalidInput, e.to_string()),
        }
    })
}

/// Whether `v` admits a universal family by the gcd criterion.
///
/// # Safety
/// `vector` must be a NUL-terminated string, `picard` a live handle, `fine` writable.
#[no_mangle]
pub unsafe extern "C" fn hk_mukai_is_fine(
    vector: *const c_char,
    picard: *const HkLattice,
    fine: *mut bool,
) -> HkStatus {
    guard(|| {
        let (Some(p), false) = (picard.as_ref(), fine.is_null()) else {
            return fail(HkStatus::NullPointer, "null argument");
        };
        let text = match read_str(vector) {
            Ok(t) => t,
            Err(s) => return s,
        };
        let v: MukaiVector = match text.parse() {
            Ok(v) => v,
            Err(e) => return fail(HkStatus::InvalidInput, format!("{e}")),
        };
        match mukai::is_fine(&v, &p.inner) {
            Ok(f) => {
                *fine = f;
                HkStatus::Ok
            }
            Err(e) => fail(HkStatus::InvalidInput, e.to_string()),
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn message() -> String {
        let p = hk_last_error_message();
        assert!(!p.is_null());
        unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
    }

    #[test]
    fn lattice_round_trip() {
        let gram = [0i64, 1, 1, 0];
        let mut l = ptr::null_mut();
        unsafe {
            assert_eq!(hk_lattice_new(gram.as_ptr(), 2, &mut l), HkStatus::Ok);
            assert!(hk_last_error_message().is_null());
            let (mut p, mut n, mut det) = (0usize, 0usize, 0i64);
            assert_eq!(hk_lattice_signature(l, &mut p, &mut n), HkStatus::Ok);
            assert_eq!(hk_lattice_determinant(l, &mut det), HkStatus::Ok);
            assert_eq!((p, n, det), (1, 1, -1));
            hk_lattice_free(l);
        }
    }

    #[test]
    fn odd_form_is_invalid_input() {
        let gram = [1i64];
        let mut l = ptr::null_mut();
        unsafe {
            assert_eq!(hk_lattice_new(gram.as_ptr(), 1, &mut l), HkStatus::InvalidInput);
        }
        assert!(l.is_null());
        assert!(!message().is_empty());
    }

    #[test]
    fn non_two_elementary_is_engine_error() {
        let gram = [-4i64];
        let mut l = ptr::null_mut();
        let (mut r, mut a, mut d) = (0u32, 0u32, 0u8);
        unsafe {
            assert_eq!(hk_lattice_new(gram.as_ptr(), 1, &mut l), HkStatus::Ok);
            assert_eq!(hk_lattice_two_elementary(l, &mut r, &mut a, &mut d), HkStatus::Engine);
            hk_lattice_free(l);
        }
    }

    #[test]
    fn null_arguments() {
        unsafe {
            assert_eq!(hk_lattice_rank(ptr::null(), ptr::null_mut()), HkStatus::NullPointer);
            assert_eq!(hk_mirror_report_json(ptr::null(), ptr::null_mut()), HkStatus::NullPointer);
        }
        assert_eq!(message(), "null output pointer");
    }
}
