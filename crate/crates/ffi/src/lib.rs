//! C ABI for troplog.
//!
//! Every function returns a [`TroplogStatus`]. Results come back through out-pointers:
//! either opaque handles (freed by their `_free` function) or NUL-terminated strings
//! allocated here (freed by [`troplog_string_free`]). After a non-OK status,
//! [`troplog_last_error`] returns the message of the most recent failure on this thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use troplog::counting::{count_with_reseed, kontsevich_oracle, CountReport};
use troplog::degeneration::{enumerate_rigid_types, pair_evaluation_product, DegenerationSetup, RigidDatum};
use troplog::lattice_geom::{quotient_fan, ConeComplex};
use troplog::num::format_rational;
use troplog::tropical_maps::{flatten, is_flat_map, ConeComplexMap, MapComplexJson};
use troplog::{Error, LatticeVector};

/// Status codes. Values 2, 3 and 4 match the command-line exit codes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TroplogStatus {
    Ok = 0,
    Error = 1,
    NonGeneric = 2,
    IterationLimit = 3,
    Unplottable = 4,
    InvalidInput = 5,
    NullPointer = 6,
    OutOfRange = 7,
    BoundsExceeded = 8,
    Panic = 9,
}

/// Result of a curve count.
pub struct TroplogCountReport(CountReport);

/// Rigid data of a degeneration setup.
pub struct TroplogRigidData(Vec<RigidDatum>);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("no interior NUL");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> TroplogStatus {
    match e {
        Error::NonGenericConfiguration(_) => TroplogStatus::NonGeneric,
        Error::IterationLimit(_) => TroplogStatus::IterationLimit,
        Error::Unplottable(_) => TroplogStatus::Unplottable,
        Error::InvalidInput(_) | Error::RankMismatch { .. } | Error::ZeroVector => TroplogStatus::InvalidInput,
        Error::BoundsExceeded(_) | Error::TruncationTooLarge(_) => TroplogStatus::BoundsExceeded,
        _ => TroplogStatus::Error,
    }
}

struct Fail(TroplogStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(status_of(&e), e.to_string())
    }
}

impl From<serde_json::Error> for Fail {
    fn from(e: serde_json::Error) -> Self {
        Fail(TroplogStatus::InvalidInput, format!("json: {e}"))
    }
}

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> TroplogStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => TroplogStatus::Ok,
        Ok(Err(Fail(s, msg))) => {
            set_error(msg);
            s
        }
        Err(_) => {
            set_error("internal panic".into());
            TroplogStatus::Panic
        }
    }
}

fn null() -> Fail {
    Fail(TroplogStatus::NullPointer, "null pointer argument".into())
}

/// # Safety
/// `p` is null or a valid NUL-terminated string.
unsafe fn read_str<'a>(p: *const c_char) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(null());
    }
    CStr::from_ptr(p).to_str().map_err(|_| Fail(TroplogStatus::InvalidInput, "string is not UTF-8".into()))
}

/// # Safety
/// `out` is null or valid for writes.
unsafe fn write_str(out: *mut *mut c_char, s: String) -> Result<(), Fail> {
    if out.is_null() {
        return Err(null());
    }
    *out = CString::new(s).map_err(|_| Fail(TroplogStatus::Error, "interior NUL".into()))?.into_raw();
    Ok(())
}

/// Copy of the last error message on this thread, or null if none. Free with
/// `troplog_string_free`.
#[no_mangle]
pub extern "C" fn troplog_last_error() -> *mut c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null_mut(), |c| c.clone().into_raw()))
}

/// Frees a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` is null or was returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn troplog_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Number of rational plane curves of degree `d` through `3d - 1` general points, as a
/// decimal string.
///
/// # Safety
/// `out` is valid for writes.
#[no_mangle]
pub unsafe extern "C" fn troplog_kontsevich(d: u32, out: *mut *mut c_char) -> TroplogStatus {
    guard(|| {
        if d == 0 {
            return Err(Fail(TroplogStatus::OutOfRange, "degree must be positive".into()));
        }
        write_str(out, kontsevich_oracle(d).to_string())
    })
}

/// Counts plane tropical curves of degree `d` and genus `g` through seeded generic points,
/// redrawing up to `max_reseeds` times on a non-generic draw.
///
/// # Safety
/// `out` is valid for writes.
#[no_mangle]
pub unsafe extern "C" fn troplog_count(d: u32, g: u32, seed: u64, max_reseeds: usize, out: *mut *mut TroplogCountReport) -> TroplogStatus {
    guard(|| {
        if out.is_null() {
            return Err(null());
        }
        let r = count_with_reseed(d, g, seed, max_reseeds)?;
        *out = Box::into_raw(Box::new(TroplogCountReport(r)));
        Ok(())
    })
}

/// The total count (with multiplicities) as a decimal string.
///
/// # Safety
/// `report` is a live handle; `out` is valid for writes.
#[no_mangle]
pub unsafe extern "C" fn troplog_count_report_total(report: *const TroplogCountReport, out: *mut *mut c_char) -> TroplogStatus {
    guard(|| {
        let r = report.as_ref().ok_or_else(null)?;
        write_str(out, r.0.count.to_string())
    })
}

/// Number of curves found (without multiplicity).
///
/// # Safety
/// `report` is a live handle; `out` is valid for writes.
#[no_mangle]
pub unsafe extern "C" fn troplog_count_report_len(report: *const TroplogCountReport, out: *mut usize) -> TroplogStatus {
    guard(|| {
        let r = report.as_ref().ok_or_else(null)?;
        *out.as_mut().ok_or_else(null)? = r.0.solutions.len();
        Ok(())
    })
}

/// The report as JSON; with `with_solutions` nonzero every curve is included.
///
/// # Safety
/// `report` is a live handle; `out` is valid for writes.
#[no_mangle]
pub unsafe extern "C" fn troplog_count_report_to_json(report: *const TroplogCountReport, with_solutions: bool, out: *mut *mut c_char) -> TroplogStatus {
    guard(|| {
        let r = report.as_ref().ok_or_else(null)?;
        write_str(out, serde_json::to_string(&r.0.to_json(with_solutions))?)
    })
}

/// # Safety
/// `report` is null or a live handle, which is invalid afterwards.
#[no_mangle]
pub unsafe extern "C" fn troplog_count_report_free(report: *mut TroplogCountReport) {
    if !report.is_null() {
        drop(Box::from_raw(report));
    }
}

/// Rigid types of a degeneration setup given as JSON. Every datum is checked to glue.
///
/// # Safety
/// `setup_json` is a NUL-terminated string; `out` is valid for writes.
#[no_mangle]
pub unsafe extern "C" fn troplog_rigid_from_json(setup_json: *const c_char, out: *mut *mut TroplogRigidData) -> TroplogStatus {
    guard(|| {
        if out.is_null() {
            return Err(null());
        }
        let setup: DegenerationSetup = serde_json::from_str(read_str(setup_json)?)?;
        let data = enumerate_rigid_types(&setup)?;
        for d in &data {
            pair_evaluation_product(d)?;
        }
        *out = Box::into_raw(Box::new(TroplogRigidData(data)));
        Ok(())
    })
}

/// # Safety
/// `data` is a live handle; `out` is valid for writes.
#[no_mangle]
pub unsafe extern "C" fn troplog_rigid_len(data: *const TroplogRigidData, out: *mut usize) -> TroplogStatus {
    guard(|| {
        let d = data.as_ref().ok_or_else(null)?;
        *out.as_mut().ok_or_else(null)? = d.0.len();
        Ok(())
    })
}

/// Coefficient of datum `index` as an exact rational string such as `"1/2"`.
///
/// # Safety
/// `data` is a live handle; `out` is valid for writes.
#[no_mangle]
pub unsafe extern "C" fn troplog_rigid_coefficient(data: *const TroplogRigidData, index: usize, out: *mut *mut c_char) -> TroplogStatus {
    guard(|| {
        let d = data.as_ref().ok_or_else(null)?;
        let datum = d.0.get(index).ok_or_else(|| Fail(TroplogStatus::OutOfRange, format!("no datum {index}")))?;
        write_str(out, format_rational(&datum.coefficient))
    })
}

/// Datum `index` as JSON.
///
/// # Safety
/// `data` is a live handle; `out` is valid for writes.
#[no_mangle]
pub unsafe extern "C" fn troplog_rigid_to_json(data: *const TroplogRigidData, index: usize, out: *mut *mut c_char) -> TroplogStatus {
    guard(|| {
        let d = data.as_ref().ok_or_else(null)?;
        let datum = d.0.get(index).ok_or_else(|| Fail(TroplogStatus::OutOfRange, format!("no datum {index}")))?;
        write_str(out, serde_json::to_string(&datum.to_json())?)
    })
}

/// # Safety
/// `data` is null or a live handle, which is invalid afterwards.
#[no_mangle]
pub unsafe extern "C" fn troplog_rigid_free(data: *mut TroplogRigidData) {
    if !data.is_null() {
        drop(Box::from_raw(data));
    }
}

/// Flattens a map of cone complexes given as JSON; returns the flattened map with the
/// iteration count and subdivision flags.
///
/// # Safety
/// `map_json` is a NUL-terminated string; `out` is valid for writes.
#[no_mangle]
pub unsafe extern "C" fn troplog_flatten_json(map_json: *const c_char, max_iter: usize, out: *mut *mut c_char) -> TroplogStatus {
    guard(|| {
        let j: MapComplexJson = serde_json::from_str(read_str(map_json)?)?;
        let f = ConeComplexMap::from_json(&j)?;
        let r = flatten(&f, max_iter)?;
        let v = serde_json::json!({
            "map": r.map.to_json(),
            "iterations": r.iterations,
            "domain_subdivided": r.domain_subdivided,
            "codomain_subdivided": r.codomain_subdivided,
            "flat": is_flat_map(&r.map),
        });
        write_str(out, v.to_string())
    })
}

/// Quotient of a fan (JSON) by the one-parameter subgroup spanned by `direction`.
///
/// # Safety
/// `fan_json` is a NUL-terminated string; `direction` points to `len` integers; `out` is
/// valid for writes.
#[no_mangle]
pub unsafe extern "C" fn troplog_quotient_fan_json(fan_json: *const c_char, direction: *const i64, len: usize, out: *mut *mut c_char) -> TroplogStatus {
    guard(|| {
        let fan: ConeComplex = serde_json::from_str(read_str(fan_json)?)?;
        if direction.is_null() {
            return Err(null());
        }
        let dir = LatticeVector::from_i64(std::slice::from_raw_parts(direction, len));
        let q = quotient_fan(&fan, &dir)?;
        write_str(out, serde_json::to_string(&q.to_json())?)
    })
}
