//! C interface to `pkarr-core`.
//!
//! Arrangements live behind an opaque handle. Reports come back as JSON strings
//! with the same shape as the command line's `--json` output. Every function
//! returns a [`PkarrStatus`]; on failure `pkarr_last_error` describes it.
//!
//! Ownership: handles are released with `pkarr_arrangement_free`, strings with
//! `pkarr_string_free`. Passing anything else to those functions is undefined.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use pkarr_core::arrangement::{parse_arrangement, parse_weights, Arrangement};
use pkarr_core::catalog::catalog_build;
use pkarr_core::connection::{parse_connection_file, verify_connection_file};
use pkarr_core::report::{check_summary, lattice_summary, parabolic_summary, solve_summary, CheckOptions};
use pkarr_core::{Error, Rational};

/// Result of every call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PkarrStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    /// Malformed JSON or an unreadable value.
    ParseError = 3,
    /// Well-formed input that the library rejects (proportional lines, unknown entry, bad parameter...).
    InvalidInput = 4,
    WeightsMissing = 5,
    InadmissibleWeights = 6,
    /// An internal consistency check failed.
    Internal = 7,
    /// A Rust panic was caught at the boundary.
    Panic = 8,
}

/// `pkarr_check_json` flag: also report the double-points-as-singular convention.
pub const PKARR_CHECK_DOUBLES_AS_SINGULAR: u32 = 1;
/// `pkarr_check_json` flag: fail unless the classification is `pk_candidate_equality`.
pub const PKARR_CHECK_REQUIRE_EQUALITY: u32 = 2;
/// `pkarr_check_json` flag: `infeasible` and `limit_cusp` count as failures.
pub const PKARR_CHECK_REQUIRE_FEASIBLE: u32 = 4;

/// A line arrangement and, optionally, its weights.
pub struct PkarrArrangement {
    arrangement: Arrangement,
    weights: Option<Vec<Rational>>,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

struct Failure(PkarrStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::Parse(_) => PkarrStatus::ParseError,
            Error::WeightsMissing(_) => PkarrStatus::WeightsMissing,
            Error::InadmissibleWeights(_) => PkarrStatus::InadmissibleWeights,
            Error::Internal(_) => PkarrStatus::Internal,
            _ => PkarrStatus::InvalidInput,
        };
        Failure(status, e.to_string())
    }
}

fn set_error(msg: Option<String>) {
    let c = msg.map(|m| CString::new(m.replace('\0', " ")).expect("nul bytes removed"));
    LAST_ERROR.with(|slot| *slot.borrow_mut() = c);
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> PkarrStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error(None);
            PkarrStatus::Ok
        }
        Ok(Err(Failure(status, msg))) => {
            set_error(Some(msg));
            status
        }
        Err(_) => {
            set_error(Some("panic inside pkarr".into()));
            PkarrStatus::Panic
        }
    }
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure(PkarrStatus::NullPointer, format!("{what} is null")));
    }
    CStr::from_ptr(p).to_str().map_err(|_| Failure(PkarrStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn handle<'a>(h: *const PkarrArrangement) -> Result<&'a PkarrArrangement, Failure> {
    h.as_ref().ok_or_else(|| Failure(PkarrStatus::NullPointer, "arrangement handle is null".into()))
}

fn check_out<T>(p: *mut T, what: &str) -> Result<(), Failure> {
    if p.is_null() {
        Err(Failure(PkarrStatus::NullPointer, format!("{what} is null")))
    } else {
        Ok(())
    }
}

unsafe fn write_json<T: serde::Serialize>(out: *mut *mut c_char, value: &T) -> Result<(), Failure> {
    let s = serde_json::to_string(value).map_err(|e| Failure(PkarrStatus::Internal, e.to_string()))?;
    let c = CString::new(s).map_err(|e| Failure(PkarrStatus::Internal, e.to_string()))?;
    *out = c.into_raw();
    Ok(())
}

unsafe fn write_flag(out: *mut bool, v: bool) {
    if !out.is_null() {
        *out = v;
    }
}

fn weights_of(h: &PkarrArrangement) -> Result<&[Rational], Failure> {
    h.weights.as_deref().ok_or_else(|| {
        Failure(
            PkarrStatus::WeightsMissing,
            "arrangement has no weights; call pkarr_arrangement_set_weights_json".into(),
        )
    })
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn pkarr_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message for the last failed call on this thread, or null after a successful call.
/// The pointer stays valid until the next call into the library on the same thread.
#[no_mangle]
pub extern "C" fn pkarr_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Parses an arrangement file (`{"field": ..., "lines": [...], "weights": {...}}`).
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pkarr_arrangement_from_json(
    json: *const c_char,
    out: *mut *mut PkarrArrangement,
) -> PkarrStatus {
    guard(|| {
        check_out(out, "out")?;
        let (arrangement, weights) = parse_arrangement(text(json, "json")?, "<ffi>")?;
        *out = Box::into_raw(Box::new(PkarrArrangement { arrangement, weights }));
        Ok(())
    })
}

/// Builds a catalog arrangement with its default weights.
///
/// # Safety
/// `name` must be a NUL-terminated string, `params` must point to `n_params`
/// integers (or be null when `n_params` is 0) and `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn pkarr_catalog_build(
    name: *const c_char,
    params: *const i64,
    n_params: usize,
    out: *mut *mut PkarrArrangement,
) -> PkarrStatus {
    guard(|| {
        check_out(out, "out")?;
        let name = text(name, "name")?;
        let params: &[i64] = if n_params == 0 {
            &[]
        } else if params.is_null() {
            return Err(Failure(PkarrStatus::NullPointer, "params is null".into()));
        } else {
            std::slice::from_raw_parts(params, n_params)
        };
        let entry = catalog_build(name, params)?;
        *out = Box::into_raw(Box::new(PkarrArrangement {
            arrangement: entry.arrangement,
            weights: Some(entry.default_weights),
        }));
        Ok(())
    })
}

/// Number of lines in the arrangement.
///
/// # Safety
/// `h` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pkarr_arrangement_line_count(h: *const PkarrArrangement, out: *mut usize) -> PkarrStatus {
    guard(|| {
        check_out(out, "out")?;
        *out = handle(h)?.arrangement.n();
        Ok(())
    })
}

/// Replaces the weights with a `{"line name": "p/q", ...}` map covering every line.
///
/// # Safety
/// `h` must be a live handle and `json` a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn pkarr_arrangement_set_weights_json(
    h: *mut PkarrArrangement,
    json: *const c_char,
) -> PkarrStatus {
    guard(|| {
        let h = h.as_mut().ok_or_else(|| Failure(PkarrStatus::NullPointer, "arrangement handle is null".into()))?;
        let map = parse_weights(text(json, "json")?, "<ffi>")?;
        h.weights = Some(h.arrangement.weights_from_map(&map)?);
        Ok(())
    })
}

/// Releases a handle. Null is ignored.
///
/// # Safety
/// `h` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn pkarr_arrangement_free(h: *mut PkarrArrangement) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn pkarr_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Intersection lattice, B-matrix, symmetric and Hirzebruch checks.
///
/// # Safety
/// `h` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pkarr_lattice_json(h: *const PkarrArrangement, out: *mut *mut c_char) -> PkarrStatus {
    guard(|| {
        check_out(out, "out")?;
        let (_, rep) = lattice_summary(&handle(h)?.arrangement)?;
        write_json(out, &rep)
    })
}

/// Relation residuals, classification, Bogomolov-Gieseker value, pencil and cusp reports.
/// `passes` (nullable) receives whether the run passes under `flags`.
///
/// # Safety
/// `h` must be a live handle, `out` a valid pointer, `passes` valid or null.
#[no_mangle]
pub unsafe extern "C" fn pkarr_check_json(
    h: *const PkarrArrangement,
    flags: u32,
    out: *mut *mut c_char,
    passes: *mut bool,
) -> PkarrStatus {
    guard(|| {
        check_out(out, "out")?;
        let h = handle(h)?;
        let opts = CheckOptions {
            doubles_as_singular: flags & PKARR_CHECK_DOUBLES_AS_SINGULAR != 0,
            require_equality: flags & PKARR_CHECK_REQUIRE_EQUALITY != 0,
            require_feasible: flags & PKARR_CHECK_REQUIRE_FEASIBLE != 0,
        };
        let (_, rep) = check_summary(&h.arrangement, weights_of(h)?, &opts)?;
        write_flag(passes, rep.passes());
        write_json(out, &rep)
    })
}

/// Exact solution space of the weight relations and its interior.
///
/// # Safety
/// `h` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pkarr_solve_json(h: *const PkarrArrangement, out: *mut *mut c_char) -> PkarrStatus {
    guard(|| {
        check_out(out, "out")?;
        let rep = solve_summary(&handle(h)?.arrangement)?;
        write_json(out, &rep)
    })
}

/// Parabolic Chern data on the blow-up and stability margins. `n <= 0` picks the
/// stability threshold. `passes` (nullable) receives whether every margin is negative.
///
/// # Safety
/// `h` must be a live handle, `out` a valid pointer, `passes` valid or null.
#[no_mangle]
pub unsafe extern "C" fn pkarr_parabolic_json(
    h: *const PkarrArrangement,
    n: i64,
    diagnostic: bool,
    out: *mut *mut c_char,
    passes: *mut bool,
) -> PkarrStatus {
    guard(|| {
        check_out(out, "out")?;
        let h = handle(h)?;
        let n = (n > 0).then_some(n);
        let rep = parabolic_summary(&h.arrangement, weights_of(h)?, n, diagnostic)?;
        write_flag(passes, rep.passes());
        write_json(out, &rep)
    })
}

/// Verifies a connection file: residue solution space plus flatness and torsion checks.
///
/// # Safety
/// `json` must be a NUL-terminated string, `out` a valid pointer, `passes` valid or null.
#[no_mangle]
pub unsafe extern "C" fn pkarr_connection_verify_json(
    json: *const c_char,
    out: *mut *mut c_char,
    passes: *mut bool,
) -> PkarrStatus {
    guard(|| {
        check_out(out, "out")?;
        let file = parse_connection_file(text(json, "json")?, "<ffi>")?;
        let rep = verify_connection_file(&file)?;
        write_flag(passes, rep.all_ok);
        write_json(out, &rep)
    })
}
