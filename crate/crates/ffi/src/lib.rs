//! C interface to `steiner-lab`.
//!
//! Every fallible call returns an [`SlStatus`]. On failure the message is kept
//! per thread and can be fetched with [`sl_last_error`]. Strings handed out by
//! this library are owned by the caller and released with [`sl_string_free`];
//! map handles are released with [`sl_map_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use serde_json::Value;
use steiner_lab::chow::{porteous_class, rank_bound};
use steiner_lab::grassmann::DEFAULT_BUDGET;
use steiner_lab::jumping::locus_report;
use steiner_lab::schwarzenberger::{build_triple, to_steiner, verify_family, FamilySpec};
use steiner_lab::steiner::{check_pk, dualize, reduce, AnySteinerMap, CheckMode, PkVerdict};
use steiner_lab::Error;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SlStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    InvalidField = 3,
    DimensionMismatch = 4,
    InvalidParameters = 5,
    FieldMismatch = 6,
    BadReduction = 7,
    BudgetExceeded = 8,
    DegreeOutOfRange = 9,
    InvalidJumpingPair = 10,
    InjectivityViolation = 11,
    Schema = 12,
    Parse = 13,
    Panic = 14,
}

impl From<&Error> for SlStatus {
    fn from(e: &Error) -> Self {
        match e {
            Error::InvalidField(_) => SlStatus::InvalidField,
            Error::DimensionMismatch(_) => SlStatus::DimensionMismatch,
            Error::InvalidParameters(_) => SlStatus::InvalidParameters,
            Error::FieldMismatch(_) => SlStatus::FieldMismatch,
            Error::BadReduction { .. } => SlStatus::BadReduction,
            Error::BudgetExceeded { .. } => SlStatus::BudgetExceeded,
            Error::DegreeOutOfRange { .. } => SlStatus::DegreeOutOfRange,
            Error::InvalidJumpingPair(_) => SlStatus::InvalidJumpingPair,
            Error::InjectivityViolation { .. } => SlStatus::InjectivityViolation,
            Error::Schema(_) => SlStatus::Schema,
            Error::Parse(_) => SlStatus::Parse,
        }
    }
}

/// Opaque handle to a Steiner map over `Q` or `F_p`.
pub struct SlMap(AnySteinerMap);

thread_local! {
    static LAST_ERROR: RefCell<Option<String>> = const { RefCell::new(None) };
}

struct Failure(SlStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(SlStatus::from(&e), e.to_string())
    }
}

fn null(what: &str) -> Failure {
    Failure(SlStatus::NullPointer, format!("{what} is null"))
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> SlStatus {
    let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|payload| {
        let msg = payload
            .downcast_ref::<&str>()
            .map(|s| s.to_string())
            .or_else(|| payload.downcast_ref::<String>().cloned())
            .unwrap_or_else(|| "unknown panic".into());
        Err(Failure(SlStatus::Panic, msg))
    });
    match outcome {
        Ok(()) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            SlStatus::Ok
        }
        Err(Failure(code, msg)) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
            code
        }
    }
}

unsafe fn read_str<'a>(s: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if s.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(s).to_str().map_err(|e| Failure(SlStatus::InvalidUtf8, format!("{what}: {e}")))
}

unsafe fn read_json(s: *const c_char, what: &str) -> Result<Value, Failure> {
    let text = read_str(s, what)?;
    serde_json::from_str(text).map_err(|e| Failure(SlStatus::Parse, format!("{what}: {e}")))
}

unsafe fn map_ref<'a>(m: *const SlMap) -> Result<&'a AnySteinerMap, Failure> {
    m.as_ref().map(|m| &m.0).ok_or_else(|| null("map"))
}

unsafe fn put<T>(out: *mut T, v: T, what: &str) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null(what));
    }
    out.write(v);
    Ok(())
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    let c = CString::new(s).map_err(|e| Failure(SlStatus::InvalidUtf8, e.to_string()))?;
    put(out, c.into_raw(), "out")
}

unsafe fn put_map(out: *mut *mut SlMap, m: AnySteinerMap) -> Result<(), Failure> {
    put(out, Box::into_raw(Box::new(SlMap(m))), "out")
}

/// Message of the last failed call on this thread, or null. Free with
/// [`sl_string_free`].
#[no_mangle]
pub extern "C" fn sl_last_error() -> *mut c_char {
    LAST_ERROR.with(|e| match e.borrow().as_deref() {
        Some(msg) => CString::new(msg.replace('\0', " ")).map(CString::into_raw).unwrap_or(ptr::null_mut()),
        None => ptr::null_mut(),
    })
}

/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn sl_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a map from its JSON form.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sl_map_from_json(json: *const c_char, out: *mut *mut SlMap) -> SlStatus {
    guard(|| {
        let v = read_json(json, "json")?;
        put_map(out, AnySteinerMap::from_json(&v)?)
    })
}

/// # Safety
/// `map` must come from this library and not have been freed; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sl_map_to_json(map: *const SlMap, out: *mut *mut c_char) -> SlStatus {
    guard(|| put_string(out, map_ref(map)?.to_json().to_string()))
}

/// Writes `k`, `n`, `s`, `t` into `shape[0..4]`.
///
/// # Safety
/// `map` must be live; `shape` must point to four writable `size_t`.
#[no_mangle]
pub unsafe extern "C" fn sl_map_shape(map: *const SlMap, shape: *mut usize) -> SlStatus {
    guard(|| {
        let dims = match map_ref(map)? {
            AnySteinerMap::Rational(m) => [m.k(), m.n(), m.s(), m.t()],
            AnySteinerMap::Prime(m) => [m.k(), m.n(), m.s(), m.t()],
        };
        if shape.is_null() {
            return Err(null("shape"));
        }
        ptr::copy_nonoverlapping(dims.as_ptr(), shape, 4);
        Ok(())
    })
}

/// # Safety
/// `map` must be null or a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn sl_map_free(map: *mut SlMap) {
    if !map.is_null() {
        drop(Box::from_raw(map));
    }
}

/// Checks the bundle condition. `prime == 0` means the map's own field (a map
/// over `Q` then needs `trials > 0`). `trials == 0` runs the exhaustive check,
/// otherwise `trials` random points drawn from `seed`. `*valid` is 1 or 0. When
/// `witness` is non-null it receives the verdict JSON.
///
/// # Safety
/// `map` must be live; `valid` must be writable; `witness` may be null.
#[no_mangle]
pub unsafe extern "C" fn sl_check_pk(
    map: *const SlMap,
    prime: u64,
    trials: usize,
    seed: u64,
    valid: *mut i32,
    witness: *mut *mut c_char,
) -> SlStatus {
    guard(|| {
        let prime = (prime != 0).then_some(prime);
        let mode = if trials == 0 {
            CheckMode::Exhaustive { prime }
        } else {
            CheckMode::Sampled { prime, trials, seed }
        };
        let verdict: PkVerdict = match map_ref(map)? {
            AnySteinerMap::Rational(m) => check_pk(m, &mode)?,
            AnySteinerMap::Prime(m) => check_pk(m, &mode)?,
        };
        put(valid, verdict.is_valid() as i32, "valid")?;
        if !witness.is_null() {
            put_string(witness, verdict.to_json().to_string())?;
        }
        Ok(())
    })
}

/// Strips trivial summands. `trivial` may be null.
///
/// # Safety
/// `map` must be live; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sl_reduce(map: *const SlMap, out: *mut *mut SlMap, trivial: *mut usize) -> SlStatus {
    guard(|| {
        let (red, count) = match map_ref(map)? {
            AnySteinerMap::Rational(m) => {
                let (r, c) = reduce(m);
                (AnySteinerMap::Rational(r), c)
            }
            AnySteinerMap::Prime(m) => {
                let (r, c) = reduce(m);
                (AnySteinerMap::Prime(r), c)
            }
        };
        if !trivial.is_null() {
            trivial.write(count);
        }
        put_map(out, red)
    })
}

/// # Safety
/// `map` must be live; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sl_dualize(map: *const SlMap, out: *mut *mut SlMap) -> SlStatus {
    guard(|| {
        let d = match map_ref(map)? {
            AnySteinerMap::Rational(m) => AnySteinerMap::Rational(dualize(m)?),
            AnySteinerMap::Prime(m) => AnySteinerMap::Prime(dualize(m)?),
        };
        put_map(out, d)
    })
}

/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sl_rank_bound(k: usize, n: usize, s: usize, out: *mut usize) -> SlStatus {
    guard(|| put(out, rank_bound(k, n, s)?, "out"))
}

/// The degeneracy class as JSON.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sl_porteous_json(k: usize, n: usize, s: usize, t: usize, out: *mut *mut c_char) -> SlStatus {
    guard(|| put_string(out, porteous_class(k, n, s, t)?.to_json().to_string()))
}

/// Jumping-locus report over `F_prime` as JSON.
///
/// # Safety
/// `map` must be live; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sl_jumping_report_json(map: *const SlMap, prime: u64, out: *mut *mut c_char) -> SlStatus {
    guard(|| {
        let report = match map_ref(map)? {
            AnySteinerMap::Rational(m) => locus_report(m, prime, DEFAULT_BUDGET)?,
            AnySteinerMap::Prime(m) => locus_report(m, prime, DEFAULT_BUDGET)?,
        };
        put_string(out, report.to_json().to_string())
    })
}

/// Builds the Steiner map of a family spec over `Q`. When `prime` is nonzero
/// the map is first checked exhaustively over `F_prime`, which also reports a
/// non-injective multiplication map.
///
/// # Safety
/// `spec` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sl_family_map(spec: *const c_char, prime: u64, out: *mut *mut SlMap) -> SlStatus {
    guard(|| {
        let v = read_json(spec, "spec")?;
        let primes: Vec<u64> = (prime != 0).then_some(prime).into_iter().collect();
        let tr = build_triple(&FamilySpec::from_json(&v, &primes)?)?;
        let sm = match primes.first() {
            Some(&p) => to_steiner(&tr, &CheckMode::Exhaustive { prime: Some(p) })?,
            None => tr.steiner_map(),
        };
        put_map(out, AnySteinerMap::Rational(sm))
    })
}

/// Runs the family pipeline on a spec such as `{"family":"rnc","d":2,"n":3}`
/// over `primes[0..count]`. `*pass` is 1 when every predicate holds.
///
/// # Safety
/// `spec` must be a NUL-terminated string, `primes` must hold `count` values,
/// and `pass` and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sl_verify_family_json(
    spec: *const c_char,
    primes: *const u64,
    count: usize,
    pass: *mut i32,
    out: *mut *mut c_char,
) -> SlStatus {
    guard(|| {
        let v = read_json(spec, "spec")?;
        if primes.is_null() && count > 0 {
            return Err(null("primes"));
        }
        let primes = if count == 0 { &[][..] } else { std::slice::from_raw_parts(primes, count) };
        let family = FamilySpec::from_json(&v, primes)?;
        let report = verify_family(&family, primes, DEFAULT_BUDGET)?;
        put(pass, report.pass() as i32, "pass")?;
        put_string(out, report.to_json().to_string())
    })
}
