//! C ABI for `ftv`.
//!
//! Every function returns an [`FtvStatus`]. On failure the message is
//! available from [`ftv_last_error`] on the same thread until the next call.
//! Handles are opaque and owned by the caller; free them with the matching
//! `*_free` function. Strings returned through `out` pointers must be
//! released with [`ftv_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use ftv::cli::{self, Command, Overrides};
use ftv::linalg::{to_i64, IntMatrix};
use ftv::{f_process, FProcess, FramedToricVariety, FtvError};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FtvStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    /// Bad input data: malformed JSON, wrong shapes, not a fan, bad framing.
    InvalidInput = 3,
    /// A search cap was reached.
    CapExceeded = 4,
    /// An internal consistency check failed.
    InvariantViolated = 5,
    /// A value does not fit in the caller's buffer or in `int64_t`.
    BufferTooSmall = 6,
    Overflow = 7,
    Panic = 8,
}

/// A fan with a strictly positive framing.
pub struct FtvVariety(FramedToricVariety);

/// The result of running the f-process on a variety.
pub struct FtvProcess(FProcess);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

fn status_of(e: &FtvError) -> FtvStatus {
    match e.exit_code() {
        3 => FtvStatus::CapExceeded,
        4 => FtvStatus::InvariantViolated,
        _ => FtvStatus::InvalidInput,
    }
}

fn guard(f: impl FnOnce() -> Result<(), FtvStatus>) -> FtvStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => FtvStatus::Ok,
        Ok(Err(s)) => s,
        Err(_) => {
            set_error("internal panic");
            FtvStatus::Panic
        }
    }
}

fn fail(e: FtvError) -> FtvStatus {
    set_error(e.to_string());
    status_of(&e)
}

fn null() -> FtvStatus {
    set_error("null pointer argument");
    FtvStatus::NullPointer
}

unsafe fn str_arg<'a>(p: *const c_char) -> Result<&'a str, FtvStatus> {
    if p.is_null() {
        return Err(null());
    }
    CStr::from_ptr(p).to_str().map_err(|_| {
        set_error("argument is not valid UTF-8");
        FtvStatus::InvalidUtf8
    })
}

fn give_string(s: String, out: *mut *mut c_char) -> Result<(), FtvStatus> {
    let c = CString::new(s).map_err(|_| {
        set_error("output contains a NUL byte");
        FtvStatus::InvariantViolated
    })?;
    // SAFETY: callers check `out` for null first.
    unsafe { *out = c.into_raw() };
    Ok(())
}

/// Message for the last failed call on this thread, or null. Owned by the
/// library; valid until the next call on this thread.
#[no_mangle]
pub extern "C" fn ftv_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn ftv_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Builds a variety from a row-major `rows × cols` fan matrix (columns are
/// rays) and a framing of length `cols`.
///
/// # Safety
/// `fan` must point to `rows * cols` values, `framing` to `cols` values and
/// `out` to writable storage.
#[no_mangle]
pub unsafe extern "C" fn ftv_variety_new(
    fan: *const i64,
    rows: usize,
    cols: usize,
    framing: *const i64,
    out: *mut *mut FtvVariety,
) -> FtvStatus {
    guard(|| {
        if fan.is_null() || framing.is_null() || out.is_null() {
            return Err(null());
        }
        let len = rows.checked_mul(cols).ok_or_else(|| fail(FtvError::DimensionMismatch("matrix too large".into())))?;
        let data = std::slice::from_raw_parts(fan, len).iter().map(|&x| x.into()).collect();
        let a = std::slice::from_raw_parts(framing, cols).iter().map(|&x| x.into()).collect();
        let m = IntMatrix::new(rows, cols, data).map_err(fail)?;
        let x = FramedToricVariety::new(m, a).map_err(fail)?;
        *out = Box::into_raw(Box::new(FtvVariety(x)));
        Ok(())
    })
}

/// Builds a variety from the `variety` and `framing` fields of a problem
/// file.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ftv_variety_from_json(json: *const c_char, out: *mut *mut FtvVariety) -> FtvStatus {
    guard(|| {
        let text = str_arg(json)?;
        if out.is_null() {
            return Err(null());
        }
        let file = cli::ProblemFile::parse(text).map_err(fail)?;
        let x = file.variety().map_err(fail)?;
        *out = Box::into_raw(Box::new(FtvVariety(x)));
        Ok(())
    })
}

/// # Safety
/// `v` must come from this library and not have been freed. Null is a no-op.
#[no_mangle]
pub unsafe extern "C" fn ftv_variety_free(v: *mut FtvVariety) {
    if !v.is_null() {
        drop(Box::from_raw(v));
    }
}

/// Runs the f-process with multiplier cap `k_cap` (0 for the default).
///
/// # Safety
/// `v` must be a live variety handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ftv_process_run(v: *const FtvVariety, k_cap: u64, out: *mut *mut FtvProcess) -> FtvStatus {
    guard(|| {
        if v.is_null() || out.is_null() {
            return Err(null());
        }
        let cap = if k_cap == 0 { ftv::DEFAULT_K_CAP } else { k_cap };
        let p = f_process(&(*v).0, cap).map_err(fail)?;
        *out = Box::into_raw(Box::new(FtvProcess(p)));
        Ok(())
    })
}

/// # Safety
/// `p` must come from this library and not have been freed. Null is a no-op.
#[no_mangle]
pub unsafe extern "C" fn ftv_process_free(p: *mut FtvProcess) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// # Safety
/// `p` must be a live process handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ftv_process_is_calibrated(p: *const FtvProcess, out: *mut bool) -> FtvStatus {
    guard(|| {
        if p.is_null() || out.is_null() {
            return Err(null());
        }
        *out = (*p).0.calibrated();
        Ok(())
    })
}

/// Writes `k₀` and `k₁`.
///
/// # Safety
/// `p` must be a live process handle; `k0` and `k1` writable.
#[no_mangle]
pub unsafe extern "C" fn ftv_process_multipliers(p: *const FtvProcess, k0: *mut u64, k1: *mut u64) -> FtvStatus {
    guard(|| {
        if p.is_null() || k0.is_null() || k1.is_null() {
            return Err(null());
        }
        *k0 = (*p).0.k0();
        *k1 = (*p).0.k1();
        Ok(())
    })
}

/// Copies the dual framing `b` into `buf`. `len` receives the number of
/// entries; if `cap` is smaller nothing is copied and the call fails with
/// `BufferTooSmall`.
///
/// # Safety
/// `buf` must have room for `cap` values; `p` live and `len` writable.
#[no_mangle]
pub unsafe extern "C" fn ftv_process_dual_framing(
    p: *const FtvProcess,
    buf: *mut i64,
    cap: usize,
    len: *mut usize,
) -> FtvStatus {
    guard(|| {
        if p.is_null() || len.is_null() {
            return Err(null());
        }
        let b = (*p).0.b();
        *len = b.len();
        if cap < b.len() || buf.is_null() {
            set_error(format!("need room for {} entries", b.len()));
            return Err(FtvStatus::BufferTooSmall);
        }
        for (i, x) in b.iter().enumerate() {
            *buf.add(i) = to_i64(x).ok_or_else(|| {
                set_error(format!("entry {x} does not fit in int64_t"));
                FtvStatus::Overflow
            })?;
        }
        Ok(())
    })
}

/// Full process record as JSON.
///
/// # Safety
/// `p` must be a live process handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ftv_process_to_json(p: *const FtvProcess, out: *mut *mut c_char) -> FtvStatus {
    guard(|| {
        if p.is_null() || out.is_null() {
            return Err(null());
        }
        let s = serde_json::to_string(&(*p).0.record()).map_err(|e| fail(FtvError::Input(e.to_string())))?;
        give_string(s, out)
    })
}

/// Runs a command (`dualize`, `ci-dualize`, `lg`, `subfamily` or
/// `enumerate`) on a problem file and returns the JSON report.
///
/// # Safety
/// `command` and `problem` must be NUL-terminated; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ftv_run_json(
    command: *const c_char,
    problem: *const c_char,
    out: *mut *mut c_char,
) -> FtvStatus {
    guard(|| {
        let name = str_arg(command)?;
        let text = str_arg(problem)?;
        if out.is_null() {
            return Err(null());
        }
        let cmd = match name {
            "dualize" => Command::Dualize,
            "ci-dualize" => Command::CiDualize,
            "lg" => Command::Lg,
            "subfamily" => Command::Subfamily,
            "enumerate" => Command::Enumerate,
            other => return Err(fail(FtvError::Input(format!("unknown command {other:?}")))),
        };
        let report = cli::run(cmd, text, &Overrides::default()).map_err(fail)?;
        give_string(cli::to_pretty(&report), out)
    })
}

/// Frees a string returned by this library. Null is a no-op.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn ftv_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
