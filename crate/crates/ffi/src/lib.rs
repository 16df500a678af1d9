//! C ABI over the fusion and Zhu engines.
//!
//! Every fallible function returns an [`OvStatus`]; on failure a description is
//! available from [`ov_last_error`] on the same thread. Labels are NUL-terminated
//! strings in the CLI spelling (`V+`, `Vl1`, `VT2-`, ...).

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use orbifold_voa::fusion::{quasi_admissible, upper_bound, FusionTable};
use orbifold_voa::zhu::{top_action, ZhuGen};
use orbifold_voa::{Error, ModuleLabel};

/// Status codes returned by every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OvStatus {
    Ok = 0,
    NullPointer = 1,
    BadLabel = 2,
    InvalidArgument = 3,
    Inconsistent = 4,
    Unsupported = 5,
    Internal = 6,
}

/// Generators whose top-level actions [`ov_top_action`] reports.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OvZhuGen {
    Omega = 0,
    J = 1,
    E = 2,
}

/// Opaque engine for one value of `k`. Create with [`ov_engine_new`], release with
/// [`ov_engine_free`].
pub struct OvEngine {
    k: u32,
    table: FusionTable,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl Into<String>) {
    let s = CString::new(msg.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = s);
}

fn status_of(e: &Error) -> OvStatus {
    match e {
        Error::BadLabel(_) | Error::LabelMismatch { .. } => OvStatus::BadLabel,
        Error::Inconsistent { .. } => OvStatus::Inconsistent,
        Error::Unsupported(_) => OvStatus::Unsupported,
        Error::Usage(_) | Error::Domain(_) | Error::InvalidMode(_) => OvStatus::InvalidArgument,
        Error::RingMismatch { .. } | Error::Precision { .. } => OvStatus::Internal,
    }
}

/// Runs `f`, turning errors and panics into a status plus the thread's last error.
fn guard(f: impl FnOnce() -> Result<(), (OvStatus, String)>) -> OvStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            OvStatus::Ok
        }
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            OvStatus::Internal
        }
    }
}

fn lift(e: Error) -> (OvStatus, String) {
    (status_of(&e), e.to_string())
}

fn null(what: &str) -> (OvStatus, String) {
    (OvStatus::NullPointer, format!("{what} is null"))
}

unsafe fn engine_ref<'a>(p: *const OvEngine) -> Result<&'a OvEngine, (OvStatus, String)> {
    p.as_ref().ok_or_else(|| null("engine"))
}

unsafe fn parse_label(p: *const c_char, k: u32) -> Result<ModuleLabel, (OvStatus, String)> {
    if p.is_null() {
        return Err(null("label"));
    }
    let s = CStr::from_ptr(p)
        .to_str()
        .map_err(|_| (OvStatus::BadLabel, "label is not UTF-8".to_string()))?;
    s.parse::<ModuleLabel>()
        .and_then(|l| l.normalize(k))
        .map_err(lift)
}

unsafe fn triple(
    e: &OvEngine,
    w1: *const c_char,
    w2: *const c_char,
    w3: *const c_char,
) -> Result<[ModuleLabel; 3], (OvStatus, String)> {
    Ok([parse_label(w1, e.k)?, parse_label(w2, e.k)?, parse_label(w3, e.k)?])
}

/// Builds the fusion table for `k >= 1` and stores a new engine in `*out`.
///
/// # Safety
/// `out` must be null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ov_engine_new(k: u32, out: *mut *mut OvEngine) -> OvStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        if k == 0 {
            return Err((OvStatus::InvalidArgument, "k must be at least 1".into()));
        }
        let table = FusionTable::build(k).map_err(lift)?;
        *out = Box::into_raw(Box::new(OvEngine { k, table }));
        Ok(())
    })
}

/// Releases an engine. Null is ignored.
///
/// # Safety
/// `engine` must be null or come from [`ov_engine_new`] and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn ov_engine_free(engine: *mut OvEngine) {
    if !engine.is_null() {
        drop(Box::from_raw(engine));
    }
}

/// The `k` of an engine, or 0 for null.
///
/// # Safety
/// `engine` must be null or a live engine.
#[no_mangle]
pub unsafe extern "C" fn ov_engine_k(engine: *const OvEngine) -> u32 {
    engine.as_ref().map_or(0, |e| e.k)
}

/// The fusion rule `N(w1, w2; w3)`, 0 or 1.
///
/// # Safety
/// `engine` must be a live engine, the labels NUL-terminated strings, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ov_fusion(
    engine: *const OvEngine,
    w1: *const c_char,
    w2: *const c_char,
    w3: *const c_char,
    out: *mut u8,
) -> OvStatus {
    guard(|| {
        let e = engine_ref(engine)?;
        let t = triple(e, w1, w2, w3)?;
        if out.is_null() {
            return Err(null("out"));
        }
        *out = e.table.fusion(t[0], t[1], t[2]).map_err(lift)?;
        Ok(())
    })
}

/// The upper bound from restricting to `M(1)^+`.
///
/// # Safety
/// As for [`ov_fusion`].
#[no_mangle]
pub unsafe extern "C" fn ov_upper_bound(
    engine: *const OvEngine,
    w1: *const c_char,
    w2: *const c_char,
    w3: *const c_char,
    out: *mut u32,
) -> OvStatus {
    guard(|| {
        let e = engine_ref(engine)?;
        let t = triple(e, w1, w2, w3)?;
        if out.is_null() {
            return Err(null("out"));
        }
        *out = upper_bound(t[0], t[1], t[2], e.k).map_err(lift)?;
        Ok(())
    })
}

/// Whether `(lambda_r, T_i, T_j)` is quasi-admissible; `i` and `j` must be 1 or 2.
///
/// # Safety
/// `out` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn ov_quasi_admissible(r: i64, i: u8, j: u8, out: *mut bool) -> OvStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        if !matches!(i, 1 | 2) || !matches!(j, 1 | 2) {
            return Err((OvStatus::InvalidArgument, format!("sector indices must be 1 or 2, got {i}, {j}")));
        }
        *out = quasi_admissible(r, i, j);
        Ok(())
    })
}

/// The scalar by which `gen` acts on the top level of `label`, as exact text. The
/// string in `*out` must be released with [`ov_string_free`].
///
/// # Safety
/// `engine` must be a live engine, `label` a NUL-terminated string, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ov_top_action(
    engine: *const OvEngine,
    gen: OvZhuGen,
    label: *const c_char,
    out: *mut *mut c_char,
) -> OvStatus {
    guard(|| {
        let e = engine_ref(engine)?;
        let l = parse_label(label, e.k)?;
        if out.is_null() {
            return Err(null("out"));
        }
        let g = match gen {
            OvZhuGen::Omega => ZhuGen::Omega,
            OvZhuGen::J => ZhuGen::J,
            OvZhuGen::E => ZhuGen::E,
        };
        let s = top_action(g, l, e.k).map_err(lift)?.to_string();
        *out = CString::new(s).map_err(|_| (OvStatus::Internal, "NUL in output".into()))?.into_raw();
        Ok(())
    })
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must be null or come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn ov_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Description of the last failure on this thread; empty after a success. The
/// pointer stays valid until the next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn ov_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Static name of a status code.
#[no_mangle]
pub extern "C" fn ov_status_name(status: OvStatus) -> *const c_char {
    let s: &'static [u8] = match status {
        OvStatus::Ok => b"ok\0",
        OvStatus::NullPointer => b"null pointer\0",
        OvStatus::BadLabel => b"bad label\0",
        OvStatus::InvalidArgument => b"invalid argument\0",
        OvStatus::Inconsistent => b"inconsistent fusion closure\0",
        OvStatus::Unsupported => b"unsupported\0",
        OvStatus::Internal => b"internal error\0",
    };
    s.as_ptr().cast()
}
