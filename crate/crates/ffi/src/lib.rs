//! C ABI for `verlinde-core`.
//!
//! Every entry point returns a [`VerlindeStatus`]. Results come back through
//! out-pointers. On failure the message is kept per thread and can be fetched
//! with [`verlinde_last_error_message`]. Strings handed out by this library
//! must be released with [`verlinde_string_free`], handles with their
//! matching `_free` function.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use num_traits::ToPrimitive;
use verlinde_core::depth::{depth, lp_epsilon_max};
use verlinde_core::tower::{bratteli_tower, perron_frobenius, stationary_matrix, verify_tower_properties};
use verlinde_core::verlinde::{fusion_matrices, FusionRing};
use verlinde_core::{Error, RepTheory, SimpleType};

/// Status codes. Zero is success.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VerlindeStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    InvalidType = 3,
    InvalidArgument = 4,
    ResourceCap = 5,
    NonConvergence = 6,
    Numerical = 7,
    Io = 8,
    Internal = 9,
    Panic = 10,
}

/// Opaque handle to a simple type together with its representation cache.
pub struct VerlindeRootSystem {
    rt: RepTheory,
}

/// Opaque handle to a level-l fusion ring.
pub struct VerlindeFusionRing {
    ring: FusionRing,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> VerlindeStatus {
    match e {
        Error::InvalidType(_) | Error::InvalidRank { .. } => VerlindeStatus::InvalidType,
        Error::DimensionMismatch { .. }
        | Error::NonDominantInput(_)
        | Error::NegativeLevel(_)
        | Error::WeightNotInLevel { .. }
        | Error::Parse(_)
        | Error::Config(_) => VerlindeStatus::InvalidArgument,
        Error::ResourceCapExceeded { .. } | Error::WeylGroupTooLarge { .. } => VerlindeStatus::ResourceCap,
        Error::NonConvergence(_) => VerlindeStatus::NonConvergence,
        Error::RoundingFailure { .. } | Error::Unbounded | Error::InfeasibleStart(_) | Error::NotIrreducible => {
            VerlindeStatus::Numerical
        }
        Error::Io(_) | Error::CacheFormat(_) => VerlindeStatus::Io,
        Error::Internal(_) => VerlindeStatus::Internal,
    }
}

struct Fail(VerlindeStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(status_of(&e), e.to_string())
    }
}

/// Runs `f`, records any error or panic, and converts to a status.
fn guard(f: impl FnOnce() -> Result<(), Fail>) -> VerlindeStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => VerlindeStatus::Ok,
        Ok(Err(Fail(s, msg))) => {
            set_error(msg);
            s
        }
        Err(p) => {
            let msg = p
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| p.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_error(format!("panic: {msg}"));
            VerlindeStatus::Panic
        }
    }
}

fn null() -> Fail {
    Fail(VerlindeStatus::NullPointer, "null pointer argument".into())
}

unsafe fn deref<'a, T>(p: *const T) -> Result<&'a T, Fail> {
    p.as_ref().ok_or_else(null)
}

unsafe fn write<T>(p: *mut T, v: T) -> Result<(), Fail> {
    if p.is_null() {
        return Err(null());
    }
    p.write(v);
    Ok(())
}

fn to_c_string(s: String) -> Result<*mut c_char, Fail> {
    CString::new(s)
        .map(CString::into_raw)
        .map_err(|_| Fail(VerlindeStatus::Internal, "string contains a nul byte".into()))
}

/// Library version as a static nul-terminated string.
#[no_mangle]
pub extern "C" fn verlinde_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message for the last failed call on this thread, or NULL. Free it with
/// `verlinde_string_free`.
#[no_mangle]
pub extern "C" fn verlinde_last_error_message() -> *mut c_char {
    LAST_ERROR.with(|e| e.borrow().clone().map_or(std::ptr::null_mut(), CString::into_raw))
}

/// Releases a string returned by this library. NULL is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed already.
#[no_mangle]
pub unsafe extern "C" fn verlinde_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Creates a root system from a type string such as `"B3"` or `"E8"`.
///
/// # Safety
/// `type_name` must be a valid nul-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn verlinde_root_system_new(
    type_name: *const c_char,
    out: *mut *mut VerlindeRootSystem,
) -> VerlindeStatus {
    guard(|| {
        if type_name.is_null() {
            return Err(null());
        }
        let s = CStr::from_ptr(type_name)
            .to_str()
            .map_err(|_| Fail(VerlindeStatus::InvalidUtf8, "type name is not UTF-8".into()))?;
        let t: SimpleType = s.parse()?;
        let h = Box::new(VerlindeRootSystem { rt: RepTheory::for_type(t) });
        write(out, Box::into_raw(h))
    })
}

/// # Safety
/// `h` must be NULL or a handle from `verlinde_root_system_new`.
#[no_mangle]
pub unsafe extern "C" fn verlinde_root_system_free(h: *mut VerlindeRootSystem) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}

/// # Safety
/// `h` must be a live handle and `rank` writable.
#[no_mangle]
pub unsafe extern "C" fn verlinde_root_system_rank(h: *const VerlindeRootSystem, rank: *mut usize) -> VerlindeStatus {
    guard(|| write(rank, deref(h)?.rt.root_system().rank()))
}

/// # Safety
/// `h` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn verlinde_root_system_dual_coxeter(
    h: *const VerlindeRootSystem,
    out: *mut i64,
) -> VerlindeStatus {
    guard(|| write(out, deref(h)?.rt.root_system().dual_coxeter()))
}

/// Exact maximum of ε over the LP relaxation for W^⊗k, as a reduced fraction.
///
/// # Safety
/// `h` must be a live handle, `num` and `den` writable.
#[no_mangle]
pub unsafe extern "C" fn verlinde_lp_epsilon_max(
    h: *const VerlindeRootSystem,
    k: u32,
    num: *mut i64,
    den: *mut i64,
) -> VerlindeStatus {
    guard(|| {
        let q = lp_epsilon_max(deref(h)?.rt.root_system(), k)?;
        let overflow = || Fail(VerlindeStatus::Numerical, format!("{q} does not fit in 64 bits"));
        let n = q.numer().to_i64().ok_or_else(overflow)?;
        let d = q.denom().to_i64().ok_or_else(overflow)?;
        write(num, n)?;
        write(den, d)
    })
}

/// Depth d(l) with its proven bounds. `classical` selects the untruncated
/// support computation.
///
/// # Safety
/// `h` must be a live handle; the three out-pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn verlinde_depth(
    h: *const VerlindeRootSystem,
    level: i64,
    classical: bool,
    depth_out: *mut u32,
    lower: *mut u32,
    upper: *mut u32,
) -> VerlindeStatus {
    guard(|| {
        let r = depth(&deref(h)?.rt, level, classical)?;
        write(depth_out, r.depth)?;
        write(lower, r.lower)?;
        write(upper, r.upper)
    })
}

/// Builds the level-l fusion ring.
///
/// # Safety
/// `h` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn verlinde_fusion_ring_new(
    h: *const VerlindeRootSystem,
    level: u32,
    out: *mut *mut VerlindeFusionRing,
) -> VerlindeStatus {
    guard(|| {
        let ring = fusion_matrices(&deref(h)?.rt, level)?;
        write(out, Box::into_raw(Box::new(VerlindeFusionRing { ring })))
    })
}

/// # Safety
/// `r` must be NULL or a handle from `verlinde_fusion_ring_new`.
#[no_mangle]
pub unsafe extern "C" fn verlinde_fusion_ring_free(r: *mut VerlindeFusionRing) {
    if !r.is_null() {
        drop(Box::from_raw(r));
    }
}

/// Number of basis elements |D_l|.
///
/// # Safety
/// `r` must be a live handle and `size` writable.
#[no_mangle]
pub unsafe extern "C" fn verlinde_fusion_ring_size(r: *const VerlindeFusionRing, size: *mut usize) -> VerlindeStatus {
    guard(|| write(size, deref(r)?.ring.size()))
}

/// Structure constant N_{ij}^k.
///
/// # Safety
/// `r` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn verlinde_fusion_ring_coefficient(
    r: *const VerlindeFusionRing,
    i: usize,
    j: usize,
    k: usize,
    out: *mut u32,
) -> VerlindeStatus {
    guard(|| {
        let ring = &deref(r)?.ring;
        let m = ring.size();
        if i >= m || j >= m || k >= m {
            return Err(Fail(VerlindeStatus::InvalidArgument, format!("index out of range for ring of size {m}")));
        }
        write(out, ring.coefficient(i, j, k))
    })
}

/// Basis and nonzero structure constants as JSON.
///
/// # Safety
/// `r` must be a live handle and `json` writable.
#[no_mangle]
pub unsafe extern "C" fn verlinde_fusion_ring_json(r: *const VerlindeFusionRing, json: *mut *mut c_char) -> VerlindeStatus {
    guard(|| {
        let s = deref(r)?.ring.to_json().to_string();
        write(json, to_c_string(s)?)
    })
}

/// Perron-Frobenius eigenvalue of the stationary inclusion matrix.
///
/// # Safety
/// `r` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn verlinde_fusion_ring_pf_eigenvalue(
    r: *const VerlindeFusionRing,
    out: *mut f64,
) -> VerlindeStatus {
    guard(|| {
        let t = stationary_matrix(&deref(r)?.ring)?;
        write(out, perron_frobenius(&t)?.0)
    })
}

/// Bratteli tower up to `floors` as JSON.
///
/// # Safety
/// `r` must be a live handle and `json` writable.
#[no_mangle]
pub unsafe extern "C" fn verlinde_tower_json(
    r: *const VerlindeFusionRing,
    floors: usize,
    json: *mut *mut c_char,
) -> VerlindeStatus {
    guard(|| {
        let t = bratteli_tower(&deref(r)?.ring, floors)?;
        write(json, to_c_string(t.to_json().to_string())?)
    })
}

/// Runs the tower property checks. `report` may be NULL when only the
/// verdict is wanted.
///
/// # Safety
/// `r` must be a live handle, `all_pass` writable, `report` NULL or writable.
#[no_mangle]
pub unsafe extern "C" fn verlinde_verify_tower(
    r: *const VerlindeFusionRing,
    floors: usize,
    all_pass: *mut bool,
    report: *mut *mut c_char,
) -> VerlindeStatus {
    guard(|| {
        let rep = verify_tower_properties(&deref(r)?.ring, floors)?;
        write(all_pass, rep.all_pass())?;
        if !report.is_null() {
            let s = serde_json::to_string(&rep).map_err(|e| Fail(VerlindeStatus::Internal, e.to_string()))?;
            write(report, to_c_string(s)?)?;
        }
        Ok(())
    })
}
