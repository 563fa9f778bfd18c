//! C ABI for the dicyclic integrality checks.
//!
//! Every fallible call returns a [`DicStatus`]; on failure a message is
//! available from [`dic_last_error_message`] on the same thread. Strings
//! returned through out-pointers must be released with [`dic_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use dicyclic::criteria::DicContext;
use dicyclic::sweep::{run_one, Check, SweepRecord};
use dicyclic::Error;

/// Diameter bound above which the distance-power check samples `D`.
const MAX_POWER_DIAMETER: u32 = 8;

/// Status codes returned by every fallible function.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DicStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    InvalidGroup = 4,
    InvalidConnectionSet = 5,
    NotGenerating = 6,
    Precondition = 7,
    Internal = 8,
    Panic = 9,
}

/// Opaque handle to `Dic(A, y)` with its representation data.
pub struct DicGroup {
    ctx: DicContext,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(msg: impl Into<String>) {
    let msg = CString::new(msg.into().replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

fn clear_last_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

fn status_of(err: &Error) -> DicStatus {
    match err {
        Error::Parse { .. } => DicStatus::Parse,
        Error::FactorTooSmall(_) | Error::InvalidDicyclic(_) | Error::GroupMismatch(_) => {
            DicStatus::InvalidGroup
        }
        Error::InvalidConnectionSet(_) | Error::NotSymmetric => DicStatus::InvalidConnectionSet,
        Error::NotGenerating | Error::Disconnected => DicStatus::NotGenerating,
        Error::Precondition(_) => DicStatus::Precondition,
        _ => DicStatus::Internal,
    }
}

/// Runs `f`, converting errors and panics into a status plus a stored message.
fn guarded(f: impl FnOnce() -> Result<(), (DicStatus, String)>) -> DicStatus {
    clear_last_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => DicStatus::Ok,
        Ok(Err((status, msg))) => {
            set_last_error(msg);
            status
        }
        Err(_) => {
            set_last_error("internal panic");
            DicStatus::Panic
        }
    }
}

fn lib_err(e: Error) -> (DicStatus, String) {
    (status_of(&e), e.to_string())
}

/// # Safety
/// `p` must be null or point to a NUL-terminated string.
unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, (DicStatus, String)> {
    if p.is_null() {
        return Err((DicStatus::NullPointer, format!("{what} is null")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| (DicStatus::InvalidUtf8, format!("{what} is not valid UTF-8")))
}

/// Creates a group handle from an abelian group spec (`"Z2xZ6"`) and an
/// element of order 2 (`"(0,3)"`). On success `*out` owns the handle.
///
/// # Safety
/// `group` and `y` must be NUL-terminated strings; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dic_group_new(
    group: *const c_char,
    y: *const c_char,
    out: *mut *mut DicGroup,
) -> DicStatus {
    guarded(|| {
        if out.is_null() {
            return Err((DicStatus::NullPointer, "out is null".into()));
        }
        *out = ptr::null_mut();
        let ctx = DicContext::parse(read_str(group, "group")?, read_str(y, "y")?).map_err(lib_err)?;
        *out = Box::into_raw(Box::new(DicGroup { ctx }));
        Ok(())
    })
}

/// Releases a handle from [`dic_group_new`]. Null is ignored.
///
/// # Safety
/// `group` must be null or a live handle not freed before.
#[no_mangle]
pub unsafe extern "C" fn dic_group_free(group: *mut DicGroup) {
    if !group.is_null() {
        drop(Box::from_raw(group));
    }
}

/// `|Dic(A, y)|`, or 0 for a null handle.
///
/// # Safety
/// `group` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn dic_group_order(group: *const DicGroup) -> usize {
    group.as_ref().map_or(0, |g| g.ctx.group().order())
}

/// # Safety
/// Same contract as the public callers.
unsafe fn run_checked(
    group: *const DicGroup,
    check: Check,
    s1: *const c_char,
    s2: *const c_char,
) -> Result<SweepRecord, (DicStatus, String)> {
    let g = group
        .as_ref()
        .ok_or((DicStatus::NullPointer, "group is null".to_string()))?;
    let s = g
        .ctx
        .connection_set(read_str(s1, "s1")?, read_str(s2, "s2")?)
        .map_err(lib_err)?;
    let verdict = run_one(check, &g.ctx, &s, MAX_POWER_DIAMETER).map_err(lib_err)?;
    Ok(SweepRecord::from_verdict(&g.ctx, &s, check, &verdict, None))
}

/// # Safety
/// Same contract as the public callers.
unsafe fn check_into(
    group: *const DicGroup,
    check: Check,
    s1: *const c_char,
    s2: *const c_char,
    out_holds: *mut bool,
    out_agreement: *mut bool,
) -> DicStatus {
    guarded(|| {
        if out_holds.is_null() || out_agreement.is_null() {
            return Err((DicStatus::NullPointer, "output pointer is null".into()));
        }
        let record = run_checked(group, check, s1, s2)?;
        *out_holds = record.holds;
        *out_agreement = record.agreement;
        Ok(())
    })
}

/// Decides whether `Cay(Dic(A, y), S1 ∪ xS2)` is integral. `*out_agreement`
/// reports whether the criterion matched both spectral oracles.
///
/// # Safety
/// `group` must be a live handle, `s1`/`s2` NUL-terminated set literals such
/// as `"[1,3]"`, and both out-pointers writable.
#[no_mangle]
pub unsafe extern "C" fn dic_check_integral(
    group: *const DicGroup,
    s1: *const c_char,
    s2: *const c_char,
    out_holds: *mut bool,
    out_agreement: *mut bool,
) -> DicStatus {
    check_into(group, Check::Integrality, s1, s2, out_holds, out_agreement)
}

/// Decides whether the connected `Cay(Dic(A, y), S1 ∪ xS2)` is distance
/// integral. Fails with `NotGenerating` for disconnected graphs.
///
/// # Safety
/// As for [`dic_check_integral`].
#[no_mangle]
pub unsafe extern "C" fn dic_check_distance_integral(
    group: *const DicGroup,
    s1: *const c_char,
    s2: *const c_char,
    out_holds: *mut bool,
    out_agreement: *mut bool,
) -> DicStatus {
    check_into(group, Check::DistanceIntegrality, s1, s2, out_holds, out_agreement)
}

/// Runs the named check (`"integrality"`, `"distance_integrality"`,
/// `"equivalence"`, …) and returns its JSON record in `*out_json`, to be
/// released with [`dic_string_free`].
///
/// # Safety
/// As for [`dic_check_integral`]; `check` must be NUL-terminated and
/// `out_json` writable.
#[no_mangle]
pub unsafe extern "C" fn dic_verdict_json(
    group: *const DicGroup,
    check: *const c_char,
    s1: *const c_char,
    s2: *const c_char,
    out_json: *mut *mut c_char,
) -> DicStatus {
    guarded(|| {
        if out_json.is_null() {
            return Err((DicStatus::NullPointer, "out_json is null".into()));
        }
        *out_json = ptr::null_mut();
        let check: Check = read_str(check, "check")?.parse().map_err(lib_err)?;
        let record = run_checked(group, check, s1, s2)?;
        let json = serde_json::to_string(&record)
            .map_err(|e| (DicStatus::Internal, e.to_string()))?;
        *out_json = CString::new(json)
            .map_err(|_| (DicStatus::Internal, "JSON contained NUL".to_string()))?
            .into_raw();
        Ok(())
    })
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must be null or a string from this library not freed before.
#[no_mangle]
pub unsafe extern "C" fn dic_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// The message for the last failed call on this thread, or null. Valid
/// until the next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn dic_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |m| m.as_ptr()))
}
