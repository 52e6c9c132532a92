//! C ABI over the `novikov` crate.
//!
//! Algebras are opaque `NovAlgebra` handles owned by the caller and released
//! with [`nov_algebra_free`]. Every fallible call returns a [`NovStatus`];
//! the message of the last failure on the calling thread is available from
//! [`nov_last_error`]. Strings returned through `char **` are freed with
//! [`nov_string_free`].

use std::cell::RefCell;
use std::collections::BTreeMap;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use novikov::algebra::Algebra;
use novikov::catalog::builtin;
use novikov::cohomology;
use novikov::degeneration::{self, NumericOptions, RunOptions};
use novikov::Error;

/// Result codes. `NOV_STATUS_OK` is zero.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NovStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    UnknownName = 3,
    Parse = 4,
    InvalidInput = 5,
    Arithmetic = 6,
    Panic = 7,
}

/// Opaque algebra handle.
pub struct NovAlgebra {
    inner: Algebra,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct NovIdentities {
    pub right_commutative: bool,
    pub left_symmetric: bool,
    pub novikov: bool,
    pub two_step: bool,
    /// Smallest `m` with `A^m = 0`, or 0 when not nilpotent.
    pub nilpotency_index: usize,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct NovCohomologyDims {
    pub z2: usize,
    pub b2: usize,
    pub h2: usize,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> NovStatus {
    match e {
        Error::UnknownAlgebra(_) => NovStatus::UnknownName,
        Error::Parse { .. } | Error::Json(_) => NovStatus::Parse,
        Error::ZeroDenominator | Error::NumericZeroDivision | Error::Singular | Error::Overflow(_) => NovStatus::Arithmetic,
        _ => NovStatus::InvalidInput,
    }
}

fn guard(f: impl FnOnce() -> Result<(), (NovStatus, String)>) -> NovStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => NovStatus::Ok,
        Ok(Err((s, msg))) => {
            set_error(msg);
            s
        }
        Err(_) => {
            set_error("internal panic".into());
            NovStatus::Panic
        }
    }
}

fn lib<T>(r: novikov::Result<T>) -> Result<T, (NovStatus, String)> {
    r.map_err(|e| (status_of(&e), e.to_string()))
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, (NovStatus, String)> {
    if p.is_null() {
        return Err((NovStatus::NullPointer, format!("{what} is null")));
    }
    CStr::from_ptr(p).to_str().map_err(|_| (NovStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn handle<'a>(h: *const NovAlgebra) -> Result<&'a Algebra, (NovStatus, String)> {
    h.as_ref().map(|a| &a.inner).ok_or((NovStatus::NullPointer, "algebra handle is null".into()))
}

fn out_ptr<T>(p: *mut T) -> Result<(), (NovStatus, String)> {
    if p.is_null() {
        Err((NovStatus::NullPointer, "output pointer is null".into()))
    } else {
        Ok(())
    }
}

fn to_c_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).expect("nul bytes removed").into_raw()
}

/// Message of the last failed call on this thread, or NULL. Valid until the
/// next failing call on the same thread.
#[no_mangle]
pub extern "C" fn nov_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn nov_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Looks up a catalog algebra by name or alias. `params_json` is NULL or a
/// JSON object mapping parameter names to expressions, e.g. `{"alpha":"2"}`.
///
/// # Safety
/// String arguments must be NULL or valid NUL-terminated strings; `out` must
/// be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn nov_algebra_from_catalog(
    name: *const c_char,
    params_json: *const c_char,
    out: *mut *mut NovAlgebra,
) -> NovStatus {
    guard(|| {
        out_ptr(out)?;
        let name = str_arg(name, "name")?;
        let params: BTreeMap<String, String> = if params_json.is_null() {
            BTreeMap::new()
        } else {
            lib(serde_json::from_str(str_arg(params_json, "params_json")?).map_err(Error::from))?
        };
        let inner = lib(builtin().get_substituted(name, &params))?;
        *out = Box::into_raw(Box::new(NovAlgebra { inner }));
        Ok(())
    })
}

/// Builds an algebra from the JSON algebra schema.
///
/// # Safety
/// `json` must be NULL or a valid NUL-terminated string; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn nov_algebra_from_json(json: *const c_char, out: *mut *mut NovAlgebra) -> NovStatus {
    guard(|| {
        out_ptr(out)?;
        let inner = lib(Algebra::from_json_str(str_arg(json, "json")?))?;
        *out = Box::into_raw(Box::new(NovAlgebra { inner }));
        Ok(())
    })
}

/// Releases a handle. NULL is ignored.
///
/// # Safety
/// `h` must be NULL or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn nov_algebra_free(h: *mut NovAlgebra) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}

/// # Safety
/// `h` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn nov_algebra_dim(h: *const NovAlgebra, out: *mut usize) -> NovStatus {
    guard(|| {
        out_ptr(out)?;
        *out = handle(h)?.dim();
        Ok(())
    })
}

/// Identity flags and nilpotency, decided generically in the parameters.
///
/// # Safety
/// `h` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn nov_algebra_check(h: *const NovAlgebra, out: *mut NovIdentities) -> NovStatus {
    guard(|| {
        out_ptr(out)?;
        let a = handle(h)?;
        let f = a.check_identities();
        *out = NovIdentities {
            right_commutative: f.right_commutative,
            left_symmetric: f.left_symmetric,
            novikov: f.novikov,
            two_step: f.two_step,
            nilpotency_index: a.derived_powers().nilpotency_index.unwrap_or(0),
        };
        Ok(())
    })
}

/// # Safety
/// `h` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn nov_algebra_derivation_dim(h: *const NovAlgebra, out: *mut usize) -> NovStatus {
    guard(|| {
        out_ptr(out)?;
        *out = lib(handle(h)?.derivation_dim(None))?;
        Ok(())
    })
}

/// # Safety
/// `h` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn nov_cohomology_dims(h: *const NovAlgebra, out: *mut NovCohomologyDims) -> NovStatus {
    guard(|| {
        out_ptr(out)?;
        let s = cohomology::cocycle_space(handle(h)?);
        *out = NovCohomologyDims { z2: s.z2.len(), b2: s.b2.len(), h2: s.h2.len() };
        Ok(())
    })
}

/// Central extension by a single cocycle such as `"D12 + D31"`.
///
/// # Safety
/// `h` must be a live handle, `cocycle` a valid string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn nov_central_extension(
    h: *const NovAlgebra,
    cocycle: *const c_char,
    out: *mut *mut NovAlgebra,
) -> NovStatus {
    guard(|| {
        out_ptr(out)?;
        let a = handle(h)?;
        let th = lib(cohomology::Cocycle::parse(a.dim(), str_arg(cocycle, "cocycle")?))?;
        let inner = lib(cohomology::central_extension(a, &[th]))?.result;
        *out = Box::into_raw(Box::new(NovAlgebra { inner }));
        Ok(())
    })
}

/// The algebra in the JSON schema; free with [`nov_string_free`].
///
/// # Safety
/// `h` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn nov_algebra_to_json(h: *const NovAlgebra, out: *mut *mut c_char) -> NovStatus {
    guard(|| {
        out_ptr(out)?;
        let s = lib(serde_json::to_string(&handle(h)?.to_json()).map_err(Error::from))?;
        *out = to_c_string(s);
        Ok(())
    })
}

/// Verifies a bundled degeneration witness (e.g. `"B07"`). `digits` of 0
/// selects the default. `pass` receives the verdict and `report_json`, if
/// not NULL, the full report.
///
/// # Safety
/// `id` must be a valid string, `pass` a valid pointer, `report_json` NULL or valid.
#[no_mangle]
pub unsafe extern "C" fn nov_verify_witness(
    id: *const c_char,
    digits: u32,
    seed: u64,
    pass: *mut bool,
    report_json: *mut *mut c_char,
) -> NovStatus {
    guard(|| {
        out_ptr(pass)?;
        let id = str_arg(id, "id")?;
        let cat = builtin();
        let w = cat.table_b_row(id).ok_or_else(|| (NovStatus::UnknownName, format!("no witness `{id}`")))?;
        let mut numeric = NumericOptions { seed, ..Default::default() };
        if digits != 0 {
            if digits < 16 {
                return Err((NovStatus::InvalidInput, "digits must be at least 16".into()));
            }
            numeric.digits = digits;
        }
        let r = lib(degeneration::run_witness(cat, w, &RunOptions { numeric, cross_validate: false }))?;
        *pass = r.report.pass;
        if !report_json.is_null() {
            *report_json = to_c_string(lib(serde_json::to_string(&r).map_err(Error::from))?);
        }
        Ok(())
    })
}

/// Frees a string returned by this library. NULL is ignored.
///
/// # Safety
/// `s` must be NULL or a string from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn nov_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
