//! C ABI over `satake`.
//!
//! Every entry point returns a [`SatakeStatus`] and writes results through out-pointers.
//! Panics are caught at the boundary and reported as `SATAKE_STATUS_PANIC`. The message of the
//! most recent failure on the calling thread is available from [`satake_last_error`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use satake::hecke::{Hecke, HeckeElement};
use satake::mvcells::{point_count_poly, OrbitSign};
use satake::{RootDatum, SatakeError, ZPoly};

/// Result codes shared by all functions.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SatakeStatus {
    Ok = 0,
    NullPointer = 1,
    Invalid = 2,
    Budget = 3,
    /// The caller's buffer is too small; the required length was written.
    BufferTooSmall = 4,
    Inconsistent = 5,
    Panic = 6,
}

/// Opaque handle to a root datum and its spherical Hecke algebra.
pub struct SatakeDatum {
    datum: RootDatum,
    hecke: Hecke,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let msg = CString::new(msg.replace('\0', " ")).expect("interior NULs were replaced");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

enum Failure {
    Null(&'static str),
    Buffer(usize),
    Lib(SatakeError),
}

impl From<SatakeError> for Failure {
    fn from(e: SatakeError) -> Self {
        Failure::Lib(e)
    }
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> SatakeStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => SatakeStatus::Ok,
        Ok(Err(Failure::Null(what))) => {
            set_error(format!("{what} is NULL"));
            SatakeStatus::NullPointer
        }
        Ok(Err(Failure::Buffer(need))) => {
            set_error(format!("buffer too small: {need} entries required"));
            SatakeStatus::BufferTooSmall
        }
        Ok(Err(Failure::Lib(e))) => {
            set_error(e.to_string());
            match e {
                SatakeError::Invalid(_) => SatakeStatus::Invalid,
                SatakeError::Budget(_) => SatakeStatus::Budget,
                SatakeError::Inconsistent(_) => SatakeStatus::Inconsistent,
            }
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            set_error(format!("panic: {msg}"));
            SatakeStatus::Panic
        }
    }
}

unsafe fn deref<'a, T>(p: *const T, what: &'static str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or(Failure::Null(what))
}

unsafe fn out<'a, T>(p: *mut T, what: &'static str) -> Result<&'a mut T, Failure> {
    p.as_mut().ok_or(Failure::Null(what))
}

unsafe fn string<'a>(p: *const c_char, what: &'static str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure::Null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| SatakeError::invalid(format!("{what} is not UTF-8")).into())
}

/// A coweight of length `rank` read from `p`.
unsafe fn coweight(d: &SatakeDatum, p: *const i64, what: &'static str) -> Result<Vec<i64>, Failure> {
    let n = d.datum.rank();
    if n == 0 {
        return Ok(vec![]);
    }
    if p.is_null() {
        return Err(Failure::Null(what));
    }
    Ok(std::slice::from_raw_parts(p, n).to_vec())
}

unsafe fn write_poly(p: &ZPoly, buf: *mut i64, cap: usize, len: *mut usize) -> Result<(), Failure> {
    let c = p.coeffs();
    *out(len, "len")? = c.len();
    if c.len() > cap {
        return Err(Failure::Buffer(c.len()));
    }
    if !c.is_empty() {
        if buf.is_null() {
            return Err(Failure::Null("buf"));
        }
        ptr::copy_nonoverlapping(c.as_ptr(), buf, c.len());
    }
    Ok(())
}

unsafe fn write_string(s: String, dst: *mut *mut c_char) -> Result<(), Failure> {
    let dst = out(dst, "out")?;
    *dst = CString::new(s).map_err(|_| SatakeError::invalid("output contains NUL"))?.into_raw();
    Ok(())
}

/// Message of the last failure on this thread, or NULL. Valid until the next call that fails.
#[no_mangle]
pub extern "C" fn satake_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Looks up a preset by name ("GL2", "SL3", "Sp4", ...).
///
/// # Safety
/// `name` must be a NUL-terminated string and `out_handle` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn satake_datum_new(name: *const c_char, out_handle: *mut *mut SatakeDatum) -> SatakeStatus {
    guard(|| {
        let dst = out(out_handle, "out")?;
        let datum = RootDatum::preset(string(name, "name")?)?;
        let hecke = Hecke::new(&datum);
        *dst = Box::into_raw(Box::new(SatakeDatum { datum, hecke }));
        Ok(())
    })
}

/// Builds a datum from its JSON description.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out_handle` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn satake_datum_from_json(json: *const c_char, out_handle: *mut *mut SatakeDatum) -> SatakeStatus {
    guard(|| {
        let dst = out(out_handle, "out")?;
        let datum = RootDatum::from_json_str(string(json, "json")?)?;
        let hecke = Hecke::new(&datum);
        *dst = Box::into_raw(Box::new(SatakeDatum { datum, hecke }));
        Ok(())
    })
}

/// # Safety
/// `d` must come from a constructor in this library and not be used afterwards. NULL is a no-op.
#[no_mangle]
pub unsafe extern "C" fn satake_datum_free(d: *mut SatakeDatum) {
    if !d.is_null() {
        drop(Box::from_raw(d));
    }
}

/// # Safety
/// `d` must be a live handle and `rank` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn satake_datum_rank(d: *const SatakeDatum, rank: *mut usize) -> SatakeStatus {
    guard(|| {
        *out(rank, "rank")? = deref(d, "datum")?.datum.rank();
        Ok(())
    })
}

/// # Safety
/// `d` must be a live handle and `order` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn satake_weyl_order(d: *const SatakeDatum, order: *mut usize) -> SatakeStatus {
    guard(|| {
        *out(order, "order")? = deref(d, "datum")?.datum.weyl().order();
        Ok(())
    })
}

/// The datum as a JSON string; release it with [`satake_string_free`].
///
/// # Safety
/// `d` must be a live handle and `json` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn satake_datum_json(d: *const SatakeDatum, json: *mut *mut c_char) -> SatakeStatus {
    guard(|| {
        let d = deref(d, "datum")?;
        let s = serde_json::to_string(&d.datum.to_json()).map_err(|e| SatakeError::invalid(e.to_string()))?;
        write_string(s, json)
    })
}

/// Multiplicity of the weight `nu` in the irreducible representation of highest weight `mu`.
///
/// # Safety
/// `mu` and `nu` must point to `rank` integers; `mult` must be valid.
#[no_mangle]
pub unsafe extern "C" fn satake_weight_multiplicity(
    d: *const SatakeDatum,
    mu: *const i64,
    nu: *const i64,
    mult: *mut i64,
) -> SatakeStatus {
    guard(|| {
        let d = deref(d, "datum")?;
        let (mu, nu) = (coweight(d, mu, "mu")?, coweight(d, nu, "nu")?);
        *out(mult, "mult")? = d.datum.weyl_character(&mu)?.mult(&nu);
        Ok(())
    })
}

/// Point count of S^±_ν ∩ Gr^μ as polynomial coefficients in q, lowest degree first.
/// `sign` is +1 or −1. On `SATAKE_STATUS_BUFFER_TOO_SMALL` the needed length is still written to `len`.
///
/// # Safety
/// `mu`, `nu` must point to `rank` integers; `buf` to `cap` integers; `len` must be valid.
#[no_mangle]
pub unsafe extern "C" fn satake_point_count(
    d: *const SatakeDatum,
    mu: *const i64,
    nu: *const i64,
    sign: i32,
    buf: *mut i64,
    cap: usize,
    len: *mut usize,
) -> SatakeStatus {
    guard(|| {
        let d = deref(d, "datum")?;
        let sign = match sign {
            1 => OrbitSign::Plus,
            -1 => OrbitSign::Minus,
            s => return Err(SatakeError::invalid(format!("sign must be ±1, got {s}")).into()),
        };
        let (mu, nu) = (coweight(d, mu, "mu")?, coweight(d, nu, "nu")?);
        write_poly(&point_count_poly(&d.datum, &mu, &nu, sign)?, buf, cap, len)
    })
}

/// Coefficient of T_ν in T_μ·T_λ, as polynomial coefficients in q, lowest degree first.
///
/// # Safety
/// `mu`, `lambda`, `nu` must point to `rank` integers; `buf` to `cap` integers; `len` must be valid.
#[no_mangle]
pub unsafe extern "C" fn satake_hecke_structure_constant(
    d: *const SatakeDatum,
    mu: *const i64,
    lambda: *const i64,
    nu: *const i64,
    buf: *mut i64,
    cap: usize,
    len: *mut usize,
) -> SatakeStatus {
    guard(|| {
        let d = deref(d, "datum")?;
        let (mu, lambda, nu) = (coweight(d, mu, "mu")?, coweight(d, lambda, "lambda")?, coweight(d, nu, "nu")?);
        write_poly(&d.hecke.structure_constant(&mu, &lambda, &nu)?, buf, cap, len)
    })
}

/// Product of two Hecke elements given in the JSON form `{"terms":[{"nu":[..],"N":..}]}`.
///
/// # Safety
/// `h1`, `h2` must be NUL-terminated strings and `json` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn satake_hecke_multiply(
    d: *const SatakeDatum,
    h1: *const c_char,
    h2: *const c_char,
    json: *mut *mut c_char,
) -> SatakeStatus {
    guard(|| {
        let d = deref(d, "datum")?;
        let parse = |s: &str| -> Result<HeckeElement, Failure> {
            let v: serde_json::Value = serde_json::from_str(s).map_err(|e| SatakeError::invalid(e.to_string()))?;
            Ok(HeckeElement::from_json(&v)?)
        };
        let (a, b) = (parse(string(h1, "h1")?)?, parse(string(h2, "h2")?)?);
        let prod = d.hecke.multiply(&a, &b)?;
        write_string(prod.to_json().to_string(), json)
    })
}

/// # Safety
/// `s` must come from this library and not be used afterwards. NULL is a no-op.
#[no_mangle]
pub unsafe extern "C" fn satake_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
