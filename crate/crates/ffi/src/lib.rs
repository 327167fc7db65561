//! C ABI over the cotype-zeta library.
//!
//! Algebras and formulas cross the boundary as opaque handles that the caller
//! frees with the matching `*_free` function. Every call returns a
//! [`CzStatus`]; the message of the last failure on the calling thread is
//! available from [`cz_last_error`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use cotype_zeta::cotype::{corank_specialize, functional_equation_check, route, LocalFormula, Route};
use cotype_zeta::liealg::LieAlgebra;
use cotype_zeta::oracle::{census, compare};
use cotype_zeta::Error;

/// Result of every call. The first four values match the CLI exit codes.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CzStatus {
    Ok = 0,
    Mismatch = 1,
    InvalidInput = 2,
    Budget = 3,
    NoFormula = 4,
    Domain = 5,
    NullPointer = 6,
    Internal = 7,
    Panic = 8,
}

/// A rank-3 Lie ring given by structure constants.
pub struct CzAlgebra(LieAlgebra);

/// A local cotype zeta formula with its prime class.
pub struct CzFormula(LocalFormula);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> CzStatus {
    match e {
        Error::Budget(_) => CzStatus::Budget,
        Error::NoFormula { .. } => CzStatus::NoFormula,
        Error::Domain(_) | Error::FixedPrime(_) => CzStatus::Domain,
        Error::Internal(_) | Error::Convergence(_) => CzStatus::Internal,
        _ => CzStatus::InvalidInput,
    }
}

/// Runs `f`, recording errors and converting panics.
fn guard<F: FnOnce() -> Result<CzStatus, Error>>(f: F) -> CzStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(s)) => s,
        Ok(Err(e)) => {
            set_error(&e.to_string());
            status_of(&e)
        }
        Err(_) => {
            set_error("panic inside cotype-zeta");
            CzStatus::Panic
        }
    }
}

fn null_error() -> Error {
    Error::InvalidInput("null pointer argument".into())
}

unsafe fn read_str<'a>(s: *const c_char) -> Result<&'a str, Error> {
    if s.is_null() {
        return Err(null_error());
    }
    CStr::from_ptr(s).to_str().map_err(|_| Error::InvalidInput("string is not UTF-8".into()))
}

unsafe fn write_out<T>(out: *mut T, v: T) -> Result<(), Error> {
    if out.is_null() {
        return Err(null_error());
    }
    out.write(v);
    Ok(())
}

unsafe fn algebra<'a>(a: *const CzAlgebra) -> Result<&'a LieAlgebra, Error> {
    a.as_ref().map(|a| &a.0).ok_or_else(null_error)
}

unsafe fn formula<'a>(f: *const CzFormula) -> Result<&'a LocalFormula, Error> {
    f.as_ref().map(|f| &f.0).ok_or_else(null_error)
}

fn null_checked(s: CzStatus, p: bool) -> CzStatus {
    if p {
        CzStatus::NullPointer
    } else {
        s
    }
}

/// Message of the last failed call on this thread; valid until the next call.
#[no_mangle]
pub extern "C" fn cz_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Frees a string returned by this library.
///
/// # Safety
/// `s` is null or was returned by a `cz_*_to_string` function and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn cz_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Looks up a catalog algebra: Z3, H, sl2, L1 or L2.
///
/// # Safety
/// `name` is a NUL-terminated string and `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn cz_algebra_catalog(name: *const c_char, out: *mut *mut CzAlgebra) -> CzStatus {
    let s = guard(|| {
        let l = LieAlgebra::catalog(read_str(name)?)?;
        write_out(out, Box::into_raw(Box::new(CzAlgebra(l))))?;
        Ok(CzStatus::Ok)
    });
    null_checked(s, name.is_null() || out.is_null())
}

/// Builds an algebra from `[e1,e2]`, `[e1,e3]`, `[e2,e3]` as nine integers.
///
/// # Safety
/// `constants` points to nine readable `int64_t` and `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn cz_algebra_new(constants: *const i64, out: *mut *mut CzAlgebra) -> CzStatus {
    let s = guard(|| {
        if constants.is_null() {
            return Err(null_error());
        }
        let c = std::slice::from_raw_parts(constants, 9);
        let l = LieAlgebra::new([c[0], c[1], c[2]], [c[3], c[4], c[5]], [c[6], c[7], c[8]])?;
        write_out(out, Box::into_raw(Box::new(CzAlgebra(l))))?;
        Ok(CzStatus::Ok)
    });
    null_checked(s, constants.is_null() || out.is_null())
}

/// Parses the `[i,j] = c1 c2 c3` definition format.
///
/// # Safety
/// `text` is a NUL-terminated string and `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn cz_algebra_parse(text: *const c_char, out: *mut *mut CzAlgebra) -> CzStatus {
    let s = guard(|| {
        let l = LieAlgebra::parse_definition(read_str(text)?)?;
        write_out(out, Box::into_raw(Box::new(CzAlgebra(l))))?;
        Ok(CzStatus::Ok)
    });
    null_checked(s, text.is_null() || out.is_null())
}

/// # Safety
/// `a` is null or a handle from a `cz_algebra_*` constructor, freed once.
#[no_mangle]
pub unsafe extern "C" fn cz_algebra_free(a: *mut CzAlgebra) {
    if !a.is_null() {
        drop(Box::from_raw(a));
    }
}

/// The local formula for `a` at prime `p`, or symbolic in X when `p` is 0.
/// Returns `NoFormula` at primes that need the census.
///
/// # Safety
/// `a` is a live algebra handle and `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn cz_formula_for(a: *const CzAlgebra, p: u64, out: *mut *mut CzFormula) -> CzStatus {
    let s = guard(|| {
        let l = algebra(a)?;
        if p != 0 && !cotype_zeta::arith::is_prime(p) {
            return Err(Error::InvalidInput(format!("{p} is not a prime")));
        }
        let f = match route(l, (p != 0).then_some(p)) {
            Route::Formula(f) => f,
            Route::NoFormula { p, reason } => return Err(Error::NoFormula { p, reason }),
        };
        write_out(out, Box::into_raw(Box::new(CzFormula(f))))?;
        Ok(CzStatus::Ok)
    });
    null_checked(s, a.is_null() || out.is_null())
}

/// Corank-at-most-`m` specialization of `f` as a new handle.
///
/// # Safety
/// `f` is a live formula handle and `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn cz_formula_corank(f: *const CzFormula, m: u32, out: *mut *mut CzFormula) -> CzStatus {
    let s = guard(|| {
        let mut g = formula(f)?.clone();
        g.value = corank_specialize(&g.value, m as usize)?;
        write_out(out, Box::into_raw(Box::new(CzFormula(g))))?;
        Ok(CzStatus::Ok)
    });
    null_checked(s, f.is_null() || out.is_null())
}

/// The formula in interchange format; free with [`cz_string_free`].
///
/// # Safety
/// `f` is a live formula handle.
#[no_mangle]
pub unsafe extern "C" fn cz_formula_to_string(f: *const CzFormula) -> *mut c_char {
    match formula(f) {
        Ok(f) => CString::new(f.value.to_string()).map_or(ptr::null_mut(), CString::into_raw),
        Err(e) => {
            set_error(&e.to_string());
            ptr::null_mut()
        }
    }
}

/// Functional-equation check in rank `d`: `Ok` when it holds, `Mismatch`
/// when it fails, `Domain` for prime-specific formulas.
///
/// # Safety
/// `f` is a live formula handle.
#[no_mangle]
pub unsafe extern "C" fn cz_formula_fe_check(f: *const CzFormula, d: u32) -> CzStatus {
    let s = guard(|| {
        let c = functional_equation_check(formula(f)?, d as usize)?;
        if c.holds {
            Ok(CzStatus::Ok)
        } else {
            set_error(&format!("functional equation fails; difference {}", c.witness));
            Ok(CzStatus::Mismatch)
        }
    });
    null_checked(s, f.is_null())
}

/// # Safety
/// `f` is null or a handle from a `cz_formula_*` function, freed once.
#[no_mangle]
pub unsafe extern "C" fn cz_formula_free(f: *mut CzFormula) {
    if !f.is_null() {
        drop(Box::from_raw(f));
    }
}

/// Number of subalgebras of index `p^(c1+c2+c3)` with cotype `(c1, c2, c3)`.
///
/// # Safety
/// `a` is a live algebra handle and `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn cz_census_count(
    a: *const CzAlgebra,
    p: u64,
    c1: u32,
    c2: u32,
    c3: u32,
    out: *mut u64,
) -> CzStatus {
    let s = guard(|| {
        if !cotype_zeta::arith::is_prime(p) {
            return Err(Error::InvalidInput(format!("{p} is not a prime")));
        }
        let c = census(algebra(a)?, p, c1 + c2 + c3)?;
        write_out(out, c.count([c1, c2, c3]))?;
        Ok(CzStatus::Ok)
    });
    null_checked(s, a.is_null() || out.is_null())
}

/// Census against the routed formula up to index `p^n_max`; `Ok` when every
/// cotype agrees, `Mismatch` otherwise. `mismatches` may be null.
///
/// # Safety
/// `a` is a live algebra handle; `mismatches` is null or writable.
#[no_mangle]
pub unsafe extern "C" fn cz_verify(a: *const CzAlgebra, p: u64, n_max: u32, mismatches: *mut u64) -> CzStatus {
    let s = guard(|| {
        if !cotype_zeta::arith::is_prime(p) {
            return Err(Error::InvalidInput(format!("{p} is not a prime")));
        }
        let r = compare(algebra(a)?, p, n_max, None)?;
        if !mismatches.is_null() {
            mismatches.write(r.mismatches.len() as u64);
        }
        if r.passed() {
            Ok(CzStatus::Ok)
        } else {
            set_error(&r.to_string());
            Ok(CzStatus::Mismatch)
        }
    });
    null_checked(s, a.is_null())
}

/// Corank density `P^(m)` with an error estimate, using primes up to `bound`.
///
/// # Safety
/// `a` is a live algebra handle; `value` and `error` are writable.
#[no_mangle]
pub unsafe extern "C" fn cz_density(
    a: *const CzAlgebra,
    m: u32,
    bound: u64,
    value: *mut f64,
    error: *mut f64,
) -> CzStatus {
    let s = guard(|| {
        if value.is_null() || error.is_null() {
            return Err(null_error());
        }
        let d = cotype_zeta::euler::density(algebra(a)?, m as usize, bound)?;
        value.write(d.value);
        error.write(d.error);
        Ok(CzStatus::Ok)
    });
    null_checked(s, a.is_null() || value.is_null() || error.is_null())
}
