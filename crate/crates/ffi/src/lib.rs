//! C interface to `sobolev-core`.
//!
//! Every function returns a [`SobolevStatus`] and writes results through
//! out-pointers. `r = ∞` is passed as `INFINITY`. Brackets are opaque handles
//! created by [`sobolev_bracket_new`] and released by [`sobolev_bracket_free`].
//! After a failed call, [`sobolev_last_error_message`] describes the failure
//! on the calling thread.

use std::cell::RefCell;
use std::os::raw::c_char;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use sobolev_core::bounds_lower::{bracket, lower_bound, BoundBracket, BoundOptions, BracketKind};
use sobolev_core::specfun::bessel_k;
use sobolev_core::{upper_bound, EmbeddingParams, Error};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SobolevStatus {
    Ok = 0,
    NullPointer = 1,
    /// Inadmissible parameters or arguments outside a function's domain.
    Domain = 2,
    /// A quadrature or minimization did not converge.
    Convergence = 3,
    /// The requested quantity does not exist for this bracket.
    NotAvailable = 4,
    /// An internal panic was caught at the boundary.
    Panic = 5,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SobolevBracketKind {
    Sharp = 0,
    Estimated = 1,
    UpperOnly = 2,
}

/// Opaque bracket handle.
pub struct SobolevBracket {
    inner: BoundBracket,
}

thread_local! {
    static LAST_ERROR: RefCell<String> = const { RefCell::new(String::new()) };
}

fn set_error(message: String) {
    LAST_ERROR.with(|e| *e.borrow_mut() = message);
}

fn status_of(e: &Error) -> SobolevStatus {
    if e.is_convergence() || matches!(e, Error::Consistency { .. }) {
        SobolevStatus::Convergence
    } else {
        SobolevStatus::Domain
    }
}

/// Runs `f`, converting errors and panics into status codes.
fn guard<F: FnOnce() -> Result<(), SobolevStatus>>(f: F) -> SobolevStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => SobolevStatus::Ok,
        Ok(Err(status)) => status,
        Err(_) => {
            set_error("internal panic".into());
            SobolevStatus::Panic
        }
    }
}

fn fail(e: Error) -> SobolevStatus {
    let status = status_of(&e);
    set_error(e.to_string());
    status
}

fn params(r: f64, n: f64, d: u32) -> Result<EmbeddingParams, SobolevStatus> {
    EmbeddingParams::new(r, n, d).map_err(fail)
}

/// # Safety
/// `out` must be null or valid for a write of one `T`.
unsafe fn write_out<T>(out: *mut T, value: T) -> Result<(), SobolevStatus> {
    if out.is_null() {
        set_error("null output pointer".into());
        return Err(SobolevStatus::NullPointer);
    }
    out.write(value);
    Ok(())
}

/// # Safety
/// `handle` must be null or a live pointer from [`sobolev_bracket_new`].
unsafe fn borrow<'a>(handle: *const SobolevBracket) -> Result<&'a BoundBracket, SobolevStatus> {
    if handle.is_null() {
        set_error("null bracket handle".into());
        return Err(SobolevStatus::NullPointer);
    }
    Ok(&(*handle).inner)
}

fn not_available(what: &str) -> SobolevStatus {
    set_error(format!("{what} is not available for this bracket"));
    SobolevStatus::NotAvailable
}

/// Computes the bracket for `(r, n, d)` and stores a new handle in `*out`.
///
/// # Safety
/// `out` must be valid for a write of one pointer. The handle must be
/// released with [`sobolev_bracket_free`].
#[no_mangle]
pub unsafe extern "C" fn sobolev_bracket_new(r: f64, n: f64, d: u32, out: *mut *mut SobolevBracket) -> SobolevStatus {
    guard(|| {
        if out.is_null() {
            set_error("null output pointer".into());
            return Err(SobolevStatus::NullPointer);
        }
        out.write(ptr::null_mut());
        let p = params(r, n, d)?;
        let inner = bracket(&p, &BoundOptions::default()).map_err(fail)?;
        out.write(Box::into_raw(Box::new(SobolevBracket { inner })));
        Ok(())
    })
}

/// Releases a handle. Null is ignored.
///
/// # Safety
/// `handle` must be null or a pointer from [`sobolev_bracket_new`] that has
/// not been freed.
#[no_mangle]
pub unsafe extern "C" fn sobolev_bracket_free(handle: *mut SobolevBracket) {
    if !handle.is_null() {
        drop(Box::from_raw(handle));
    }
}

/// # Safety
/// `handle` must be a live handle and `out` valid for one write.
#[no_mangle]
pub unsafe extern "C" fn sobolev_bracket_s_plus(handle: *const SobolevBracket, out: *mut f64) -> SobolevStatus {
    guard(|| {
        let b = borrow(handle)?;
        write_out(out, b.s_plus)
    })
}

/// `NOT_AVAILABLE` when only an upper bound exists.
///
/// # Safety
/// `handle` must be a live handle and `out` valid for one write.
#[no_mangle]
pub unsafe extern "C" fn sobolev_bracket_s_minus(handle: *const SobolevBracket, out: *mut f64) -> SobolevStatus {
    guard(|| {
        let b = borrow(handle)?;
        let v = b.s_minus.ok_or_else(|| not_available("lower bound"))?;
        write_out(out, v)
    })
}

/// # Safety
/// `handle` must be a live handle and `out` valid for one write.
#[no_mangle]
pub unsafe extern "C" fn sobolev_bracket_rel_uncertainty(
    handle: *const SobolevBracket,
    out: *mut f64,
) -> SobolevStatus {
    guard(|| {
        let b = borrow(handle)?;
        let v = b.rel_uncertainty.ok_or_else(|| not_available("relative uncertainty"))?;
        write_out(out, v)
    })
}

/// The minimizing scale of the trial function; only for estimated brackets.
///
/// # Safety
/// `handle` must be a live handle and `out` valid for one write.
#[no_mangle]
pub unsafe extern "C" fn sobolev_bracket_lambda_star(handle: *const SobolevBracket, out: *mut f64) -> SobolevStatus {
    guard(|| {
        let b = borrow(handle)?;
        let v = b.lambda_star().ok_or_else(|| not_available("lambda*"))?;
        write_out(out, v)
    })
}

/// # Safety
/// `handle` must be a live handle and `out` valid for one write.
#[no_mangle]
pub unsafe extern "C" fn sobolev_bracket_kind(
    handle: *const SobolevBracket,
    out: *mut SobolevBracketKind,
) -> SobolevStatus {
    guard(|| {
        let b = borrow(handle)?;
        let kind = match b.kind {
            BracketKind::Sharp => SobolevBracketKind::Sharp,
            BracketKind::Estimated => SobolevBracketKind::Estimated,
            BracketKind::UpperOnly => SobolevBracketKind::UpperOnly,
        };
        write_out(out, kind)
    })
}

/// Upper bound `S⁺` for any admissible triple.
///
/// # Safety
/// `out` must be valid for one write.
#[no_mangle]
pub unsafe extern "C" fn sobolev_upper_bound(r: f64, n: f64, d: u32, out: *mut f64) -> SobolevStatus {
    guard(|| {
        let p = params(r, n, d)?;
        let v = upper_bound(&p).map_err(fail)?;
        write_out(out, v)
    })
}

/// Trial-function lower bound `S⁻`; needs `n > d/2` and `2 < r < ∞`.
///
/// # Safety
/// `out` must be valid for one write.
#[no_mangle]
pub unsafe extern "C" fn sobolev_lower_bound(r: f64, n: f64, d: u32, out: *mut f64) -> SobolevStatus {
    guard(|| {
        let p = params(r, n, d)?;
        let v = lower_bound(&p, &BoundOptions::default()).map_err(fail)?;
        write_out(out, v.s_minus)
    })
}

/// Macdonald function `K_ν(ρ)` for `ν ≥ 0`, `ρ > 0`.
///
/// # Safety
/// `out` must be valid for one write.
#[no_mangle]
pub unsafe extern "C" fn sobolev_bessel_k(nu: f64, rho: f64, out: *mut f64) -> SobolevStatus {
    guard(|| {
        let v = bessel_k(nu, rho).map_err(fail)?;
        write_out(out, v.value)
    })
}

/// Copies the last error message of this thread into `buf` (NUL-terminated,
/// truncated to `len`) and returns the full message length in bytes,
/// excluding the terminator. `buf` may be null to query the length.
///
/// # Safety
/// `buf` must be null or valid for `len` bytes of writes.
#[no_mangle]
pub unsafe extern "C" fn sobolev_last_error_message(buf: *mut c_char, len: usize) -> usize {
    LAST_ERROR.with(|e| {
        let msg = e.borrow();
        let bytes = msg.as_bytes();
        if !buf.is_null() && len > 0 {
            let n = bytes.len().min(len - 1);
            ptr::copy_nonoverlapping(bytes.as_ptr().cast::<c_char>(), buf, n);
            buf.add(n).write(0);
        }
        bytes.len()
    })
}
