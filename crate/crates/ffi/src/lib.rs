//! C interface to `tnla`.
//!
//! Decompositions live behind the opaque `TnlaBd` handle. Every fallible
//! call returns a `TnlaStatus`; on failure the message is available from
//! `tnla_last_error` until the next call on the same thread. Output arrays
//! are caller-allocated, row-major, with their capacity passed alongside.

use std::cell::RefCell;
use std::ffi::{c_char, c_int, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::slice;

use tnla::baseline;
use tnla::bd::{self, BdMatrix};
use tnla::classic::bp_dual_solve;
use tnla::error::Error;
use tnla::generators::{self, NodeVector};
use tnla::matrix::DenseMatrix;
use tnla::qr::tn_lsq_solve;
use tnla::spectral;

/// Status codes. Zero is success.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TnlaStatus {
    Ok = 0,
    NullPointer = 1,
    BufferTooSmall = 2,
    InvalidBd = 3,
    NonFinite = 4,
    Overflow = 5,
    Underflow = 6,
    DimensionMismatch = 7,
    NotTotallyNonnegative = 8,
    NodesNotSorted = 9,
    NegativeNode = 10,
    SingularPair = 11,
    BadRange = 12,
    DuplicateNodes = 13,
    NoConvergence = 14,
    ReductionFailure = 15,
    NotSymmetric = 16,
    Singular = 17,
    PrecisionNotReached = 18,
    Other = 19,
    Panic = 20,
}

impl From<&Error> for TnlaStatus {
    fn from(e: &Error) -> Self {
        match e {
            Error::InvalidBd(_) => TnlaStatus::InvalidBd,
            Error::NonFinite(_) => TnlaStatus::NonFinite,
            Error::Overflow(_) => TnlaStatus::Overflow,
            Error::Underflow(_) => TnlaStatus::Underflow,
            Error::DimensionMismatch { .. } => TnlaStatus::DimensionMismatch,
            Error::NotTotallyNonnegative(_) => TnlaStatus::NotTotallyNonnegative,
            Error::NodesNotSorted(_) => TnlaStatus::NodesNotSorted,
            Error::NegativeNode(_) => TnlaStatus::NegativeNode,
            Error::SingularPair { .. } => TnlaStatus::SingularPair,
            Error::BadRange { .. } => TnlaStatus::BadRange,
            Error::DuplicateNodes(..) => TnlaStatus::DuplicateNodes,
            Error::NoConvergence(_) => TnlaStatus::NoConvergence,
            Error::ReductionFailure(_) => TnlaStatus::ReductionFailure,
            Error::NotSymmetric(..) => TnlaStatus::NotSymmetric,
            Error::SingularMatrix | Error::SingularToWorkingPrecision(_) => TnlaStatus::Singular,
            Error::PrecisionNotReached(_) => TnlaStatus::PrecisionNotReached,
            _ => TnlaStatus::Other,
        }
    }
}

/// Opaque handle to a bidiagonal decomposition.
pub struct TnlaBd(BdMatrix);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

enum Fail {
    Null,
    Buffer(usize, usize),
    Lib(Error),
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail::Lib(e)
    }
}

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> TnlaStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => TnlaStatus::Ok,
        Ok(Err(Fail::Null)) => {
            set_error("null pointer argument".into());
            TnlaStatus::NullPointer
        }
        Ok(Err(Fail::Buffer(need, have))) => {
            set_error(format!("output buffer holds {have} values, {need} needed"));
            TnlaStatus::BufferTooSmall
        }
        Ok(Err(Fail::Lib(e))) => {
            set_error(e.to_string());
            TnlaStatus::from(&e)
        }
        Err(_) => {
            set_error("internal panic".into());
            TnlaStatus::Panic
        }
    }
}

/// Borrows `len` values; a null pointer is allowed only when `len == 0`.
unsafe fn input<'a>(p: *const f64, len: usize) -> Result<&'a [f64], Fail> {
    if len == 0 {
        return Ok(&[]);
    }
    if p.is_null() {
        return Err(Fail::Null);
    }
    Ok(slice::from_raw_parts(p, len))
}

fn area(rows: usize, cols: usize) -> Result<usize, Fail> {
    rows.checked_mul(cols)
        .ok_or_else(|| Fail::Lib(Error::Overflow("matrix size")))
}

unsafe fn output(src: &[f64], dst: *mut f64, cap: usize) -> Result<(), Fail> {
    if src.len() > cap {
        return Err(Fail::Buffer(src.len(), cap));
    }
    if src.is_empty() {
        return Ok(());
    }
    if dst.is_null() {
        return Err(Fail::Null);
    }
    ptr::copy_nonoverlapping(src.as_ptr(), dst, src.len());
    Ok(())
}

unsafe fn handle<'a>(b: *const TnlaBd) -> Result<&'a BdMatrix, Fail> {
    b.as_ref().map(|h| &h.0).ok_or(Fail::Null)
}

unsafe fn emit(out: *mut *mut TnlaBd, b: BdMatrix) -> Result<(), Fail> {
    if out.is_null() {
        return Err(Fail::Null);
    }
    *out = Box::into_raw(Box::new(TnlaBd(b)));
    Ok(())
}

unsafe fn scalar(out: *mut f64, v: f64) -> Result<(), Fail> {
    if out.is_null() {
        return Err(Fail::Null);
    }
    *out = v;
    Ok(())
}

/// Message for the last failed call on this thread, or null. The pointer
/// stays valid until the next `tnla_*` call on the same thread.
#[no_mangle]
pub extern "C" fn tnla_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Builds a grid from `rows * cols` row-major values.
///
/// # Safety
/// `p` must point to `rows * cols` readable doubles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tnla_bd_new(
    rows: usize,
    cols: usize,
    p: *const f64,
    out: *mut *mut TnlaBd,
) -> TnlaStatus {
    guard(|| {
        let b = BdMatrix::new(rows, cols, input(p, area(rows, cols)?)?.to_vec())?;
        emit(out, b)
    })
}

/// # Safety
/// `b` must come from this library and not have been freed; null is a no-op.
#[no_mangle]
pub unsafe extern "C" fn tnla_bd_free(b: *mut TnlaBd) {
    if !b.is_null() {
        drop(Box::from_raw(b));
    }
}

/// # Safety
/// `b` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn tnla_bd_rows(b: *const TnlaBd) -> usize {
    b.as_ref().map_or(0, |h| h.0.rows())
}

/// # Safety
/// `b` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn tnla_bd_cols(b: *const TnlaBd) -> usize {
    b.as_ref().map_or(0, |h| h.0.cols())
}

/// Copies the grid, row-major, into `out`.
///
/// # Safety
/// `b` must be a live handle; `out` must hold `cap` doubles.
#[no_mangle]
pub unsafe extern "C" fn tnla_bd_grid(b: *const TnlaBd, out: *mut f64, cap: usize) -> TnlaStatus {
    guard(|| output(handle(b)?.as_slice(), out, cap))
}

/// Vandermonde matrix `x_i^j` on `n` increasing nonnegative nodes.
///
/// # Safety
/// `x` must hold `n` doubles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tnla_bd_vandermonde(
    x: *const f64,
    n: usize,
    out: *mut *mut TnlaBd,
) -> TnlaStatus {
    guard(|| {
        let x = NodeVector::new(input(x, n)?.to_vec())?;
        emit(out, generators::vandermonde_bd(&x)?)
    })
}

/// Cauchy matrix `1 / (x_i + y_j)` on increasing nodes.
///
/// # Safety
/// `x` and `y` must hold `n` doubles each; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tnla_bd_cauchy(
    x: *const f64,
    y: *const f64,
    n: usize,
    out: *mut *mut TnlaBd,
) -> TnlaStatus {
    guard(|| {
        let x = NodeVector::new(input(x, n)?.to_vec())?;
        let y = NodeVector::new(input(y, n)?.to_vec())?;
        emit(out, generators::cauchy_bd(&x, &y)?)
    })
}

/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tnla_bd_hilbert(n: usize, out: *mut *mut TnlaBd) -> TnlaStatus {
    guard(|| emit(out, generators::hilbert_bd(n)))
}

/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tnla_bd_pascal(n: usize, out: *mut *mut TnlaBd) -> TnlaStatus {
    guard(|| emit(out, generators::pascal_bd(n)))
}

/// Reproducible random grid; pivots in `[lo, hi]`, multipliers in `[0, hi]`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tnla_bd_random(
    n: usize,
    seed: u64,
    lo: f64,
    hi: f64,
    out: *mut *mut TnlaBd,
) -> TnlaStatus {
    guard(|| emit(out, generators::random_tn_bd(n, seed, lo, hi)?))
}

/// Decomposition of a dense `n x n` matrix by Neville elimination.
///
/// # Safety
/// `a` must hold `n * n` doubles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tnla_bd_from_matrix(
    n: usize,
    a: *const f64,
    out: *mut *mut TnlaBd,
) -> TnlaStatus {
    guard(|| {
        let a = DenseMatrix::from_row_major(n, n, input(a, area(n, n)?)?.to_vec())?;
        emit(out, bd::neville_bd(&a)?)
    })
}

/// The represented matrix, row-major.
///
/// # Safety
/// `b` must be a live handle; `out` must hold `cap` doubles.
#[no_mangle]
pub unsafe extern "C" fn tnla_expand(b: *const TnlaBd, out: *mut f64, cap: usize) -> TnlaStatus {
    guard(|| output(bd::tn_expand(handle(b)?)?.as_slice(), out, cap))
}

/// The inverse, row-major.
///
/// # Safety
/// `b` must be a live handle; `out` must hold `cap` doubles.
#[no_mangle]
pub unsafe extern "C" fn tnla_inverse(b: *const TnlaBd, out: *mut f64, cap: usize) -> TnlaStatus {
    guard(|| output(bd::tn_inverse_expand(handle(b)?)?.as_slice(), out, cap))
}

/// Solves `A x = rhs`, or `A^T x = rhs` when `transpose` is nonzero.
///
/// # Safety
/// `b` must be a live handle; `rhs` and `x` must hold `n` doubles.
#[no_mangle]
pub unsafe extern "C" fn tnla_solve(
    b: *const TnlaBd,
    rhs: *const f64,
    n: usize,
    transpose: c_int,
    x: *mut f64,
) -> TnlaStatus {
    guard(|| {
        let sol = bd::tn_solve(handle(b)?, input(rhs, n)?, transpose != 0)?;
        output(&sol, x, n)
    })
}

/// # Safety
/// `b` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tnla_determinant(b: *const TnlaBd, out: *mut f64) -> TnlaStatus {
    guard(|| scalar(out, bd::tn_determinant(handle(b)?)?))
}

/// Singular values in descending order.
///
/// # Safety
/// `b` must be a live handle; `out` must hold `cap` doubles.
#[no_mangle]
pub unsafe extern "C" fn tnla_singular_values(
    b: *const TnlaBd,
    out: *mut f64,
    cap: usize,
) -> TnlaStatus {
    guard(|| output(&spectral::tn_singular_values(handle(b)?)?.values, out, cap))
}

/// Eigenvalues of a symmetric grid in descending order.
///
/// # Safety
/// `b` must be a live handle; `out` must hold `cap` doubles.
#[no_mangle]
pub unsafe extern "C" fn tnla_eigenvalues_sym(
    b: *const TnlaBd,
    out: *mut f64,
    cap: usize,
) -> TnlaStatus {
    guard(|| output(&spectral::tn_eigenvalues_sym(handle(b)?)?.values, out, cap))
}

/// # Safety
/// `b` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tnla_cond2(b: *const TnlaBd, out: *mut f64) -> TnlaStatus {
    guard(|| scalar(out, spectral::cond2(handle(b)?)?))
}

/// Least-squares solution of a full-column-rank `m x n` problem, `m >= n`.
///
/// # Safety
/// `b` must be a live handle; `rhs` must hold `m` doubles, `x` `n` doubles.
#[no_mangle]
pub unsafe extern "C" fn tnla_lsq_solve(
    b: *const TnlaBd,
    rhs: *const f64,
    m: usize,
    x: *mut f64,
    n: usize,
) -> TnlaStatus {
    guard(|| {
        let sol = tn_lsq_solve(handle(b)?, input(rhs, m)?)?;
        output(&sol, x, n)
    })
}

/// Monomial coefficients of the interpolant through `(x_i, f_i)`.
///
/// # Safety
/// `x`, `f` and `a` must hold `n` doubles each.
#[no_mangle]
pub unsafe extern "C" fn tnla_bp_dual_solve(
    x: *const f64,
    f: *const f64,
    n: usize,
    a: *mut f64,
) -> TnlaStatus {
    guard(|| output(&bp_dual_solve(input(x, n)?, input(f, n)?)?, a, n))
}

/// Conventional partial-pivoting solve of a dense `n x n` system, for comparison.
///
/// # Safety
/// `a` must hold `n * n` doubles; `rhs` and `x` `n` doubles each.
#[no_mangle]
pub unsafe extern "C" fn tnla_dense_solve(
    n: usize,
    a: *const f64,
    rhs: *const f64,
    x: *mut f64,
) -> TnlaStatus {
    guard(|| {
        let a = DenseMatrix::from_row_major(n, n, input(a, area(n, n)?)?.to_vec())?;
        output(&baseline::lu_solve(&a, input(rhs, n)?)?, x, n)
    })
}
