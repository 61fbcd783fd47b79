//! QR factorization and least squares directly from `BD(A)`.

use crate::bd::{tn_solve, BdMatrix};
use crate::error::{Error, Result};
use crate::matrix::DenseMatrix;
use crate::spectral::reduce::Word;

/// `A = Q R` with `R` kept in bidiagonal-decomposition form (its lower
/// multipliers are all zero).
#[derive(Clone, Debug, PartialEq)]
pub struct QrResult {
    pub q: DenseMatrix,
    pub r: BdMatrix,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum QrMode {
    /// `Q` is `m x n`.
    #[default]
    Thin,
    /// `Q` is `m x m`.
    Full,
}

pub fn tn_qr(b: &BdMatrix) -> Result<QrResult> {
    tn_qr_with(b, QrMode::Thin)
}

/// QR of the `m x n` (`m >= n`) matrix represented by `b`. The rotations act
/// on the padded square grid; `R` is the leading `n x n` block of the result.
pub fn tn_qr_with(b: &BdMatrix, mode: QrMode) -> Result<QrResult> {
    let (m, n) = (b.rows(), b.cols());
    if m < n {
        return Err(Error::dims(
            format!("at least {n} rows"),
            format!("{m} rows"),
        ));
    }
    let mut q = DenseMatrix::identity(m);
    let mut w = Word::new(&b.padded_square())?;
    w.eliminate_lower(Some(&mut q))?;
    let r = w.into_bd()?.leading_block(n, n)?;
    let q = match mode {
        QrMode::Thin => q.block(m, n),
        QrMode::Full => q,
    };
    Ok(QrResult { q, r })
}

/// Least-squares solution of `A x ~ rhs` via `R x = Q^T rhs`.
pub fn tn_lsq_solve(b: &BdMatrix, rhs: &[f64]) -> Result<Vec<f64>> {
    if rhs.len() != b.rows() {
        return Err(Error::dims(b.rows(), rhs.len()));
    }
    let QrResult { q, r } = tn_qr(b)?;
    let qtb = q.transpose().matvec(rhs)?;
    tn_solve(&r, &qtb, false)
}
