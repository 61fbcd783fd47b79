use crate::error::{Error, Result};

use super::{bd_transpose, BdMatrix, FactorKind};

/// Solves `A x = b` (or `A^T x = b`) from `BD(A)` in `O(n^2)` flops.
///
/// When `b` alternates strictly in sign every substitution step adds terms of
/// equal sign, so the result is accurate componentwise.
pub fn tn_solve(b: &BdMatrix, rhs: &[f64], transpose: bool) -> Result<Vec<f64>> {
    let n = b.require_square()?;
    if rhs.len() != n {
        return Err(Error::dims(n, rhs.len()));
    }
    if transpose {
        return tn_solve(&bd_transpose(b), rhs, false);
    }
    let mut y = rhs.to_vec();
    for k in (1..n).rev() {
        let l = b.factor(FactorKind::Lower(k));
        for i in k..n {
            y[i] -= l.coupling(i) * y[i - 1];
        }
    }
    for (i, v) in y.iter_mut().enumerate() {
        *v /= b.get(i, i);
    }
    for k in 1..n {
        let u = b.factor(FactorKind::Upper(k));
        for j in (k..n).rev() {
            y[j - 1] -= u.coupling(j) * y[j];
        }
    }
    if y.iter().any(|v| !v.is_finite()) {
        return Err(Error::Overflow("tn_solve"));
    }
    Ok(y)
}

/// `det A`, the product of the pivots.
pub fn tn_determinant(b: &BdMatrix) -> Result<f64> {
    let n = b.require_square()?;
    let det = (0..n).fold(1.0, |acc, j| acc * b.get(j, j));
    if det.is_infinite() {
        Err(Error::Overflow("tn_determinant"))
    } else if det < f64::MIN_POSITIVE {
        Err(Error::Underflow("tn_determinant"))
    } else {
        Ok(det)
    }
}
