//! The two-stage Björck–Pereyra solver for polynomial interpolation
//! (the dual Vandermonde system).
//!
//! Nodes are indexed from 0 here, and coefficients are in ascending degree.
//! The nodes only need to be distinct; an increasing order with alternating
//! data is what gives the componentwise accuracy.

use crate::error::{Error, Result};

/// Divided differences: Newton-form coefficients of the interpolant.
pub fn newton_coefficients(x: &[f64], f: &[f64]) -> Result<Vec<f64>> {
    if x.len() != f.len() {
        return Err(Error::dims(x.len(), f.len()));
    }
    let mut c = f.to_vec();
    let n = x.len().saturating_sub(1);
    for k in 0..n {
        for i in (k + 1..=n).rev() {
            let h = x[i] - x[i - k - 1];
            if h == 0.0 {
                return Err(Error::DuplicateNodes(i - k, i + 1));
            }
            c[i] = (c[i] - c[i - 1]) / h;
        }
    }
    Ok(c)
}

/// Converts Newton-form coefficients to monomial coefficients.
pub fn newton_to_monomial(x: &[f64], c: &[f64]) -> Result<Vec<f64>> {
    if x.len() != c.len() {
        return Err(Error::dims(x.len(), c.len()));
    }
    let mut a = c.to_vec();
    let n = x.len().saturating_sub(1);
    for k in (0..n).rev() {
        for i in k..n {
            a[i] -= x[k] * a[i + 1];
        }
    }
    Ok(a)
}

/// Coefficients `a` of the polynomial with `p(x_i) = f_i`.
pub fn bp_dual_solve(x: &[f64], f: &[f64]) -> Result<Vec<f64>> {
    let c = newton_coefficients(x, f)?;
    newton_to_monomial(x, &c)
}
