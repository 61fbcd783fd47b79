use crate::error::{Error, Result};
use crate::matrix::DenseMatrix;

use super::{BdMatrix, FactorKind};

/// Expands `BD(A)` into `A` using only products and sums of nonnegative
/// numbers. Rectangular grids are expanded through their padded square.
pub fn tn_expand(b: &BdMatrix) -> Result<DenseMatrix> {
    if !b.is_square() {
        let full = tn_expand(&b.padded_square())?;
        return Ok(full.block(b.rows(), b.cols()));
    }
    let n = b.rows();
    let mut m = DenseMatrix::identity(n);
    if n == 0 {
        return Ok(m);
    }

    // U[1] ... U[n-1], built right to left. Row r only ever mixes with row
    // r + 1, and rows are visited top-down so row r + 1 is still the old one.
    for k in (1..n).rev() {
        let u = b.factor(FactorKind::Upper(k));
        for r in k - 1..n - 1 {
            let c = u.coupling(r + 1);
            if c == 0.0 {
                continue;
            }
            for j in r + 1..n {
                let below = m[(r + 1, j)];
                m[(r, j)] += c * below;
            }
        }
    }

    for i in 0..n {
        let d = b.get(i, i);
        for v in m.row_mut(i) {
            *v *= d;
        }
    }

    // L[1] first (it sits next to D), then outward.
    for k in 1..n {
        let l = b.factor(FactorKind::Lower(k));
        for i in (k..n).rev() {
            let c = l.coupling(i);
            if c == 0.0 {
                continue;
            }
            for j in 0..n {
                let above = m[(i - 1, j)];
                m[(i, j)] += c * above;
            }
        }
    }

    if m.as_slice().iter().any(|v| !v.is_finite()) {
        return Err(Error::Overflow("tn_expand"));
    }
    Ok(m)
}

/// Computes `A^{-1}` from `BD(A)` without subtractions.
///
/// The inverse is `U[n-1]^{-1} ... U[1]^{-1} D^{-1} L[1]^{-1} ... L[n-1]^{-1}`.
/// Each `L[k]^{-1}` equals `S |L[k]^{-1}| S` with `S = diag(+1, -1, ...)`, so
/// the product is accumulated on the nonnegative matrices and the
/// checkerboard signs are applied once at the end.
pub fn tn_inverse_expand(b: &BdMatrix) -> Result<DenseMatrix> {
    let n = b.require_square()?;
    let mut m = DenseMatrix::zeros(n, n);
    for i in 0..n {
        m[(i, i)] = 1.0 / b.get(i, i);
    }

    // M <- M |L[k]^{-1}|: solve X (I - N) = M column by column, right to left.
    for k in 1..n {
        let l = b.factor(FactorKind::Lower(k));
        for j in (k - 1..n - 1).rev() {
            let c = l.coupling(j + 1);
            if c == 0.0 {
                continue;
            }
            for i in 0..n {
                let right = m[(i, j + 1)];
                m[(i, j)] += c * right;
            }
        }
    }

    // M <- |U[k]^{-1}| M: solve (I - N) Y = M row by row, bottom to top.
    for k in 1..n {
        let u = b.factor(FactorKind::Upper(k));
        for i in (k - 1..n - 1).rev() {
            let c = u.coupling(i + 1);
            if c == 0.0 {
                continue;
            }
            for j in 0..n {
                let below = m[(i + 1, j)];
                m[(i, j)] += c * below;
            }
        }
    }

    if m.as_slice().iter().any(|v| !v.is_finite()) {
        return Err(Error::Overflow("tn_inverse_expand"));
    }
    for i in 0..n {
        for j in 0..n {
            if (i + j) % 2 == 1 {
                m[(i, j)] = -m[(i, j)];
            }
        }
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::*;

    #[test]
    fn expands_durer_exactly() {
        assert_eq!(tn_expand(&durer()).unwrap().to_rows(), durer_expanded());
    }

    #[test]
    fn expands_vandermonde_exactly() {
        assert_eq!(
            tn_expand(&vandermonde_2358()).unwrap().to_rows(),
            vandermonde_2358_expanded()
        );
    }

    #[test]
    fn identity_and_pascal() {
        assert_eq!(tn_expand(&BdMatrix::identity(4)).unwrap(), DenseMatrix::identity(4));
        let ones = BdMatrix::from_rows(&[vec![1.0, 1.0], vec![1.0, 1.0]]).unwrap();
        assert_eq!(
            tn_expand(&ones).unwrap().to_rows(),
            vec![vec![1.0, 1.0], vec![1.0, 2.0]]
        );
        assert_eq!(
            tn_inverse_expand(&ones).unwrap().to_rows(),
            vec![vec![2.0, -1.0], vec![-1.0, 1.0]]
        );
        assert_eq!(
            tn_inverse_expand(&BdMatrix::identity(3)).unwrap(),
            DenseMatrix::identity(3)
        );
    }

    #[test]
    fn factor_product_matches_expansion() {
        let b = durer();
        let n = 4;
        let mut prod = DenseMatrix::identity(n);
        for k in (1..n).rev() {
            prod = prod.matmul(&b.factor(FactorKind::Lower(k)).to_dense()).unwrap();
        }
        prod = prod.matmul(&b.factor(FactorKind::Diagonal).to_dense()).unwrap();
        for k in 1..n {
            prod = prod.matmul(&b.factor(FactorKind::Upper(k)).to_dense()).unwrap();
        }
        assert_eq!(prod.to_rows(), durer_expanded());
    }

    #[test]
    fn inverse_times_matrix_is_identity() {
        let b = vandermonde_2358();
        let a = tn_expand(&b).unwrap();
        let ai = tn_inverse_expand(&b).unwrap();
        let p = ai.matmul(&a).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                let want = if i == j { 1.0 } else { 0.0 };
                assert!((p[(i, j)] - want).abs() < 1e-12, "{p:?}");
                assert!(ai[(i, j)] * if (i + j) % 2 == 0 { 1.0 } else { -1.0 } >= 0.0);
            }
        }
    }

    #[test]
    fn rectangular_is_leading_block() {
        let b = BdMatrix::from_rows(&[vec![1.0; 3], vec![1.0; 3]]).unwrap();
        let a = tn_expand(&b).unwrap();
        assert_eq!(a.to_rows(), vec![vec![1.0, 1.0, 1.0], vec![1.0, 2.0, 3.0]]);
    }

    #[test]
    fn overflow_is_reported() {
        let b = BdMatrix::from_rows(&[vec![1e300, 1e300], vec![1e300, 1e300]]).unwrap();
        assert_eq!(tn_expand(&b), Err(Error::Overflow("tn_expand")));
    }
}
