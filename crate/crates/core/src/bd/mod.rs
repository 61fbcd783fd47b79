//! The bidiagonal decomposition `BD(A)` of a nonsingular totally nonnegative
//! matrix and the subtraction-free kernels built on it.
//!
//! A square `n x n` grid `p` encodes
//!
//! ```text
//! A = L[n-1] ... L[1] * D * U[1] ... U[n-1]
//! ```
//!
//! where `D = diag(p[j][j])`, `L[k]` is unit lower bidiagonal with entry
//! `(i, i-1) = p[i][i-k]` for `i >= k`, and `U[k]` is unit upper bidiagonal
//! with entry `(j-1, j) = p[j-k][j]` for `j >= k` (all indices 0-based here;
//! file formats and user docs count from 1). The off-diagonal entries of the
//! grid are the Neville elimination multipliers of `A` (below the diagonal)
//! and of `A^T` (above it); the diagonal holds the pivots. The same grid
//! parameterizes `A^{-1}`.
//!
//! Rectangular grids are the leading `m x n` block of the `s x s` grid padded
//! with ones on the diagonal and zeros elsewhere, `s = max(m, n)`.

mod expand;
pub(crate) mod neville;
mod solve;

use std::fmt;

use crate::error::{Error, Result};
use crate::matrix::DenseMatrix;

pub use expand::{tn_expand, tn_inverse_expand};
pub use neville::neville_bd;
pub use solve::{tn_determinant, tn_solve};

#[derive(Clone, PartialEq)]
pub struct BdMatrix {
    rows: usize,
    cols: usize,
    p: Vec<f64>,
}

impl BdMatrix {
    /// Validates and wraps a row-major grid.
    pub fn new(rows: usize, cols: usize, p: Vec<f64>) -> Result<Self> {
        if p.len() != rows * cols {
            return Err(Error::dims(rows * cols, p.len()));
        }
        let bd = BdMatrix { rows, cols, p };
        bd.validate()?;
        Ok(bd)
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let m = rows.len();
        let n = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|r| r.len() != n) {
            return Err(Error::dims(n, bad.len()));
        }
        Self::new(m, n, rows.concat())
    }

    /// The grid of the identity matrix.
    pub fn identity(n: usize) -> Self {
        let mut p = vec![0.0; n * n];
        for j in 0..n {
            p[j * n + j] = 1.0;
        }
        BdMatrix { rows: n, cols: n, p }
    }

    /// Trusted constructor for kernels that maintain the invariants.
    pub(crate) fn from_raw(rows: usize, cols: usize, p: Vec<f64>) -> Self {
        debug_assert_eq!(p.len(), rows * cols);
        BdMatrix { rows, cols, p }
    }

    fn validate(&self) -> Result<()> {
        for i in 0..self.rows {
            for j in 0..self.cols {
                let v = self.get(i, j);
                if !v.is_finite() {
                    return Err(Error::InvalidBd(format!(
                        "entry ({}, {}) is not finite",
                        i + 1,
                        j + 1
                    )));
                }
                if i == j && v <= 0.0 {
                    return Err(Error::InvalidBd(format!(
                        "pivot ({}, {}) = {v} is not positive",
                        i + 1,
                        j + 1
                    )));
                }
                if i != j && v < 0.0 {
                    return Err(Error::InvalidBd(format!(
                        "multiplier ({}, {}) = {v} is negative",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        Ok(())
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Entry `(i, j)`, 0-based.
    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.p[i * self.cols + j]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.p
    }

    pub fn to_rows(&self) -> Vec<Vec<f64>> {
        self.p.chunks(self.cols.max(1)).map(<[f64]>::to_vec).collect()
    }

    pub fn diagonal(&self) -> Vec<f64> {
        (0..self.rows.min(self.cols)).map(|j| self.get(j, j)).collect()
    }

    /// Exact symmetry of the grid, i.e. of the represented matrix.
    pub fn is_symmetric(&self) -> bool {
        self.first_asymmetry().is_none()
    }

    pub(crate) fn first_asymmetry(&self) -> Option<(usize, usize)> {
        if !self.is_square() {
            return Some((0, 0));
        }
        (0..self.rows)
            .flat_map(|i| (0..i).map(move |j| (i, j)))
            .find(|&(i, j)| self.get(i, j) != self.get(j, i))
    }

    /// Grid of the identity-padded `s x s` embedding, `s = max(rows, cols)`.
    pub fn padded_square(&self) -> BdMatrix {
        if self.is_square() {
            return self.clone();
        }
        let s = self.rows.max(self.cols);
        let mut p = vec![0.0; s * s];
        for i in 0..s {
            for j in 0..s {
                p[i * s + j] = if i < self.rows && j < self.cols {
                    self.get(i, j)
                } else if i == j {
                    1.0
                } else {
                    0.0
                };
            }
        }
        BdMatrix::from_raw(s, s, p)
    }

    /// Leading `rows x cols` block of the grid.
    pub fn leading_block(&self, rows: usize, cols: usize) -> Result<BdMatrix> {
        if rows > self.rows || cols > self.cols {
            return Err(Error::dims(
                format!("at most {}x{}", self.rows, self.cols),
                format!("{rows}x{cols}"),
            ));
        }
        let mut p = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            p.extend_from_slice(&self.p[i * self.cols..i * self.cols + cols]);
        }
        Ok(BdMatrix::from_raw(rows, cols, p))
    }

    /// View of one factor of the decomposition.
    pub fn factor(&self, kind: FactorKind) -> FactorView<'_> {
        FactorView { kind, bd: self }
    }

    pub(crate) fn require_square(&self) -> Result<usize> {
        if self.is_square() {
            Ok(self.rows)
        } else {
            Err(Error::dims(
                "a square decomposition",
                format!("{}x{}", self.rows, self.cols),
            ))
        }
    }
}

impl fmt::Debug for BdMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BdMatrix {}x{} [", self.rows, self.cols)?;
        for row in self.to_rows() {
            writeln!(f, "  {row:?}")?;
        }
        write!(f, "]")
    }
}

/// `BD(A^T)`: the transposed grid.
pub fn bd_transpose(b: &BdMatrix) -> BdMatrix {
    let mut p = Vec::with_capacity(b.rows * b.cols);
    for j in 0..b.cols {
        for i in 0..b.rows {
            p.push(b.get(i, j));
        }
    }
    BdMatrix::from_raw(b.cols, b.rows, p)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FactorKind {
    /// Unit lower bidiagonal factor `L[k]`, `1 <= k < n`.
    Lower(usize),
    /// Unit upper bidiagonal factor `U[k]`, `1 <= k < n`.
    Upper(usize),
    Diagonal,
}

/// Reads the entries of one factor straight from the grid.
#[derive(Clone, Copy)]
pub struct FactorView<'a> {
    kind: FactorKind,
    bd: &'a BdMatrix,
}

impl FactorView<'_> {
    pub fn kind(&self) -> FactorKind {
        self.kind
    }

    pub fn order(&self) -> usize {
        self.bd.rows.max(self.bd.cols)
    }

    /// The off-diagonal coupling of positions `i-1` and `i` (`1 <= i < n`):
    /// entry `(i, i-1)` of a lower factor, `(i-1, i)` of an upper one.
    #[inline]
    pub fn coupling(&self, i: usize) -> f64 {
        let grid = |r: usize, c: usize| {
            if r < self.bd.rows && c < self.bd.cols {
                self.bd.get(r, c)
            } else {
                0.0
            }
        };
        match self.kind {
            FactorKind::Lower(k) if k >= 1 && i >= k => grid(i, i - k),
            FactorKind::Upper(k) if k >= 1 && i >= k => grid(i - k, i),
            _ => 0.0,
        }
    }

    /// Entry `(i, j)` of the factor.
    pub fn get(&self, i: usize, j: usize) -> f64 {
        match self.kind {
            FactorKind::Diagonal => {
                if i != j {
                    0.0
                } else if i < self.bd.rows && i < self.bd.cols {
                    self.bd.get(i, i)
                } else {
                    1.0
                }
            }
            FactorKind::Lower(_) if i == j + 1 => self.coupling(i),
            FactorKind::Upper(_) if j == i + 1 => self.coupling(j),
            _ if i == j => 1.0,
            _ => 0.0,
        }
    }

    /// Materializes the factor. Only meant for tests and diagnostics.
    pub fn to_dense(&self) -> DenseMatrix {
        let n = self.order();
        DenseMatrix::from_fn(n, n, |i, j| self.get(i, j))
    }
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::BdMatrix;

    /// Dürer's magic square, with the (1,3) entry read as 2.
    pub fn durer() -> BdMatrix {
        BdMatrix::from_rows(&[
            vec![16.0, 3.0, 2.0, 13.0],
            vec![5.0, 10.0, 11.0, 8.0],
            vec![9.0, 6.0, 7.0, 12.0],
            vec![4.0, 15.0, 14.0, 1.0],
        ])
        .unwrap()
    }

    pub fn durer_expanded() -> Vec<Vec<f64>> {
        vec![
            vec![16.0, 48.0, 96.0, 1248.0],
            vec![80.0, 250.0, 610.0, 8810.0],
            vec![720.0, 2310.0, 6277.0, 94941.0],
            vec![2880.0, 10140.0, 37011.0, 617764.0],
        ]
    }

    pub fn vandermonde_2358() -> BdMatrix {
        BdMatrix::from_rows(&[
            vec![1.0, 2.0, 2.0, 2.0],
            vec![1.0, 1.0, 3.0, 3.0],
            vec![1.0, 2.0, 6.0, 5.0],
            vec![1.0, 1.5, 2.5, 90.0],
        ])
        .unwrap()
    }

    pub fn vandermonde_2358_expanded() -> Vec<Vec<f64>> {
        [2.0f64, 3.0, 5.0, 8.0]
            .iter()
            .map(|x| (0..4).map(|j| x.powi(j)).collect())
            .collect()
    }
}
