use crate::error::{Error, Result};
use crate::matrix::DenseMatrix;
use crate::scalar::Field;

use super::BdMatrix;

/// Recovers `BD(A)` by Neville elimination of `A` and `A^T`.
///
/// Elimination subtracts, so unlike the rest of this module the result is
/// only as accurate as the conditioning of `A` allows.
pub fn neville_bd(a: &DenseMatrix) -> Result<BdMatrix> {
    if !a.is_square() {
        return Err(Error::dims(
            "a square matrix",
            format!("{}x{}", a.rows(), a.cols()),
        ));
    }
    let n = a.rows();
    let grid = neville_grid(&a.to_rows())?;
    Ok(BdMatrix::from_raw(n, n, grid.concat()))
}

/// Neville grid of a square matrix over any ordered field.
pub(crate) fn neville_grid<T: Field>(a: &[Vec<T>]) -> Result<Vec<Vec<T>>> {
    let n = a.len();
    let mut grid = vec![vec![T::zero(); n]; n];
    let lower = eliminate(a.to_vec())?;
    let at: Vec<Vec<T>> = (0..n)
        .map(|j| (0..n).map(|i| a[i][j].clone()).collect())
        .collect();
    let upper = eliminate(at)?;
    for i in 0..n {
        for j in 0..n {
            grid[i][j] = if i > j {
                lower.mult[i][j].clone()
            } else if i < j {
                upper.mult[j][i].clone()
            } else {
                lower.pivots[i].clone()
            };
        }
    }
    Ok(grid)
}

struct Elimination<T> {
    mult: Vec<Vec<T>>,
    pivots: Vec<T>,
}

fn eliminate<T: Field>(mut w: Vec<Vec<T>>) -> Result<Elimination<T>> {
    let n = w.len();
    let zero = T::zero();
    let mut mult = vec![vec![T::zero(); n]; n];
    for j in 0..n {
        for i in (j + 1..n).rev() {
            let below = w[i][j].clone();
            let pivot = w[i - 1][j].clone();
            let m = if pivot == zero {
                if below == zero {
                    continue;
                }
                return Err(Error::NotTotallyNonnegative(format!(
                    "zero pivot above a nonzero entry in column {} would need a row exchange",
                    j + 1
                )));
            } else {
                below / pivot
            };
            if m < zero {
                return Err(Error::NotTotallyNonnegative(format!(
                    "negative multiplier at ({}, {})",
                    i + 1,
                    j + 1
                )));
            }
            let (head, tail) = w.split_at_mut(i);
            let (prev, row) = (&head[i - 1], &mut tail[0]);
            for k in j + 1..n {
                row[k] = row[k].clone() - m.clone() * prev[k].clone();
            }
            row[j] = T::zero();
            mult[i][j] = m;
        }
    }
    let pivots: Vec<T> = (0..n).map(|j| w[j][j].clone()).collect();
    if let Some(j) = pivots.iter().position(|p| !(*p > zero)) {
        return Err(Error::NotTotallyNonnegative(format!(
            "pivot {} is not positive",
            j + 1
        )));
    }
    Ok(Elimination { mult, pivots })
}
