//! Reference results: exact rational linear algebra and spectra in
//! configurable-precision binary floating point.
//!
//! Everything here is slow and meant for tests, error reports and small
//! matrices (n up to about 12).

mod hp;

use std::ops::{Index, IndexMut};

use dashu_int::IBig;
use dashu_ratio::RBig;

use crate::bd::neville::neville_grid;
use crate::bd::BdMatrix;
use crate::error::{Error, Result};
use crate::matrix::DenseMatrix;

pub use dashu_ratio::RBig as Rational;
pub use hp::{hp_spectrum, hp_spectrum_dense, oracle_bits, BigFloat};

/// Dense matrix of exact rationals, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<RBig>,
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RationalMatrix {
            rows,
            cols,
            data: vec![RBig::ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { RBig::ONE } else { RBig::ZERO })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> RBig) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        RationalMatrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<RBig>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|row| row.len() != c) {
            return Err(Error::dims(c, bad.len()));
        }
        Ok(RationalMatrix {
            rows: r,
            cols: c,
            data: rows.concat(),
        })
    }

    /// Exact image of a binary64 matrix.
    pub fn from_dense(a: &DenseMatrix) -> Self {
        Self::from_fn(a.rows(), a.cols(), |i, j| exact(a[(i, j)]))
    }

    /// Exact image of a binary64 grid.
    pub fn from_bd(b: &BdMatrix) -> Self {
        Self::from_fn(b.rows(), b.cols(), |i, j| exact(b.get(i, j)))
    }

    /// Hilbert matrix `1 / (i + j + 1)` (0-based).
    pub fn hilbert(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| ratio(1, (i + j + 1) as u64))
    }

    /// Vandermonde matrix `x_i^j`.
    pub fn vandermonde(x: &[RBig]) -> Self {
        let n = x.len();
        Self::from_fn(n, n, |i, j| pow(&x[i], j))
    }

    /// Symmetric Pascal matrix `binom(i + j, i)`.
    pub fn pascal(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                m[(i, j)] = if i == 0 || j == 0 {
                    RBig::ONE
                } else {
                    m[(i - 1, j)].clone() + m[(i, j - 1)].clone()
                };
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn to_rows(&self) -> Vec<Vec<RBig>> {
        self.data.chunks(self.cols.max(1)).map(<[RBig]>::to_vec).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn matmul(&self, other: &RationalMatrix) -> Result<RationalMatrix> {
        if self.cols != other.rows {
            return Err(Error::dims(self.cols, other.rows));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if *a == RBig::ZERO {
                    continue;
                }
                for j in 0..other.cols {
                    let t = a * &other[(k, j)];
                    out[(i, j)] = &out[(i, j)] + t;
                }
            }
        }
        Ok(out)
    }

    pub fn matvec(&self, x: &[RBig]) -> Result<Vec<RBig>> {
        if x.len() != self.cols {
            return Err(Error::dims(self.cols, x.len()));
        }
        Ok((0..self.rows)
            .map(|i| {
                (0..self.cols).fold(RBig::ZERO, |acc, j| acc + &self[(i, j)] * &x[j])
            })
            .collect())
    }

    /// Entrywise rounding to binary64.
    pub fn to_dense(&self) -> DenseMatrix {
        DenseMatrix::from_fn(self.rows, self.cols, |i, j| to_f64(&self[(i, j)]))
    }

    fn require_square(&self) -> Result<usize> {
        if self.rows == self.cols {
            Ok(self.rows)
        } else {
            Err(Error::dims(
                "a square matrix",
                format!("{}x{}", self.rows, self.cols),
            ))
        }
    }
}

impl Index<(usize, usize)> for RationalMatrix {
    type Output = RBig;

    fn index(&self, (i, j): (usize, usize)) -> &RBig {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for RationalMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut RBig {
        &mut self.data[i * self.cols + j]
    }
}

/// The rational `num / den`.
pub fn ratio(num: i64, den: u64) -> RBig {
    RBig::from_parts(IBig::from(num), den.into())
}

/// Exact value of a finite binary64 number.
pub fn exact(v: f64) -> RBig {
    RBig::try_from(v).expect("finite value")
}

/// Nearest binary64 to a rational.
pub fn to_f64(r: &RBig) -> f64 {
    r.to_f64().value()
}

fn pow(x: &RBig, k: usize) -> RBig {
    (0..k).fold(RBig::ONE, |acc, _| acc * x)
}

/// Neville elimination in exact arithmetic.
pub fn exact_neville_bd(a: &RationalMatrix) -> Result<RationalMatrix> {
    a.require_square()?;
    RationalMatrix::from_rows(neville_grid(&a.to_rows())?)
}

/// Row-reduces `[A | B]` to `[I | A^{-1} B]`.
fn gauss_jordan(a: &RationalMatrix, mut b: RationalMatrix) -> Result<RationalMatrix> {
    let n = a.require_square()?;
    if b.rows != n {
        return Err(Error::dims(n, b.rows));
    }
    let mut a = a.clone();
    for col in 0..n {
        let piv = (col..n)
            .find(|&r| a[(r, col)] != RBig::ZERO)
            .ok_or(Error::SingularMatrix)?;
        for j in 0..n {
            a.data.swap(col * n + j, piv * n + j);
        }
        for j in 0..b.cols {
            b.data.swap(col * b.cols + j, piv * b.cols + j);
        }
        let inv = RBig::ONE / a[(col, col)].clone();
        for j in 0..n {
            a[(col, j)] = &a[(col, j)] * &inv;
        }
        for j in 0..b.cols {
            b[(col, j)] = &b[(col, j)] * &inv;
        }
        for r in 0..n {
            if r == col || a[(r, col)] == RBig::ZERO {
                continue;
            }
            let f = a[(r, col)].clone();
            for j in 0..n {
                a[(r, j)] = &a[(r, j)] - &f * &a[(col, j)];
            }
            for j in 0..b.cols {
                b[(r, j)] = &b[(r, j)] - &f * &b[(col, j)];
            }
        }
    }
    Ok(b)
}

pub fn exact_solve(a: &RationalMatrix, b: &[RBig]) -> Result<Vec<RBig>> {
    let rhs = RationalMatrix::from_fn(b.len(), 1, |i, _| b[i].clone());
    Ok(gauss_jordan(a, rhs)?.data)
}

pub fn exact_inverse(a: &RationalMatrix) -> Result<RationalMatrix> {
    let n = a.require_square()?;
    gauss_jordan(a, RationalMatrix::identity(n))
}

pub fn exact_determinant(a: &RationalMatrix) -> Result<RBig> {
    let n = a.require_square()?;
    let mut a = a.clone();
    let mut det = RBig::ONE;
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| a[(r, col)] != RBig::ZERO) else {
            return Ok(RBig::ZERO);
        };
        if piv != col {
            for j in 0..n {
                a.data.swap(col * n + j, piv * n + j);
            }
            det = -det;
        }
        det = &det * &a[(col, col)];
        for r in col + 1..n {
            let f = &a[(r, col)] / &a[(col, col)];
            for j in col..n {
                a[(r, j)] = &a[(r, j)] - &f * &a[(col, j)];
            }
        }
    }
    Ok(det)
}

/// Multiplies out the explicit factor matrices of a square rational grid.
pub fn exact_expand(bd: &RationalMatrix) -> Result<RationalMatrix> {
    let n = bd.require_square()?;
    let mut prod = RationalMatrix::identity(n);
    for k in (1..n).rev() {
        let mut f = RationalMatrix::identity(n);
        for i in k..n {
            f[(i, i - 1)] = bd[(i, i - k)].clone();
        }
        prod = prod.matmul(&f)?;
    }
    let d = RationalMatrix::from_fn(n, n, |i, j| {
        if i == j {
            bd[(i, i)].clone()
        } else {
            RBig::ZERO
        }
    });
    prod = prod.matmul(&d)?;
    for k in 1..n {
        let mut g = RationalMatrix::identity(n);
        for j in k..n {
            g[(j - 1, j)] = bd[(j - k, j)].clone();
        }
        prod = prod.matmul(&g)?;
    }
    Ok(prod)
}

/// `||x - x_e||_2 / ||x_e||_2` with the difference formed exactly.
pub fn rel_err_2(x: &[f64], exact_x: &[RBig]) -> f64 {
    let mut num = RBig::ZERO;
    let mut den = RBig::ZERO;
    for (a, e) in x.iter().zip(exact_x) {
        let d = exact(*a) - e;
        num = num + &d * &d;
        den = den + e * e;
    }
    if den == RBig::ZERO {
        return if num == RBig::ZERO { 0.0 } else { f64::INFINITY };
    }
    to_f64(&(num / den)).sqrt()
}

/// Largest componentwise relative error `|x_i - e_i| / |e_i|`.
pub fn rel_err_componentwise(x: &[f64], exact_x: &[RBig]) -> f64 {
    x.iter()
        .zip(exact_x)
        .map(|(a, e)| {
            let d = exact(*a) - e;
            if *e == RBig::ZERO {
                if d == RBig::ZERO { 0.0 } else { f64::INFINITY }
            } else {
                to_f64(&(d / e)).abs()
            }
        })
        .fold(0.0, f64::max)
}

/// Relative error `|x - e| / |e|` of a binary64 value against a big float.
pub fn rel_err_scalar(x: f64, e: &BigFloat) -> f64 {
    let p = e.precision().max(64);
    let xe = BigFloat::try_from(x).expect("finite").with_precision(p).value();
    let diff = &xe - e;
    (diff / e).to_f64().value().abs()
}

/// `||X - X_e||_2 / ||X_e||_2` for a binary64 matrix against an exact one.
pub fn rel_err_spectral(x: &DenseMatrix, exact_x: &RationalMatrix) -> Result<f64> {
    let diff = RationalMatrix::from_fn(exact_x.rows, exact_x.cols, |i, j| {
        exact(x[(i, j)]) - &exact_x[(i, j)]
    });
    let num = spectral_norm(&diff)?;
    let den = spectral_norm(exact_x)?;
    Ok(num / den)
}

/// Largest singular value, rounded to binary64.
pub fn spectral_norm(a: &RationalMatrix) -> Result<f64> {
    let s = hp_spectrum(a, crate::spectral::SpectrumKind::Singular, 128)?;
    Ok(s.first().map_or(0.0, |v| v.to_f64().value()))
}
