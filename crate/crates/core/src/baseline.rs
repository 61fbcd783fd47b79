//! Conventional dense algorithms that ignore total nonnegativity. They are
//! backward stable, so their accuracy degrades with the condition number.

use crate::error::{Error, Result};
use crate::matrix::DenseMatrix;
use crate::spectral::{bidiagonal_sv, Bidiagonal, Spectrum, SpectrumKind};

/// Gaussian elimination with partial pivoting.
pub fn lu_solve(a: &DenseMatrix, b: &[f64]) -> Result<Vec<f64>> {
    if !a.is_square() {
        return Err(Error::dims(
            "a square matrix",
            format!("{}x{}", a.rows(), a.cols()),
        ));
    }
    let n = a.rows();
    if b.len() != n {
        return Err(Error::dims(n, b.len()));
    }
    let mut m = a.clone();
    let mut x = b.to_vec();
    let tiny = n as f64 * f64::EPSILON * m.max_abs();
    for k in 0..n {
        let piv = (k..n)
            .max_by(|&i, &j| m[(i, k)].abs().total_cmp(&m[(j, k)].abs()))
            .expect("nonempty");
        if m[(piv, k)].abs() <= tiny {
            return Err(Error::SingularToWorkingPrecision(k + 1));
        }
        if piv != k {
            for j in 0..n {
                let t = m[(k, j)];
                m[(k, j)] = m[(piv, j)];
                m[(piv, j)] = t;
            }
            x.swap(k, piv);
        }
        for i in k + 1..n {
            let f = m[(i, k)] / m[(k, k)];
            if f == 0.0 {
                continue;
            }
            for j in k + 1..n {
                let t = m[(k, j)];
                m[(i, j)] -= f * t;
            }
            x[i] -= f * x[k];
        }
    }
    for k in (0..n).rev() {
        let s: f64 = (k + 1..n).map(|j| m[(k, j)] * x[j]).sum();
        x[k] = (x[k] - s) / m[(k, k)];
    }
    Ok(x)
}

/// Reflector `I - 2 v v^T / (v^T v)` mapping `x` onto a multiple of `e_1`.
/// Returns `None` when `x` is already in that form.
fn householder(x: &[f64]) -> Option<(Vec<f64>, f64)> {
    if x.len() < 2 || x[1..].iter().all(|&v| v == 0.0) {
        return None;
    }
    let norm = crate::matrix::norm2(x);
    let alpha = if x[0] >= 0.0 { -norm } else { norm };
    let mut v = x.to_vec();
    v[0] -= alpha;
    let vtv: f64 = v.iter().map(|t| t * t).sum();
    Some((v, 2.0 / vtv))
}

/// `A[r0.., c0..] <- H A[r0.., c0..]` for a reflector acting on rows.
fn reflect_rows(a: &mut DenseMatrix, v: &[f64], beta: f64, r0: usize, c0: usize) {
    for j in c0..a.cols() {
        let s: f64 = v.iter().enumerate().map(|(k, vk)| vk * a[(r0 + k, j)]).sum();
        let s = beta * s;
        for (k, vk) in v.iter().enumerate() {
            a[(r0 + k, j)] -= s * vk;
        }
    }
}

/// `A[r0.., c0..] <- A[r0.., c0..] H` for a reflector acting on columns.
fn reflect_cols(a: &mut DenseMatrix, v: &[f64], beta: f64, r0: usize, c0: usize) {
    for i in r0..a.rows() {
        let s: f64 = v.iter().enumerate().map(|(k, vk)| vk * a[(i, c0 + k)]).sum();
        let s = beta * s;
        for (k, vk) in v.iter().enumerate() {
            a[(i, c0 + k)] -= s * vk;
        }
    }
}

/// Eigenvalues of a symmetric matrix: Householder tridiagonalization, then
/// implicit QL with Wilkinson shifts.
pub fn dense_eig_sym(a: &DenseMatrix) -> Result<Spectrum> {
    if !a.is_symmetric() {
        let (i, j) = (0..a.rows())
            .flat_map(|i| (0..i).map(move |j| (i, j)))
            .find(|&(i, j)| !a.is_square() || a[(i, j)] != a[(j, i)])
            .unwrap_or((0, 0));
        return Err(Error::NotSymmetric(i + 1, j + 1));
    }
    let n = a.rows();
    let mut m = a.clone();
    for k in 0..n.saturating_sub(2) {
        let x: Vec<f64> = (k + 1..n).map(|i| m[(i, k)]).collect();
        if let Some((v, beta)) = householder(&x) {
            reflect_rows(&mut m, &v, beta, k + 1, k);
            reflect_cols(&mut m, &v, beta, k, k + 1);
        }
    }
    let mut d: Vec<f64> = (0..n).map(|i| m[(i, i)]).collect();
    let mut e: Vec<f64> = (0..n).map(|i| if i + 1 < n { m[(i + 1, i)] } else { 0.0 }).collect();
    tql(&mut d, &mut e)?;
    Ok(Spectrum::new(d, SpectrumKind::Eigen))
}

/// Implicit QL on a symmetric tridiagonal matrix; `e[i]` couples `i` and
/// `i + 1`, and `e[n - 1]` is workspace.
fn tql(d: &mut [f64], e: &mut [f64]) -> Result<()> {
    let n = d.len();
    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > 30 {
                return Err(Error::NoConvergence(iter));
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut underflow = false;
            for i in (l..m).rev() {
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
            }
            if underflow {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    Ok(())
}

/// Singular values: Householder bidiagonalization, then the bidiagonal
/// kernel on the absolute values of the result.
pub fn dense_svd(a: &DenseMatrix) -> Result<Spectrum> {
    let mut m = if a.rows() >= a.cols() {
        a.clone()
    } else {
        a.transpose()
    };
    let (rows, n) = (m.rows(), m.cols());
    for k in 0..n {
        let x: Vec<f64> = (k..rows).map(|i| m[(i, k)]).collect();
        if let Some((v, beta)) = householder(&x) {
            reflect_rows(&mut m, &v, beta, k, k);
        }
        if k + 2 < n {
            let x: Vec<f64> = (k + 1..n).map(|j| m[(k, j)]).collect();
            if let Some((v, beta)) = householder(&x) {
                reflect_cols(&mut m, &v, beta, k, k + 1);
            }
        }
    }
    let q = (0..n).map(|i| m[(i, i)].abs()).collect();
    let e = (1..n).map(|j| m[(j - 1, j)].abs()).collect();
    bidiagonal_sv(&Bidiagonal::new(q, e)?)
}
