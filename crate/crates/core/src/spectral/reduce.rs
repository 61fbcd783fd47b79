//! Orthogonal reduction of a bidiagonal decomposition.
//!
//! The grid is read as a word in elementary letters
//!
//! ```text
//! A = [L-letters] * D * [U-letters]
//! ```
//!
//! where `E_i(l) = I + l e_i e_{i-1}^T` and `U_i(u) = I + u e_{i-1} e_i^T`.
//! The lower factor `L[k]` is `E_k ... E_{n-1}` (ascending) and the upper
//! factor `U[k]` is `U_{n-1} ... U_k` (descending). A Givens rotation turns a
//! leading `E_i` into `U_i` and a pending diagonal, both of which are then
//! pushed through the word with the rules
//!
//! ```text
//! U_i(u) E_i(v) = E_i(v / (1 + uv)) diag(1 + uv, 1 / (1 + uv)) U_i(u / (1 + uv))
//! U_i(a) U_{i+1}(b) U_i(c) = U_{i+1}(bc / (a + c)) U_i(a + c) U_{i+1}(ab / (a + c))
//! ```
//!
//! together with rescaling by diagonals and commutation of letters acting on
//! disjoint index pairs. None of these rules subtracts.

use std::ops::{Index, IndexMut};

use crate::bd::BdMatrix;
use crate::error::{Error, Result};
use crate::matrix::DenseMatrix;

/// A square grid being rewritten in place; its diagonal holds `D`.
pub(crate) struct Word {
    n: usize,
    g: Vec<f64>,
}

impl Index<(usize, usize)> for Word {
    type Output = f64;

    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.g[i * self.n + j]
    }
}

impl IndexMut<(usize, usize)> for Word {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        &mut self.g[i * self.n + j]
    }
}

impl Word {
    pub(crate) fn new(b: &BdMatrix) -> Result<Self> {
        let n = b.require_square()?;
        Ok(Word {
            n,
            g: b.as_slice().to_vec(),
        })
    }

    pub(crate) fn into_bd(self) -> Result<BdMatrix> {
        self.check()?;
        Ok(BdMatrix::from_raw(self.n, self.n, self.g))
    }

    fn check(&self) -> Result<()> {
        if let Some(k) = self.g.iter().position(|v| !v.is_finite()) {
            return Err(Error::Overflow(if k % (self.n + 1) == 0 {
                "bidiagonal reduction (pivot)"
            } else {
                "bidiagonal reduction"
            }));
        }
        if let Some(k) = self.g.iter().position(|&v| v < 0.0) {
            return Err(Error::ReductionFailure(format!(
                "entry ({}, {}) became negative",
                k / self.n + 1,
                k % self.n + 1
            )));
        }
        Ok(())
    }

    /// Multiplies `U_t(v)` onto the upper word from the left and restores the
    /// standard form.
    fn absorb_upper(&mut self, mut t: usize, mut v: f64) {
        let n = self.n;
        let mut k = 1;
        while v > 0.0 {
            if t == n - 1 {
                self[(n - 1 - k, n - 1)] += v;
                return;
            }
            let a = self[(t + 1 - k, t + 1)];
            let c = self[(t - k, t)];
            let s = v + c;
            self[(t + 1 - k, t + 1)] = a * (c / s);
            self[(t - k, t)] = s;
            v *= a / s;
            t += 1;
            k += 1;
        }
    }

    /// Applies rotations from the left until the lower word is empty,
    /// leaving `A = Q * D * [U-letters]`. When `q` is given it is multiplied
    /// on the right by each rotation's transpose.
    pub(crate) fn eliminate_lower(&mut self, mut q: Option<&mut DenseMatrix>) -> Result<()> {
        let n = self.n;
        for k in (1..n).rev() {
            for i in k..n {
                let l = self[(i, i - k)];
                if l == 0.0 {
                    continue;
                }
                self[(i, i - k)] = 0.0;
                let r = l.hypot(1.0);
                if let Some(q) = q.as_deref_mut() {
                    rotate_columns(q, i - 1, i, 1.0 / r, l / r);
                }
                // U_i(u) travels right; diag(sa, sb) at (i-1, i) rides along.
                let (mut sa, mut sb) = (r, 1.0 / r);
                let mut u = l;
                if i + 1 < n {
                    self[(i + 1, i + 1 - k)] /= sb;
                }
                for kk in (1..k).rev() {
                    if i > kk {
                        self[(i - 1, i - 1 - kk)] *= sa;
                    }
                    let v = self[(i, i - kk)] * (sb / sa);
                    let t = 1.0 + u * v;
                    self[(i, i - kk)] = v / t;
                    u *= t;
                    sa *= t;
                    sb /= t;
                    if i + 1 < n {
                        self[(i + 1, i + 1 - kk)] /= sb;
                    }
                }
                self[(i - 1, i - 1)] *= sa;
                self[(i, i)] *= sb;
                let ratio = self[(i, i)] / self[(i - 1, i - 1)];
                self.absorb_upper(i, u * ratio);
            }
        }
        self.check()
    }

    /// With the lower word empty, applies rotations on both sides until only
    /// `U[1]` remains, in Golub-Kahan order.
    pub(crate) fn eliminate_upper(&mut self) -> Result<()> {
        let n = self.n;
        for i in 0..n.saturating_sub(2) {
            for j in (i + 2..n).rev() {
                let k = j - i;
                let u = self[(i, j)];
                if u == 0.0 {
                    continue;
                }
                self[(i, j)] = 0.0;
                let r = u.hypot(1.0);
                // E_j(v) travels left with diag(sa, sb) at (j-1, j) to its left.
                let (mut sa, mut sb) = (r, 1.0 / r);
                let mut v = u;
                if j + 1 < n {
                    self[(j + 1 - k, j + 1)] /= sb;
                }
                for kk in (1..k).rev() {
                    if j - 1 >= kk {
                        self[(j - 1 - kk, j - 1)] *= sa;
                    }
                    let a = self[(j - kk, j)] * (sb / sa);
                    let t = 1.0 + a * v;
                    self[(j - kk, j)] = a / t;
                    v *= t;
                    sa *= t;
                    sb /= t;
                    if j + 1 < n {
                        self[(j + 1 - kk, j + 1)] /= sb;
                    }
                }
                self[(j - 1, j - 1)] *= sa;
                self[(j, j)] *= sb;
                let ratio = self[(j, j)] / self[(j - 1, j - 1)];
                let l = v * ratio;
                let r2 = l.hypot(1.0);
                self.absorb_upper(j, (l / r2) / r2 * ratio);
                self[(j - 1, j - 1)] *= r2;
                self[(j, j)] /= r2;
            }
        }
        self.check()
    }

    /// Diagonal and superdiagonal of `D * U[1]` once the rest is gone.
    pub(crate) fn bidiagonal(&self) -> (Vec<f64>, Vec<f64>) {
        let n = self.n;
        let q: Vec<f64> = (0..n).map(|j| self[(j, j)]).collect();
        let e = (1..n).map(|j| q[j - 1] * self[(j - 1, j)]).collect();
        (q, e)
    }
}

/// `Q <- Q G^T` for the rotation `G = [[c, s], [-s, c]]` in plane `(a, b)`.
fn rotate_columns(q: &mut DenseMatrix, a: usize, b: usize, c: f64, s: f64) {
    for r in 0..q.rows() {
        let (x, y) = (q[(r, a)], q[(r, b)]);
        q[(r, a)] = c * x + s * y;
        q[(r, b)] = c * y - s * x;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bd::tn_expand;
    use crate::generators::{hilbert_bd, pascal_bd, random_tn_bd};

    fn close(a: &DenseMatrix, b: &DenseMatrix, tol: f64) {
        let scale = b.max_abs();
        for (x, y) in a.as_slice().iter().zip(b.as_slice()) {
            assert!((x - y).abs() <= tol * scale, "{a:?}\n{b:?}");
        }
    }

    #[test]
    fn lower_elimination_is_a_qr_factorization() {
        for b in [pascal_bd(5), hilbert_bd(4), random_tn_bd(6, 1, 0.5, 2.0).unwrap()] {
            let n = b.rows();
            let a = tn_expand(&b).unwrap();
            let mut q = DenseMatrix::identity(n);
            let mut w = Word::new(&b).unwrap();
            w.eliminate_lower(Some(&mut q)).unwrap();
            let r = w.into_bd().unwrap();
            for i in 0..n {
                for j in 0..i {
                    assert_eq!(r.get(i, j), 0.0);
                }
            }
            let rr = tn_expand(&r).unwrap();
            close(&q.matmul(&rr).unwrap(), &a, 1e-13);
            close(&q.transpose().matmul(&q).unwrap(), &DenseMatrix::identity(n), 1e-14);
        }
    }

    #[test]
    fn absorb_matches_explicit_product() {
        let b = random_tn_bd(5, 7, 0.5, 2.0).unwrap();
        let mut upper = b.as_slice().to_vec();
        for i in 0..5 {
            for j in 0..i {
                upper[i * 5 + j] = 0.0;
            }
        }
        let u = BdMatrix::from_raw(5, 5, upper);
        for t in 1..5 {
            let mut w = Word::new(&u).unwrap();
            // Put U_t(0.7) right of D: D U_t(v) = U_t(v d_{t-1} / d_t) D.
            w.absorb_upper(t, 0.7);
            let got = tn_expand(&w.into_bd().unwrap()).unwrap();
            let mut letter = DenseMatrix::identity(5);
            letter[(t - 1, t)] = 0.7;
            let d = DenseMatrix::from_fn(5, 5, |i, j| if i == j { u.get(i, i) } else { 0.0 });
            let dinv = DenseMatrix::from_fn(5, 5, |i, j| if i == j { 1.0 / u.get(i, i) } else { 0.0 });
            let want = d
                .matmul(&letter)
                .unwrap()
                .matmul(&dinv)
                .unwrap()
                .matmul(&tn_expand(&u).unwrap())
                .unwrap();
            close(&got, &want, 1e-14);
        }
    }
}
