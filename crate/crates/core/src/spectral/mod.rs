//! Eigenvalues and singular values to high relative accuracy.

mod dqds;
pub(crate) mod reduce;
mod zero_shift;

use crate::bd::BdMatrix;
use crate::error::{Error, Result};

use reduce::Word;

/// Upper bidiagonal matrix with diagonal `q` and superdiagonal `e`.
#[derive(Clone, Debug, PartialEq)]
pub struct Bidiagonal {
    q: Vec<f64>,
    e: Vec<f64>,
}

impl Bidiagonal {
    pub fn new(q: Vec<f64>, e: Vec<f64>) -> Result<Self> {
        if e.len() + 1 != q.len().max(1) {
            return Err(Error::dims(q.len().saturating_sub(1), e.len()));
        }
        if let Some(v) = q.iter().chain(&e).find(|v| !(v.is_finite() && **v >= 0.0)) {
            return Err(Error::InvalidBd(format!(
                "bidiagonal entries must be finite and nonnegative, got {v}"
            )));
        }
        Ok(Bidiagonal { q, e })
    }

    pub fn q(&self) -> &[f64] {
        &self.q
    }

    pub fn e(&self) -> &[f64] {
        &self.e
    }

    pub fn len(&self) -> usize {
        self.q.len()
    }

    pub fn is_empty(&self) -> bool {
        self.q.is_empty()
    }
}

/// `L D L^T` with `L` unit lower bidiagonal (subdiagonal `l`).
#[derive(Clone, Debug, PartialEq)]
pub struct TridiagLdlt {
    d: Vec<f64>,
    l: Vec<f64>,
}

impl TridiagLdlt {
    pub fn new(d: Vec<f64>, l: Vec<f64>) -> Result<Self> {
        if l.len() + 1 != d.len().max(1) {
            return Err(Error::dims(d.len().saturating_sub(1), l.len()));
        }
        if d.iter().any(|v| !(v.is_finite() && *v > 0.0))
            || l.iter().any(|v| !(v.is_finite() && *v >= 0.0))
        {
            return Err(Error::InvalidBd(
                "need d > 0 and l >= 0, all finite".to_string(),
            ));
        }
        Ok(TridiagLdlt { d, l })
    }

    pub fn d(&self) -> &[f64] {
        &self.d
    }

    pub fn l(&self) -> &[f64] {
        &self.l
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpectrumKind {
    Singular,
    Eigen,
}

/// Values sorted in descending order.
#[derive(Clone, Debug, PartialEq)]
pub struct Spectrum {
    pub values: Vec<f64>,
    pub kind: SpectrumKind,
}

impl Spectrum {
    pub(crate) fn new(mut values: Vec<f64>, kind: SpectrumKind) -> Self {
        values.sort_by(|a, b| b.total_cmp(a));
        Spectrum { values, kind }
    }

    pub fn max(&self) -> Option<f64> {
        self.values.first().copied()
    }

    pub fn min(&self) -> Option<f64> {
        self.values.last().copied()
    }
}

/// Which bidiagonal singular value kernel to run.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum SvKernel {
    /// dqds with shifts, handing over to zero-shift QR on inputs it declines.
    #[default]
    Dqds,
    ZeroShiftQr,
}

/// Singular values of an upper bidiagonal matrix.
pub fn bidiagonal_sv(m: &Bidiagonal) -> Result<Spectrum> {
    bidiagonal_sv_with(m, SvKernel::Dqds)
}

pub fn bidiagonal_sv_with(m: &Bidiagonal, kernel: SvKernel) -> Result<Spectrum> {
    if m.is_empty() {
        return Ok(Spectrum::new(Vec::new(), SpectrumKind::Singular));
    }
    let values = match kernel {
        SvKernel::Dqds => match dqds::dqds_sv(&m.q, &m.e)? {
            Some(v) => v,
            None => zero_shift::zero_shift_sv(&m.q, &m.e)?,
        },
        SvKernel::ZeroShiftQr => zero_shift::zero_shift_sv(&m.q, &m.e)?,
    };
    Ok(Spectrum::new(values, SpectrumKind::Singular))
}

/// An upper bidiagonal matrix with the same singular values as the matrix
/// represented by `b`, obtained by orthogonal transformations of the grid.
pub fn reduce_to_upper_bidiagonal(b: &BdMatrix) -> Result<Bidiagonal> {
    let mut w = Word::new(b)?;
    w.eliminate_lower(None)?;
    w.eliminate_upper()?;
    let (q, e) = w.bidiagonal();
    Bidiagonal::new(q, e)
}

pub fn tn_singular_values(b: &BdMatrix) -> Result<Spectrum> {
    bidiagonal_sv(&reduce_to_upper_bidiagonal(b)?)
}

/// Eigenvalues of a symmetric totally nonnegative matrix, i.e. a symmetric
/// grid; such a matrix is positive definite.
pub fn tn_eigenvalues_sym(b: &BdMatrix) -> Result<Spectrum> {
    if let Some((i, j)) = b.first_asymmetry() {
        return Err(Error::NotSymmetric(i + 1, j + 1));
    }
    let mut s = tn_singular_values(b)?;
    s.kind = SpectrumKind::Eigen;
    Ok(s)
}

/// Eigenvalues of `L D L^T` as squared singular values of `(L D^{1/2})^T`.
pub fn tridiag_eigenvalues_ldlt(t: &TridiagLdlt) -> Result<Spectrum> {
    let q: Vec<f64> = t.d.iter().map(|d| d.sqrt()).collect();
    let e = t.l.iter().zip(&q).map(|(l, s)| l * s).collect();
    let sv = bidiagonal_sv(&Bidiagonal::new(q, e)?)?;
    Ok(Spectrum::new(
        sv.values.iter().map(|s| s * s).collect(),
        SpectrumKind::Eigen,
    ))
}

/// Spectral condition number `sigma_max / sigma_min`.
pub fn cond2(b: &BdMatrix) -> Result<f64> {
    let s = tn_singular_values(b)?;
    match (s.max(), s.min()) {
        (Some(hi), Some(lo)) => Ok(hi / lo),
        _ => Ok(1.0),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bd::{tn_determinant, tn_expand};
    use crate::generators::{hilbert_bd, pascal_bd, random_tn_bd};

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn bidiagonal_fixtures() {
        for kernel in [SvKernel::Dqds, SvKernel::ZeroShiftQr] {
            let diag = Bidiagonal::new(vec![3.0, 4.0], vec![0.0]).unwrap();
            assert_eq!(bidiagonal_sv_with(&diag, kernel).unwrap().values, vec![4.0, 3.0]);
            let g = Bidiagonal::new(vec![1.0, 1.0], vec![1.0]).unwrap();
            let s = bidiagonal_sv_with(&g, kernel).unwrap().values;
            let r5 = 5f64.sqrt();
            assert!(rel(s[0], (1.0 + r5) / 2.0) < 4e-16);
            assert!(rel(s[1], (r5 - 1.0) / 2.0) < 4e-16);
        }
        assert!(Bidiagonal::new(vec![1.0], vec![1.0]).is_err());
        assert!(Bidiagonal::new(vec![1.0, -1.0], vec![1.0]).is_err());
    }

    #[test]
    fn tiny_entries_keep_relative_accuracy() {
        // sigma_1 sigma_2 = 1e-150 and sigma_1^2 + sigma_2^2 = 1 + 2e-300.
        let m = Bidiagonal::new(vec![1.0, 1e-150], vec![1e-150]).unwrap();
        let s = bidiagonal_sv(&m).unwrap().values;
        assert!(rel(s[0], 1.0) < 1e-15);
        assert!(rel(s[1], 1e-150) < 1e-15);
    }

    #[test]
    fn kernels_agree() {
        for seed in 0..20 {
            let b = random_tn_bd(8, seed, 1e-3, 10.0).unwrap();
            let m = reduce_to_upper_bidiagonal(&b).unwrap();
            let a = bidiagonal_sv_with(&m, SvKernel::Dqds).unwrap();
            let z = bidiagonal_sv_with(&m, SvKernel::ZeroShiftQr).unwrap();
            for (x, y) in a.values.iter().zip(&z.values) {
                assert!(rel(*x, *y) < 1e-13, "{a:?} {z:?}");
            }
        }
    }

    #[test]
    fn small_closed_forms() {
        let r5 = 5f64.sqrt();
        let s = tn_singular_values(&pascal_bd(2)).unwrap().values;
        assert!(rel(s[0], (3.0 + r5) / 2.0) < 1e-15 && rel(s[1], (3.0 - r5) / 2.0) < 1e-15);
        let r13 = 13f64.sqrt();
        let l = tn_eigenvalues_sym(&hilbert_bd(2)).unwrap();
        assert_eq!(l.kind, SpectrumKind::Eigen);
        assert!(rel(l.values[0], (4.0 + r13) / 6.0) < 1e-15);
        assert!(rel(l.values[1], (4.0 - r13) / 6.0) < 1e-15);
        let one = tn_singular_values(&BdMatrix::identity(4)).unwrap();
        assert_eq!(one.values, vec![1.0; 4]);
        assert_eq!(cond2(&BdMatrix::identity(3)).unwrap(), 1.0);
        let diag = BdMatrix::from_rows(&[vec![2.0, 0.0], vec![0.0, 5.0]]).unwrap();
        let m = reduce_to_upper_bidiagonal(&diag).unwrap();
        assert_eq!((m.q(), m.e()), (&[2.0, 5.0][..], &[0.0][..]));
    }

    #[test]
    fn rejects_asymmetric_grid() {
        let b = BdMatrix::from_rows(&[vec![1.0, 2.0], vec![1.0, 1.0]]).unwrap();
        assert_eq!(tn_eigenvalues_sym(&b), Err(Error::NotSymmetric(2, 1)));
    }

    #[test]
    fn ldlt() {
        let t = TridiagLdlt::new(vec![3.0, 1.0, 2.0], vec![0.0, 0.0]).unwrap();
        let l = tridiag_eigenvalues_ldlt(&t).unwrap().values;
        for (x, y) in l.iter().zip([3.0, 2.0, 1.0]) {
            assert!(rel(*x, y) <= 2.0 * f64::EPSILON);
        }
        let t = TridiagLdlt::new(vec![1.0, 1.0], vec![1.0]).unwrap();
        let l = tridiag_eigenvalues_ldlt(&t).unwrap().values;
        let r5 = 5f64.sqrt();
        assert!(rel(l[0], (3.0 + r5) / 2.0) < 1e-15 && rel(l[1], (3.0 - r5) / 2.0) < 1e-15);
    }

    #[test]
    fn trace_and_determinant() {
        for n in 2..=10 {
            let b = hilbert_bd(n);
            let a = tn_expand(&b).unwrap();
            let l = tn_eigenvalues_sym(&b).unwrap().values;
            let trace: f64 = (0..n).map(|i| a[(i, i)]).sum();
            assert!(rel(l.iter().sum(), trace) < 1e-12);
            let det: f64 = l.iter().product();
            assert!(rel(det, tn_determinant(&b).unwrap()) < 1e-12, "n = {n}");
        }
    }

    #[test]
    fn scale_equivariance() {
        let b = reduce_to_upper_bidiagonal(&random_tn_bd(7, 3, 0.1, 10.0).unwrap()).unwrap();
        let base = bidiagonal_sv(&b).unwrap().values;
        for s in [0.125, 3.0, 1e-100, 7e200] {
            let m = Bidiagonal::new(
                b.q().iter().map(|v| v * s).collect(),
                b.e().iter().map(|v| v * s).collect(),
            )
            .unwrap();
            for (x, y) in bidiagonal_sv(&m).unwrap().values.iter().zip(&base) {
                assert!(rel(*x, y * s) <= 4.0 * f64::EPSILON, "s = {s}");
            }
        }
    }
}
