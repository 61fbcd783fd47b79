use dashu_float::round::mode::HalfEven;
use dashu_float::FBig;
use dashu_int::IBig;

use super::RationalMatrix;
use crate::error::{Error, Result};
use crate::matrix::DenseMatrix;
use crate::spectral::SpectrumKind;

/// Binary floating point with a per-value precision, rounding to nearest.
pub type BigFloat = FBig<HalfEven, 2>;

const DEFAULT_BITS: usize = 256;
const MIN_BITS: usize = 128;
const MAX_SWEEPS: usize = 100;
/// Two runs must agree to about 30 decimal digits.
const AGREE_BITS: isize = 100;

/// Oracle precision: `TNLA_ORACLE_BITS` if set, otherwise 256.
pub fn oracle_bits() -> usize {
    std::env::var("TNLA_ORACLE_BITS")
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .unwrap_or(DEFAULT_BITS)
        .max(MIN_BITS)
}

/// Eigenvalues (symmetric input) or singular values, in descending order,
/// computed by cyclic Jacobi at `bits` and confirmed at twice that
/// precision. If the two runs disagree the precision is doubled once more.
pub fn hp_spectrum(a: &RationalMatrix, kind: SpectrumKind, bits: usize) -> Result<Vec<BigFloat>> {
    let sym = match kind {
        SpectrumKind::Eigen => {
            a.require_square()?;
            if let Some((i, j)) = asymmetry(a) {
                return Err(Error::NotSymmetric(i + 1, j + 1));
            }
            a.clone()
        }
        SpectrumKind::Singular if a.rows() >= a.cols() => a.transpose().matmul(a)?,
        SpectrumKind::Singular => a.matmul(&a.transpose())?,
    };
    let mut p = bits.max(MIN_BITS);
    let mut prev = jacobi(&sym, p)?;
    for _ in 0..2 {
        let next = jacobi(&sym, 2 * p)?;
        if agree(&prev, &next, p) {
            return Ok(match kind {
                SpectrumKind::Eigen => next,
                SpectrumKind::Singular => next
                    .into_iter()
                    .map(|l| if l < BigFloat::ZERO { zero(2 * p) } else { l.sqrt() })
                    .collect(),
            });
        }
        prev = next;
        p *= 2;
    }
    Err(Error::PrecisionNotReached(p))
}

/// `hp_spectrum` of the exact value of a binary64 matrix.
pub fn hp_spectrum_dense(a: &DenseMatrix, kind: SpectrumKind, bits: usize) -> Result<Vec<BigFloat>> {
    hp_spectrum(&RationalMatrix::from_dense(a), kind, bits)
}

fn asymmetry(a: &RationalMatrix) -> Option<(usize, usize)> {
    let n = a.rows();
    (0..n)
        .flat_map(|i| (0..i).map(move |j| (i, j)))
        .find(|&(i, j)| a[(i, j)] != a[(j, i)])
}

fn zero(p: usize) -> BigFloat {
    BigFloat::ZERO.with_precision(p).value()
}

fn pow2(e: isize, p: usize) -> BigFloat {
    BigFloat::from_parts(IBig::ONE, e).with_precision(p).value()
}

fn abs(x: BigFloat) -> BigFloat {
    if x < BigFloat::ZERO {
        -x
    } else {
        x
    }
}

fn agree(lo: &[BigFloat], hi: &[BigFloat], p: usize) -> bool {
    let scale = hi.first().cloned().map(abs).unwrap_or_else(|| zero(p));
    let rel = pow2(-AGREE_BITS, 2 * p);
    let floor = &scale * &pow2(-(p as isize), 2 * p);
    lo.iter().zip(hi).all(|(x, y)| {
        let d = abs(x.clone().with_precision(2 * p).value() - y);
        d <= &rel * &abs(y.clone()) || d <= floor
    })
}

/// Cyclic Jacobi with the relative off-diagonal test; eigenvalues sorted
/// descending.
fn jacobi(m: &RationalMatrix, p: usize) -> Result<Vec<BigFloat>> {
    let n = m.rows();
    let mut a: Vec<BigFloat> = (0..n * n)
        .map(|k| m[(k / n, k % n)].to_float::<HalfEven, 2>(p).value())
        .collect();
    let one = BigFloat::ONE.with_precision(p).value();
    let two = &one + &one;
    let eps2 = pow2(-2 * p as isize, p);
    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for i in 0..n {
            for j in i + 1..n {
                let apq = a[i * n + j].clone();
                if apq == BigFloat::ZERO {
                    continue;
                }
                let app = a[i * n + i].clone();
                let aqq = a[j * n + j].clone();
                if &apq * &apq <= &eps2 * &abs(&app * &aqq) {
                    a[i * n + j] = zero(p);
                    a[j * n + i] = zero(p);
                    continue;
                }
                rotated = true;
                let theta = (&aqq - &app) / (&two * &apq);
                let t = if theta == BigFloat::ZERO {
                    one.clone()
                } else {
                    let mag = &one / (abs(theta.clone()) + (&theta * &theta + &one).sqrt());
                    if theta < BigFloat::ZERO {
                        -mag
                    } else {
                        mag
                    }
                };
                let c = &one / (&t * &t + &one).sqrt();
                let s = &t * &c;
                let tau = &s / (&one + &c);
                a[i * n + i] = &app - &t * &apq;
                a[j * n + j] = &aqq + &t * &apq;
                a[i * n + j] = zero(p);
                a[j * n + i] = zero(p);
                for r in 0..n {
                    if r == i || r == j {
                        continue;
                    }
                    let g = a[r * n + i].clone();
                    let h = a[r * n + j].clone();
                    let gi = &g - &s * (&h + &g * &tau);
                    let hj = &h + &s * (&g - &h * &tau);
                    a[r * n + i] = gi.clone();
                    a[i * n + r] = gi;
                    a[r * n + j] = hj.clone();
                    a[j * n + r] = hj;
                }
            }
        }
        if !rotated {
            let mut d: Vec<BigFloat> = (0..n).map(|k| a[k * n + k].clone()).collect();
            d.sort_by(|x, y| y.partial_cmp(x).expect("finite"));
            return Ok(d);
        }
    }
    Err(Error::PrecisionNotReached(p))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{ratio, rel_err_scalar};
    use dashu_ratio::RBig;

    fn f(x: &BigFloat) -> f64 {
        x.to_f64().value()
    }

    #[test]
    fn diagonal_singular_values() {
        let a = RationalMatrix::from_fn(2, 2, |i, j| match (i, j) {
            (0, 0) => RBig::from(3),
            (1, 1) => RBig::from(4),
            _ => RBig::ZERO,
        });
        let s = hp_spectrum(&a, SpectrumKind::Singular, 128).unwrap();
        assert_eq!((f(&s[0]), f(&s[1])), (4.0, 3.0));
    }

    #[test]
    fn golden_eigenvalues_to_thirty_digits() {
        let a = RationalMatrix::pascal(2);
        let l = hp_spectrum(&a, SpectrumKind::Eigen, 256).unwrap();
        // (3 + sqrt 5) / 2 and its reciprocal.
        let p = l[0].precision();
        let five = BigFloat::from(5u8).with_precision(p).value();
        let three = BigFloat::from(3u8).with_precision(p).value();
        let two = BigFloat::from(2u8).with_precision(p).value();
        let hi = (&three + five.sqrt()) / &two;
        let lo = (&three - BigFloat::from(5u8).with_precision(p).value().sqrt()) / &two;
        let tiny = pow2(-100, p);
        assert!(abs(&l[0] - &hi) <= &tiny * &hi);
        assert!(abs(&l[1] - &lo) <= &tiny * &lo);
    }

    #[test]
    fn hilbert_smallest_eigenvalue() {
        // Known value for the 4x4 Hilbert matrix.
        let l = hp_spectrum(&RationalMatrix::hilbert(4), SpectrumKind::Eigen, 256).unwrap();
        assert!(rel_err_scalar(9.670230402258689e-05, &l[3]) < 1e-15);
        let tr: f64 = l.iter().map(f).sum();
        assert!((tr - (1.0 + 1.0 / 3.0 + 1.0 / 5.0 + 1.0 / 7.0)).abs() < 1e-15);
    }

    #[test]
    fn rejects_asymmetric() {
        let a = RationalMatrix::from_fn(2, 2, |i, j| ratio((i * 2 + j) as i64, 1));
        assert_eq!(
            hp_spectrum(&a, SpectrumKind::Eigen, 128),
            Err(Error::NotSymmetric(2, 1))
        );
    }

    #[test]
    fn env_default() {
        if std::env::var("TNLA_ORACLE_BITS").is_err() {
            assert_eq!(oracle_bits(), 256);
        }
    }
}
