//! Closed-form, subtraction-free `BD(A)` for structured totally positive
//! families.
//!
//! Every difference that appears is a difference of two sorted nodes, so all
//! multiplicands are positive and each parameter is accurate to a few ulps.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bd::BdMatrix;
use crate::error::{Error, Result};
use crate::scalar::Field;

/// Strictly increasing finite nodes.
#[derive(Clone, Debug, PartialEq)]
pub struct NodeVector(Vec<f64>);

impl NodeVector {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if let Some(v) = values.iter().find(|v| !v.is_finite()) {
            return Err(Error::NonFinite(format!("node {v}")));
        }
        if let Some(k) = values.windows(2).position(|w| w[0] >= w[1]) {
            return Err(Error::NodesNotSorted(k + 2));
        }
        Ok(NodeVector(values))
    }

    /// `start, start + 1, ..., start + n - 1`.
    pub fn range(start: i64, n: usize) -> Self {
        NodeVector((0..n as i64).map(|k| (start + k) as f64).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }
}

impl std::ops::Deref for NodeVector {
    type Target = [f64];

    fn deref(&self) -> &[f64] {
        &self.0
    }
}

/// `BD(V)` for `V[i][j] = x_i^j`, nodes nonnegative.
pub fn vandermonde_bd(x: &NodeVector) -> Result<BdMatrix> {
    if let Some(&x0) = x.first() {
        if x0 < 0.0 {
            return Err(Error::NegativeNode(x0));
        }
    }
    let n = x.len();
    Ok(BdMatrix::from_raw(n, n, vandermonde_grid(x).concat()))
}

/// Vandermonde grid over any ordered field; `x` must be sorted.
pub fn vandermonde_grid<T: Field>(x: &[T]) -> Vec<Vec<T>> {
    let n = x.len();
    let mut p = vec![vec![T::zero(); n]; n];
    for i in 0..n {
        for j in 0..n {
            p[i][j] = if i < j {
                x[i].clone()
            } else if i == j {
                (0..j).fold(T::one(), |acc, k| acc * (x[j].clone() - x[k].clone()))
            } else {
                (1..=j).fold(T::one(), |acc, k| {
                    acc * (x[i].clone() - x[i - k].clone())
                        / (x[i - 1].clone() - x[i - 1 - k].clone())
                })
            };
        }
    }
    p
}

/// `BD(C)` for the Cauchy matrix `C[i][j] = 1 / (x_i + y_j)`.
pub fn cauchy_bd(x: &NodeVector, y: &NodeVector) -> Result<BdMatrix> {
    if x.len() != y.len() {
        return Err(Error::dims(x.len(), y.len()));
    }
    // Both sorted, so the smallest sum is at (0, 0).
    if let (Some(&x0), Some(&y0)) = (x.first(), y.first()) {
        if x0 + y0 <= 0.0 {
            return Err(Error::SingularPair { i: 1, j: 1 });
        }
    }
    let n = x.len();
    let grid = cauchy_grid(x, y);
    let bd = BdMatrix::from_raw(n, n, grid.concat());
    if bd.as_slice().iter().any(|v| !v.is_finite()) {
        return Err(Error::Overflow("cauchy_bd"));
    }
    Ok(bd)
}

/// Cauchy grid over any ordered field; `x`, `y` sorted with positive sums.
pub fn cauchy_grid<T: Field>(x: &[T], y: &[T]) -> Vec<Vec<T>> {
    let n = x.len();
    let mut p = vec![vec![T::zero(); n]; n];
    for i in 0..n {
        for j in 0..n {
            p[i][j] = if i > j {
                cauchy_multiplier(x, y, i, j)
            } else if i < j {
                cauchy_multiplier(y, x, j, i)
            } else {
                cauchy_pivot(x, y, j)
            };
        }
    }
    p
}

fn cauchy_pivot<T: Field>(x: &[T], y: &[T], j: usize) -> T {
    let mut num = T::one();
    let mut den = x[j].clone() + y[j].clone();
    for k in 0..j {
        num = num * (x[j].clone() - x[k].clone()) * (y[j].clone() - y[k].clone());
        den = den * (x[j].clone() + y[k].clone()) * (x[k].clone() + y[j].clone());
    }
    num / den
}

fn cauchy_multiplier<T: Field>(x: &[T], y: &[T], i: usize, j: usize) -> T {
    let sum = |a: &T, b: &T| a.clone() + b.clone();
    let mut m = sum(&x[i - j - 1], &y[j]) / sum(&x[i], &y[j]);
    for k in 1..=j {
        m = m * (x[i].clone() - x[i - k].clone()) / (x[i - 1].clone() - x[i - 1 - k].clone());
    }
    for s in 0..j {
        m = m * sum(&x[i - 1], &y[s]) / sum(&x[i], &y[s]);
    }
    m
}

/// `BD` of the `n x n` Hilbert matrix `1 / (i + j - 1)`.
pub fn hilbert_bd(n: usize) -> BdMatrix {
    // Equal node sets make the grid exactly symmetric.
    let x = NodeVector::new((0..n).map(|i| i as f64 + 0.5).collect()).expect("sorted");
    cauchy_bd(&x, &x).expect("Hilbert nodes are valid")
}

/// `BD` of the symmetric Pascal matrix: all ones.
pub fn pascal_bd(n: usize) -> BdMatrix {
    BdMatrix::from_raw(n, n, vec![1.0; n * n])
}

/// A reproducible random grid: pivots uniform in `[lo, hi]`, multipliers
/// uniform in `[0, hi]`.
pub fn random_tn_bd(n: usize, seed: u64, lo: f64, hi: f64) -> Result<BdMatrix> {
    if !(lo.is_finite() && hi.is_finite() && lo > 0.0 && lo <= hi) {
        return Err(Error::BadRange { lo, hi });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut p = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            p.push(if i == j {
                rng.random_range(lo..=hi)
            } else {
                rng.random_range(0.0..=hi)
            });
        }
    }
    Ok(BdMatrix::from_raw(n, n, p))
}

#[cfg(test)]
mod tests {
    use dashu_ratio::RBig;

    use super::*;
    use crate::bd::{bd_transpose, neville_bd, tn_expand};

    fn rows(b: &BdMatrix) -> Vec<Vec<f64>> {
        b.to_rows()
    }

    #[test]
    fn vandermonde_fixtures() {
        let b = vandermonde_bd(&NodeVector::new(vec![2.0, 3.0, 5.0, 8.0]).unwrap()).unwrap();
        assert_eq!(
            rows(&b),
            vec![
                vec![1.0, 2.0, 2.0, 2.0],
                vec![1.0, 1.0, 3.0, 3.0],
                vec![1.0, 2.0, 6.0, 5.0],
                vec![1.0, 1.5, 2.5, 90.0],
            ]
        );
        let one = vandermonde_bd(&NodeVector::new(vec![7.0]).unwrap()).unwrap();
        assert_eq!(rows(&one), vec![vec![1.0]]);
        let two = vandermonde_bd(&NodeVector::new(vec![0.0, 1.0]).unwrap()).unwrap();
        assert_eq!(rows(&two), vec![vec![1.0, 0.0], vec![1.0, 1.0]]);
    }

    #[test]
    fn vandermonde_expansion_is_exact_for_integers() {
        let x = NodeVector::range(1, 7);
        let a = tn_expand(&vandermonde_bd(&x).unwrap()).unwrap();
        for i in 0..7 {
            for j in 0..7 {
                assert_eq!(a[(i, j)], x[i].powi(j as i32));
            }
        }
    }

    #[test]
    fn node_validation() {
        assert_eq!(NodeVector::new(vec![1.0, 1.0]), Err(Error::NodesNotSorted(2)));
        assert!(matches!(NodeVector::new(vec![f64::NAN]), Err(Error::NonFinite(_))));
        let neg = NodeVector::new(vec![-1.0, 2.0]).unwrap();
        assert_eq!(vandermonde_bd(&neg), Err(Error::NegativeNode(-1.0)));
        assert_eq!(
            cauchy_bd(&neg, &NodeVector::new(vec![0.5, 3.0]).unwrap()),
            Err(Error::SingularPair { i: 1, j: 1 })
        );
    }

    #[test]
    fn hilbert_fixtures() {
        assert_eq!(rows(&hilbert_bd(1)), vec![vec![1.0]]);
        let h2 = hilbert_bd(2);
        assert_eq!(rows(&h2), vec![vec![1.0, 0.5], vec![0.5, 1.0 / 12.0]]);
        let h3 = hilbert_bd(3);
        let want = [
            [1.0, 1.0 / 2.0, 2.0 / 3.0],
            [1.0 / 2.0, 1.0 / 12.0, 1.0 / 3.0],
            [2.0 / 3.0, 1.0 / 3.0, 1.0 / 180.0],
        ];
        for i in 0..3 {
            for j in 0..3 {
                let got = h3.get(i, j);
                assert!((got - want[i][j]).abs() <= 2.0 * f64::EPSILON * want[i][j]);
            }
        }
        for n in 1..12 {
            let h = hilbert_bd(n);
            assert_eq!(bd_transpose(&h), h);
        }
    }

    #[test]
    fn hilbert_expansion_is_accurate() {
        let a = tn_expand(&hilbert_bd(7)).unwrap();
        for i in 0..7 {
            for j in 0..7 {
                let want = 1.0 / (i + j + 1) as f64;
                assert!((a[(i, j)] - want).abs() <= 1e-14 * want);
            }
        }
    }

    fn rat(v: i64, d: u64) -> RBig {
        RBig::from_parts(v.into(), d.into())
    }

    #[test]
    fn cauchy_grid_matches_rational_neville() {
        use crate::bd::neville::neville_grid;
        let mut seed = 12345u64;
        let mut next = || {
            seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (seed >> 33) % 7 + 1
        };
        for n in 1..=8 {
            let mut x = Vec::new();
            let mut y = Vec::new();
            let (mut ax, mut ay) = (rat(-1, 3), rat(2, 5));
            for _ in 0..n {
                ax = ax + rat(next() as i64, next());
                ay = ay + rat(next() as i64, next());
                x.push(ax.clone());
                y.push(ay.clone());
            }
            let c: Vec<Vec<RBig>> = x
                .iter()
                .map(|xi| y.iter().map(|yj| RBig::ONE / (xi.clone() + yj.clone())).collect())
                .collect();
            assert_eq!(cauchy_grid(&x, &y), neville_grid(&c).unwrap(), "n = {n}");
        }
    }

    #[test]
    fn vandermonde_grid_matches_rational_neville() {
        use crate::bd::neville::neville_grid;
        let x: Vec<RBig> = [rat(0, 1), rat(1, 3), rat(1, 2), rat(2, 1), rat(7, 2), rat(5, 1)].to_vec();
        let v: Vec<Vec<RBig>> = x
            .iter()
            .map(|xi| {
                (0..x.len())
                    .scan(RBig::ONE, |acc, _| {
                        let cur = acc.clone();
                        *acc = acc.clone() * xi.clone();
                        Some(cur)
                    })
                    .collect()
            })
            .collect();
        assert_eq!(vandermonde_grid(&x), neville_grid(&v).unwrap());
    }

    #[test]
    fn pascal() {
        assert_eq!(rows(&pascal_bd(3)), vec![vec![1.0; 3]; 3]);
        assert_eq!(
            tn_expand(&pascal_bd(2)).unwrap().to_rows(),
            vec![vec![1.0, 1.0], vec![1.0, 2.0]]
        );
        let a = tn_expand(&pascal_bd(25)).unwrap();
        let mut binom = vec![vec![0.0f64; 49]; 49];
        for r in 0..49 {
            binom[r][0] = 1.0;
            for k in 1..=r {
                binom[r][k] = binom[r - 1][k - 1] + binom[r - 1][k];
            }
        }
        for i in 0..25 {
            for j in 0..25 {
                assert_eq!(a[(i, j)], binom[i + j][i]);
            }
        }
    }

    #[test]
    fn random_grids() {
        let a = random_tn_bd(5, 9, 0.5, 2.0).unwrap();
        assert_eq!(a, random_tn_bd(5, 9, 0.5, 2.0).unwrap());
        assert_ne!(a, random_tn_bd(5, 10, 0.5, 2.0).unwrap());
        let unit = random_tn_bd(2, 3, 1.0, 1.0).unwrap();
        assert_eq!(unit.diagonal(), vec![1.0, 1.0]);
        assert!(unit.as_slice().iter().all(|v| (0.0..=1.0).contains(v)));
        assert!(matches!(random_tn_bd(2, 0, 0.0, 1.0), Err(Error::BadRange { .. })));
        assert!(matches!(random_tn_bd(2, 0, 2.0, 1.0), Err(Error::BadRange { .. })));
        let b = random_tn_bd(6, 4, 0.5, 2.0).unwrap();
        let back = neville_bd(&tn_expand(&b).unwrap()).unwrap();
        for (u, v) in back.as_slice().iter().zip(b.as_slice()) {
            assert!((u - v).abs() <= 1e-8 * v.abs().max(1e-300));
        }
    }
}
