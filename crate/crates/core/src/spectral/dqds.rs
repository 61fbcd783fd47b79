//! Differential quotient-difference algorithm with shifts, run on the
//! squared entries of a positive upper bidiagonal matrix.
//!
//! A shifted transform is accepted only if it keeps every quantity
//! positive; the result is then accurate to high relative precision
//! whatever the conditioning.

use crate::error::{Error, Result};

const TOL: f64 = 100.0 * f64::EPSILON;
const SHIFT_FACTORS: [f64; 5] = [1.0, 0.9, 0.5, 0.25, 0.0];

/// Singular values (unsorted), or `None` when the input has a zero on the
/// diagonal or a dynamic range too wide to square safely.
pub(crate) fn dqds_sv(q: &[f64], e: &[f64]) -> Result<Option<Vec<f64>>> {
    if q.is_empty() {
        return Ok(Some(Vec::new()));
    }
    if q.iter().any(|&v| v == 0.0) {
        return Ok(None);
    }
    let all = q.iter().chain(e.iter()).copied();
    let big = all.clone().fold(0.0f64, f64::max);
    let small = all.filter(|&v| v > 0.0).fold(f64::INFINITY, f64::min);
    if small / big < 2f64.powi(-480) {
        return Ok(None);
    }
    // Scale by a power of two so that the largest entry lies in [0.5, 1).
    let exp = big.log2().floor() as i32 + 1;
    let scale = 2f64.powi(-exp);
    let qq: Vec<f64> = q.iter().map(|v| (v * scale) * (v * scale)).collect();
    let ee: Vec<f64> = e.iter().map(|v| (v * scale) * (v * scale)).collect();

    let mut out = Vec::with_capacity(q.len());
    let mut start = 0;
    for end in 1..=q.len() {
        if end == q.len() || ee[end - 1] == 0.0 {
            match dqds_block(qq[start..end].to_vec(), ee[start..end - 1].to_vec())? {
                Some(lams) => out.extend(lams.into_iter().map(|l| l.sqrt() / scale)),
                None => return Ok(None),
            }
            start = end;
        }
    }
    Ok(Some(out))
}

fn dqds_block(mut q: Vec<f64>, mut e: Vec<f64>) -> Result<Option<Vec<f64>>> {
    let size = q.len();
    let tol2 = TOL * TOL;
    let budget = 30 * size * size;
    let mut out = Vec::with_capacity(size);
    let mut sigma = 0.0;
    let mut dmin = 0.0;
    let mut n = size;
    let mut steps = 0;
    let mut qh = vec![0.0; size];
    let mut eh = vec![0.0; size.saturating_sub(1)];
    loop {
        while n > 1 {
            let en = e[n - 2];
            if en <= tol2 * (sigma + q[n - 1]) {
                out.push(sigma + q[n - 1]);
                n -= 1;
            } else {
                break;
            }
        }
        if n == 1 {
            out.push(sigma + q[0]);
            return Ok(Some(out));
        }
        let mut accepted = false;
        for f in SHIFT_FACTORS {
            let tau = dmin * f;
            if let Some(dm) = transform(&q[..n], &e[..n - 1], tau, &mut qh, &mut eh) {
                q[..n].copy_from_slice(&qh[..n]);
                e[..n - 1].copy_from_slice(&eh[..n - 1]);
                sigma += tau;
                dmin = dm;
                accepted = true;
                break;
            }
        }
        if !accepted {
            return Ok(None);
        }
        steps += n;
        if steps > budget {
            return Err(Error::NoConvergence(steps));
        }
    }
}

/// One shifted dqds transform; returns the minimum of the `d` values.
fn transform(q: &[f64], e: &[f64], tau: f64, qh: &mut [f64], eh: &mut [f64]) -> Option<f64> {
    let n = q.len();
    let mut d = q[0] - tau;
    if d < 0.0 {
        return None;
    }
    let mut dmin = d;
    for k in 0..n - 1 {
        qh[k] = d + e[k];
        if !(qh[k] > 0.0) {
            return None;
        }
        let t = q[k + 1] / qh[k];
        eh[k] = e[k] * t;
        d = d * t - tau;
        if !(d >= 0.0) {
            return None;
        }
        dmin = dmin.min(d);
    }
    qh[n - 1] = d;
    Some(dmin)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golden_ratio() {
        let mut s = dqds_sv(&[1.0, 1.0], &[1.0]).unwrap().unwrap();
        s.sort_by(|a, b| b.total_cmp(a));
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        assert!((s[0] - phi).abs() <= 2.0 * f64::EPSILON * phi);
        assert!((s[1] - (phi - 1.0)).abs() <= 2.0 * f64::EPSILON * (phi - 1.0));
    }

    #[test]
    fn declines_zero_pivots_and_extreme_range() {
        assert_eq!(dqds_sv(&[0.0, 1.0], &[1.0]).unwrap(), None);
        assert_eq!(dqds_sv(&[1e-160, 1e160], &[0.0]).unwrap(), None);
    }

    #[test]
    fn splits_at_zero_coupling() {
        let mut s = dqds_sv(&[3.0, 4.0], &[0.0]).unwrap().unwrap();
        s.sort_by(|a, b| b.total_cmp(a));
        assert_eq!(s, vec![4.0, 3.0]);
    }
}
