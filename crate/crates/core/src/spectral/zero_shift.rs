//! Implicit QR on an upper bidiagonal matrix with the relative convergence
//! test of Demmel and Kahan. The zero-shift sweep is used whenever a shift
//! could spoil relative accuracy of the small singular values; otherwise
//! the standard shifted sweep speeds up clusters, where zero shift alone
//! converges only linearly.

use crate::error::{Error, Result};

const TOL: f64 = 90.0 * f64::EPSILON;

/// Singular values (unsorted) of the bidiagonal with diagonal `d` and
/// superdiagonal `e`.
pub(crate) fn zero_shift_sv(d: &[f64], e: &[f64]) -> Result<Vec<f64>> {
    let n = d.len();
    let mut d = d.to_vec();
    let mut e = e.to_vec();
    let budget = 30 * n * n;
    let mut steps = 0;
    loop {
        split_negligible(&d, &mut e);
        let mut hi = n.saturating_sub(1);
        while hi > 0 && e[hi - 1] == 0.0 {
            hi -= 1;
        }
        if hi == 0 {
            return Ok(d.into_iter().map(f64::abs).collect());
        }
        let mut lo = hi - 1;
        while lo > 0 && e[lo - 1] != 0.0 {
            lo -= 1;
        }
        let shift = choose_shift(&d[lo..=hi], &e[lo..hi]);
        if shift == 0.0 {
            sweep(&mut d[lo..=hi], &mut e[lo..hi]);
        } else {
            shifted_sweep(&mut d[lo..=hi], &mut e[lo..hi], shift);
        }
        steps += hi - lo;
        if steps > budget {
            return Err(Error::NoConvergence(steps));
        }
    }
}

/// Zeroes every `e[j]` that is negligible relative to a lower bound on the
/// smallest singular value of the block above it.
fn split_negligible(d: &[f64], e: &mut [f64]) {
    let mut mu = d[0].abs();
    for j in 0..e.len() {
        if e[j].abs() <= TOL * mu {
            e[j] = 0.0;
        }
        let next = d[j + 1].abs();
        mu = if e[j] == 0.0 {
            next
        } else {
            next * (mu / (mu + e[j].abs()))
        };
    }
}

fn choose_shift(d: &[f64], e: &[f64]) -> f64 {
    let n = d.len();
    let mut mu = d[0].abs();
    let mut smin = mu;
    for j in 0..e.len() {
        mu = d[j + 1].abs() * (mu / (mu + e[j].abs()));
        smin = smin.min(mu);
    }
    let smax = d.iter().chain(e).fold(0.0f64, |m, v| m.max(v.abs()));
    if n as f64 * TOL * (smin / smax) <= f64::EPSILON.max(0.01 * TOL) {
        return 0.0;
    }
    let shift = smaller_sv(d[n - 2], e[n - 2], d[n - 1]);
    let lead = d[0].abs();
    if lead > 0.0 && (shift / lead).powi(2) < f64::EPSILON {
        0.0
    } else {
        shift
    }
}

/// Smaller singular value of `[[f, g], [0, h]]`, without overflow.
fn smaller_sv(f: f64, g: f64, h: f64) -> f64 {
    let (fa, ga, ha) = (f.abs(), g.abs(), h.abs());
    let (mn, mx) = (fa.min(ha), fa.max(ha));
    if mn == 0.0 {
        return 0.0;
    }
    let s = 1.0 + mn / mx;
    let t = (mx - mn) / mx;
    if ga < mx {
        let u = (ga / mx).powi(2);
        mn * (2.0 / ((s * s + u).sqrt() + (t * t + u).sqrt()))
    } else {
        let u = mx / ga;
        if u == 0.0 {
            mn * mx / ga
        } else {
            let c = 1.0 / ((1.0 + (s * u).powi(2)).sqrt() + (1.0 + (t * u).powi(2)).sqrt());
            mn * c * u
        }
    }
}

fn rot(f: f64, g: f64) -> (f64, f64, f64) {
    if g == 0.0 {
        (1.0, 0.0, f)
    } else if f == 0.0 {
        (0.0, 1.0, g)
    } else {
        let r = f.hypot(g);
        (f / r, g / r, r)
    }
}

fn sweep(d: &mut [f64], e: &mut [f64]) {
    let n = d.len();
    let (mut cs, mut oldcs, mut oldsn) = (1.0, 1.0, 0.0);
    for i in 0..n - 1 {
        let (c, s, r) = rot(d[i] * cs, e[i]);
        cs = c;
        if i > 0 {
            e[i - 1] = oldsn * r;
        }
        let (oc, os, di) = rot(oldcs * r, d[i + 1] * s);
        oldcs = oc;
        oldsn = os;
        d[i] = di;
    }
    let h = d[n - 1] * cs;
    d[n - 1] = h * oldcs;
    e[n - 2] = h * oldsn;
}

/// One Golub-Kahan step with shift `shift`, chasing the bulge downwards.
fn shifted_sweep(d: &mut [f64], e: &mut [f64], shift: f64) {
    let n = d.len();
    let mut f = (d[0].abs() - shift) * (1f64.copysign(d[0]) + shift / d[0]);
    let mut g = e[0];
    for i in 0..n - 1 {
        let (c, s, r) = rot(f, g);
        if i > 0 {
            e[i - 1] = r;
        }
        f = c * d[i] + s * e[i];
        e[i] = c * e[i] - s * d[i];
        g = s * d[i + 1];
        d[i + 1] *= c;
        let (c, s, r) = rot(f, g);
        d[i] = r;
        f = c * e[i] + s * d[i + 1];
        d[i + 1] = c * d[i + 1] - s * e[i];
        if i + 2 < n {
            g = s * e[i + 1];
            e[i + 1] *= c;
        }
    }
    e[n - 2] = f;
}
