use std::ffi::CStr;
use std::ptr;

use tnla_ffi::*;

fn vandermonde(x: &[f64]) -> *mut TnlaBd {
    let mut b = ptr::null_mut();
    assert_eq!(unsafe { tnla_bd_vandermonde(x.as_ptr(), x.len(), &mut b) }, TnlaStatus::Ok);
    b
}

fn last_error() -> String {
    let p = tnla_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

#[test]
fn grid_round_trip() {
    let p = [1.0, 2.0, 3.0, 4.0];
    let mut b = ptr::null_mut();
    unsafe {
        assert_eq!(tnla_bd_new(2, 2, p.as_ptr(), &mut b), TnlaStatus::Ok);
        assert_eq!((tnla_bd_rows(b), tnla_bd_cols(b)), (2, 2));
        let mut out = [0.0; 4];
        assert_eq!(tnla_bd_grid(b, out.as_mut_ptr(), 4), TnlaStatus::Ok);
        assert_eq!(out, p);
        tnla_bd_free(b);
    }
    assert!(tnla_last_error().is_null());
}

#[test]
fn vandermonde_pipeline() {
    let b = vandermonde(&[2.0, 3.0, 5.0, 8.0]);
    unsafe {
        let mut a = [0.0; 16];
        assert_eq!(tnla_expand(b, a.as_mut_ptr(), 16), TnlaStatus::Ok);
        assert_eq!(&a[12..], &[1.0, 8.0, 64.0, 512.0]);

        let mut inv = [0.0; 16];
        assert_eq!(tnla_inverse(b, inv.as_mut_ptr(), 16), TnlaStatus::Ok);
        // Checkerboard signs.
        for i in 0..4 {
            for j in 0..4 {
                assert!(inv[4 * i + j] * if (i + j) % 2 == 0 { 1.0 } else { -1.0 } > 0.0);
            }
        }

        let f = [4.0, 9.0, 25.0, 64.0];
        let mut x = [0.0; 4];
        assert_eq!(tnla_solve(b, f.as_ptr(), 4, 0, x.as_mut_ptr()), TnlaStatus::Ok);
        assert_eq!(x, [0.0, 0.0, 1.0, 0.0]);
        let mut y = [0.0; 4];
        let nodes = [2.0, 3.0, 5.0, 8.0];
        assert_eq!(tnla_bp_dual_solve(nodes.as_ptr(), f.as_ptr(), 4, y.as_mut_ptr()), TnlaStatus::Ok);
        assert_eq!(y, x);

        let mut det = 0.0;
        assert_eq!(tnla_determinant(b, &mut det), TnlaStatus::Ok);
        // Product of node differences.
        assert_eq!(det, 1.0 * 3.0 * 6.0 * 2.0 * 5.0 * 3.0);

        let mut s = [0.0; 4];
        assert_eq!(tnla_singular_values(b, s.as_mut_ptr(), 4), TnlaStatus::Ok);
        let mut k = 0.0;
        assert_eq!(tnla_cond2(b, &mut k), TnlaStatus::Ok);
        assert_eq!(k, s[0] / s[3]);
        tnla_bd_free(b);
    }
}

#[test]
fn symmetric_families() {
    let mut h = ptr::null_mut();
    let mut p = ptr::null_mut();
    unsafe {
        assert_eq!(tnla_bd_hilbert(3, &mut h), TnlaStatus::Ok);
        assert_eq!(tnla_bd_pascal(3, &mut p), TnlaStatus::Ok);
        let mut l = [0.0; 3];
        assert_eq!(tnla_eigenvalues_sym(p, l.as_mut_ptr(), 3), TnlaStatus::Ok);
        assert!((l.iter().sum::<f64>() - 9.0).abs() < 1e-14);
        assert!((l.iter().product::<f64>() - 1.0).abs() < 1e-14);
        let mut c = ptr::null_mut();
        let x = [0.5, 1.5, 2.5];
        assert_eq!(tnla_bd_cauchy(x.as_ptr(), x.as_ptr(), 3, &mut c), TnlaStatus::Ok);
        let (mut gh, mut gc) = ([0.0; 9], [0.0; 9]);
        tnla_bd_grid(h, gh.as_mut_ptr(), 9);
        tnla_bd_grid(c, gc.as_mut_ptr(), 9);
        assert_eq!(gh, gc);
        tnla_bd_free(h);
        tnla_bd_free(p);
        tnla_bd_free(c);
    }
}

#[test]
fn from_matrix_and_dense_solve() {
    let a = [1.0, 1.0, 1.0, 1.0, 2.0, 3.0, 1.0, 3.0, 6.0];
    let mut b = ptr::null_mut();
    unsafe {
        assert_eq!(tnla_bd_from_matrix(3, a.as_ptr(), &mut b), TnlaStatus::Ok);
        let mut g = [0.0; 9];
        tnla_bd_grid(b, g.as_mut_ptr(), 9);
        assert_eq!(g, [1.0; 9]);
        let rhs = [3.0, 6.0, 10.0];
        let (mut x, mut y) = ([0.0; 3], [0.0; 3]);
        assert_eq!(tnla_solve(b, rhs.as_ptr(), 3, 1, x.as_mut_ptr()), TnlaStatus::Ok);
        assert_eq!(tnla_dense_solve(3, a.as_ptr(), rhs.as_ptr(), y.as_mut_ptr()), TnlaStatus::Ok);
        assert_eq!(x, [1.0, 1.0, 1.0]);
        assert!(y.iter().all(|v| (v - 1.0).abs() < 1e-14));
        tnla_bd_free(b);
    }
}

#[test]
fn least_squares() {
    // Leading 3 x 2 block of a Vandermonde grid: fit a line through (2,4), (3,6), (5,10).
    let g = [1.0, 2.0, 1.0, 1.0, 1.0, 2.0];
    let mut b = ptr::null_mut();
    unsafe {
        assert_eq!(tnla_bd_new(3, 2, g.as_ptr(), &mut b), TnlaStatus::Ok);
        let mut a = [0.0; 6];
        assert_eq!(tnla_expand(b, a.as_mut_ptr(), 6), TnlaStatus::Ok);
        let rhs: Vec<f64> = (0..3).map(|i| 2.0 * a[2 * i + 1]).collect();
        let mut x = [0.0; 2];
        assert_eq!(tnla_lsq_solve(b, rhs.as_ptr(), 3, x.as_mut_ptr(), 2), TnlaStatus::Ok);
        assert!(x[0].abs() < 1e-14 && (x[1] - 2.0).abs() < 1e-14, "{x:?}");
        tnla_bd_free(b);
    }
}

#[test]
fn error_reporting() {
    let mut b = ptr::null_mut();
    unsafe {
        let bad = [1.0, -1.0, 1.0, 1.0];
        assert_eq!(tnla_bd_new(2, 2, bad.as_ptr(), &mut b), TnlaStatus::InvalidBd);
        assert!(b.is_null());
        assert!(!last_error().is_empty());

        let unsorted = [3.0, 2.0];
        assert_eq!(tnla_bd_vandermonde(unsorted.as_ptr(), 2, &mut b), TnlaStatus::NodesNotSorted);
        assert_eq!(tnla_bd_random(3, 1, -1.0, 1.0, &mut b), TnlaStatus::BadRange);
        assert_eq!(tnla_bd_new(2, 2, ptr::null(), &mut b), TnlaStatus::NullPointer);
        assert_eq!(last_error(), "null pointer argument");
        let dup = [1.0, 1.0];
        let mut a = [0.0; 2];
        assert_eq!(
            tnla_bp_dual_solve(dup.as_ptr(), dup.as_ptr(), 2, a.as_mut_ptr()),
            TnlaStatus::DuplicateNodes
        );
        let neg = [1.0, 2.0, 2.0, 1.0];
        assert_eq!(tnla_bd_from_matrix(2, neg.as_ptr(), &mut b), TnlaStatus::NotTotallyNonnegative);

        let v = vandermonde(&[1.0, 2.0, 3.0]);
        let mut small = [0.0; 4];
        assert_eq!(tnla_expand(v, small.as_mut_ptr(), 4), TnlaStatus::BufferTooSmall);
        assert!(last_error().contains("9 needed"));
        let mut l = [0.0; 3];
        assert_eq!(tnla_eigenvalues_sym(v, l.as_mut_ptr(), 3), TnlaStatus::NotSymmetric);
        assert_eq!(tnla_determinant(ptr::null(), l.as_mut_ptr()), TnlaStatus::NullPointer);
        tnla_bd_free(v);
        tnla_bd_free(ptr::null_mut());
    }
}

#[test]
fn random_is_reproducible() {
    let (mut a, mut b) = (ptr::null_mut(), ptr::null_mut());
    unsafe {
        assert_eq!(tnla_bd_random(5, 42, 0.5, 2.0, &mut a), TnlaStatus::Ok);
        assert_eq!(tnla_bd_random(5, 42, 0.5, 2.0, &mut b), TnlaStatus::Ok);
        let (mut ga, mut gb) = ([0.0; 25], [0.0; 25]);
        tnla_bd_grid(a, ga.as_mut_ptr(), 25);
        tnla_bd_grid(b, gb.as_mut_ptr(), 25);
        assert_eq!(ga, gb);
        tnla_bd_free(a);
        tnla_bd_free(b);
    }
}
