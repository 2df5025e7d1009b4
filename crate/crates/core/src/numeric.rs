//! Complex matrices and the single tolerance policy.
//!
//! Square roots force floating point into the operator layer. One tolerance
//! rule is declared here and reused everywhere: two matrices are equal when
//! the max-abs entry difference is at most `1e-9 * (1 + max entry magnitude)`.

use nalgebra::DMatrix;
use num_complex::Complex64;

pub type C64 = Complex64;
pub type CMat = DMatrix<Complex64>;

pub const MAT_RTOL: f64 = 1e-9;

pub fn c64(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

pub fn max_abs(m: &CMat) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Matrix equality under the declared tolerance policy.
pub fn mats_close(a: &CMat, b: &CMat) -> bool {
    if a.shape() != b.shape() {
        return false;
    }
    let scale = 1.0 + max_abs(a).max(max_abs(b));
    max_abs(&(a - b)) <= MAT_RTOL * scale
}

pub fn mats_max_diff(a: &CMat, b: &CMat) -> f64 {
    max_abs(&(a - b))
}

/// Scalar equality under the same policy as matrices.
pub fn c64_close(a: C64, b: C64) -> bool {
    let scale = 1.0 + a.norm().max(b.norm());
    (a - b).norm() <= MAT_RTOL * scale
}

/// Largest singular value.
pub fn operator_norm(m: &CMat) -> f64 {
    if m.is_empty() {
        return 0.0;
    }
    m.clone()
        .svd(false, false)
        .singular_values
        .iter()
        .fold(0.0f64, |acc, s| acc.max(*s))
}

/// Least eigenvalue of a Hermitian matrix.
pub fn hermitian_min_eigenvalue(m: &CMat) -> f64 {
    if m.is_empty() {
        return 0.0;
    }
    m.clone()
        .symmetric_eigen()
        .eigenvalues
        .iter()
        .fold(f64::INFINITY, |acc, v| acc.min(*v))
}

/// Numerical rank via singular values.
pub fn rank(m: &CMat, tol: f64) -> usize {
    if m.is_empty() {
        return 0;
    }
    let svd = m.clone().svd(false, false);
    let max = svd.singular_values.iter().fold(0.0f64, |a, s| a.max(*s));
    if max == 0.0 {
        return 0;
    }
    svd.singular_values.iter().filter(|s| **s > tol * max).count()
}

/// Minimum-norm least-squares solution of `a x = b`.
pub fn lstsq(a: &CMat, b: &CMat) -> CMat {
    a.clone()
        .svd(true, true)
        .solve(b, 1e-12)
        .expect("svd solve")
}
