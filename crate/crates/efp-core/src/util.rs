//! Small numeric helpers: angle wrapping, cut logarithms, polynomials.

use core::f64::consts::{PI, TAU};
use num_complex::Complex64;

/// Wrap an angle to the principal window `(-pi, pi]`.
pub fn wrap_angle(a: f64) -> f64 {
    let mut x = a % TAU;
    if x <= -PI {
        x += TAU;
    } else if x > PI {
        x -= TAU;
    }
    x
}

/// Complex logarithm with the branch cut along the ray `arg = cut`.
///
/// Returns `ln|w| + i·a` with the argument `a` in the window `(cut, cut + 2pi]`.
pub fn log_with_cut(w: Complex64, cut: f64) -> Complex64 {
    let mut a = libm::atan2(w.im, w.re);
    while a <= cut {
        a += TAU;
    }
    while a > cut + TAU {
        a -= TAU;
    }
    Complex64::new(libm::log(w.norm()), a)
}

/// Horner evaluation of `sum c_k z^k`.
pub fn polyval(coeffs: &[Complex64], z: Complex64) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for &c in coeffs.iter().rev() {
        acc = acc * z + c;
    }
    acc
}

/// Horner evaluation of the derivative of `sum c_k z^k`.
pub fn polyval_deriv(coeffs: &[Complex64], z: Complex64) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for k in (1..coeffs.len()).rev() {
        acc = acc * z + coeffs[k] * (k as f64);
    }
    acc
}
