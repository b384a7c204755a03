//! Arc angle from the field strength.
//!
//! The physical dial is a field `h ∈ (0, 2)`; the solver wants the arc
//! endpoint angle `ψ ∈ (-π, 0)`. The bridge is `L = arccosh(2/h) / 2`
//! followed by a Möbius map of `x = e^{-2L}` onto the unit circle.

use num_complex::Complex64;

use crate::{HarnessError, Result};

/// Convert a field strength to the arc angle.
///
/// `ψ` is the unique angle in `(-π, 0)` with `e^{-iψ} = -i(x - i)/(x + i)`
/// where `x = e^{-2L}` and `L = arccosh(2/h) / 2`. The Möbius factor sends
/// the interval `x ∈ (0, 1)` into the lower-left quarter of the circle, so
/// the image angle always lands in `(-π, -π/2)`: `h → 0⁺` gives `ψ → -π/2`
/// and `h → 2⁻` gives `ψ → -π`.
///
/// The second return value reports whether the principal-branch angle had
/// to be wrapped back into `(-π, 0)`. By the range argument above it is
/// provably always `false`; it is kept so callers can surface the flag
/// rather than trust the proof silently.
pub fn psi_from_field(h: f64) -> Result<(f64, bool)> {
    if !(h > 0.0 && h < 2.0) {
        return Err(HarnessError::FieldOutOfRange(h));
    }
    let l = 0.5 * (2.0 / h).acosh();
    let x = (-2.0 * l).exp();
    let i = Complex64::new(0.0, 1.0);
    let w = -i * (Complex64::new(x, 0.0) - i) / (Complex64::new(x, 0.0) + i);
    // e^{-iψ} = w on the unit circle, so ψ = -arg w modulo 2π.
    let mut psi = -w.arg();
    let mut wrapped = false;
    if psi >= 0.0 {
        psi -= 2.0 * core::f64::consts::PI;
        wrapped = true;
    } else if psi <= -core::f64::consts::PI {
        psi += 2.0 * core::f64::consts::PI;
        wrapped = true;
    }
    Ok((psi, wrapped))
}

/// Invert [`psi_from_field`]: recover the field from the arc angle.
///
/// From `w = e^{-iψ}` the Möbius map gives back `x = i(1 + iw)/(1 - iw)`
/// (real for unit-modulus `w` in the image range), and `h = 4x/(1 + x²)`
/// undoes the arccosh since `2/h = cosh 2L = (x + 1/x)/2`.
pub fn field_from_psi(psi: f64) -> f64 {
    let w = Complex64::from_polar(1.0, -psi);
    let i = Complex64::new(0.0, 1.0);
    let x = (i * (Complex64::new(1.0, 0.0) + i * w) / (Complex64::new(1.0, 0.0) - i * w)).re;
    4.0 * x / (1.0 + x * x)
}
