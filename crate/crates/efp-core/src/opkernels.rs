//! Scalar kernel factors and the integrable-operator kernels on the half
//! line.
//!
//! Everything here is built from the Cayley-type coefficient
//! `c(z) = (z + 1)/(2(z - 1))`, which is purely imaginary exactly on the
//! unit circle and satisfies `c(1/z) = -c(z)`. The half-line kernels
//!
//! * `P(s, t | z) = exp((s - t)c - (s + t)/2)`,
//! * `Q(s, t | z) = exp((s + t)c - (s + t)/2)`,
//!
//! are rank-one-conjugated exponentials: on the circle `P` is a unitary
//! deformation of `e^{-(s+t)/2}` and `Q` degenerates to a rank-one operator
//! with range `exp((c - 1/2)s)`. The closed ratio `r(z₁, z₂)` equals the
//! half-line integral of the same exponential family; both forms are
//! provided so each can check the other.

use num_complex::Complex64;

use crate::contour::{HalfLineQuadrature, ModelParams};
use crate::branches::half_power;
use crate::error::Error;
use crate::matrix::ComplexMatrix;
use crate::util::log_with_cut;
use crate::Result;

/// Points closer than this to `z = 1` are rejected: `c(z)` has its pole
/// there and every kernel in this module inherits it.
pub const SINGULAR_POINT_TOL: f64 = 1e-8;

/// Circle snap width: when `||z| - 1|` is below this, the real part of
/// `c(z)` is forced to its exact on-circle value 0, so that self-adjointness
/// of the discretized `P` holds to the last bit.
const CIRCLE_SNAP_TOL: f64 = 1e-14;

/// Exponent-overflow guard for the half-line kernels.
const EXP_RANGE: f64 = 700.0;

/// Which of the two scalar factors `e_±` is requested.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    /// `e_+ = z^{-n/2} e^{+φ/2}`.
    Plus,
    /// `e_- = z^{+n/2} e^{-φ/2}`.
    Minus,
}

/// `c(z) = (z + 1) / (2(z - 1))`, with the on-circle real part snapped to 0.
pub fn cayley_coefficient(z: Complex64) -> Result<Complex64> {
    if (z - 1.0).norm() <= SINGULAR_POINT_TOL {
        return Err(Error::SingularPoint);
    }
    let mut c = (z + 1.0) / (2.0 * (z - 1.0));
    if (z.norm() - 1.0).abs() <= CIRCLE_SNAP_TOL {
        c.re = 0.0;
    }
    Ok(c)
}

/// `e_±(e^{iθ}) = e^{∓inθ/2} e^{±φ(e^{iθ})/2}`: the scalar symbol factors,
/// evaluated by angle so the half-integer power needs no cut plane.
pub fn e_pm(theta: f64, sign: Sign, params: &ModelParams) -> Complex64 {
    let z = Complex64::from_polar(1.0, theta);
    let n = params.n as i64;
    match sign {
        Sign::Plus => half_power(theta, -n) * (0.5 * params.phi(z)).exp(),
        Sign::Minus => half_power(theta, n) * (-0.5 * params.phi(z)).exp(),
    }
}

/// `(z^{-n} exp(φ(z) + s(z+1)/(z-1)))^{±1/2} · e^{-s/2}`: the `s`-extended
/// factors whose outer product reproduces the kernel ratio `r`.
///
/// The square root is taken through a logarithm with argument window
/// `(0, 2π]`, which places the cut of `z^{-n/2}` along the ray through
/// `z = 1` (the gap of the arc), matching [`e_pm`] on the arc itself.
pub fn e_pm_s(z: Complex64, s: f64, sign: Sign, params: &ModelParams) -> Result<Complex64> {
    if (z - 1.0).norm() <= SINGULAR_POINT_TOL {
        return Err(Error::SingularPoint);
    }
    if !(s >= 0.0) {
        return Err(Error::RangeExceeded);
    }
    let log_z = log_with_cut(z, 0.0);
    let l = -(params.n as f64) * log_z + params.phi(z) + s * (z + 1.0) / (z - 1.0);
    let exponent = match sign {
        Sign::Plus => 0.5 * l - 0.5 * s,
        Sign::Minus => -0.5 * l - 0.5 * s,
    };
    if exponent.re > EXP_RANGE {
        return Err(Error::RangeExceeded);
    }
    Ok(exponent.exp())
}

/// `P(s, t | z) = exp((s - t)c(z) - (s + t)/2)`; self-adjoint on the circle.
pub fn p_kernel(z: Complex64, s: f64, t: f64) -> Result<Complex64> {
    let c = cayley_coefficient(z)?;
    if c.re.abs() * (s + t) > EXP_RANGE {
        return Err(Error::RangeExceeded);
    }
    Ok(((s - t) * c - 0.5 * (s + t)).exp())
}

/// `Q(s, t | z) = exp((s + t)c(z) - (s + t)/2)`; rank one for every `z`.
pub fn q_kernel(z: Complex64, s: f64, t: f64) -> Result<Complex64> {
    let c = cayley_coefficient(z)?;
    if c.re.abs() * (s + t) > EXP_RANGE {
        return Err(Error::RangeExceeded);
    }
    Ok(((s + t) * c - 0.5 * (s + t)).exp())
}

/// The range vector of `Q(·,·|z)` and fixed vector of `P(·,·|z)`:
/// `φ_z(s) = exp((c(z) - 1/2)s)`.
pub fn p_range_vector(z: Complex64, s: f64) -> Result<Complex64> {
    let c = cayley_coefficient(z)?;
    if (c.re - 0.5) * s > EXP_RANGE {
        return Err(Error::RangeExceeded);
    }
    Ok(((c - 0.5) * s).exp())
}

/// Closed form of the kernel ratio:
/// `r(z₁, z₂) = N / (N + z₁ - z₂)` with `N = 2(z₂ - 1)(z₁ - 1)`.
pub fn r_closed(z1: Complex64, z2: Complex64) -> Result<Complex64> {
    let n = 2.0 * (z2 - 1.0) * (z1 - 1.0);
    let den = n + z1 - z2;
    if den.norm() < 1e-10 {
        return Err(Error::NearSingularDenominator);
    }
    Ok(n / den)
}

/// The same ratio as a half-line integral:
/// `∫₀^∞ exp(-s + (s/4)(c₁ᶠ - c₂ᶠ)) ds` with `cᵢᶠ = (zᵢ+1)/(zᵢ-1)`.
///
/// Integrability is guarded by `Re(1 - c₁ᶠ/2 + c₂ᶠ/2) > 0`, a margin of
/// twice the actual decay requirement, so accepted inputs are also resolved
/// accurately by the quadrature.
pub fn r_integral(
    z1: Complex64,
    z2: Complex64,
    hq: &HalfLineQuadrature,
) -> Result<Complex64> {
    for z in [z1, z2] {
        if (z - 1.0).norm() <= SINGULAR_POINT_TOL {
            return Err(Error::SingularPoint);
        }
    }
    let c1f = (z1 + 1.0) / (z1 - 1.0);
    let c2f = (z2 + 1.0) / (z2 - 1.0);
    if (1.0 - 0.5 * c1f + 0.5 * c2f).re <= 0.0 {
        return Err(Error::DivergentIntegrand);
    }
    let rate = 0.25 * (c1f - c2f);
    Ok(hq.integrate(|s| ((rate - 1.0) * s).exp()))
}

/// Symmetrized Nyström discretization of a half-line kernel:
/// `A_jk = √w_j · K(s_j, s_k) · √w_k`.
///
/// The square-root weighting preserves self-adjointness of symmetric
/// kernels and leaves every spectral quantity (eigenvalues, determinants,
/// traces) identical to the plain one-sided discretization.
pub fn operator_matrix<K>(hq: &HalfLineQuadrature, kernel: K) -> Result<ComplexMatrix>
where
    K: Fn(f64, f64) -> Result<Complex64>,
{
    let m = hq.node_count();
    let mut sqrt_w = alloc::vec::Vec::with_capacity(m);
    for &w in &hq.weights {
        sqrt_w.push(libm::sqrt(w));
    }
    ComplexMatrix::try_from_fn(m, |j, k| {
        Ok(kernel(hq.s_nodes[j], hq.s_nodes[k])? * (sqrt_w[j] * sqrt_w[k]))
    })
}

/// Discretized `P(·,·|z)`.
pub fn p_operator(z: Complex64, hq: &HalfLineQuadrature) -> Result<ComplexMatrix> {
    operator_matrix(hq, |s, t| p_kernel(z, s, t))
}

/// Discretized `Q(·,·|z)`.
pub fn q_operator(z: Complex64, hq: &HalfLineQuadrature) -> Result<ComplexMatrix> {
    operator_matrix(hq, |s, t| q_kernel(z, s, t))
}

/// Discretized `Q(·,·|1/z)`, evaluated through `c(1/z) = -c(z)` so the
/// reciprocal point is never formed (exact even as `z → 0`).
pub fn q_operator_reciprocal(z: Complex64, hq: &HalfLineQuadrature) -> Result<ComplexMatrix> {
    let c = cayley_coefficient(z)?;
    let cr = -c;
    operator_matrix(hq, move |s, t| {
        if cr.re.abs() * (s + t) > EXP_RANGE {
            return Err(Error::RangeExceeded);
        }
        Ok(((s + t) * cr - 0.5 * (s + t)).exp())
    })
}
