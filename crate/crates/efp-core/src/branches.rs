//! Branch functions cut along the arc: the square root `R`, the conformal
//! factor `g`, and the fourth-root ratio `β`.
//!
//! All three are analytic off the closed arc and characterized by their
//! behavior at infinity:
//!
//! * `R(z)² = (z - e^{-iψ})(z - e^{iψ})` with `R(z) ~ z` as `z → ∞`,
//! * `g(z) = (R(z) + z - 1) / (2z)`, analytic at `z = 0` with
//!   `g(0) = sin²(ψ/2)` and `g(∞) = 1`,
//! * `β(z)⁴ = (z - e^{iψ}) / (z - e^{-iψ})` with `β(∞) = 1`.
//!
//! The common cut is realized by a logarithm whose argument window is
//! `(ψ, ψ + 2π]`: for `ρ(z) = (z - e^{iψ})/(z - e^{-iψ})` the ratio sweeps
//! through arg `ψ` exactly when `z` crosses the arc, so placing the log cut
//! there puts the branch cut of every derived power on the arc and nowhere
//! else.

use num_complex::Complex64;

use crate::contour::{boundary_point, validate_psi, Side, ARC_DISTANCE_TOL};
use crate::error::Error;
use crate::util::log_with_cut;
use crate::Result;

/// Points closer than this to an arc endpoint are rejected: every branch
/// function has a power-law singularity or zero there and one-sided limits
/// are meaningless.
pub const BRANCH_POINT_TOL: f64 = 1e-8;

/// Precomputed arc data shared by the branch functions.
#[derive(Debug, Clone)]
pub struct BranchContext {
    /// Arc angle.
    pub psi: f64,
    /// `-sin²(ψ/2)`: the product of the two boundary values of `g` times `z`.
    pub alpha: f64,
    /// Branch points `[e^{-iψ}, e^{iψ}]` (upper then lower half-plane).
    pub endpoints: [Complex64; 2],
}

impl BranchContext {
    /// Build for a validated arc angle.
    pub fn new(psi: f64) -> Result<Self> {
        validate_psi(psi)?;
        let half_sin = libm::sin(0.5 * psi);
        Ok(Self {
            psi,
            alpha: -half_sin * half_sin,
            endpoints: [
                Complex64::from_polar(1.0, -psi),
                Complex64::from_polar(1.0, psi),
            ],
        })
    }

    /// Distance from `z` to the closed arc.
    ///
    /// For `z` whose angle falls inside the arc's angular window the nearest
    /// arc point is the radial projection; otherwise it is an endpoint.
    pub fn distance_to_arc(&self, z: Complex64) -> f64 {
        let mut theta = z.arg(); // representative in [0, 2π)
        if theta < 0.0 {
            theta += 2.0 * core::f64::consts::PI;
        }
        if theta > -self.psi && theta < 2.0 * core::f64::consts::PI + self.psi {
            (z.norm() - 1.0).abs()
        } else {
            let d0 = (z - self.endpoints[0]).norm();
            let d1 = (z - self.endpoints[1]).norm();
            d0.min(d1)
        }
    }

    /// Reject points on the cut or at its endpoints.
    fn check_off_cut(&self, z: Complex64) -> Result<()> {
        let d0 = (z - self.endpoints[0]).norm();
        let d1 = (z - self.endpoints[1]).norm();
        if d0 <= BRANCH_POINT_TOL || d1 <= BRANCH_POINT_TOL {
            return Err(Error::AtBranchPoint);
        }
        if self.distance_to_arc(z) <= ARC_DISTANCE_TOL {
            return Err(Error::OnContour);
        }
        Ok(())
    }

    /// `log ρ(z)` with the argument window `(ψ, ψ + 2π]`; the derived powers
    /// inherit the arc as their only cut.
    fn log_rho(&self, z: Complex64) -> Complex64 {
        let rho = (z - self.endpoints[1]) / (z - self.endpoints[0]);
        log_with_cut(rho, self.psi)
    }
}

/// `R(z)`: square root of `(z - e^{-iψ})(z - e^{iψ})` cut on the arc,
/// asymptotic to `z` at infinity. `R(0) = 1` for every arc angle.
pub fn sqrt_r(z: Complex64, ctx: &BranchContext) -> Result<Complex64> {
    ctx.check_off_cut(z)?;
    Ok((z - ctx.endpoints[0]) * (0.5 * ctx.log_rho(z)).exp())
}

/// `g(z) = (R(z) + z - 1)/(2z)`, the scalar conjugator that turns the
/// oscillatory kernel factor `z^n` into decay off the circle.
///
/// The apparent pole at `z = 0` is removable; tiny `|z|` switches to the
/// series `g ≈ sin²(ψ/2) + (sin²ψ / 4)·z` to avoid cancellation.
pub fn g_fn(z: Complex64, ctx: &BranchContext) -> Result<Complex64> {
    ctx.check_off_cut(z)?;
    if z.norm() < 1e-6 {
        let s2 = libm::sin(ctx.psi) * libm::sin(ctx.psi);
        return Ok(Complex64::new(-ctx.alpha, 0.0) + z * (0.25 * s2));
    }
    let r = (z - ctx.endpoints[0]) * (0.5 * ctx.log_rho(z)).exp();
    Ok((r + z - 1.0) / (2.0 * z))
}

/// `β(z) = ((z - e^{iψ})/(z - e^{-iψ}))^{1/4}` cut on the arc, `β(∞) = 1`.
///
/// At the origin `β(0) = e^{i(ψ+π)/2}`, so `β(0)⁴ = e^{2iψ}` and
/// `(β(0) + β(0)^{-1})/2 = |sin(ψ/2)|`.
pub fn beta_fn(z: Complex64, ctx: &BranchContext) -> Result<Complex64> {
    ctx.check_off_cut(z)?;
    Ok((0.25 * ctx.log_rho(z)).exp())
}

/// `e^{ikθ/2}`: the half-integer circle power used when kernel factors are
/// evaluated directly on the arc by angle rather than through a cut plane.
pub fn half_power(theta: f64, k: i64) -> Complex64 {
    Complex64::from_polar(1.0, 0.5 * k as f64 * theta)
}

/// Which branch function a boundary-value request refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundaryFn {
    /// The conjugator `g`.
    G,
    /// The fourth root `β`.
    Beta,
}

/// One-sided boundary values `(f₊, f₋)` on the arc at angle `theta`.
///
/// Each side is Richardson-extrapolated from radial offsets `eps` and
/// `eps/2`, which cancels the O(eps) term of the radial Taylor expansion:
/// the result is `2·f((1 ∓ eps/2)e^{iθ}) - f((1 ∓ eps)e^{iθ})`.
pub fn boundary_values(
    f: BoundaryFn,
    theta: f64,
    ctx: &BranchContext,
    eps: f64,
) -> Result<(Complex64, Complex64)> {
    let eval = |z: Complex64| -> Result<Complex64> {
        match f {
            BoundaryFn::G => g_fn(z, ctx),
            BoundaryFn::Beta => beta_fn(z, ctx),
        }
    };
    let mut vals = [Complex64::new(0.0, 0.0); 2];
    for (slot, side) in [(0usize, Side::Plus), (1usize, Side::Minus)] {
        let z_far = boundary_point(ctx.psi, theta, side, eps)?;
        let z_near = boundary_point(ctx.psi, theta, side, 0.5 * eps)?;
        vals[slot] = 2.0 * eval(z_near)? - eval(z_far)?;
    }
    Ok((vals[0], vals[1]))
}

/// Which branch function an analyticity probe refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BranchFn {
    /// The square root `R`.
    SqrtR,
    /// The conjugator `g`.
    G,
    /// The fourth root `β`.
    Beta,
}

/// Mean-value analyticity probe: `|circle average - center value|` over a
/// 64-point circle of radius `min(0.04, dist/2)` around `z`.
///
/// Vanishes (to quadrature accuracy) iff the function is analytic in the
/// disk, so it detects a stray cut crossing the neighborhood of `z`.
pub fn mean_value_residual(f: BranchFn, ctx: &BranchContext, z: Complex64) -> Result<f64> {
    let dist = ctx.distance_to_arc(z);
    if dist <= ARC_DISTANCE_TOL {
        return Err(Error::OnContour);
    }
    let eval = |w: Complex64| -> Result<Complex64> {
        match f {
            BranchFn::SqrtR => sqrt_r(w, ctx),
            BranchFn::G => g_fn(w, ctx),
            BranchFn::Beta => beta_fn(w, ctx),
        }
    };
    let radius = (0.5 * dist).min(0.04);
    let samples = 64usize;
    let center = eval(z)?;
    let mut mean = Complex64::new(0.0, 0.0);
    for j in 0..samples {
        let phase = 2.0 * core::f64::consts::PI * j as f64 / samples as f64;
        mean += eval(z + Complex64::from_polar(radius, phase))?;
    }
    mean /= samples as f64;
    Ok((mean - center).norm())
}
