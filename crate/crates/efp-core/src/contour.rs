//! Geometry of the circular-arc contour and quadrature grids.
//!
//! The contour is the arc `z = e^{iθ}`, `-ψ < θ < 2π + ψ` with `ψ ∈ (-π, 0)`:
//! the unit circle minus a gap around `z = 1`. Kernel integrals over the arc
//! use Gauss–Legendre in `θ` with the `i·e^{iθ}` Jacobian folded into complex
//! contour weights; operator-kernel integrals over `[0, ∞)` use a scaled
//! Gauss–Laguerre rule with the exponential weight folded back into the
//! integrand, so callers pass plain integrands.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;
use num_complex::Complex64;

use crate::error::Error;
use crate::util::{polyval, polyval_deriv};
use crate::Result;

/// Arcs narrower than this margin (in radians, at either end of the `ψ`
/// window) are rejected: the arc either approaches the singular point `z = 1`
/// or degenerates to the full circle, and kernel denominators blow up.
pub const PSI_MARGIN: f64 = 0.05;

/// Grid points are declared "on the contour" within this distance.
pub const ARC_DISTANCE_TOL: f64 = 1e-12;

/// Scaling of the Gauss–Laguerre rule (nodes `κ·x`, weights `κ·w·e^{x}`).
///
/// The plain rule (κ = 1) stalls on integrands decaying exactly like
/// `e^{-s/2}` — the slowest rate the kernel family produces — because the
/// transformed integrand's effective decay matches the weight and the
/// quadrature alias has no margin. κ = 3/2 keeps the alias ratio
/// `|1 - cκ|/(cκ)` at most 2/3 for every rate `c ∈ [1/2, 2]`.
const LAGUERRE_SCALE: f64 = 1.5;

/// Reject ψ outside `(-π + margin, -margin)`.
pub fn validate_psi(psi: f64) -> Result<()> {
    if !(psi.abs() >= PSI_MARGIN && psi.abs() <= PI - PSI_MARGIN && psi < 0.0) {
        return Err(Error::PsiOutOfRange { psi });
    }
    Ok(())
}

/// Which side of the contour a boundary limit is taken from.
///
/// `Plus` is the inside of the unit circle (`|z| < 1`), `Minus` the outside;
/// boundary values of the deformation chain are always `plus = from inside`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    /// Limit from `|z| < 1`.
    Plus,
    /// Limit from `|z| > 1`.
    Minus,
}

/// Problem instance: string length `n`, arc angle `ψ`, the entire function
/// `φ` as polynomial coefficients, and the coupling `γ`.
#[derive(Debug, Clone, PartialEq)]
pub struct ModelParams {
    /// String length (the kernel carries `z^{∓n/2}`).
    pub n: u32,
    /// Arc angle, strictly inside `(-π, 0)`.
    pub psi: f64,
    /// Coefficients `c_k` of `φ(z) = Σ c_k z^k`.
    pub phi_coeffs: Vec<Complex64>,
    /// Coupling in `[0, 1]`; the physically interesting case is 1.
    pub gamma: f64,
}

impl ModelParams {
    /// Construct with validation: `ψ ∈ (-π, 0)` strictly, `γ ∈ [0, 1]`.
    pub fn new(n: u32, psi: f64, phi_coeffs: Vec<Complex64>, gamma: f64) -> Result<Self> {
        if !(psi > -PI && psi < 0.0) {
            return Err(Error::PsiOutOfRange { psi });
        }
        if !(0.0..=1.0).contains(&gamma) {
            return Err(Error::GammaOutOfRange { gamma });
        }
        Ok(Self {
            n,
            psi,
            phi_coeffs,
            gamma,
        })
    }

    /// Convenience constructor for `φ = 0`, `γ = 1`.
    pub fn vacuum(n: u32, psi: f64) -> Result<Self> {
        Self::new(n, psi, Vec::new(), 1.0)
    }

    /// `φ(z)`.
    pub fn phi(&self, z: Complex64) -> Complex64 {
        polyval(&self.phi_coeffs, z)
    }

    /// `φ′(z)`.
    pub fn phi_deriv(&self, z: Complex64) -> Complex64 {
        polyval_deriv(&self.phi_coeffs, z)
    }

    /// Same instance with a different string length.
    pub fn with_n(&self, n: u32) -> Self {
        Self {
            n,
            ..self.clone()
        }
    }
}

/// Quadrature grid on the arc: `θ`-nodes, points `e^{iθ}`, and complex
/// contour weights `w_k · i·e^{iθ_k}` so that `Σ weights·f(z)` approximates
/// `∫_C f(z) dz`.
#[derive(Debug, Clone)]
pub struct ArcQuadrature {
    /// Arc angle the grid was built for.
    pub psi: f64,
    /// Gauss–Legendre angles, strictly inside `(-ψ, 2π + ψ)`.
    pub theta_nodes: Vec<f64>,
    /// Points `e^{iθ}` on the unit circle.
    pub z_nodes: Vec<Complex64>,
    /// Complex weights including the `dz/dθ = i·e^{iθ}` Jacobian.
    pub contour_weights: Vec<Complex64>,
}

impl ArcQuadrature {
    /// Number of nodes.
    pub fn node_count(&self) -> usize {
        self.theta_nodes.len()
    }
}

/// Quadrature grid on `[0, ∞)` for plain integrands with exponential decay:
/// `Σ weights·f(s_nodes) ≈ ∫₀^∞ f(s) ds`.
#[derive(Debug, Clone)]
pub struct HalfLineQuadrature {
    /// Positive nodes.
    pub s_nodes: Vec<f64>,
    /// Positive weights with the `e^{+s}` compensation folded in.
    pub weights: Vec<f64>,
}

impl HalfLineQuadrature {
    /// Number of nodes.
    pub fn node_count(&self) -> usize {
        self.s_nodes.len()
    }

    /// Apply the rule to an integrand.
    pub fn integrate<F>(&self, mut f: F) -> Complex64
    where
        F: FnMut(f64) -> Complex64,
    {
        let mut acc = Complex64::new(0.0, 0.0);
        for (&s, &w) in self.s_nodes.iter().zip(self.weights.iter()) {
            acc += f(s) * w;
        }
        acc
    }
}

/// Gauss–Legendre nodes and weights on `(-1, 1)` by Newton iteration on the
/// Legendre recurrence.
fn gauss_legendre(m: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; m];
    let mut weights = vec![0.0; m];
    for i in 0..(m + 1) / 2 {
        // Tricomi-style initial guess, then Newton.
        let mut x = libm::cos(PI * (i as f64 + 0.75) / (m as f64 + 0.5));
        let mut dp = 0.0;
        for _ in 0..100 {
            let mut p0 = 1.0;
            let mut p1 = x;
            for k in 2..=m {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            // p1 = P_m(x), p0 = P_{m-1}(x)
            dp = m as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[m - 1 - i] = x;
        weights[i] = w;
        weights[m - 1 - i] = w;
    }
    (nodes, weights)
}

/// Build the arc grid: Gauss–Legendre on the angular window mapped to the
/// arc, with complex contour weights.
pub fn build_arc(psi: f64, m: usize) -> Result<ArcQuadrature> {
    validate_psi(psi)?;
    if m < 2 {
        return Err(Error::NodeCountTooSmall { m });
    }
    let (x, w) = gauss_legendre(m);
    let half_span = PI + psi; // θ = π + (π + ψ)·x covers (-ψ, 2π + ψ)
    let mut theta_nodes = Vec::with_capacity(m);
    let mut z_nodes = Vec::with_capacity(m);
    let mut contour_weights = Vec::with_capacity(m);
    for i in 0..m {
        let theta = PI + half_span * x[i];
        let z = Complex64::from_polar(1.0, theta);
        theta_nodes.push(theta);
        z_nodes.push(z);
        contour_weights.push(Complex64::new(0.0, w[i] * half_span) * z);
    }
    Ok(ArcQuadrature {
        psi,
        theta_nodes,
        z_nodes,
        contour_weights,
    })
}

/// Laguerre value/derivative with overflow rescaling: returns
/// `(L_m, L_{m-1}, log_scale)` where the true values are the returned ones
/// times `e^{log_scale}`.
fn laguerre_pair(m: usize, x: f64) -> (f64, f64, f64) {
    const BIG: f64 = 1e250;
    let mut p0 = 1.0;
    let mut p1 = 1.0 - x;
    let mut log_scale = 0.0;
    for k in 2..=m {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0 - x) * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
        if p1.abs() > BIG || p0.abs() > BIG {
            p0 /= BIG;
            p1 /= BIG;
            log_scale += libm::log(BIG);
        }
    }
    (p1, p0, log_scale)
}

/// Build the half-line grid: Gauss–Laguerre nodes scaled by
/// [`LAGUERRE_SCALE`], weights `κ·w_i·e^{x_i}` computed in log form so large
/// rules do not overflow.
pub fn build_halfline(m: usize) -> Result<HalfLineQuadrature> {
    if m < 2 {
        return Err(Error::NodeCountTooSmall { m });
    }
    let mut s_nodes = Vec::with_capacity(m);
    let mut weights = Vec::with_capacity(m);
    let mf = m as f64;
    let mut roots = vec![0.0; m];
    for i in 0..m {
        // Stroud–Secrest initial guesses marching up from the origin.
        let mut x = if i == 0 {
            3.0 / (1.0 + 2.4 * mf)
        } else if i == 1 {
            roots[0] + 15.0 / (1.0 + 2.5 * mf)
        } else {
            let ai = i as f64 - 1.0;
            roots[i - 1] + ((1.0 + 2.55 * ai) / (1.9 * ai)) * (roots[i - 1] - roots[i - 2])
        };
        let mut dp_log = 0.0;
        let mut dp_val = 0.0;
        for _ in 0..200 {
            let (p, pm1, log_scale) = laguerre_pair(m, x);
            // L'_m(x) = m (L_m - L_{m-1}) / x, same scale factor.
            dp_val = mf * (p - pm1) / x;
            dp_log = log_scale;
            let dx = p / dp_val;
            x -= dx;
            if dx.abs() < 1e-14 * (1.0 + x) {
                break;
            }
        }
        roots[i] = x;
        // Folded weight: ln W = ln κ - ln x - 2 ln|L'_m(x)| + x.
        let ln_w = libm::log(LAGUERRE_SCALE) - libm::log(x)
            - 2.0 * (libm::log(dp_val.abs()) + dp_log)
            + x;
        s_nodes.push(LAGUERRE_SCALE * x);
        weights.push(libm::exp(ln_w));
    }
    Ok(HalfLineQuadrature { s_nodes, weights })
}

/// Whether `theta` lies strictly inside the arc window `(-ψ, 2π + ψ)`.
pub fn theta_on_arc(psi: f64, theta: f64) -> bool {
    theta > -psi && theta < 2.0 * PI + psi
}

/// A point displaced off the contour for one-sided boundary limits:
/// `(1 ∓ eps)·e^{iθ}` for the plus (inside) / minus (outside) side.
pub fn boundary_point(psi: f64, theta: f64, side: Side, eps: f64) -> Result<Complex64> {
    validate_psi(psi)?;
    if !theta_on_arc(psi, theta) {
        return Err(Error::ThetaOutsideArc { theta });
    }
    if !(eps > 0.0 && eps < 0.1) {
        return Err(Error::EpsOutOfRange { eps });
    }
    let r = match side {
        Side::Plus => 1.0 - eps,
        Side::Minus => 1.0 + eps,
    };
    Ok(Complex64::from_polar(r, theta))
}
