//! The deformation chain: operator-valued symbol blocks, their triangular
//! factorization, the conjugated and limiting jump matrices, the closed-form
//! limit solution, and the asymptotic predictions everything converges to.
//!
//! The chain, link by link:
//!
//! 1. the 2×2 operator matrix whose determinant-on-the-arc equals the scalar
//!    Fredholm determinant ([`m_op_entry`]);
//! 2. its upper·lower factorization, valid after compressing away the
//!    rank-deficient directions ([`factor_check_im_ip`]);
//! 3. off-circle decay of the triangular factors, the reason the lensed
//!    contours contribute nothing in the large-`n` limit
//!    ([`decay_check_lensing`]);
//! 4. the scalar jump on the arc ([`jump_im_p`]), its `g`-conjugated form
//!    with bounded entries ([`conjugated_jump`], [`conjugation_identity_residual`]),
//!    and its constant-off-diagonal limit ([`limit_jump`]);
//! 5. explicit diagonalization of the limit jump ([`diagonalize`]) and the
//!    closed-form matrix solving it ([`f_tilde`]), normalized to `I` at
//!    infinity;
//! 6. the numbers the chain predicts: the `(2,2)` entry at the origin and
//!    the asymptotic slope of `log det` ([`predictions`]).

use core::f64::consts::PI;
use num_complex::Complex64;

use crate::branches::{beta_fn, boundary_values, BoundaryFn, BranchContext};
use crate::contour::{theta_on_arc, HalfLineQuadrature, ModelParams};
use crate::error::Error;
use crate::matrix::ComplexMatrix;
use crate::opkernels::{
    p_kernel, p_operator, q_kernel, q_operator, q_operator_reciprocal, SINGULAR_POINT_TOL,
};
use crate::Result;

/// Dense 2×2 complex matrix — the jump matrices and the limit solution are
/// all 2×2, and keeping them on the stack keeps the chain checks allocation
/// free.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat2 {
    /// Entries in row-major order.
    pub e: [[Complex64; 2]; 2],
}

impl Mat2 {
    /// Build from rows.
    pub fn new(e: [[Complex64; 2]; 2]) -> Self {
        Self { e }
    }

    /// Identity.
    pub fn identity() -> Self {
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        Self::new([[one, zero], [zero, one]])
    }

    /// Matrix product.
    pub fn mul(&self, rhs: &Self) -> Self {
        let mut out = [[Complex64::new(0.0, 0.0); 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                out[i][j] = self.e[i][0] * rhs.e[0][j] + self.e[i][1] * rhs.e[1][j];
            }
        }
        Self::new(out)
    }

    /// Entrywise difference.
    pub fn sub(&self, rhs: &Self) -> Self {
        let mut out = self.e;
        for i in 0..2 {
            for j in 0..2 {
                out[i][j] -= rhs.e[i][j];
            }
        }
        Self::new(out)
    }

    /// Determinant.
    pub fn det(&self) -> Complex64 {
        self.e[0][0] * self.e[1][1] - self.e[0][1] * self.e[1][0]
    }

    /// Inverse through the adjugate.
    pub fn inverse(&self) -> Result<Self> {
        let d = self.det();
        if d.norm() == 0.0 {
            return Err(Error::SingularMatrix { index: 0 });
        }
        Ok(Self::new([
            [self.e[1][1] / d, -self.e[0][1] / d],
            [-self.e[1][0] / d, self.e[0][0] / d],
        ]))
    }

    /// Largest entry magnitude.
    pub fn max_abs_entry(&self) -> f64 {
        let mut m = 0.0f64;
        for row in &self.e {
            for v in row {
                m = m.max(v.norm());
            }
        }
        m
    }
}

/// One block of the operator-valued symbol: a half-line kernel value plus a
/// flag for the identity ("delta") part that a kernel value cannot carry.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OperatorEntry {
    /// Kernel part of the block at the requested `(s, t)`.
    pub value: Complex64,
    /// Whether the block also contains the identity operator.
    pub has_delta: bool,
}

/// Block `(row, col)` of the 2×2 operator-valued symbol at spectral point
/// `z`, evaluated at half-line coordinates `(s, t)`:
///
/// ```text
/// ⎡ δ + γ·P(t,s|z)      -γ·Q(s,t|z)·z^{-n}e^{φ} ⎤
/// ⎣ +γ·Q(s,t|1/z)·z^{n}e^{-φ}      δ - γ·P(s,t|z) ⎦
/// ```
///
/// Rows and columns are 0-based; anything past 1 is a programming error.
pub fn m_op_entry(
    row: usize,
    col: usize,
    z: Complex64,
    s: f64,
    t: f64,
    params: &ModelParams,
) -> Result<OperatorEntry> {
    assert!(row <= 1 && col <= 1, "block index out of range");
    let g = Complex64::new(params.gamma, 0.0);
    let n = params.n as i32;
    match (row, col) {
        (0, 0) => Ok(OperatorEntry {
            value: g * p_kernel(z, t, s)?,
            has_delta: true,
        }),
        (1, 1) => Ok(OperatorEntry {
            value: -g * p_kernel(z, s, t)?,
            has_delta: true,
        }),
        (0, 1) => {
            let weight = z.powi(-n) * params.phi(z).exp();
            Ok(OperatorEntry {
                value: -g * q_kernel(z, s, t)? * weight,
                has_delta: false,
            })
        }
        _ => {
            let zr = 1.0 / z;
            let weight = z.powi(n) * (-params.phi(z)).exp();
            Ok(OperatorEntry {
                value: g * q_kernel(zr, s, t)? * weight,
                has_delta: false,
            })
        }
    }
}

/// Stack four equal-dimension blocks into one matrix.
fn block2(
    a: &ComplexMatrix,
    b: &ComplexMatrix,
    c: &ComplexMatrix,
    d: &ComplexMatrix,
) -> ComplexMatrix {
    let m = a.dim();
    ComplexMatrix::from_fn(2 * m, |i, j| {
        let (bi, ii) = (i / m, i % m);
        let (bj, jj) = (j / m, j % m);
        match (bi, bj) {
            (0, 0) => a[(ii, jj)],
            (0, 1) => b[(ii, jj)],
            (1, 0) => c[(ii, jj)],
            _ => d[(ii, jj)],
        }
    })
}

fn factor_residual(
    z: Complex64,
    params: &ModelParams,
    hq: &HalfLineQuadrature,
    compress: bool,
) -> Result<f64> {
    let m = hq.node_count();
    let eye = ComplexMatrix::identity(m);
    let zero = ComplexMatrix::zeros(m);
    let n = params.n as i32;
    let wq = z.powi(-n) * params.phi(z).exp();
    let wr = z.powi(n) * (-params.phi(z)).exp();
    let q_z = q_operator(z, hq)?.scale(wq);
    let q_rec = q_operator_reciprocal(z, hq)?.scale(wr);
    let neg_q_z = q_z.scale(Complex64::new(-1.0, 0.0));
    let neg_q_rec = q_rec.scale(Complex64::new(-1.0, 0.0));

    let upper = block2(&eye, &neg_q_z, &zero, &eye);
    let lower = block2(&eye, &zero, &neg_q_rec, &eye);
    let full = block2(&eye, &neg_q_z, &q_rec, &eye);

    let diff = upper.mul(&lower.inverse()?).sub(&full);
    if !compress {
        return Ok(diff.max_abs_entry());
    }
    // Compress with C = I - P̂ on both half-line factors: the factorization
    // mismatch lives entirely in the range of P, which the chain removes
    // before this identity is used.
    let c = ComplexMatrix::identity(m).sub(&p_operator(z, hq)?);
    let cc = block2(&c, &zero, &zero, &c);
    Ok(cc.mul(&diff).mul(&cc).max_abs_entry())
}

/// Residual of the upper·lower factorization of the operator symbol at an
/// off-circle point `z`, compressed to the complement of the `P`-range.
///
/// Small (quadrature-level) residuals certify that the triangular factors
/// reproduce the symbol wherever the chain actually uses them.
pub fn factor_check_im_ip(
    z: Complex64,
    params: &ModelParams,
    hq: &HalfLineQuadrature,
) -> Result<f64> {
    factor_residual(z, params, hq, true)
}

/// The same residual without the compression: O(1), because the factorization
/// genuinely fails on the `P`-range. Kept as the negative control that shows
/// the compression in [`factor_check_im_ip`] is doing real work.
pub fn factor_check_im_ip_uncompressed(
    z: Complex64,
    params: &ModelParams,
    hq: &HalfLineQuadrature,
) -> Result<f64> {
    factor_residual(z, params, hq, false)
}

/// Sup of the triangular-factor magnitude over a sector of the circle of
/// given radius: the lensing estimate.
///
/// For `radius > 1` this samples the upper factor's off-diagonal
/// `|Q(s,t|z)|·|z^{-n}|·|e^{φ(z)}|`, for `radius < 1` the lower factor's
/// `|Q(s,t|1/z)|·|z^{n}|·|e^{-φ(z)}|`; in both cases the bound decays
/// geometrically in `n`, which is what lets the lensed contours drop out.
pub fn decay_check_lensing(params: &ModelParams, radius: f64, samples: usize) -> Result<f64> {
    if !(radius > 0.0) || (radius - 1.0).abs() < 1e-9 {
        return Err(Error::RadiusNotOffCircle { radius });
    }
    let st_grid = [0.0, 0.5, 1.0, 2.0];
    let nf = params.n as f64;
    let mut sup = 0.0f64;
    for j in 0..samples.max(1) {
        let x = if samples > 1 {
            0.9 * (-1.0 + 2.0 * j as f64 / (samples - 1) as f64)
        } else {
            0.0
        };
        let theta = PI + (PI + params.psi) * x;
        let z = Complex64::from_polar(radius, theta);
        let phi = params.phi(z);
        for &s in &st_grid {
            for &t in &st_grid {
                let mag = if radius > 1.0 {
                    q_kernel(z, s, t)?.norm() * libm::pow(radius, -nf) * libm::exp(phi.re)
                } else {
                    q_kernel(1.0 / z, s, t)?.norm() * libm::pow(radius, nf) * libm::exp(-phi.re)
                };
                sup = sup.max(mag);
            }
        }
    }
    Ok(sup)
}

/// The scalar 2×2 jump on the arc after eliminating the half-line
/// directions:
///
/// ```text
/// ⎡ 2                    -((1-z)/2)·z^{-n}e^{φ} ⎤
/// ⎣ (2/(1-z))·z^{n}e^{-φ}            0          ⎦
/// ```
pub fn jump_im_p(theta: f64, params: &ModelParams) -> Result<Mat2> {
    if !theta_on_arc(params.psi, theta) {
        return Err(Error::ThetaOutsideArc { theta });
    }
    let z = Complex64::from_polar(1.0, theta);
    let n = params.n as i32;
    let phi = params.phi(z);
    let two = Complex64::new(2.0, 0.0);
    Ok(Mat2::new([
        [two, -0.5 * (1.0 - z) * z.powi(-n) * phi.exp()],
        [two / (1.0 - z) * z.powi(n) * (-phi).exp(), Complex64::new(0.0, 0.0)],
    ]))
}

/// The jump after `g`-conjugation: the oscillatory `z^{±n}` factors are
/// traded for the bounded ratio `(g₊/g₋)^n`, `|g₊/g₋| < 1` on the arc.
///
/// Boundary values of `g` are Richardson-extrapolated from radial offset
/// `eps`.
pub fn conjugated_jump(
    theta: f64,
    params: &ModelParams,
    ctx: &BranchContext,
    eps: f64,
) -> Result<Mat2> {
    let z = Complex64::from_polar(1.0, theta);
    let (g_plus, g_minus) = boundary_values(BoundaryFn::G, theta, ctx, eps)?;
    let ratio = (g_plus / g_minus).powi(params.n as i32);
    let phi = params.phi(z);
    Ok(Mat2::new([
        [2.0 * ratio, -0.5 * (1.0 - z) * phi.exp()],
        [2.0 / (1.0 - z) * (-phi).exp(), Complex64::new(0.0, 0.0)],
    ]))
}

/// Residual of the conjugation identity: sandwiching [`jump_im_p`] between
/// the diagonal factors built from one-sided boundary values of `g` must
/// reproduce [`conjugated_jump`].
///
/// With `d₁ = α^{n/2} g₋^{-n}` and `d₂ = g₊^{n} α^{-n/2}` (principal square
/// root of the negative constant `α`), entry `(j,k)` of the sandwich is
/// `M_{jk} · d₁^{1-j+k̄}...` — concretely `A₀₀ = M₀₀d₁d₂`, `A₀₁ = M₀₁d₁/d₂`,
/// `A₁₀ = M₁₀d₂/d₁`, `A₁₁ = M₁₁/(d₁d₂)`; the `z^{±n}` powers cancel through
/// `g₊g₋ = α/z`.
pub fn conjugation_identity_residual(
    theta: f64,
    params: &ModelParams,
    ctx: &BranchContext,
    eps: f64,
) -> Result<f64> {
    let m = jump_im_p(theta, params)?;
    let (g_plus, g_minus) = boundary_values(BoundaryFn::G, theta, ctx, eps)?;
    let n = params.n as i32;
    let sqrt_alpha = Complex64::new(0.0, libm::sqrt(ctx.alpha.abs()));
    let alpha_half_n = sqrt_alpha.powi(n);
    let d1 = alpha_half_n * g_minus.powi(-n);
    let d2 = g_plus.powi(n) / alpha_half_n;
    let sandwich = Mat2::new([
        [m.e[0][0] * d1 * d2, m.e[0][1] * d1 / d2],
        [m.e[1][0] * d2 / d1, m.e[1][1] / (d1 * d2)],
    ]);
    Ok(sandwich.sub(&conjugated_jump(theta, params, ctx, eps)?).max_abs_entry())
}

/// The `n → ∞` limit of the conjugated jump: the diagonal dies (the
/// `(g₊/g₋)^n` ratio decays geometrically) and a constant-determinant
/// off-diagonal matrix remains.
pub fn limit_jump(theta: f64, params: &ModelParams) -> Result<Mat2> {
    if !theta_on_arc(params.psi, theta) {
        return Err(Error::ThetaOutsideArc { theta });
    }
    let z = Complex64::from_polar(1.0, theta);
    let phi = params.phi(z);
    Ok(Mat2::new([
        [Complex64::new(0.0, 0.0), -0.5 * (1.0 - z) * phi.exp()],
        [2.0 / (1.0 - z) * (-phi).exp(), Complex64::new(0.0, 0.0)],
    ]))
}

/// Explicit diagonalization of the limit jump.
#[derive(Debug, Clone, Copy)]
pub struct JumpDiagonalization {
    /// Eigenvector matrix `S = [[1, 1], [k, -k]]` with
    /// `k = (2i/(z-1))e^{-φ}`.
    pub s: Mat2,
    /// `diag(i, -i)`.
    pub d: Mat2,
    /// Closed-form inverse of `S`.
    pub s_inv: Mat2,
}

/// Diagonalize the limit jump: `S · diag(i,-i) · S^{-1}` reproduces
/// [`limit_jump`] exactly, which is what lets a scalar fourth-root solve the
/// 2×2 problem.
pub fn diagonalize(theta: f64, params: &ModelParams) -> Result<JumpDiagonalization> {
    if !theta_on_arc(params.psi, theta) {
        return Err(Error::ThetaOutsideArc { theta });
    }
    let z = Complex64::from_polar(1.0, theta);
    let phi = params.phi(z);
    let k = Complex64::new(0.0, 2.0) / (z - 1.0) * (-phi).exp();
    let one = Complex64::new(1.0, 0.0);
    let zero = Complex64::new(0.0, 0.0);
    let half = Complex64::new(0.5, 0.0);
    Ok(JumpDiagonalization {
        s: Mat2::new([[one, one], [k, -k]]),
        d: Mat2::new([[Complex64::new(0.0, 1.0), zero], [zero, Complex64::new(0.0, -1.0)]]),
        s_inv: Mat2::new([[half, half / k], [half, -half / k]]),
    })
}

/// The unnormalized limit solution for a given value of the fourth-root
/// `β`: `S·diag(β, β⁻¹)·S⁻¹` written out,
///
/// ```text
/// ⎡ (β+β⁻¹)/2                -(i(z-1)/4)e^{φ}(β-β⁻¹) ⎤
/// ⎣ (i/(z-1))e^{-φ}(β-β⁻¹)          (β+β⁻¹)/2        ⎦
/// ```
///
/// Unit determinant for every `β ≠ 0`. Taking `β` as an argument (rather
/// than computing it) lets tests inject deliberate faults — a reciprocal,
/// a stray phase, a side-dependent factor — and watch the jump residual
/// catch them.
pub fn f_tilde_core(z: Complex64, beta: Complex64, params: &ModelParams) -> Result<Mat2> {
    if (z - 1.0).norm() <= SINGULAR_POINT_TOL {
        return Err(Error::SingularPoint);
    }
    let phi = params.phi(z);
    let avg = 0.5 * (beta + 1.0 / beta);
    let dif = beta - 1.0 / beta;
    Ok(Mat2::new([
        [avg, -Complex64::new(0.0, 0.25) * (z - 1.0) * phi.exp() * dif],
        [Complex64::new(0.0, 1.0) / (z - 1.0) * (-phi).exp() * dif, avg],
    ]))
}

/// [`f_tilde_core`] normalized by the unipotent factor
/// `T = [[1, (sin ψ/4)e^{φ(z)}], [0, 1]]`, which cancels the core's residual
/// off-diagonal at infinity and restores the `→ I` normalization there.
pub fn f_tilde_from_beta(
    z: Complex64,
    beta: Complex64,
    params: &ModelParams,
) -> Result<Mat2> {
    let core = f_tilde_core(z, beta, params)?;
    let tau = 0.25 * libm::sin(params.psi) * params.phi(z).exp();
    let t = Mat2::new([
        [Complex64::new(1.0, 0.0), tau],
        [Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)],
    ]);
    Ok(t.mul(&core))
}

/// The closed-form limit solution at `z`: unit determinant, `→ I` at
/// infinity, jump [`limit_jump`] across the arc.
pub fn f_tilde(z: Complex64, ctx: &BranchContext, params: &ModelParams) -> Result<Mat2> {
    f_tilde_from_beta(z, beta_fn(z, ctx)?, params)
}

/// The `(2,2)` entry of the limit solution, exposed separately because it —
/// unlike the full matrix — stays bounded through `z = 1` and its value at
/// the origin is the asymptotic decrement of the determinant.
pub fn f_tilde_entry22(z: Complex64, ctx: &BranchContext) -> Result<Complex64> {
    let beta = beta_fn(z, ctx)?;
    Ok(0.5 * (beta + 1.0 / beta))
}

/// Jump residual of the limit solution across the arc at angle `theta`:
/// `max |F̃₊ - F̃₋·J|` with both one-sided values Richardson-extrapolated
/// from radial offset `eps`. Round-off-level when the branch conventions are
/// consistent; O(1) under any sign or side fault in `β`.
pub fn f_tilde_jump_residual(
    theta: f64,
    ctx: &BranchContext,
    params: &ModelParams,
    eps: f64,
) -> Result<f64> {
    let eval = |r: f64| -> Result<Mat2> {
        f_tilde(Complex64::from_polar(r, theta), ctx, params)
    };
    let plus = {
        let a = eval(1.0 - eps)?;
        let b = eval(1.0 - 0.5 * eps)?;
        richardson(&b, &a)
    };
    let minus = {
        let a = eval(1.0 + eps)?;
        let b = eval(1.0 + 0.5 * eps)?;
        richardson(&b, &a)
    };
    let jump = limit_jump(theta, params)?;
    Ok(plus.sub(&minus.mul(&jump)).max_abs_entry())
}

/// `2·near - far`: first-order Richardson extrapolation to the contour.
fn richardson(near: &Mat2, far: &Mat2) -> Mat2 {
    let mut out = near.e;
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = 2.0 * near.e[i][j] - far.e[i][j];
        }
    }
    Mat2::new(out)
}

/// What the chain predicts for the determinant at string length `n` and arc
/// angle `ψ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Prediction {
    /// String length.
    pub n: u32,
    /// Arc angle.
    pub psi: f64,
    /// `sin^{2n+1}(|ψ|/2)`: the predicted ratio `P(n+1)·P(n-1)/P(n)²`
    /// carried by the `(2,2)` entry of the limit solution at the origin.
    pub det_psi22: f64,
    /// `(2n+1)·ln sin(|ψ|/2)`: the same ratio in log form.
    pub log_ratio: f64,
    /// `n²·ln sin(|ψ|/2)`: leading term of `log P(n)` itself.
    pub leading_log_p: f64,
}

/// Evaluate the asymptotic predictions; `ψ` must lie strictly in `(-π, 0)`.
pub fn predictions(n: u32, psi: f64) -> Result<Prediction> {
    if !(psi > -PI && psi < 0.0) {
        return Err(Error::PsiOutOfRange { psi });
    }
    let s = -libm::sin(0.5 * psi); // = |sin(ψ/2)| for ψ ∈ (-π, 0)
    let ln_s = libm::log(s);
    let nf = n as f64;
    Ok(Prediction {
        n,
        psi,
        det_psi22: libm::pow(s, 2.0 * nf + 1.0),
        log_ratio: (2.0 * nf + 1.0) * ln_s,
        leading_log_p: nf * nf * ln_s,
    })
}
