//! Kernel values, the two assembly paths, LU log-determinants on known
//! matrices, and grid-doubling convergence across the working parameter
//! ranges.

use std::f64::consts::PI;

use efp_core::contour::{build_arc, build_halfline, ModelParams};
use efp_core::fredholm::{
    assemble, assemble_finite_rank, fredholm_logdet, logdet, v_diagonal, v_kernel,
};
use efp_core::{ComplexMatrix, Error};
use num_complex::Complex64;
use proptest::prelude::*;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

#[test]
fn kernel_value_at_the_probe_pair() {
    // At z₁ = -1, z₂ = i with n = 0, φ = 0, γ = 1 the bracket collapses to
    // r(i,-1) - r(-1,i) = -8i/17 and the kernel to (2 - 2i)/(17π).
    let params = ModelParams::vacuum(0, -0.3).unwrap();
    let v = v_kernel(PI, PI / 2.0, &params).unwrap();
    let exact = c(2.0, -2.0) / (17.0 * PI);
    assert!((v - exact).norm() < 1e-15);
}

#[test]
fn kernel_is_symmetric_under_exchange() {
    let params =
        ModelParams::new(3, -0.9, vec![c(0.0, 0.0), c(0.1, 0.0)], 0.7).unwrap();
    for (t1, t2) in [(2.0, 3.0), (1.1, 5.2), (PI, PI / 2.0)] {
        let a = v_kernel(t1, t2, &params).unwrap();
        let b = v_kernel(t2, t1, &params).unwrap();
        assert!((a - b).norm() < 1e-15, "pair ({t1}, {t2})");
    }
}

#[test]
fn diagonal_is_the_coincident_limit() {
    // Closed diagonal at z = -1, n = 0, φ = 0: (-i/2π)(1/4) = -i/(8π).
    let params = ModelParams::vacuum(0, -0.3).unwrap();
    let d = v_diagonal(PI, &params);
    assert!((d - c(0.0, -1.0 / (8.0 * PI))).norm() < 1e-16);

    // The off-diagonal kernel extrapolates onto it: with D(h) = V(θ, θ+h),
    // 2D(h/2) - D(h) removes the linear term of the coincident expansion.
    let params = ModelParams::new(3, -0.9, vec![c(0.0, 0.0), c(0.1, 0.0)], 1.0).unwrap();
    for theta in [2.0, PI, 3.9] {
        let mut defects = [0.0f64; 2];
        for (i, h) in [1e-3, 1e-4].into_iter().enumerate() {
            let far = v_kernel(theta, theta + h, &params).unwrap();
            let near = v_kernel(theta, theta + 0.5 * h, &params).unwrap();
            let extrapolated = 2.0 * near - far;
            defects[i] = (extrapolated - v_diagonal(theta, &params)).norm();
        }
        // Second-order extrapolation: defect ~1.5e-7 at h=1e-3 shrinking
        // a hundredfold per decade.
        assert!(defects[1] < 1e-8, "theta={theta}: {:e}", defects[1]);
        assert!(defects[0] / defects[1] > 50.0, "theta={theta}: not O(h²)");
    }

    assert_eq!(
        v_kernel(2.0, 2.0 + 1e-12, &params).unwrap_err(),
        Error::DegeneratePair
    );
}

#[test]
fn determinant_is_exactly_one_without_coupling() {
    let params = ModelParams::new(5, -1.1, vec![], 0.0).unwrap();
    let ld = fredholm_logdet(&params, 16).unwrap();
    assert_eq!(ld.log_abs, 0.0);
    assert_eq!(ld.arg, 0.0);
    assert_eq!(ld.min_pivot, 1.0);
    assert!(ld.converged);
}

#[test]
fn logdet_matches_a_hand_cofactor_expansion() {
    let rows = [
        [c(2.0, 0.0), c(1.0, 0.0), c(0.0, 1.0)],
        [c(0.0, 0.5), c(3.0, 0.0), c(1.0, 0.0)],
        [c(1.0, 0.0), c(0.0, -1.0), c(4.0, 0.0)],
    ];
    let mat = ComplexMatrix::from_fn(3, |j, k| rows[j][k]);
    let det = rows[0][0] * (rows[1][1] * rows[2][2] - rows[1][2] * rows[2][1])
        - rows[0][1] * (rows[1][0] * rows[2][2] - rows[1][2] * rows[2][0])
        + rows[0][2] * (rows[1][0] * rows[2][1] - rows[1][1] * rows[2][0]);
    let ld = logdet(&mat).unwrap();
    assert!((ld.log_abs - det.norm().ln()).abs() < 1e-13);
    assert!((ld.arg - det.arg()).abs() < 1e-13);
    assert!(!ld.converged);
}

#[test]
fn logdet_tracks_the_permutation_sign_and_rejects_singularity() {
    // An exchange matrix needs one row swap; its determinant is -1.
    let swap = ComplexMatrix::from_fn(2, |j, k| {
        if j + k == 1 { c(1.0, 0.0) } else { c(0.0, 0.0) }
    });
    let ld = logdet(&swap).unwrap();
    assert!(ld.log_abs.abs() < 1e-15);
    assert!((ld.arg - PI).abs() < 1e-15);

    let singular = ComplexMatrix::from_fn(2, |j, k| {
        if j == 0 && k == 0 { c(1.0, 0.0) } else { c(0.0, 0.0) }
    });
    assert_eq!(
        logdet(&singular).unwrap_err(),
        Error::SingularMatrix { index: 1 }
    );
}

#[test]
fn assembly_paths_agree() {
    // Closed-ratio assembly vs the half-line outer-product assembly: same
    // operator through disjoint arithmetic, so agreement is end-to-end
    // evidence for both.
    let aq = build_arc(-PI / 2.0, 32).unwrap();
    let hq = build_halfline(64).unwrap();
    for n in [0u32, 4] {
        let params =
            ModelParams::new(n, -PI / 2.0, vec![c(0.0, 0.0), c(0.1, 0.0)], 1.0).unwrap();
        let closed = assemble(&aq, &params).unwrap();
        let rank = assemble_finite_rank(&aq, &hq, &params).unwrap();
        let entry_gap = closed.sub(&rank).max_abs_entry();
        assert!(entry_gap < 1e-12, "n={n}: entries differ by {entry_gap:e}");
        let a = logdet(&closed).unwrap();
        let b = logdet(&rank).unwrap();
        assert!((a.log_abs - b.log_abs).abs() < 1e-10, "n={n}");
    }
}

#[test]
fn frozen_value_regression() {
    // Half-circle arc, empty symbol: pinned against an independent
    // quadrature run. Guards the whole pipeline against silent drift.
    let params = ModelParams::vacuum(0, -PI / 2.0).unwrap();
    let ld = fredholm_logdet(&params, 64).unwrap();
    assert!((ld.log_abs - (-0.17225360096693)).abs() < 1e-10);
    assert!(ld.converged);
    assert!(ld.real_positive());
    assert!(ld.trusted());
    assert!(ld.min_pivot > 0.9);
}

#[test]
fn doubling_confirms_convergence_where_expected() {
    // Half circle: deep into the n range, determinants stay real, positive,
    // and strictly decreasing.
    let mut prev = f64::INFINITY;
    for n in 0..=9u32 {
        let params = ModelParams::vacuum(n, -PI / 2.0).unwrap();
        let ld = fredholm_logdet(&params, 64).unwrap();
        assert!(ld.converged, "n={n}");
        assert!(ld.trusted(), "n={n}");
        assert!(ld.arg.abs() < 1e-9, "n={n}: arg {:e}", ld.arg);
        assert!(ld.log_abs < prev, "n={n}");
        prev = ld.log_abs;
    }
    // Wide arc: even easier despite the larger |log|.
    for n in 0..=12u32 {
        let params = ModelParams::vacuum(n, -2.2).unwrap();
        let ld = fredholm_logdet(&params, 64).unwrap();
        assert!(ld.converged, "n={n}");
        assert!(ld.arg.abs() < 1e-9, "n={n}");
    }
    // Narrow arc: fine at small n…
    for n in 0..=5u32 {
        let params = ModelParams::vacuum(n, -0.8).unwrap();
        let ld = fredholm_logdet(&params, 64).unwrap();
        assert!(ld.converged, "n={n}");
        assert!(ld.arg.abs() < 1e-9, "n={n}");
    }
    // …but the determinant collapses so fast in n that doubling stops
    // confirming, and the result says so instead of pretending.
    let params = ModelParams::vacuum(11, -0.8).unwrap();
    let ld = fredholm_logdet(&params, 64).unwrap();
    assert!(!ld.converged);
}

proptest! {
    #[test]
    fn exchange_symmetry_holds_across_the_arc(
        t1 in 0.4f64..6.0,
        t2 in 0.4f64..6.0,
        n in 0u32..6,
    ) {
        prop_assume!((t1 - t2).abs() > 1e-3);
        let params = ModelParams::vacuum(n, -1.2).unwrap();
        if let Ok(a) = v_kernel(t1, t2, &params) {
            let b = v_kernel(t2, t1, &params).unwrap();
            prop_assert!((a - b).norm() < 1e-15);
        }
    }
}
