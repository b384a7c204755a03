//! Error taxonomy shared by every numerical module.

use alloc::boxed::Box;
use core::fmt;

/// Failure modes of the numerical layer.
///
/// Construction errors (`PsiOutOfRange`, `NodeCountTooSmall`, …) come from
/// grid and parameter builders; evaluation errors (`OnContour`,
/// `SingularPoint`, …) from pointwise kernel/branch functions. `KernelAt`
/// tags a kernel error with the matrix entry being assembled so a failing
/// node pair can be located.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Arc opening angle outside the admissible window.
    PsiOutOfRange {
        /// Offending angle.
        psi: f64,
    },
    /// Coupling constant outside `[0, 1]`.
    GammaOutOfRange {
        /// Offending coupling.
        gamma: f64,
    },
    /// Quadrature rule with fewer than two nodes.
    NodeCountTooSmall {
        /// Requested node count.
        m: usize,
    },
    /// Angle not strictly inside the arc's angular window.
    ThetaOutsideArc {
        /// Offending angle.
        theta: f64,
    },
    /// Boundary-limit offset outside `(0, 0.1)`.
    EpsOutOfRange {
        /// Offending offset.
        eps: f64,
    },
    /// Evaluation point lies on the cut contour.
    OnContour,
    /// Evaluation point too close to an arc endpoint for the root branches.
    AtBranchPoint,
    /// Evaluation at (or too close to) the essential singularity `z = 1`.
    SingularPoint,
    /// The r-factor denominator is below its safety threshold.
    NearSingularDenominator,
    /// A half-line integrand fails its decay condition.
    DivergentIntegrand,
    /// An exponent would overflow double precision.
    RangeExceeded,
    /// Off-diagonal kernel requested at a coincident node pair.
    DegeneratePair,
    /// Sampling radius for a lensing check must be positive and away from 1.
    RadiusNotOffCircle {
        /// Offending radius.
        radius: f64,
    },
    /// Exact zero pivot during elimination.
    SingularMatrix {
        /// Elimination step at which the zero pivot appeared.
        index: usize,
    },
    /// A kernel error tagged with the matrix entry being assembled.
    KernelAt {
        /// Row index of the entry.
        row: usize,
        /// Column index of the entry.
        col: usize,
        /// Underlying kernel error.
        source: Box<Error>,
    },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::PsiOutOfRange { psi } => {
                write!(f, "arc angle psi = {psi} outside the admissible window")
            }
            Error::GammaOutOfRange { gamma } => {
                write!(f, "coupling gamma = {gamma} outside [0, 1]")
            }
            Error::NodeCountTooSmall { m } => {
                write!(f, "node count {m} too small (need at least 2)")
            }
            Error::ThetaOutsideArc { theta } => {
                write!(f, "angle theta = {theta} not strictly inside the arc")
            }
            Error::EpsOutOfRange { eps } => {
                write!(f, "boundary offset eps = {eps} outside (0, 0.1)")
            }
            Error::OnContour => write!(f, "evaluation point lies on the cut contour"),
            Error::AtBranchPoint => write!(f, "evaluation point too close to a branch point"),
            Error::SingularPoint => write!(f, "evaluation at the singular point z = 1"),
            Error::NearSingularDenominator => {
                write!(f, "r-factor denominator below safety threshold")
            }
            Error::DivergentIntegrand => write!(f, "half-line integrand does not decay"),
            Error::RangeExceeded => write!(f, "exponent out of double-precision range"),
            Error::DegeneratePair => {
                write!(f, "off-diagonal kernel requested at coincident points")
            }
            Error::RadiusNotOffCircle { radius } => {
                write!(f, "radius {radius} invalid: must be positive and away from 1")
            }
            Error::SingularMatrix { index } => {
                write!(f, "exact zero pivot at elimination step {index}")
            }
            Error::KernelAt { row, col, source } => {
                write!(f, "kernel failure at matrix entry ({row}, {col}): {source}")
            }
        }
    }
}

impl core::error::Error for Error {
    fn source(&self) -> Option<&(dyn core::error::Error + 'static)> {
        match self {
            Error::KernelAt { source, .. } => Some(source.as_ref()),
            _ => None,
        }
    }
}
