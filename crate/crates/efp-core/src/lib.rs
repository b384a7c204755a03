//! Numerics for the emptiness-formation determinant `det(I + V)` of an
//! integrable kernel living on a unit-circle arc.
//!
//! The library is organized as the computation is: [`contour`] builds the
//! quadrature grids (Gauss–Legendre on the arc, folded Gauss–Laguerre on the
//! half-line), [`branches`] provides the scalar multivalued functions cut
//! along the arc (square root, g-function, quartic-root β), [`opkernels`]
//! the operator-valued kernel ingredients on L²[0, ∞), [`fredholm`] the
//! kernel assembly and the Nyström log-determinant engine, and
//! [`asymptotics`] every jump matrix of the steepest-descent deformation
//! chain together with the closed-form limit solution and the predicted
//! asymptotic values.
//!
//! The crate is `no_std` (with `alloc`); all I/O lives in the companion
//! CLI crate.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod asymptotics;
pub mod branches;
pub mod contour;
pub mod error;
pub mod fredholm;
pub mod matrix;
pub mod opkernels;
pub mod util;

pub use error::Error;
pub use matrix::ComplexMatrix;

/// Crate-wide result alias.
pub type Result<T> = core::result::Result<T, Error>;
