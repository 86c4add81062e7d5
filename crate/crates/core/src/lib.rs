//! Exact and numerical verification of the relativistic Aharonov-Casher phase
//! for spin-1/2 (Dirac-Pauli) and spin-1 (Kemmer and Proca) particles.

#![allow(clippy::needless_range_loop, clippy::neg_cmp_op_on_partial_ord)]

pub mod check;
pub mod dirac;
pub mod error;
pub mod fields;
pub mod grid;
pub mod kemmer;
pub mod linalg;
pub mod phase;
pub mod proca;
pub mod quadrature;
pub mod scalar;

pub use error::{Error, Result};
pub use linalg::Matrix;
pub use scalar::{ExactScalar, Real, Scalar};

/// Dense matrix over exact Gaussian rationals.
pub type ExactMatrix = Matrix<ExactScalar>;
/// Dense complex floating-point matrix.
pub type NumericMatrix<F = f64> = Matrix<num_complex::Complex<F>>;
