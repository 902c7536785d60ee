//! Continuous-variable quantum Fourier transform: linear-optical circuit
//! synthesis and the action of the transform on Gaussian states.
//!
//! * [`murnaghan`] factorises any unitary into beam splitters and phase
//!   shifters; [`fftsynth`] builds the `N`-point Fourier circuit with
//!   `O(N log N)` components.
//! * [`circuit`] holds the gate-level representation, evaluation and gate
//!   counting shared by both.
//! * [`gaussian`] maps displacement, rotation and squeeze parameters,
//!   symplectic matrices and covariance matrices through the transform.

// Negated comparisons such as `!(x >= tol)` are used on purpose: they
// also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod circuit;
pub mod error;
pub mod fftsynth;
pub mod gaussian;
pub mod io;
pub mod linalg;
pub mod murnaghan;
pub mod sampling;

pub use circuit::{evaluate, gate_census, gate_matrix, Census, Circuit, Gate};
pub use error::{Error, Result};
pub use fftsynth::{decimate_once, predicted_census, synthesize_fft, SubBlocks};
pub use gaussian::{GaussianState, GaussianUnitaryParams, RealCovariance};
pub use linalg::{dft_matrix, ComplexMatrix, ComplexVector, RealMatrix, RealVector, Tolerance};
pub use murnaghan::{factorize, reduce_once, ReductionStep};
pub use num_complex::Complex64;
