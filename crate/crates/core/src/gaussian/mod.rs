//! Gaussian unitaries and Gaussian states under the Fourier rotation.
//!
//! A Gaussian unitary is parameterised by a displacement `α`, a Hermitian
//! rotation matrix `φ` and a complex symmetric squeeze matrix `z`. The
//! cascade acts displacement first, then rotation, then squeezing, so its
//! complex symplectic matrix is `S_sq(z)·S_rot(φ)` and the resulting mean
//! is `S_r·(2Re α, 2Im α)`.
//!
//! Appending the Fourier rotation `R(φ_DFT)`, with `e^{iφ_DFT} = W`, maps
//! `(α, φ, z)` to `(W·α, W·φ·W†, W·z·W)`. Switching-rule identities are
//! stated in operator order, which is also the order of the symplectic
//! matrix products.
//!
//! Phase-space conventions: quadratures are ordered `(q₁…qₙ, p₁…pₙ)`, the
//! vacuum covariance is the identity, and `Ω = [[0, I], [−I, 0]]`. Complex
//! symplectic matrices satisfy `S·Ω·Sᵀ = Ω`.

mod params;
mod state;
mod symplectic;

pub use params::{
    qft_transform_params, switch_displacement_rotation, switch_rotation_rotation,
    switch_squeeze_rotation, unit_displacement, GaussianUnitaryParams,
};
pub use state::{
    qft_real_symplectic, qft_transform_covariance, qft_transform_state, real_covariance_of_state,
    symplectic_eigenvalues, CovarianceJson, GaussianState, RealCovariance, StateJson,
    COVARIANCE_SYMMETRY_TOL, THERMAL_TOL,
};
pub use symplectic::{
    bogoliubov_of_cascade, complex_symplectic, mode_to_quadrature, omega, qft_symplectic,
    qft_transform_symplectic, real_symplectic, real_symplectic_residual, rotation_symplectic,
    squeeze_symplectic, BogoliubovPair, ComplexSymplectic, REAL_FORM_TOL, SYMPLECTIC_TOL,
};
