use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{
    dft_matrix, expi_hermitian, hermitian_part, hermitian_residual, max_abs, require_square,
    symmetry_residual, ComplexMatrix, ComplexVector, SYMMETRY_TOL,
};

/// Parameters of the cascade displacement `D(α)`, rotation `R(φ)` and
/// squeeze `S(z)`.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussianUnitaryParams {
    alpha: ComplexVector,
    phi: ComplexMatrix,
    z: ComplexMatrix,
}

pub(crate) fn check_hermitian(m: &ComplexMatrix, what: &'static str) -> Result<()> {
    let res = hermitian_residual(m)?;
    if res > SYMMETRY_TOL * max_abs(m).max(1.0) {
        return Err(Error::Domain { what, residual: res });
    }
    Ok(())
}

pub(crate) fn check_symmetric(m: &ComplexMatrix, what: &'static str) -> Result<()> {
    let res = symmetry_residual(m)?;
    if res > SYMMETRY_TOL * max_abs(m).max(1.0) {
        return Err(Error::Domain { what, residual: res });
    }
    Ok(())
}

fn check_order(m: &ComplexMatrix, n: usize) -> Result<()> {
    let k = require_square(m)?;
    if k != n {
        return Err(Error::InvalidShape {
            expected: "n x n matching the displacement length",
            rows: m.nrows(),
            cols: m.ncols(),
        });
    }
    Ok(())
}

fn symmetric_part(m: &ComplexMatrix) -> ComplexMatrix {
    (m + m.transpose()).scale(0.5)
}

impl GaussianUnitaryParams {
    pub fn new(alpha: ComplexVector, phi: ComplexMatrix, z: ComplexMatrix) -> Result<Self> {
        let n = alpha.len();
        if n == 0 {
            return Err(Error::InvalidSize("at least one mode is required".into()));
        }
        check_order(&phi, n)?;
        check_order(&z, n)?;
        check_hermitian(&phi, "rotation matrix is not Hermitian")?;
        check_symmetric(&z, "squeeze matrix is not symmetric")?;
        Ok(GaussianUnitaryParams { alpha, phi, z })
    }

    /// All-zero parameters: the identity unitary on `n` modes.
    pub fn identity(n: usize) -> Result<Self> {
        GaussianUnitaryParams::new(
            ComplexVector::zeros(n),
            ComplexMatrix::zeros(n, n),
            ComplexMatrix::zeros(n, n),
        )
    }

    pub fn n(&self) -> usize {
        self.alpha.len()
    }

    pub fn alpha(&self) -> &ComplexVector {
        &self.alpha
    }

    pub fn phi(&self) -> &ComplexMatrix {
        &self.phi
    }

    pub fn z(&self) -> &ComplexMatrix {
        &self.z
    }
}

/// Effect of appending the Fourier rotation to the cascade:
/// `α′ = W·α`, `φ′ = W·φ·W†`, `z′ = W·z·W`.
pub fn qft_transform_params(p: &GaussianUnitaryParams) -> Result<GaussianUnitaryParams> {
    let w = dft_matrix(p.n())?;
    let alpha = &w * &p.alpha;
    let phi = hermitian_part(&(&w * &p.phi * w.adjoint()));
    let z = symmetric_part(&(&w * &p.z * &w));
    GaussianUnitaryParams::new(alpha, phi, z)
}

/// Switching rule `S(z)·R(φ) = R(φ)·S(z₀)` with `z = e^{iφ}·z₀·(e^{iφ})ᵀ`.
pub fn switch_squeeze_rotation(z0: &ComplexMatrix, phi: &ComplexMatrix) -> Result<ComplexMatrix> {
    let n = require_square(z0)?;
    check_order(phi, n)?;
    check_symmetric(z0, "squeeze matrix is not symmetric")?;
    check_hermitian(phi, "rotation matrix is not Hermitian")?;
    let u = expi_hermitian(phi)?;
    Ok(symmetric_part(&(&u * z0 * u.transpose())))
}

/// Switching rule `D(α)·R(φ) = R(φ)·D(β)` with `α = e^{iφ}·β`.
pub fn switch_displacement_rotation(beta: &ComplexVector, phi: &ComplexMatrix) -> Result<ComplexVector> {
    check_order(phi, beta.len())?;
    check_hermitian(phi, "rotation matrix is not Hermitian")?;
    Ok(expi_hermitian(phi)? * beta)
}

/// Switching rule `R(θ)·R(φ) = R(φ)·R(θ′)` with `θ′ = e^{−iφ}·θ·e^{iφ}`.
pub fn switch_rotation_rotation(theta: &ComplexMatrix, phi: &ComplexMatrix) -> Result<ComplexMatrix> {
    let n = require_square(theta)?;
    check_order(phi, n)?;
    check_hermitian(theta, "rotation matrix is not Hermitian")?;
    check_hermitian(phi, "rotation matrix is not Hermitian")?;
    let u = expi_hermitian(phi)?;
    Ok(hermitian_part(&(u.adjoint() * theta * &u)))
}

/// Unit displacement on mode `k` of an `n`-mode register.
pub fn unit_displacement(n: usize, k: usize) -> ComplexVector {
    let mut v = ComplexVector::zeros(n);
    v[k] = Complex64::new(1.0, 0.0);
    v
}
