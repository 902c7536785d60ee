//! Dense complex linear algebra shared by the synthesis and Gaussian modules.
//!
//! Matrix functions here only ever see normal matrices (unitary or
//! Hermitian), so they are all computed through a unitary diagonalisation:
//! Hermitian eigendecomposition for Hermitian arguments and a complex Schur
//! form for unitary ones.

use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};

pub type ComplexMatrix = DMatrix<Complex64>;
pub type ComplexVector = DVector<Complex64>;
pub type RealMatrix = DMatrix<f64>;
pub type RealVector = DVector<f64>;

pub const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

/// Relative tolerance for the `z = zᵀ` and `φ = φ†` input checks.
pub const SYMMETRY_TOL: f64 = 1e-12;

/// Tolerances used by the structural checks and self-verification steps.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    /// Unitarity, Hermiticity, symmetry.
    pub structural: f64,
    /// Reconstruction of an input from its factors.
    pub reconstruction: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance {
            structural: 1e-10,
            reconstruction: 1e-9,
        }
    }
}

/// `e^{iθ}`.
#[inline]
pub fn cis(theta: f64) -> Complex64 {
    Complex64::from_polar(1.0, theta)
}

/// Argument of `z` with the convention `arg(0) = 0`.
#[inline]
pub fn arg(z: Complex64) -> f64 {
    if z.re == 0.0 && z.im == 0.0 {
        0.0
    } else {
        z.im.atan2(z.re)
    }
}

/// Wraps an angle into the principal interval (−π, π].
pub fn wrap_phase(theta: f64) -> f64 {
    let mut t = theta % (2.0 * PI);
    if t <= -PI {
        t += 2.0 * PI;
    } else if t > PI {
        t -= 2.0 * PI;
    }
    t
}

/// Largest entry modulus.
pub fn max_abs(m: &ComplexMatrix) -> f64 {
    m.iter().fold(0.0_f64, |acc, z| acc.max(z.norm()))
}

/// `‖a − b‖_max`, or infinity when the shapes differ.
pub fn max_abs_diff(a: &ComplexMatrix, b: &ComplexMatrix) -> f64 {
    if a.shape() != b.shape() {
        return f64::INFINITY;
    }
    a.iter()
        .zip(b.iter())
        .fold(0.0_f64, |acc, (x, y)| acc.max((x - y).norm()))
}

/// `max |a_i − b_i|`; infinite when the lengths differ.
pub fn max_abs_diff_vector(a: &ComplexVector, b: &ComplexVector) -> f64 {
    if a.len() != b.len() {
        return f64::INFINITY;
    }
    a.iter().zip(b.iter()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

pub fn max_abs_diff_real(a: &RealMatrix, b: &RealMatrix) -> f64 {
    if a.shape() != b.shape() {
        return f64::INFINITY;
    }
    a.iter()
        .zip(b.iter())
        .fold(0.0_f64, |acc, (x, y)| acc.max((x - y).abs()))
}

pub fn all_finite(m: &ComplexMatrix) -> bool {
    m.iter().all(|z| z.re.is_finite() && z.im.is_finite())
}

pub(crate) fn require_square(m: &ComplexMatrix) -> Result<usize> {
    if m.nrows() != m.ncols() || m.nrows() == 0 {
        return Err(Error::InvalidShape {
            expected: "non-empty square matrix",
            rows: m.nrows(),
            cols: m.ncols(),
        });
    }
    Ok(m.nrows())
}

/// The unitary DFT matrix `W_n` with entries `exp(i·2π·r·s/n)/√n`.
pub fn dft_matrix(n: usize) -> Result<ComplexMatrix> {
    if n == 0 {
        return Err(Error::InvalidSize("DFT order must be at least 1".into()));
    }
    let scale = 1.0 / (n as f64).sqrt();
    // Reduce r·s modulo n before forming the angle so that large orders keep
    // full precision.
    Ok(ComplexMatrix::from_fn(n, n, |r, s| {
        let k = (r * s) % n;
        cis(2.0 * PI * k as f64 / n as f64) * scale
    }))
}

/// `W_n · v`.
pub fn apply_dft(v: &ComplexVector) -> Result<ComplexVector> {
    let w = dft_matrix(v.len())?;
    Ok(w * v)
}

/// `W_n^{-1} · v = W_n^* · v`.
pub fn apply_idft(v: &ComplexVector) -> Result<ComplexVector> {
    let w = dft_matrix(v.len())?;
    Ok(w.adjoint() * v)
}

/// `‖m·m† − I‖_max`.
pub fn unitarity_residual(m: &ComplexMatrix) -> Result<f64> {
    let n = require_square(m)?;
    let prod = m * m.adjoint();
    Ok(max_abs_diff(&prod, &ComplexMatrix::identity(n, n)))
}

pub fn is_unitary(m: &ComplexMatrix, tol: f64) -> Result<bool> {
    Ok(unitarity_residual(m)? <= tol)
}

pub fn hermitian_residual(m: &ComplexMatrix) -> Result<f64> {
    require_square(m)?;
    Ok(max_abs_diff(m, &m.adjoint()))
}

pub fn symmetry_residual(m: &ComplexMatrix) -> Result<f64> {
    require_square(m)?;
    Ok(max_abs_diff(m, &m.transpose()))
}

/// `(m + m†)/2`.
pub fn hermitian_part(m: &ComplexMatrix) -> ComplexMatrix {
    (m + m.adjoint()).scale(0.5)
}

/// Applies a scalar function to a Hermitian matrix through its
/// eigendecomposition: `V·diag(f(λ))·V†`.
pub fn hermitian_function<F>(h: &ComplexMatrix, f: F) -> Result<ComplexMatrix>
where
    F: Fn(f64) -> Complex64,
{
    let n = require_square(h)?;
    let eig = hermitian_part(h).symmetric_eigen();
    let mut scaled = eig.eigenvectors.clone();
    for j in 0..n {
        let fj = f(eig.eigenvalues[j]);
        for i in 0..n {
            scaled[(i, j)] *= fj;
        }
    }
    Ok(scaled * eig.eigenvectors.adjoint())
}

/// Eigenvalues of a Hermitian matrix in ascending order.
pub fn hermitian_eigenvalues(h: &ComplexMatrix) -> Result<Vec<f64>> {
    require_square(h)?;
    let mut ev: Vec<f64> = hermitian_part(h)
        .symmetric_eigen()
        .eigenvalues
        .iter()
        .copied()
        .collect();
    ev.sort_by(f64::total_cmp);
    Ok(ev)
}

/// `exp(i·h)` for Hermitian `h`.
pub fn expi_hermitian(h: &ComplexMatrix) -> Result<ComplexMatrix> {
    hermitian_function(h, cis)
}

/// Eigendecomposition of a unitary matrix: `u = Q·diag(λ)·Q†` with `Q`
/// unitary. Computed from the complex Schur form, which is diagonal for a
/// normal matrix.
pub fn unitary_eigen(u: &ComplexMatrix, tol: f64) -> Result<(ComplexMatrix, Vec<Complex64>)> {
    let n = require_square(u)?;
    let residual = unitarity_residual(u)?;
    if residual > tol {
        return Err(Error::Domain {
            what: "matrix is not unitary",
            residual,
        });
    }
    let (q, t) = nalgebra::linalg::Schur::new(u.clone()).unpack();
    let mut off = 0.0_f64;
    for j in 0..n {
        for i in 0..j {
            off = off.max(t[(i, j)].norm());
        }
    }
    // A unitary matrix has a diagonal Schur form; anything left above the
    // diagonal means the factorisation did not converge.
    if off > 1e-8 {
        return Err(Error::NumericalFailure {
            stage: "unitary Schur form",
            residual: off,
        });
    }
    let lambdas = (0..n).map(|i| t[(i, i)]).collect();
    Ok((q, lambdas))
}

/// Hermitian phase matrix `φ` with `exp(iφ) = u`, eigenphases taken in the
/// principal branch (−π, π].
pub fn hermitian_log(u: &ComplexMatrix) -> Result<ComplexMatrix> {
    hermitian_log_with(u, Tolerance::default())
}

pub fn hermitian_log_with(u: &ComplexMatrix, tol: Tolerance) -> Result<ComplexMatrix> {
    let n = require_square(u)?;
    let (q, lambdas) = unitary_eigen(u, tol.structural)?;
    let mut scaled = q.clone();
    for (j, lambda) in lambdas.iter().enumerate() {
        let mut theta = arg(*lambda);
        // −1 can come out of the Schur form as −1 − 0i; keep it on the +π side.
        if theta <= -PI + 1e-12 {
            theta = PI;
        }
        for i in 0..n {
            scaled[(i, j)] *= theta;
        }
    }
    let phi = hermitian_part(&(scaled * q.adjoint()));
    let check = max_abs_diff(&expi_hermitian(&phi)?, u);
    if check > tol.reconstruction {
        return Err(Error::NumericalFailure {
            stage: "hermitian_log reconstruction",
            residual: check,
        });
    }
    Ok(phi)
}

/// Factors of the polar decomposition `z = r·e^{iθ}` of a complex symmetric
/// matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct SymmetricPolar {
    /// Hermitian positive semidefinite factor `(z·z†)^{1/2}`.
    pub r: ComplexMatrix,
    /// Unitary factor `e^{iθ}`.
    pub exp_i_theta: ComplexMatrix,
}

/// Polar decomposition `z = r·e^{iθ}` of a complex symmetric matrix.
///
/// On the null space of `r` the unitary factor is completed with the
/// identity whenever that subspace is invariant under complex conjugation
/// (always the case for real `z`, including `z = 0`). Otherwise the
/// completion maps `null(z)` onto `null(r)` through `A₀·A₀ᵀ`, where the
/// columns of `A₀` span `null(r)`.
pub fn polar_decompose_symmetric(z: &ComplexMatrix) -> Result<SymmetricPolar> {
    polar_decompose_symmetric_with(z, Tolerance::default())
}

pub fn polar_decompose_symmetric_with(
    z: &ComplexMatrix,
    tol: Tolerance,
) -> Result<SymmetricPolar> {
    let n = require_square(z)?;
    let sym = symmetry_residual(z)?;
    if sym > SYMMETRY_TOL * max_abs(z).max(1.0) {
        return Err(Error::Domain {
            what: "squeeze matrix is not symmetric",
            residual: sym,
        });
    }
    let svd = z.clone().svd(true, true);
    let left = svd.u.expect("svd computed with u");
    let right_adj = svd.v_t.expect("svd computed with v_t");
    let sigma = &svd.singular_values;
    let sigma_max = sigma.iter().copied().fold(0.0_f64, f64::max);
    let cutoff = 1e-12 * sigma_max.max(1.0);

    let mut r = ComplexMatrix::zeros(n, n);
    let mut unitary = ComplexMatrix::zeros(n, n);
    let mut null_cols = Vec::new();
    for k in 0..n {
        let a = left.column(k);
        if sigma[k] > cutoff {
            r += (a * a.adjoint()).scale(sigma[k]);
            unitary += a * right_adj.row(k);
        } else {
            null_cols.push(k);
        }
    }
    if !null_cols.is_empty() {
        let a0 = left.select_columns(null_cols.iter());
        let projector = &a0 * a0.adjoint();
        let conj_gap = max_abs_diff(&projector, &projector.map(|c| c.conj()));
        if conj_gap <= tol.structural {
            unitary += projector;
        } else {
            unitary += &a0 * a0.transpose();
        }
    }
    let r = hermitian_part(&r);

    let recon = max_abs_diff(&(&r * &unitary), z);
    if recon > tol.reconstruction {
        return Err(Error::NumericalFailure {
            stage: "polar reconstruction",
            residual: recon,
        });
    }
    Ok(SymmetricPolar {
        r,
        exp_i_theta: unitary,
    })
}

/// Embeds a square `block` into the identity of order `n` starting at row
/// and column `offset`.
pub fn embed(block: &ComplexMatrix, n: usize, offset: usize) -> ComplexMatrix {
    let k = block.nrows();
    assert!(offset + k <= n, "block does not fit");
    let mut out = ComplexMatrix::identity(n, n);
    out.view_mut((offset, offset), (k, k)).copy_from(block);
    out
}

/// 2×2 block matrix `[[a, b], [c, d]]` from equally sized square blocks.
pub fn block2(
    a: &ComplexMatrix,
    b: &ComplexMatrix,
    c: &ComplexMatrix,
    d: &ComplexMatrix,
) -> ComplexMatrix {
    let n = a.nrows();
    let mut out = ComplexMatrix::zeros(2 * n, 2 * n);
    out.view_mut((0, 0), (n, n)).copy_from(a);
    out.view_mut((0, n), (n, n)).copy_from(b);
    out.view_mut((n, 0), (n, n)).copy_from(c);
    out.view_mut((n, n), (n, n)).copy_from(d);
    out
}

pub fn to_complex(m: &RealMatrix) -> ComplexMatrix {
    m.map(|x| Complex64::new(x, 0.0))
}
