use serde::{Deserialize, Serialize};

use super::params::{qft_transform_params, GaussianUnitaryParams};
use super::symplectic::{
    bogoliubov_of_cascade, complex_symplectic, omega, qft_symplectic, real_symplectic,
};
use crate::error::{Error, Result};
use crate::io::{MatrixJson, VectorJson};
use crate::linalg::{hermitian_eigenvalues, to_complex, RealMatrix, RealVector};

/// Thermal symplectic eigenvalues may undershoot 1 by this much.
pub const THERMAL_TOL: f64 = 1e-12;
/// Relative symmetry tolerance of a covariance matrix.
pub const COVARIANCE_SYMMETRY_TOL: f64 = 1e-12;

/// Gaussian state produced by the cascade from a thermal state with
/// symplectic eigenvalues `thermal` (all ones for the vacuum).
#[derive(Debug, Clone, PartialEq)]
pub struct GaussianState {
    params: GaussianUnitaryParams,
    thermal: Vec<f64>,
}

impl GaussianState {
    pub fn new(params: GaussianUnitaryParams, thermal: Vec<f64>) -> Result<Self> {
        if thermal.len() != params.n() {
            return Err(Error::InvalidSize(format!(
                "{} thermal eigenvalues for {} modes",
                thermal.len(),
                params.n()
            )));
        }
        if let Some(&nu) = thermal.iter().find(|&&nu| !(nu >= 1.0 - THERMAL_TOL)) {
            return Err(Error::Domain {
                what: "thermal symplectic eigenvalue below 1",
                residual: 1.0 - nu,
            });
        }
        Ok(GaussianState { params, thermal })
    }

    /// Pure state generated from the vacuum.
    pub fn pure(params: GaussianUnitaryParams) -> Self {
        let n = params.n();
        GaussianState {
            params,
            thermal: vec![1.0; n],
        }
    }

    pub fn vacuum(n: usize) -> Result<Self> {
        Ok(GaussianState::pure(GaussianUnitaryParams::identity(n)?))
    }

    pub fn n(&self) -> usize {
        self.params.n()
    }

    pub fn params(&self) -> &GaussianUnitaryParams {
        &self.params
    }

    pub fn thermal(&self) -> &[f64] {
        &self.thermal
    }
}

/// Mean vector and covariance matrix over `(q₁…qₙ, p₁…pₙ)`, in units where
/// the vacuum covariance is the identity.
#[derive(Debug, Clone, PartialEq)]
pub struct RealCovariance {
    mean: RealVector,
    v: RealMatrix,
}

impl RealCovariance {
    pub fn new(mean: RealVector, v: RealMatrix) -> Result<Self> {
        let dim = mean.len();
        if dim == 0 || dim % 2 != 0 || v.nrows() != dim || v.ncols() != dim {
            return Err(Error::InvalidShape {
                expected: "2n x 2n matching a mean of length 2n",
                rows: v.nrows(),
                cols: v.ncols(),
            });
        }
        let asym = (&v - v.transpose()).amax();
        if asym > COVARIANCE_SYMMETRY_TOL * v.amax().max(1.0) {
            return Err(Error::Domain {
                what: "covariance matrix is not symmetric",
                residual: asym,
            });
        }
        let v = (&v + v.transpose()) * 0.5;
        let min_eig = v.clone().symmetric_eigen().eigenvalues.min();
        if !(min_eig > 0.0) {
            return Err(Error::Domain {
                what: "covariance matrix is not positive definite",
                residual: -min_eig,
            });
        }
        Ok(RealCovariance { mean, v })
    }

    pub fn n(&self) -> usize {
        self.mean.len() / 2
    }

    pub fn mean(&self) -> &RealVector {
        &self.mean
    }

    pub fn v(&self) -> &RealMatrix {
        &self.v
    }
}

/// `(2·Re α, 2·Im α)`: quadrature means of a coherent amplitude.
fn quadrature_mean(params: &GaussianUnitaryParams) -> RealVector {
    let n = params.n();
    let a = params.alpha();
    RealVector::from_fn(2 * n, |i, _| {
        if i < n {
            2.0 * a[i].re
        } else {
            2.0 * a[i - n].im
        }
    })
}

/// Mean `S_r·(2Re α, 2Im α)` and covariance `S_r·diag(ν, ν)·S_rᵀ`.
pub fn real_covariance_of_state(st: &GaussianState) -> Result<RealCovariance> {
    let s_c = complex_symplectic(&bogoliubov_of_cascade(&st.params)?)?;
    let s_r = real_symplectic(&s_c)?;
    let n = st.n();
    let th = RealVector::from_fn(2 * n, |i, _| st.thermal[i % n]);
    let v = &s_r * RealMatrix::from_diagonal(&th) * s_r.transpose();
    let mean = &s_r * quadrature_mean(&st.params);
    RealCovariance::new(mean, (&v + v.transpose()) * 0.5)
}

/// Real form of the Fourier rotation, `L·diag(W, W̄)·L†`, which is orthogonal.
pub fn qft_real_symplectic(n: usize) -> Result<RealMatrix> {
    real_symplectic(&qft_symplectic(n)?)
}

/// Conjugates the covariance by the real Fourier symplectic and rotates the mean.
pub fn qft_transform_covariance(c: &RealCovariance) -> Result<RealCovariance> {
    let s = qft_real_symplectic(c.n())?;
    let v = &s * &c.v * s.transpose();
    RealCovariance::new(&s * &c.mean, (&v + v.transpose()) * 0.5)
}

/// Fourier-transformed parameters; the thermal core is left unchanged.
pub fn qft_transform_state(st: &GaussianState) -> Result<GaussianState> {
    GaussianState::new(qft_transform_params(&st.params)?, st.thermal.clone())
}

/// Williamson symplectic eigenvalues of a covariance matrix, ascending:
/// the positive eigenvalues of the Hermitian matrix `i·V^{1/2}·Ω·V^{1/2}`.
pub fn symplectic_eigenvalues(v: &RealMatrix) -> Result<Vec<f64>> {
    if !v.is_square() || v.nrows() % 2 != 0 {
        return Err(Error::InvalidShape {
            expected: "2n x 2n",
            rows: v.nrows(),
            cols: v.ncols(),
        });
    }
    let n = v.nrows() / 2;
    let eig = ((v + v.transpose()) * 0.5).symmetric_eigen();
    if let Some(&lam) = eig.eigenvalues.iter().find(|&&l| !(l > 0.0)) {
        return Err(Error::Domain {
            what: "covariance matrix is not positive definite",
            residual: -lam,
        });
    }
    let sqrt_diag = RealMatrix::from_diagonal(&eig.eigenvalues.map(f64::sqrt));
    let root = &eig.eigenvectors * sqrt_diag * eig.eigenvectors.transpose();
    let k = &root * omega(n) * &root;
    let h = to_complex(&k) * crate::linalg::I;
    let ev = hermitian_eigenvalues(&h)?;
    Ok(ev[n..].to_vec())
}

/// On-disk form of a [`GaussianState`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StateJson {
    pub n: usize,
    pub alpha: VectorJson,
    pub phi: MatrixJson,
    pub z: MatrixJson,
    pub thermal: Vec<f64>,
}

impl StateJson {
    pub fn from_state(st: &GaussianState) -> Self {
        StateJson {
            n: st.n(),
            alpha: VectorJson::from_vector(st.params.alpha()),
            phi: MatrixJson::from_matrix(st.params.phi()),
            z: MatrixJson::from_matrix(st.params.z()),
            thermal: st.thermal.clone(),
        }
    }

    pub fn to_state(&self) -> Result<GaussianState> {
        let alpha = self.alpha.to_vector()?;
        if alpha.len() != self.n {
            return Err(Error::Format(format!(
                "state declares {} modes but alpha has {}",
                self.n,
                alpha.len()
            )));
        }
        if !self.thermal.iter().all(|x| x.is_finite()) {
            return Err(Error::Format("thermal eigenvalues must be finite".into()));
        }
        let params = GaussianUnitaryParams::new(alpha, self.phi.to_matrix()?, self.z.to_matrix()?)?;
        GaussianState::new(params, self.thermal.clone())
    }
}

/// On-disk form of a [`RealCovariance`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CovarianceJson {
    pub n: usize,
    pub mean: Vec<f64>,
    pub v: MatrixJson,
}

impl CovarianceJson {
    pub fn from_covariance(c: &RealCovariance) -> Self {
        CovarianceJson {
            n: c.n(),
            mean: c.mean.iter().copied().collect(),
            v: MatrixJson::from_real(&c.v),
        }
    }
}
