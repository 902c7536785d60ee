use num_complex::Complex64;

use super::params::GaussianUnitaryParams;
use crate::error::{Error, Result};
use crate::linalg::{
    dft_matrix, expi_hermitian, hermitian_function, max_abs, max_abs_diff, polar_decompose_symmetric,
    ComplexMatrix, RealMatrix,
};

/// Tolerance of the symplectic conditions, relative to `max(1, ‖S‖²)`.
pub const SYMPLECTIC_TOL: f64 = 1e-9;

/// Bogoliubov matrices `(E, F)` of the map `a ↦ E·a + F·a†`.
#[derive(Debug, Clone, PartialEq)]
pub struct BogoliubovPair {
    pub e: ComplexMatrix,
    pub f: ComplexMatrix,
}

impl BogoliubovPair {
    pub fn new(e: ComplexMatrix, f: ComplexMatrix) -> Result<Self> {
        if !e.is_square() || e.shape() != f.shape() {
            return Err(Error::InvalidShape {
                expected: "two square matrices of equal order",
                rows: f.nrows(),
                cols: f.ncols(),
            });
        }
        let pair = BogoliubovPair { e, f };
        let res = pair.residual();
        if res > SYMPLECTIC_TOL * pair.scale() {
            return Err(Error::Domain {
                what: "Bogoliubov matrices violate the symplectic conditions",
                residual: res,
            });
        }
        Ok(pair)
    }

    pub fn n(&self) -> usize {
        self.e.nrows()
    }

    fn scale(&self) -> f64 {
        max_abs(&self.e).max(max_abs(&self.f)).max(1.0).powi(2)
    }

    /// Largest violation of `E·E† − F·F† = I` and `E·Fᵀ = F·Eᵀ`.
    pub fn residual(&self) -> f64 {
        let n = self.n();
        let id = ComplexMatrix::identity(n, n);
        let a = &self.e * self.e.adjoint() - &self.f * self.f.adjoint();
        let b = &self.e * self.f.transpose();
        let c = &self.f * self.e.transpose();
        max_abs_diff(&a, &id).max(max_abs_diff(&b, &c))
    }
}

/// Complex symplectic matrix `[[E, F], [F̄, Ē]]` acting on `(a, a†)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexSymplectic {
    n: usize,
    matrix: ComplexMatrix,
}

/// `Ω = [[0, I], [−I, 0]]` of order `2n`.
pub fn omega(n: usize) -> RealMatrix {
    let mut o = RealMatrix::zeros(2 * n, 2 * n);
    for i in 0..n {
        o[(i, n + i)] = 1.0;
        o[(n + i, i)] = -1.0;
    }
    o
}

fn complex_omega(n: usize) -> ComplexMatrix {
    omega(n).map(|x| Complex64::new(x, 0.0))
}

impl ComplexSymplectic {
    fn from_blocks(e: &ComplexMatrix, f: &ComplexMatrix) -> Self {
        let n = e.nrows();
        let mut m = ComplexMatrix::zeros(2 * n, 2 * n);
        m.view_mut((0, 0), (n, n)).copy_from(e);
        m.view_mut((0, n), (n, n)).copy_from(f);
        m.view_mut((n, 0), (n, n)).copy_from(&f.map(|c| c.conj()));
        m.view_mut((n, n), (n, n)).copy_from(&e.map(|c| c.conj()));
        ComplexSymplectic { n, matrix: m }
    }

    /// Validates block structure and the symplectic condition.
    pub fn from_matrix(matrix: ComplexMatrix) -> Result<Self> {
        if !matrix.is_square() || matrix.nrows() % 2 != 0 || matrix.nrows() == 0 {
            return Err(Error::InvalidShape {
                expected: "2n x 2n",
                rows: matrix.nrows(),
                cols: matrix.ncols(),
            });
        }
        let n = matrix.nrows() / 2;
        let e = matrix.view((0, 0), (n, n)).into_owned();
        let f = matrix.view((0, n), (n, n)).into_owned();
        let rebuilt = ComplexSymplectic::from_blocks(&e, &f);
        let gap = max_abs_diff(&rebuilt.matrix, &matrix);
        if gap > SYMPLECTIC_TOL * max_abs(&matrix).max(1.0) {
            return Err(Error::Domain {
                what: "lower blocks are not the conjugates of the upper blocks",
                residual: gap,
            });
        }
        complex_symplectic(&BogoliubovPair::new(e, f)?)
    }

    pub fn identity(n: usize) -> Self {
        ComplexSymplectic {
            n,
            matrix: ComplexMatrix::identity(2 * n, 2 * n),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn e(&self) -> ComplexMatrix {
        self.matrix.view((0, 0), (self.n, self.n)).into_owned()
    }

    pub fn f(&self) -> ComplexMatrix {
        self.matrix.view((0, self.n), (self.n, self.n)).into_owned()
    }

    /// `‖S·Ω·Sᵀ − Ω‖_max`.
    pub fn symplectic_residual(&self) -> f64 {
        let o = complex_omega(self.n);
        max_abs_diff(&(&self.matrix * &o * self.matrix.transpose()), &o)
    }

    /// Matrix product `self · other`, in operator order.
    pub fn compose(&self, other: &ComplexSymplectic) -> Result<ComplexSymplectic> {
        if self.n != other.n {
            return Err(Error::InvalidSize(format!(
                "cannot compose {}-mode and {}-mode maps",
                self.n, other.n
            )));
        }
        Ok(ComplexSymplectic {
            n: self.n,
            matrix: &self.matrix * &other.matrix,
        })
    }
}

/// Assembles `[[E, F], [F̄, Ē]]`.
pub fn complex_symplectic(b: &BogoliubovPair) -> Result<ComplexSymplectic> {
    let s = ComplexSymplectic::from_blocks(&b.e, &b.f);
    let res = s.symplectic_residual();
    if res > SYMPLECTIC_TOL * max_abs(&s.matrix).max(1.0).powi(2) {
        return Err(Error::Domain {
            what: "matrix violates the symplectic condition",
            residual: res,
        });
    }
    Ok(s)
}

/// Symplectic matrix of the rotation `R(φ)`: `diag(e^{iφ}, conj(e^{iφ}))`.
pub fn rotation_symplectic(phi: &ComplexMatrix) -> Result<ComplexSymplectic> {
    super::params::check_hermitian(phi, "rotation matrix is not Hermitian")?;
    let u = expi_hermitian(phi)?;
    let zero = ComplexMatrix::zeros(u.nrows(), u.ncols());
    Ok(ComplexSymplectic::from_blocks(&u, &zero))
}

/// Symplectic matrix of the squeeze `S(z)` with `z = r·e^{iθ}`:
/// `E = cosh(r)`, `F = sinh(r)·e^{iθ}`.
pub fn squeeze_symplectic(z: &ComplexMatrix) -> Result<ComplexSymplectic> {
    let polar = polar_decompose_symmetric(z)?;
    let ch = hermitian_function(&polar.r, |x| Complex64::new(x.cosh(), 0.0))?;
    let sh = hermitian_function(&polar.r, |x| Complex64::new(x.sinh(), 0.0))?;
    Ok(ComplexSymplectic::from_blocks(&ch, &(sh * polar.exp_i_theta)))
}

/// Symplectic matrix of the Fourier rotation: `diag(W, W̄)`.
pub fn qft_symplectic(n: usize) -> Result<ComplexSymplectic> {
    let w = dft_matrix(n)?;
    let zero = ComplexMatrix::zeros(n, n);
    Ok(ComplexSymplectic::from_blocks(&w, &zero))
}

/// Bogoliubov matrices of the cascade with displacement first, then
/// rotation, then squeezing:
/// `E = cosh(r)·e^{iφ}`, `F = sinh(r)·e^{iθ}·conj(e^{iφ})`.
pub fn bogoliubov_of_cascade(p: &GaussianUnitaryParams) -> Result<BogoliubovPair> {
    let s = squeeze_symplectic(p.z())?.compose(&rotation_symplectic(p.phi())?)?;
    BogoliubovPair::new(s.e(), s.f())
}

/// Effect of the Fourier rotation on a symplectic matrix: `S_W·S_c`.
pub fn qft_transform_symplectic(s: &ComplexSymplectic) -> Result<ComplexSymplectic> {
    let out = qft_symplectic(s.n)?.compose(s)?;
    let res = out.symplectic_residual();
    if res > SYMPLECTIC_TOL * max_abs(&out.matrix).max(1.0).powi(2) {
        return Err(Error::NumericalFailure {
            stage: "symplectic transform",
            residual: res,
        });
    }
    Ok(out)
}

/// Unitary change of basis `L = (1/√2)·[[I, I], [−iI, iI]]` taking
/// `(a, a†)` to the quadratures `(q, p)/√2`.
pub fn mode_to_quadrature(n: usize) -> ComplexMatrix {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let mut l = ComplexMatrix::zeros(2 * n, 2 * n);
    for i in 0..n {
        l[(i, i)] = Complex64::new(h, 0.0);
        l[(i, n + i)] = Complex64::new(h, 0.0);
        l[(n + i, i)] = Complex64::new(0.0, -h);
        l[(n + i, n + i)] = Complex64::new(0.0, h);
    }
    l
}

/// Imaginary parts above this abort the conversion to the real form.
pub const REAL_FORM_TOL: f64 = 1e-9;

/// Real symplectic matrix `S_r = L·S_c·L†` acting on `(q₁…qₙ, p₁…pₙ)`.
pub fn real_symplectic(s: &ComplexSymplectic) -> Result<RealMatrix> {
    let l = mode_to_quadrature(s.n);
    let m = &l * &s.matrix * l.adjoint();
    let im = m.iter().map(|c| c.im.abs()).fold(0.0, f64::max);
    if im > REAL_FORM_TOL * max_abs(&m).max(1.0) {
        return Err(Error::NumericalFailure {
            stage: "real symplectic form",
            residual: im,
        });
    }
    Ok(m.map(|c| c.re))
}

/// `‖S·Ω·Sᵀ − Ω‖_max` for a real matrix on `2n` quadratures.
pub fn real_symplectic_residual(s: &RealMatrix) -> f64 {
    let n = s.nrows() / 2;
    let o = omega(n);
    (s * &o * s.transpose() - o).amax()
}
