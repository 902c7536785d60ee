//! Closed-form matrices from the published worked examples, used as golden
//! values by the integration tests.
#![allow(dead_code)]

use std::f64::consts::{FRAC_1_SQRT_2, PI};

use cvqft::linalg::{ComplexMatrix, RealMatrix};
use num_complex::Complex64;

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn real4(diag: f64, off: f64) -> ComplexMatrix {
    ComplexMatrix::from_fn(4, 4, |i, j| c(if i == j { diag } else { off }, 0.0))
}

/// Squeeze matrix of the 4-mode example, `z = r·e^{iθ}`.
pub fn example_z(r1: f64, r2: f64) -> ComplexMatrix {
    real4((r1 - 3.0 * r2) / 4.0, (r1 + r2) / 4.0)
}

pub fn example_r(r1: f64, r2: f64) -> ComplexMatrix {
    real4((r1 + 3.0 * r2) / 4.0, (r1 - r2) / 4.0)
}

pub fn example_exp_i_theta() -> ComplexMatrix {
    real4(-0.5, 0.5)
}

/// `E` with `u = (c₁+3c₂)/4`, `v = (c₁−c₂)/4`.
pub fn example_e(r1: f64, r2: f64) -> ComplexMatrix {
    let (c1, c2) = (r1.cosh(), r2.cosh());
    real4((c1 + 3.0 * c2) / 4.0, (c1 - c2) / 4.0)
}

/// `F` with `x = (s₁−3s₂)/4`, `y = (s₁+s₂)/4`.
pub fn example_f(r1: f64, r2: f64) -> ComplexMatrix {
    let (s1, s2) = (r1.sinh(), r2.sinh());
    real4((s1 - 3.0 * s2) / 4.0, (s1 + s2) / 4.0)
}

fn blocks(tl: &ComplexMatrix, tr: &ComplexMatrix, bl: &ComplexMatrix, br: &ComplexMatrix) -> ComplexMatrix {
    let n = tl.nrows();
    let mut m = ComplexMatrix::zeros(2 * n, 2 * n);
    m.view_mut((0, 0), (n, n)).copy_from(tl);
    m.view_mut((0, n), (n, n)).copy_from(tr);
    m.view_mut((n, 0), (n, n)).copy_from(bl);
    m.view_mut((n, n), (n, n)).copy_from(br);
    m
}

/// The printed 8×8 complex symplectic matrix of the example.
pub fn printed_example1(r1: f64, r2: f64) -> ComplexMatrix {
    let e = example_e(r1, r2);
    let f = example_f(r1, r2);
    blocks(&e, &f, &f, &e)
}

/// The printed 8×8 matrix labelled `S_W·S_c`, entry by entry.
pub fn printed_example2(r1: f64, r2: f64) -> ComplexMatrix {
    let (c1, c2, s1, s2) = (r1.cosh(), r2.cosh(), r1.sinh(), r2.sinh());
    let i = c(0.0, 1.0);
    let one = c(1.0, 0.0);
    // Row k ≥ 1 of the upper-left block is c₂·(iᵏ)ʲ; of the upper-right
    // block −s₂·(iᵏ)ʲ; the lower blocks are the conjugates.
    let mut m = ComplexMatrix::zeros(8, 8);
    for j in 0..4 {
        m[(0, j)] = c(c1, 0.0);
        m[(0, 4 + j)] = c(s1, 0.0);
        m[(4, j)] = c(s1, 0.0);
        m[(4, 4 + j)] = c(c1, 0.0);
    }
    for k in 1..4 {
        for j in 0..4 {
            let phase = (0..k * j).fold(one, |acc, _| acc * i);
            m[(k, j)] = phase * c2;
            m[(k, 4 + j)] = -phase * s2;
            m[(4 + k, j)] = -phase.conj() * s2;
            m[(4 + k, 4 + j)] = phase.conj() * c2;
        }
    }
    m
}

/// `W₄·z·W₄` as printed, including its leading factor 1/4.
pub fn printed_z_qft(r1: f64, r2: f64) -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(4, 4);
    m[(0, 0)] = c(r1 / 4.0, 0.0);
    m[(1, 3)] = c(-r2 / 4.0, 0.0);
    m[(2, 2)] = c(-r2 / 4.0, 0.0);
    m[(3, 1)] = c(-r2 / 4.0, 0.0);
    m
}

/// Printed Hermitian factor of the transformed squeeze matrix.
pub fn printed_r_qft(r1: f64, r2: f64) -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(4, 4);
    m[(0, 0)] = c(r1 / 4.0, 0.0);
    for k in 1..4 {
        m[(k, k)] = c(r2 / 4.0, 0.0);
    }
    m
}

/// Printed unitary factor of the transformed squeeze matrix.
pub fn printed_exp_i_theta_qft() -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(4, 4);
    m[(0, 0)] = c(1.0, 0.0);
    m[(1, 3)] = c(-1.0, 0.0);
    m[(2, 2)] = c(-1.0, 0.0);
    m[(3, 1)] = c(-1.0, 0.0);
    m
}

/// The printed real covariance matrix of the example (no prefactor).
pub fn printed_example3(r1: f64, r2: f64) -> RealMatrix {
    let (a, b) = ((2.0 * r1).exp(), (-2.0 * r2).exp());
    let (a2, b2) = ((-2.0 * r1).exp(), (2.0 * r2).exp());
    RealMatrix::from_fn(8, 8, |i, j| match (i < 4, j < 4) {
        (true, true) => {
            if i == j {
                a + 3.0 * b
            } else {
                a - b
            }
        }
        (false, false) => {
            if i == j {
                a2 + 3.0 * b2
            } else {
                a2 - b2
            }
        }
        _ => 0.0,
    })
}

/// The printed transformed covariance matrix, including its factor 4.
pub fn printed_example4(r1: f64, r2: f64) -> RealMatrix {
    let (ch, sh) = ((2.0 * r2).cosh(), (2.0 * r2).sinh());
    let mut m = RealMatrix::zeros(8, 8);
    m[(0, 0)] = (2.0 * r1).exp();
    m[(1, 1)] = ch;
    m[(1, 3)] = -sh;
    m[(3, 1)] = -sh;
    m[(3, 3)] = ch;
    m[(2, 2)] = (-2.0 * r2).exp();
    m[(4, 4)] = (-2.0 * r1).exp();
    m[(5, 5)] = ch;
    m[(5, 7)] = sh;
    m[(7, 5)] = sh;
    m[(7, 7)] = ch;
    m[(6, 6)] = (2.0 * r2).exp();
    m * 4.0
}

/// The printed phase matrix with `exp(iφ) = W₂`.
pub fn printed_phi_w2() -> ComplexMatrix {
    let s2 = 2f64.sqrt();
    ComplexMatrix::from_row_slice(
        2,
        2,
        &[
            c(-(-2.0 + s2) * PI / 4.0, 0.0),
            c(-PI / (2.0 * s2), 0.0),
            c(-PI / (2.0 * s2), 0.0),
            c((2.0 + s2) * PI / 4.0, 0.0),
        ],
    )
}

/// Intermediate matrices of the worked 4-point reduction, as printed.
pub fn printed_u3() -> ComplexMatrix {
    let (s2, s3, s6) = (2f64.sqrt(), 3f64.sqrt(), 6f64.sqrt());
    ComplexMatrix::from_row_slice(
        3,
        3,
        &[
            c(-1.0, 1.0) / (2.0 * s2),
            -c(3.0, 1.0) / (2.0 * s6),
            c(0.0, -1.0 / s3),
            c(-1.0 / s2, 0.0),
            c(1.0 / s6, 0.0),
            c(-1.0 / s3, 0.0),
            -c(1.0, 1.0) / (2.0 * s2),
            -c(3.0, -1.0) / (2.0 * s6),
            c(0.0, 1.0 / s3),
        ],
    )
}

pub fn printed_u2() -> ComplexMatrix {
    ComplexMatrix::from_row_slice(
        2,
        2,
        &[c(0.5, 0.5), c(-FRAC_1_SQRT_2, 0.0), c(-0.5, 0.5), c(0.0, FRAC_1_SQRT_2)],
    )
}

/// Least-squares scale `s` with `a ≈ s·b`, and the relative max-abs error
/// `‖a − s·b‖_max / ‖a‖_max` it leaves.
pub fn best_scale(a: &RealMatrix, b: &RealMatrix) -> (f64, f64) {
    let s = a.dot(b) / b.dot(b);
    let err = (a - b * s).amax() / a.amax();
    (s, err)
}
