//! Recursive factorisation of an arbitrary unitary into embedded `T` blocks,
//! beam splitters and phase shifters (the modified Murnaghan procedure).
//!
//! Each level strips the first mode off an order-`m` unitary:
//!
//! ```text
//! U · T₁₂ · T₁₃ ⋯ T₁ₘ = diag(w, U′)
//! ```
//!
//! Every `T` block is Hermitian and squares to the identity, so
//! `U = diag(w, U′) · T₁ₘ ⋯ T₁₂` and the emitted gate order is
//! `T₁₂, T₁₃, …, T₁ₘ, PS(w), U′`. The final order-2 matrix is realised as
//! two phase shifters, a BS0 and a trailing phase shifter.

use serde::{Deserialize, Serialize};

use crate::circuit::{is_zero_phase, Census, Circuit, Gate};
use crate::error::{Error, Result};
use crate::linalg::{arg, cis, max_abs_diff, require_square, unitarity_residual, wrap_phase, ComplexMatrix};

/// Inputs must be unitary to within this max-abs residual.
pub const INPUT_UNITARITY_TOL: f64 = 1e-10;
/// Off-diagonal first row/column of `U·V` after each reduction step.
pub const REDUCTION_TOL: f64 = 1e-9;
/// Prefix norms below this are treated as zero when forming `r_i`.
const DEGENERATE_DENOM: f64 = 1e-14;

/// Parameters of one reduction level.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReductionStep {
    /// Order of the matrix being reduced.
    pub level: usize,
    /// `(r_k, β_k)` of the block `T₁ₖ`, for `k = 2..=level`.
    pub blocks: Vec<(f64, f64)>,
    /// Phase `γ₁₁` of the extracted diagonal entry `w = e^{iγ₁₁}`.
    pub w_phase: f64,
}

fn check_unitary(u: &ComplexMatrix) -> Result<usize> {
    let n = require_square(u)?;
    let res = unitarity_residual(u)?;
    if !(res <= INPUT_UNITARITY_TOL) {
        return Err(Error::Domain {
            what: "matrix is not unitary",
            residual: res,
        });
    }
    Ok(n)
}

/// Block parameters from the first row of `u`.
fn step_parameters(u: &ComplexMatrix) -> ReductionStep {
    let m = u.nrows();
    let gamma0 = arg(u[(0, 0)]);
    let mut prefix = u[(0, 0)].norm_sqr();
    let mut blocks = Vec::with_capacity(m - 1);
    for k in 1..m {
        let a = u[(0, k)].norm();
        prefix += a * a;
        let denom = prefix.sqrt();
        let (r, beta) = if denom < DEGENERATE_DENOM {
            (0.0, 0.0)
        } else {
            let r = (a / denom).min(1.0);
            if r == 0.0 {
                (0.0, 0.0)
            } else {
                (r, wrap_phase(arg(u[(0, k)]) - gamma0))
            }
        };
        blocks.push((r, beta));
    }
    ReductionStep {
        level: m,
        blocks,
        w_phase: gamma0,
    }
}

/// Right-multiplies `m` in place by the block `T₁ₖ(r, β)`.
fn apply_t_right(m: &mut ComplexMatrix, k: usize, r: f64, beta: f64) {
    let t = (1.0 - r * r).max(0.0).sqrt();
    let up = cis(beta) * r;
    let down = cis(-beta) * r;
    for i in 0..m.nrows() {
        let x = m[(i, 0)];
        let y = m[(i, k)];
        m[(i, 0)] = x * t + y * down;
        m[(i, k)] = x * up - y * t;
    }
}

fn reduce_unchecked(u: &ComplexMatrix) -> Result<(ReductionStep, ComplexMatrix)> {
    let m = u.nrows();
    let step = step_parameters(u);
    let mut uv = u.clone();
    for (k, &(r, beta)) in step.blocks.iter().enumerate() {
        apply_t_right(&mut uv, k + 1, r, beta);
    }
    let mut residual = (uv[(0, 0)] - cis(step.w_phase)).norm();
    for j in 1..m {
        residual = residual.max(uv[(0, j)].norm()).max(uv[(j, 0)].norm());
    }
    if !(residual <= REDUCTION_TOL) {
        return Err(Error::NumericalFailure {
            stage: "murnaghan reduction",
            residual,
        });
    }
    let next = uv.view((1, 1), (m - 1, m - 1)).into_owned();
    Ok((step, next))
}

/// One reduction level: returns the block parameters and the order-`N−1`
/// unitary left after stripping the first mode.
pub fn reduce_once(u: &ComplexMatrix) -> Result<(ReductionStep, ComplexMatrix)> {
    let n = check_unitary(u)?;
    if n < 2 {
        return Err(Error::InvalidSize(format!(
            "reduction needs order at least 2, got {n}"
        )));
    }
    reduce_unchecked(u)
}

/// Factorises a 2×2 unitary as `PS(0, γ₁₁), PS(1, γ₁₂), BS0(r), PS(1, γ₂₂ − γ₁₂)`.
/// Zero phases are omitted.
pub fn final_u2_factorize(u2: &ComplexMatrix) -> Result<Circuit> {
    let n = check_unitary(u2)?;
    if n != 2 {
        return Err(Error::InvalidShape {
            expected: "2x2",
            rows: u2.nrows(),
            cols: u2.ncols(),
        });
    }
    let gates = u2_gates(u2, 0);
    let circ = Circuit::new(2, gates)?;
    let residual = max_abs_diff(&crate::circuit::evaluate(&circ), u2);
    if !(residual <= INPUT_UNITARITY_TOL) {
        return Err(Error::NumericalFailure {
            stage: "order-2 factorisation",
            residual,
        });
    }
    Ok(circ)
}

fn push_phase(gates: &mut Vec<Gate>, mode: usize, phi: f64) {
    let phi = wrap_phase(phi);
    if !is_zero_phase(phi) {
        gates.push(Gate::PhaseShifter { mode, phi });
    }
}

fn u2_gates(u: &ComplexMatrix, offset: usize) -> Vec<Gate> {
    let (a, b, c, d) = (u[(0, 0)], u[(0, 1)], u[(1, 0)], u[(1, 1)]);
    let r = b.norm().min(1.0);
    let gamma12 = arg(b);
    let gamma22 = arg(-d);
    // With a vanishing diagonal the phase of `a` is undefined; take it from
    // the off-diagonal entry `c = e^{i(γ₁₁ + γ₂₂ − γ₁₂)}·r` instead.
    let gamma11 = if a.norm() < DEGENERATE_DENOM {
        arg(c) - gamma22 + gamma12
    } else {
        arg(a)
    };
    let mut gates = Vec::with_capacity(4);
    push_phase(&mut gates, offset, gamma11);
    push_phase(&mut gates, offset + 1, gamma12);
    gates.push(Gate::BeamSplitter0 {
        mode_a: offset,
        mode_b: offset + 1,
        r,
    });
    push_phase(&mut gates, offset + 1, gamma22 - gamma12);
    gates
}

/// Gates of one reduction level acting on modes `offset..offset + level`.
///
/// All blocks but the last are emitted as embedded `T` gates. The last block
/// is lowered with its phase pair on the first mode, `PS(−β), BS0, PS(β)`,
/// so that the trailing `PS(β)` absorbs the extracted phase `w`.
fn level_gates(step: &ReductionStep, offset: usize) -> Vec<Gate> {
    let mut gates = Vec::with_capacity(step.blocks.len() + 2);
    let last = step.blocks.len() - 1;
    for (k, &(r, beta)) in step.blocks.iter().enumerate() {
        let mode_b = offset + k + 1;
        if k < last {
            gates.push(Gate::EmbeddedBSGamma {
                mode_a: offset,
                mode_b,
                r,
                beta,
                conjugated: false,
            });
        } else {
            push_phase(&mut gates, offset, -beta);
            gates.push(Gate::BeamSplitter0 {
                mode_a: offset,
                mode_b,
                r,
            });
            push_phase(&mut gates, offset, beta + step.w_phase);
        }
    }
    gates
}

/// Factorises `u` and also returns the parameters of every reduction level.
pub fn factorize_with_steps(u: &ComplexMatrix) -> Result<(Circuit, Vec<ReductionStep>)> {
    let n = check_unitary(u)?;
    let mut gates = Vec::new();
    let mut steps = Vec::new();
    if n == 1 {
        push_phase(&mut gates, 0, arg(u[(0, 0)]));
        return Ok((Circuit::new(1, gates)?, steps));
    }
    let mut current = u.clone();
    let mut offset = 0;
    while current.nrows() > 2 {
        let (step, next) = reduce_unchecked(&current)?;
        gates.extend(level_gates(&step, offset));
        steps.push(step);
        current = next;
        offset += 1;
    }
    gates.extend(u2_gates(&current, offset));
    let circ = Circuit::new(n, gates)?;
    let residual = max_abs_diff(&crate::circuit::evaluate(&circ), u);
    if !(residual <= REDUCTION_TOL) {
        return Err(Error::NumericalFailure {
            stage: "murnaghan reconstruction",
            residual,
        });
    }
    Ok((circ, steps))
}

/// Factorises an `N×N` unitary into a circuit over `N` modes whose
/// evaluation reproduces `u`.
pub fn factorize(u: &ComplexMatrix) -> Result<Circuit> {
    factorize_with_steps(u).map(|(c, _)| c)
}

/// Closed-form gate counts of the lowered factorisation of an order-`n`
/// unitary: exactly `n(n−1)/2` BS0 and at most `n(n−1)+1` phase shifters
/// (the phase count is the bound; zero phases are dropped).
pub fn predicted_census(n: usize) -> Result<Census> {
    if n == 0 {
        return Err(Error::InvalidSize("a unitary needs at least one mode".into()));
    }
    Ok(Census {
        bs0: n * (n - 1) / 2,
        phase_shifters: n * (n - 1) + 1,
        permutations: 0,
    })
}
