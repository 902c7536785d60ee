//! Radix-2 decimation-in-time synthesis of the `N`-point Fourier circuit.
//!
//! One decimation level on a block of `n` modes with `L = n/2`:
//!
//! 1. a free permutation sending mode `2p` to `p` and mode `2p+1` to `L+p`;
//! 2. an `L`-point transform on each half;
//! 3. a twiddle phase `2πk/n` on mode `L+k`, for `k = 0..L`;
//! 4. a balanced BS0 on every pair `(k, L+k)`.
//!
//! The butterfly maps `(b₀ₖ, b₁ₖ)` to `((b₀ₖ + b₁ₖ)/√2, (b₀ₖ − b₁ₖ)/√2)`.
//! Twiddles with `k = 0` are emitted so gate counts follow the recurrence
//! `T_N = 2T_{N/2} + N/2` exactly; [`crate::circuit::eliminate_dead_phases`]
//! removes them.

use std::f64::consts::{FRAC_1_SQRT_2, PI};

use serde::{Deserialize, Serialize};

use crate::circuit::{Census, Circuit, Gate};
use crate::error::{Error, Result};
use crate::linalg::dft_matrix;
use crate::murnaghan;

/// How the two half-size transforms of [`decimate_once`] are realised.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SubBlocks {
    /// Murnaghan factorisation of the half-size DFT matrix.
    Murnaghan,
    /// Full radix-2 recursion (the half size must be a power of two).
    Fft,
}

/// One decimation level, in block-local mode indices.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FftStage {
    /// Block length handled at this level.
    pub size: usize,
    /// Even/odd split: input mode `i` goes to `perm[i]`.
    pub perm: Vec<usize>,
    /// Phase applied to mode `size/2 + k`.
    pub twiddles: Vec<f64>,
    /// Butterfly pairs `(k, k + size/2)`.
    pub pairs: Vec<(usize, usize)>,
}

/// Structure of the full recursion: one stage per level from `n` down to 4,
/// followed by the base layer of 2-point BS0s.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FftPlan {
    pub n: usize,
    pub stages: Vec<FftStage>,
}

fn require_power_of_two(n: usize) -> Result<u32> {
    if n < 2 || !n.is_power_of_two() {
        return Err(Error::InvalidSize(format!(
            "fast synthesis needs a power of two at least 2, got {n}"
        )));
    }
    Ok(n.trailing_zeros())
}

fn stage(size: usize) -> FftStage {
    let half = size / 2;
    let mut perm = vec![0; size];
    for p in 0..half {
        perm[2 * p] = p;
        perm[2 * p + 1] = half + p;
    }
    FftStage {
        size,
        perm,
        twiddles: (0..half).map(|k| 2.0 * PI * k as f64 / size as f64).collect(),
        pairs: (0..half).map(|k| (k, half + k)).collect(),
    }
}

pub fn fft_plan(n: usize) -> Result<FftPlan> {
    require_power_of_two(n)?;
    let mut stages = Vec::new();
    let mut size = n;
    while size >= 4 {
        stages.push(stage(size));
        size /= 2;
    }
    Ok(FftPlan { n, stages })
}

/// Twiddles and butterflies closing a level on `n` modes.
fn butterfly_layer(n: usize, gates: &mut Vec<Gate>) {
    let st = stage(n);
    let half = n / 2;
    for (k, &phi) in st.twiddles.iter().enumerate() {
        gates.push(Gate::PhaseShifter {
            mode: half + k,
            phi,
        });
    }
    for (a, b) in st.pairs {
        gates.push(Gate::BeamSplitter0 {
            mode_a: a,
            mode_b: b,
            r: FRAC_1_SQRT_2,
        });
    }
}

fn base_circuit() -> Circuit {
    Circuit::new(
        2,
        vec![Gate::BeamSplitter0 {
            mode_a: 0,
            mode_b: 1,
            r: FRAC_1_SQRT_2,
        }],
    )
    .expect("valid base circuit")
}

fn assemble(n: usize, sub: &Circuit) -> Result<Circuit> {
    let half = n / 2;
    let mut circ = Circuit::new(n, vec![Gate::Permutation { map: stage(n).perm }])?;
    circ.append_embedded(sub, 0)?;
    circ.append_embedded(sub, half)?;
    let mut tail = Vec::with_capacity(n);
    butterfly_layer(n, &mut tail);
    for g in tail {
        circ.push(g)?;
    }
    Ok(circ)
}

/// Circuit over `n` modes evaluating to the `n`-point DFT matrix, with
/// `(n/2)·log₂n` BS0 and `(n/2)·log₂(n/2)` phase shifters.
pub fn synthesize_fft(n: usize) -> Result<Circuit> {
    require_power_of_two(n)?;
    let mut circ = base_circuit();
    let mut size = 2;
    while size < n {
        size *= 2;
        circ = assemble(size, &circ)?;
    }
    Ok(circ)
}

/// A single decimation level for any even `n ≥ 4`, with the two half-size
/// transforms realised as chosen by `sub`.
pub fn decimate_once(n: usize, sub: SubBlocks) -> Result<Circuit> {
    if n < 4 || n % 2 != 0 {
        return Err(Error::InvalidSize(format!(
            "decimation needs an even size at least 4, got {n}"
        )));
    }
    let half = n / 2;
    let inner = match sub {
        SubBlocks::Murnaghan => murnaghan::factorize(&dft_matrix(half)?)?,
        SubBlocks::Fft => synthesize_fft(half)?,
    };
    assemble(n, &inner)
}

/// Gate counts of [`synthesize_fft`]: `((n/2)·log₂n, (n/2)·log₂(n/2))`.
pub fn predicted_census(n: usize) -> Result<Census> {
    let m = require_power_of_two(n)? as usize;
    Ok(Census {
        bs0: n / 2 * m,
        phase_shifters: n / 2 * (m - 1),
        permutations: 0,
    })
}

/// Census of [`synthesize_fft`] including its free permutations.
pub fn predicted_census_with_permutations(n: usize) -> Result<Census> {
    let mut c = predicted_census(n)?;
    // One permutation per level for every block at that level.
    c.permutations = n / 2 - 1;
    Ok(c)
}
