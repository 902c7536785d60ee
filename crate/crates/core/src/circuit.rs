//! Gate-level representation of linear-optical circuits over `N` modes.
//!
//! A [`Circuit`] lists its gates in temporal order. The unitary it realises
//! is the product of the gate matrices with the last gate leftmost, so a
//! circuit `[g₁, g₂, g₃]` evaluates to `G₃·G₂·G₁`. Mode indices are 0-based.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{cis, embed, wrap_phase, ComplexMatrix};

/// Phases within this distance of `0 (mod 2π)` are treated as absent when
/// counting and lowering.
pub const ZERO_PHASE_TOL: f64 = 1e-14;

pub fn is_zero_phase(phi: f64) -> bool {
    wrap_phase(phi).abs() <= ZERO_PHASE_TOL
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum Gate {
    /// Single-mode phase shift `e^{iφ}`.
    #[serde(rename = "ps")]
    PhaseShifter { mode: usize, phi: f64 },

    /// Free-phase beam splitter `[[t, r], [r, −t]]`, `t = √(1−r²)`.
    #[serde(rename = "bs0")]
    BeamSplitter0 {
        #[serde(rename = "a")]
        mode_a: usize,
        #[serde(rename = "b")]
        mode_b: usize,
        r: f64,
    },

    /// The embedded block `T_ab(r, β) = [[t, r·e^{iβ}], [r·e^{−iβ}, −t]]`,
    /// or its conjugate transpose when `conjugated` is set. The block is
    /// Hermitian, so both flavours share one matrix; the flag is kept so that
    /// factorisations can record which factor they emitted.
    #[serde(rename = "bsg")]
    EmbeddedBSGamma {
        #[serde(rename = "a")]
        mode_a: usize,
        #[serde(rename = "b")]
        mode_b: usize,
        r: f64,
        beta: f64,
        #[serde(rename = "conj")]
        conjugated: bool,
    },

    /// Sends input mode `i` to output mode `map[i]`.
    #[serde(rename = "perm")]
    Permutation { map: Vec<usize> },
}

fn transmissivity(r: f64) -> f64 {
    (1.0 - r * r).max(0.0).sqrt()
}

impl Gate {
    pub fn validate(&self, n: usize) -> Result<()> {
        let check_pair = |a: usize, b: usize| -> Result<()> {
            if a >= n || b >= n {
                return Err(Error::InvalidGate(format!(
                    "mode pair ({a}, {b}) out of range for {n} modes"
                )));
            }
            if a == b {
                return Err(Error::InvalidGate(format!("beam splitter on a single mode {a}")));
            }
            Ok(())
        };
        let check_r = |r: f64| -> Result<()> {
            if !(0.0..=1.0).contains(&r) {
                return Err(Error::InvalidGate(format!("reflectivity {r} outside [0, 1]")));
            }
            Ok(())
        };
        match self {
            Gate::PhaseShifter { mode, phi } => {
                if *mode >= n {
                    return Err(Error::InvalidGate(format!(
                        "mode {mode} out of range for {n} modes"
                    )));
                }
                if !phi.is_finite() {
                    return Err(Error::InvalidGate("non-finite phase".into()));
                }
            }
            Gate::BeamSplitter0 { mode_a, mode_b, r } => {
                check_pair(*mode_a, *mode_b)?;
                check_r(*r)?;
            }
            Gate::EmbeddedBSGamma {
                mode_a,
                mode_b,
                r,
                beta,
                ..
            } => {
                check_pair(*mode_a, *mode_b)?;
                check_r(*r)?;
                if !beta.is_finite() {
                    return Err(Error::InvalidGate("non-finite phase".into()));
                }
            }
            Gate::Permutation { map } => {
                if map.len() != n {
                    return Err(Error::InvalidGate(format!(
                        "permutation of length {} on {n} modes",
                        map.len()
                    )));
                }
                let mut seen = vec![false; n];
                for &m in map {
                    if m >= n || seen[m] {
                        return Err(Error::InvalidGate("permutation is not a bijection".into()));
                    }
                    seen[m] = true;
                }
            }
        }
        Ok(())
    }

    /// The 2×2 block and its modes for two-mode gates.
    fn two_mode_block(&self) -> Option<(usize, usize, [[Complex64; 2]; 2])> {
        match *self {
            Gate::BeamSplitter0 { mode_a, mode_b, r } => {
                let t = Complex64::new(transmissivity(r), 0.0);
                let r = Complex64::new(r, 0.0);
                Some((mode_a, mode_b, [[t, r], [r, -t]]))
            }
            Gate::EmbeddedBSGamma {
                mode_a,
                mode_b,
                r,
                beta,
                conjugated,
            } => {
                let t = Complex64::new(transmissivity(r), 0.0);
                let mut blk = [[t, cis(beta) * r], [cis(-beta) * r, -t]];
                if conjugated {
                    blk = [
                        [blk[0][0].conj(), blk[1][0].conj()],
                        [blk[0][1].conj(), blk[1][1].conj()],
                    ];
                }
                Some((mode_a, mode_b, blk))
            }
            _ => None,
        }
    }

    /// Left-multiplies `m` by this gate's matrix, in place.
    fn apply_left(&self, m: &mut ComplexMatrix) {
        match self {
            Gate::PhaseShifter { mode, phi } => {
                let f = cis(*phi);
                for z in m.row_mut(*mode).iter_mut() {
                    *z *= f;
                }
            }
            Gate::Permutation { map } => {
                let src = m.clone();
                for (i, &dst) in map.iter().enumerate() {
                    m.row_mut(dst).copy_from(&src.row(i));
                }
            }
            _ => {
                let (a, b, blk) = self.two_mode_block().expect("two-mode gate");
                for j in 0..m.ncols() {
                    let x = m[(a, j)];
                    let y = m[(b, j)];
                    m[(a, j)] = blk[0][0] * x + blk[0][1] * y;
                    m[(b, j)] = blk[1][0] * x + blk[1][1] * y;
                }
            }
        }
    }

    /// The same gate acting on modes shifted by `offset` inside an
    /// `n`-mode register.
    fn shifted(&self, offset: usize, n: usize) -> Gate {
        match self {
            Gate::PhaseShifter { mode, phi } => Gate::PhaseShifter {
                mode: mode + offset,
                phi: *phi,
            },
            Gate::BeamSplitter0 { mode_a, mode_b, r } => Gate::BeamSplitter0 {
                mode_a: mode_a + offset,
                mode_b: mode_b + offset,
                r: *r,
            },
            Gate::EmbeddedBSGamma {
                mode_a,
                mode_b,
                r,
                beta,
                conjugated,
            } => Gate::EmbeddedBSGamma {
                mode_a: mode_a + offset,
                mode_b: mode_b + offset,
                r: *r,
                beta: *beta,
                conjugated: *conjugated,
            },
            Gate::Permutation { map } => {
                let mut full: Vec<usize> = (0..n).collect();
                for (i, &m) in map.iter().enumerate() {
                    full[i + offset] = m + offset;
                }
                Gate::Permutation { map: full }
            }
        }
    }
}

/// Dense matrix of a single gate in an `n`-mode register.
pub fn gate_matrix(g: &Gate, n: usize) -> Result<ComplexMatrix> {
    g.validate(n)?;
    let m = match g {
        Gate::PhaseShifter { mode, phi } => {
            let mut m = ComplexMatrix::identity(n, n);
            m[(*mode, *mode)] = cis(*phi);
            m
        }
        Gate::Permutation { map } => {
            let mut m = ComplexMatrix::zeros(n, n);
            for (i, &dst) in map.iter().enumerate() {
                m[(dst, i)] = Complex64::new(1.0, 0.0);
            }
            m
        }
        _ => {
            let (a, b, blk) = g.two_mode_block().expect("two-mode gate");
            let mut m = ComplexMatrix::identity(n, n);
            m[(a, a)] = blk[0][0];
            m[(a, b)] = blk[0][1];
            m[(b, a)] = blk[1][0];
            m[(b, b)] = blk[1][1];
            m
        }
    };
    Ok(m)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "CircuitRepr", into = "CircuitRepr")]
pub struct Circuit {
    n_modes: usize,
    gates: Vec<Gate>,
}

#[derive(Serialize, Deserialize)]
struct CircuitRepr {
    n_modes: usize,
    gates: Vec<Gate>,
}

impl TryFrom<CircuitRepr> for Circuit {
    type Error = Error;

    fn try_from(repr: CircuitRepr) -> Result<Self> {
        Circuit::new(repr.n_modes, repr.gates)
    }
}

impl From<Circuit> for CircuitRepr {
    fn from(c: Circuit) -> Self {
        CircuitRepr {
            n_modes: c.n_modes,
            gates: c.gates,
        }
    }
}

impl Circuit {
    pub fn new(n_modes: usize, gates: Vec<Gate>) -> Result<Self> {
        if n_modes == 0 {
            return Err(Error::InvalidSize("a circuit needs at least one mode".into()));
        }
        for g in &gates {
            g.validate(n_modes)?;
        }
        Ok(Circuit { n_modes, gates })
    }

    pub fn empty(n_modes: usize) -> Result<Self> {
        Circuit::new(n_modes, Vec::new())
    }

    pub fn n_modes(&self) -> usize {
        self.n_modes
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn into_gates(self) -> Vec<Gate> {
        self.gates
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn push(&mut self, g: Gate) -> Result<()> {
        g.validate(self.n_modes)?;
        self.gates.push(g);
        Ok(())
    }

    /// Appends `sub` (a circuit on fewer modes) acting on modes
    /// `offset..offset + sub.n_modes()`.
    pub fn append_embedded(&mut self, sub: &Circuit, offset: usize) -> Result<()> {
        if offset + sub.n_modes > self.n_modes {
            return Err(Error::InvalidGate(format!(
                "sub-circuit on {} modes at offset {offset} exceeds {} modes",
                sub.n_modes, self.n_modes
            )));
        }
        self.gates
            .extend(sub.gates.iter().map(|g| g.shifted(offset, self.n_modes)));
        Ok(())
    }

    pub fn from_json(s: &str) -> Result<Self> {
        crate::io::from_json_str(s)
    }

    pub fn to_json(&self) -> Result<String> {
        crate::io::to_json_string(self)
    }
}

/// The unitary realised by `c`.
///
/// Gates are applied as row operations on an identity matrix, which keeps
/// the cost at `O(N)` per two-mode gate.
pub fn evaluate(c: &Circuit) -> ComplexMatrix {
    let n = c.n_modes;
    let mut m = ComplexMatrix::identity(n, n);
    for g in &c.gates {
        g.apply_left(&mut m);
    }
    m
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Census {
    pub bs0: usize,
    pub phase_shifters: usize,
    pub permutations: usize,
}

/// Counts elementary components. An embedded `T` block costs one BS0 plus
/// the two opposite phase shifters it lowers to, or a bare BS0 when its
/// phase vanishes.
pub fn gate_census(c: &Circuit) -> Census {
    let mut census = Census::default();
    for g in &c.gates {
        match g {
            Gate::PhaseShifter { .. } => census.phase_shifters += 1,
            Gate::BeamSplitter0 { .. } => census.bs0 += 1,
            Gate::EmbeddedBSGamma { beta, .. } => {
                census.bs0 += 1;
                if !is_zero_phase(*beta) {
                    census.phase_shifters += 2;
                }
            }
            Gate::Permutation { .. } => census.permutations += 1,
        }
    }
    census
}

/// Rewrites every embedded `T` block as `PS(b, β) → BS0 → PS(b, −β)`, or a
/// bare BS0 when `β ≡ 0`. Other gates pass through unchanged.
pub fn lower_to_primitives(c: &Circuit) -> Circuit {
    let mut gates = Vec::with_capacity(c.gates.len());
    for g in &c.gates {
        match *g {
            Gate::EmbeddedBSGamma {
                mode_a,
                mode_b,
                r,
                beta,
                ..
            } => {
                let bs = Gate::BeamSplitter0 { mode_a, mode_b, r };
                if is_zero_phase(beta) {
                    gates.push(bs);
                } else {
                    gates.push(Gate::PhaseShifter {
                        mode: mode_b,
                        phi: beta,
                    });
                    gates.push(bs);
                    gates.push(Gate::PhaseShifter {
                        mode: mode_b,
                        phi: -beta,
                    });
                }
            }
            ref other => gates.push(other.clone()),
        }
    }
    Circuit {
        n_modes: c.n_modes,
        gates,
    }
}

/// Removes gates that act as the identity: zero-phase shifters and identity
/// permutations.
pub fn eliminate_dead_phases(c: &Circuit) -> Circuit {
    let gates = c
        .gates
        .iter()
        .filter(|g| match g {
            Gate::PhaseShifter { phi, .. } => !is_zero_phase(*phi),
            Gate::Permutation { map } => map.iter().enumerate().any(|(i, &m)| i != m),
            _ => true,
        })
        .cloned()
        .collect();
    Circuit {
        n_modes: c.n_modes,
        gates,
    }
}

/// Dense matrix of an `n`-mode identity with `block` placed at `offset`.
pub fn embedded_block(block: &ComplexMatrix, n: usize, offset: usize) -> ComplexMatrix {
    embed(block, n, offset)
}
