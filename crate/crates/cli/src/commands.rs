use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Args, ValueEnum};
use cvqft::circuit::{eliminate_dead_phases, lower_to_primitives};
use cvqft::gaussian::{
    bogoliubov_of_cascade, complex_symplectic, qft_transform_covariance, qft_transform_state,
    real_covariance_of_state, real_symplectic, real_symplectic_residual, symplectic_eigenvalues,
    CovarianceJson, GaussianState, RealCovariance, StateJson,
};
use cvqft::io::{from_json_str, matrix_from_json, to_json_string, MatrixJson};
use cvqft::linalg::{max_abs_diff, max_abs_diff_real, unitarity_residual};
use cvqft::{dft_matrix, evaluate, factorize, gate_census, synthesize_fft, Circuit, ComplexMatrix};
use serde::Serialize;

use crate::report::Report;

/// A matrix file whose unitarity residual exceeds this is rejected.
pub const MATRIX_UNITARITY_TOL: f64 = 1e-8;
/// Default tolerance of reconstruction checks.
pub const DEFAULT_TOL: f64 = 1e-9;
/// Default tolerance of the two-path covariance cross-check.
pub const DEFAULT_CROSSCHECK_TOL: f64 = 1e-8;

/// Rejected input: reported on stderr with exit code 2.
#[derive(Debug)]
pub struct InputError(pub anyhow::Error);

impl<E: Into<anyhow::Error>> From<E> for InputError {
    fn from(e: E) -> Self {
        InputError(e.into())
    }
}

pub type CmdResult = std::result::Result<Report, InputError>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Murnaghan,
    Fft,
}

/// Target unitary: a DFT size or a matrix file.
#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct Target {
    /// Use the N-point DFT matrix.
    #[arg(long, value_name = "N")]
    pub dft: Option<usize>,
    /// Read the unitary from a matrix JSON file.
    #[arg(long, value_name = "FILE")]
    pub matrix: Option<PathBuf>,
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn write(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).with_context(|| format!("cannot write {}", path.display()))
}

fn load_target(t: &Target) -> Result<ComplexMatrix> {
    if let Some(n) = t.dft {
        return Ok(dft_matrix(n)?);
    }
    let path = t.matrix.as_deref().expect("clap enforces one target");
    let m = matrix_from_json(&read(path)?).with_context(|| format!("in {}", path.display()))?;
    let res = unitarity_residual(&m)?;
    if res > MATRIX_UNITARITY_TOL {
        bail!(
            "{} is not unitary: ‖U·U† − I‖_max = {res:.3e} exceeds {MATRIX_UNITARITY_TOL:e}",
            path.display()
        );
    }
    Ok(m)
}

#[derive(Debug, Args)]
pub struct SynthArgs {
    #[arg(long, value_enum)]
    pub method: Method,
    #[command(flatten)]
    pub target: Target,
    /// Write the circuit JSON here.
    #[arg(long, value_name = "FILE")]
    pub out: Option<PathBuf>,
}

pub fn synth(a: &SynthArgs, tol: f64, optimize: bool) -> CmdResult {
    let target = load_target(&a.target)?;
    let circuit = match a.method {
        Method::Fft => match a.target.dft {
            Some(n) => synthesize_fft(n)?,
            None => return Err(anyhow::anyhow!("the fft method synthesises DFT matrices only; use --dft N").into()),
        },
        Method::Murnaghan => factorize(&target)?,
    };
    let circuit = if optimize {
        eliminate_dead_phases(&lower_to_primitives(&circuit))
    } else {
        circuit
    };
    let mut report = Report::new("synth");
    report.judge(max_abs_diff(&evaluate(&circuit), &target), tol);
    report.census = Some(gate_census(&circuit));
    if !report.ok() {
        report.notes.push("self-verification failed; no circuit written".into());
    } else if let Some(out) = &a.out {
        write(out, &circuit.to_json()?)?;
        report.output = Some(out.display().to_string());
    }
    Ok(report)
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Circuit JSON file to check.
    #[arg(long, value_name = "FILE")]
    pub circuit: PathBuf,
    #[command(flatten)]
    pub target: Target,
}

pub fn verify(a: &VerifyArgs, tol: f64) -> CmdResult {
    let circuit = Circuit::from_json(&read(&a.circuit)?).with_context(|| format!("in {}", a.circuit.display()))?;
    let target = load_target(&a.target)?;
    if circuit.n_modes() != target.nrows() {
        return Err(anyhow::anyhow!(
            "circuit acts on {} modes but the target is {}x{}",
            circuit.n_modes(),
            target.nrows(),
            target.ncols()
        )
        .into());
    }
    let mut report = Report::new("verify");
    report.judge(max_abs_diff(&evaluate(&circuit), &target), tol);
    report.census = Some(gate_census(&circuit));
    Ok(report)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GaussianAction {
    /// Fourier-transform the state parameters.
    QftParams,
    /// Fourier-transform the covariance matrix of the state.
    QftCov,
    /// Bogoliubov matrices E, F of the state's cascade.
    Bogoliubov,
    /// Complex and real symplectic matrices of the state's cascade.
    Symplectic,
}

#[derive(Debug, Args)]
pub struct GaussianArgs {
    #[arg(value_enum)]
    pub action: GaussianAction,
    /// State JSON file.
    #[arg(long, value_name = "FILE")]
    pub state: PathBuf,
    /// Write the result here.
    #[arg(long, value_name = "FILE")]
    pub out: Option<PathBuf>,
    /// Compare the parameter-space and covariance-space transforms.
    #[arg(long)]
    pub crosscheck: bool,
}

#[derive(Serialize)]
struct BogoliubovJson {
    n: usize,
    e: MatrixJson,
    f: MatrixJson,
}

#[derive(Serialize)]
struct SymplecticJson {
    n: usize,
    complex: MatrixJson,
    real: MatrixJson,
}

fn covariance_checks(report: &mut Report, c: &RealCovariance) -> Result<()> {
    let nu = symplectic_eigenvalues(c.v())?;
    report.checks.insert("symmetry", (c.v() - c.v().transpose()).amax());
    report.checks.insert("min_nu", nu.into_iter().fold(f64::INFINITY, f64::min));
    Ok(())
}

pub fn gaussian(a: &GaussianArgs, tol: Option<f64>) -> CmdResult {
    let st = from_json_str::<StateJson>(&read(&a.state)?)
        .and_then(|j| j.to_state())
        .with_context(|| format!("in {}", a.state.display()))?;
    let mut report = Report::new(match a.action {
        GaussianAction::QftParams => "gaussian qft-params",
        GaussianAction::QftCov => "gaussian qft-cov",
        GaussianAction::Bogoliubov => "gaussian bogoliubov",
        GaussianAction::Symplectic => "gaussian symplectic",
    });
    let text = match a.action {
        GaussianAction::QftParams => {
            let q = qft_transform_state(&st)?;
            let s = complex_symplectic(&bogoliubov_of_cascade(q.params())?)?;
            report.residual = s.symplectic_residual();
            report.checks.insert("symplectic", report.residual);
            to_json_string(&StateJson::from_state(&q))?
        }
        GaussianAction::QftCov => {
            let c = qft_transform_covariance(&real_covariance_of_state(&st)?)?;
            covariance_checks(&mut report, &c)?;
            report.residual = report.checks["symmetry"];
            to_json_string(&CovarianceJson::from_covariance(&c))?
        }
        GaussianAction::Bogoliubov => {
            let b = bogoliubov_of_cascade(st.params())?;
            report.residual = b.residual();
            to_json_string(&BogoliubovJson {
                n: st.n(),
                e: MatrixJson::from_matrix(&b.e),
                f: MatrixJson::from_matrix(&b.f),
            })?
        }
        GaussianAction::Symplectic => {
            let s = complex_symplectic(&bogoliubov_of_cascade(st.params())?)?;
            let r = real_symplectic(&s)?;
            report.checks.insert("complex", s.symplectic_residual());
            report.checks.insert("real", real_symplectic_residual(&r));
            report.residual = s.symplectic_residual().max(real_symplectic_residual(&r));
            to_json_string(&SymplecticJson {
                n: st.n(),
                complex: MatrixJson::from_matrix(s.matrix()),
                real: MatrixJson::from_real(&r),
            })?
        }
    };
    if a.crosscheck {
        crosscheck(&mut report, &st, tol.unwrap_or(DEFAULT_CROSSCHECK_TOL))?;
    }
    if let Some(out) = &a.out {
        write(out, &text)?;
        report.output = Some(out.display().to_string());
    }
    Ok(report)
}

/// Two-path check: covariance of the transformed parameters against the
/// transformed covariance. The residual replaces the report's main residual.
fn crosscheck(report: &mut Report, st: &GaussianState, tol: f64) -> Result<()> {
    let a = qft_transform_covariance(&real_covariance_of_state(st)?)?;
    let b = real_covariance_of_state(&qft_transform_state(st)?)?;
    let d = max_abs_diff_real(a.v(), b.v()).max((a.mean() - b.mean()).amax());
    report.checks.insert("crosscheck", d);
    report.judge(d, tol);
    let uniform = st.thermal().windows(2).all(|w| w[0] == w[1]);
    if !report.ok() && !uniform {
        report.notes.push(
            "the thermal eigenvalues differ between modes; the Fourier rotation then acts on the \
             thermal core and the parameter-space transform cannot represent the result"
                .into(),
        );
    }
    Ok(())
}

#[derive(Debug, Args)]
pub struct ComplexityArgs {
    #[arg(long, value_enum)]
    pub method: Method,
    /// Number of modes.
    #[arg(long)]
    pub n: usize,
}

pub fn complexity(a: &ComplexityArgs) -> CmdResult {
    let census = match a.method {
        Method::Murnaghan => cvqft::murnaghan::predicted_census(a.n)?,
        Method::Fft => cvqft::predicted_census(a.n)?,
    };
    let mut report = Report::new("complexity");
    report.census = Some(census);
    if a.method == Method::Murnaghan {
        report.notes.push("the phase-shifter count is an upper bound".into());
    }
    Ok(report)
}

/// Tolerance for reconstruction commands.
pub fn reconstruction_tol(tol: Option<f64>) -> f64 {
    tol.unwrap_or(DEFAULT_TOL)
}
