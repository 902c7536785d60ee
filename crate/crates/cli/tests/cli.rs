use std::process::{Command, Output};

use cvqft::gaussian::{GaussianState, StateJson};
use cvqft::io::{to_json_string, MatrixJson};
use cvqft::linalg::max_abs_diff;
use cvqft::{Complex64, ComplexMatrix, ComplexVector, GaussianUnitaryParams};
use serde_json::Value;
use tempfile::TempDir;

fn cvqft(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cvqft"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "stdout is not JSON ({e}): {}\nstderr: {}",
            String::from_utf8_lossy(&out.stdout),
            String::from_utf8_lossy(&out.stderr)
        )
    })
}

fn census(r: &Value) -> (u64, u64) {
    (
        r["census"]["bs0"].as_u64().unwrap(),
        r["census"]["phase_shifters"].as_u64().unwrap(),
    )
}

fn path(dir: &TempDir, name: &str) -> String {
    dir.path().join(name).to_str().unwrap().to_string()
}

fn write_matrix(file: &str, m: &ComplexMatrix) {
    std::fs::write(file, to_json_string(&MatrixJson::from_matrix(m)).unwrap()).unwrap();
}

fn write_state(file: &str, st: &GaussianState) {
    std::fs::write(file, to_json_string(&StateJson::from_state(st)).unwrap()).unwrap();
}

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// The four-mode example state with squeeze matrix built from (r₁, r₂).
fn example_state(r1: f64, r2: f64) -> GaussianState {
    let z = ComplexMatrix::from_fn(4, 4, |i, j| {
        c(if i == j { (r1 - 3.0 * r2) / 4.0 } else { (r1 + r2) / 4.0 })
    });
    GaussianState::pure(GaussianUnitaryParams::new(ComplexVector::zeros(4), ComplexMatrix::zeros(4, 4), z).unwrap())
}

#[test]
fn synth_fft_dft4() {
    let out = cvqft(&["synth", "--method", "fft", "--dft", "4", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["status"], "ok");
    assert_eq!(census(&r), (4, 2));
    assert!(r["residual"].as_f64().unwrap() <= 1e-9);
}

#[test]
fn synth_murnaghan_dft4() {
    for extra in [None, Some("--optimize")] {
        let mut args = vec!["synth", "--method", "murnaghan", "--dft", "4", "--json"];
        args.extend(extra);
        let r = report(&cvqft(&args));
        let (bs0, ps) = census(&r);
        assert_eq!(bs0, 6);
        assert!(ps <= 13);
    }
}

#[test]
fn synth_identity_matrix_has_no_mixing() {
    let dir = TempDir::new().unwrap();
    let (m, circ) = (path(&dir, "id8.json"), path(&dir, "c.json"));
    write_matrix(&m, &ComplexMatrix::identity(8, 8));
    let out = cvqft(&["synth", "--method", "murnaghan", "--matrix", &m, "--out", &circ, "--json"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(report(&out)["residual"].as_f64().unwrap() <= 1e-15);
    let c: Value = serde_json::from_str(&std::fs::read_to_string(&circ).unwrap()).unwrap();
    for g in c["gates"].as_array().unwrap() {
        if let Some(r) = g.get("r") {
            assert_eq!(r.as_f64().unwrap(), 0.0);
        }
        if let Some(beta) = g.get("beta") {
            assert_eq!(beta.as_f64().unwrap(), 0.0);
        }
    }
}

#[test]
fn synth_rejects_non_unitary_and_bad_sizes() {
    let dir = TempDir::new().unwrap();
    let m = path(&dir, "bad.json");
    let mut a = ComplexMatrix::identity(3, 3);
    a[(0, 1)] = c(1e-6);
    write_matrix(&m, &a);
    let out = cvqft(&["synth", "--method", "murnaghan", "--matrix", &m]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not unitary"));
    assert_eq!(cvqft(&["synth", "--method", "fft", "--dft", "6"]).status.code(), Some(2));
    assert_eq!(cvqft(&["synth", "--method", "fft", "--dft", "0"]).status.code(), Some(2));
    assert_eq!(cvqft(&["synth", "--method", "fft", "--matrix", &m]).status.code(), Some(2));
    assert_eq!(cvqft(&["synth", "--method", "fft"]).status.code(), Some(2));
}

#[test]
fn synth_output_is_deterministic() {
    let dir = TempDir::new().unwrap();
    let (a, b) = (path(&dir, "a.json"), path(&dir, "b.json"));
    for out in [&a, &b] {
        assert!(cvqft(&["synth", "--method", "murnaghan", "--dft", "5", "--out", out]).status.success());
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
}

#[test]
fn verify_synthesised_circuits() {
    let dir = TempDir::new().unwrap();
    let (f8, m4) = (path(&dir, "f8.json"), path(&dir, "m4.json"));
    assert!(cvqft(&["synth", "--method", "fft", "--dft", "8", "--out", &f8]).status.success());
    assert!(cvqft(&["synth", "--method", "murnaghan", "--dft", "4", "--out", &m4]).status.success());
    assert_eq!(cvqft(&["verify", "--circuit", &f8, "--dft", "8"]).status.code(), Some(0));
    assert_eq!(cvqft(&["verify", "--circuit", &m4, "--dft", "4"]).status.code(), Some(0));
    // Size mismatch is an input error.
    assert_eq!(cvqft(&["verify", "--circuit", &m4, "--dft", "8"]).status.code(), Some(2));
}

#[test]
fn verify_detects_a_perturbed_phase() {
    let dir = TempDir::new().unwrap();
    let (f, bad) = (path(&dir, "f.json"), path(&dir, "bad.json"));
    assert!(cvqft(&["synth", "--method", "fft", "--dft", "8", "--out", &f]).status.success());
    let mut circ: Value = serde_json::from_str(&std::fs::read_to_string(&f).unwrap()).unwrap();
    let ps = circ["gates"]
        .as_array_mut()
        .unwrap()
        .iter_mut()
        .find(|g| g["kind"] == "ps")
        .unwrap();
    ps["phi"] = Value::from(ps["phi"].as_f64().unwrap() + 1e-3);
    std::fs::write(&bad, serde_json::to_string(&circ).unwrap()).unwrap();
    let out = cvqft(&["verify", "--circuit", &bad, "--dft", "8", "--json"]);
    assert_eq!(out.status.code(), Some(1));
    let r = report(&out);
    assert_eq!(r["status"], "fail");
    let res = r["residual"].as_f64().unwrap();
    assert!(res > 1e-4 && res < 1e-3 * 1.01, "{res}");
    // A loose tolerance accepts it.
    assert_eq!(cvqft(&["verify", "--circuit", &bad, "--dft", "8", "--tol", "1e-2"]).status.code(), Some(0));
}

#[test]
fn verify_rejects_malformed_files() {
    let dir = TempDir::new().unwrap();
    let f = path(&dir, "junk.json");
    std::fs::write(&f, "{\"n_modes\": 2, \"gates\": [{\"kind\": \"ps\", \"mode\": 5, \"phi\": 0.0}]}").unwrap();
    assert_eq!(cvqft(&["verify", "--circuit", &f, "--dft", "2"]).status.code(), Some(2));
    assert_eq!(cvqft(&["verify", "--circuit", &path(&dir, "missing"), "--dft", "2"]).status.code(), Some(2));
}

#[test]
fn complexity_closed_forms() {
    for (method, n, want) in [("fft", "8", (12, 8)), ("murnaghan", "4", (6, 13)), ("fft", "2", (1, 0))] {
        let r = report(&cvqft(&["complexity", "--method", method, "--n", n, "--json"]));
        assert_eq!(census(&r), want);
    }
    assert_eq!(cvqft(&["complexity", "--method", "fft", "--n", "12"]).status.code(), Some(2));
    assert_eq!(cvqft(&["complexity", "--method", "murnaghan", "--n", "0"]).status.code(), Some(2));
}

#[test]
fn gaussian_example_state_transforms_to_sparse_squeeze() {
    let dir = TempDir::new().unwrap();
    let (st, out) = (path(&dir, "st.json"), path(&dir, "q.json"));
    let (r1, r2) = (0.3, 0.7);
    write_state(&st, &example_state(r1, r2));
    let o = cvqft(&["gaussian", "qft-params", "--state", &st, "--out", &out, "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let q: StateJson = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    let z = q.z.to_matrix().unwrap();
    let mut want = ComplexMatrix::zeros(4, 4);
    want[(0, 0)] = c(r1);
    want[(1, 3)] = c(-r2);
    want[(2, 2)] = c(-r2);
    want[(3, 1)] = c(-r2);
    assert!(max_abs_diff(&z, &want) < 1e-12);
}

#[test]
fn gaussian_vacuum_is_unchanged() {
    let dir = TempDir::new().unwrap();
    let (st, out) = (path(&dir, "vac.json"), path(&dir, "out.json"));
    write_state(&st, &GaussianState::vacuum(3).unwrap());
    assert!(cvqft(&["gaussian", "qft-params", "--state", &st, "--out", &out]).status.success());
    assert_eq!(std::fs::read(&st).unwrap(), std::fs::read(&out).unwrap());
}

#[test]
fn gaussian_actions_report_invariants() {
    let dir = TempDir::new().unwrap();
    let st = path(&dir, "st.json");
    write_state(&st, &example_state(0.4, 0.9));
    for action in ["qft-cov", "bogoliubov", "symplectic"] {
        let out = path(&dir, &format!("{action}.json"));
        let o = cvqft(&["gaussian", action, "--state", &st, "--out", &out, "--json"]);
        assert_eq!(o.status.code(), Some(0), "{action}");
        assert!(report(&o)["residual"].as_f64().unwrap() < 1e-9, "{action}");
        let v: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
        assert_eq!(v["n"], 4);
    }
}

#[test]
fn gaussian_crosscheck() {
    let dir = TempDir::new().unwrap();
    let st = path(&dir, "st.json");
    let params = GaussianUnitaryParams::new(
        ComplexVector::from_fn(4, |i, _| Complex64::new(0.1 * i as f64, -0.3)),
        ComplexMatrix::from_fn(4, 4, |i, j| if i == j { c(0.2 * i as f64) } else { c(0.1) }),
        example_state(0.5, 0.2).params().z().clone(),
    )
    .unwrap();
    write_state(&st, &GaussianState::new(params.clone(), vec![1.7; 4]).unwrap());
    let o = cvqft(&["gaussian", "qft-cov", "--state", &st, "--crosscheck", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(report(&o)["checks"]["crosscheck"].as_f64().unwrap() < 1e-8);

    // Unequal thermal eigenvalues cannot be carried through the parameters.
    write_state(&st, &GaussianState::new(params, vec![1.0, 2.0, 1.5, 3.0]).unwrap());
    let o = cvqft(&["gaussian", "qft-params", "--state", &st, "--crosscheck", "--json"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(!report(&o)["notes"].as_array().unwrap().is_empty());
}

#[test]
fn gaussian_rejects_invalid_states() {
    let dir = TempDir::new().unwrap();
    let st = path(&dir, "st.json");
    let mut j = StateJson::from_state(&GaussianState::vacuum(2).unwrap());
    j.thermal = vec![0.5, 1.0];
    std::fs::write(&st, to_json_string(&j).unwrap()).unwrap();
    assert_eq!(cvqft(&["gaussian", "qft-params", "--state", &st]).status.code(), Some(2));
    j = StateJson::from_state(&GaussianState::vacuum(2).unwrap());
    j.z.re[1] = 0.3;
    std::fs::write(&st, to_json_string(&j).unwrap()).unwrap();
    assert_eq!(cvqft(&["gaussian", "bogoliubov", "--state", &st]).status.code(), Some(2));
}
