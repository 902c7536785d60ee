use std::collections::BTreeMap;
use std::fmt;

use cvqft::Census;
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Ok,
    Fail,
}

/// Machine-readable outcome of one command.
#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub command: String,
    pub status: Status,
    /// Max-norm residual of the command's main check (0 when none applies).
    pub residual: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub census: Option<Census>,
    pub timing_ms: f64,
    /// Secondary invariant residuals and measurements.
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub checks: BTreeMap<&'static str, f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub output: Option<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report {
            command: command.to_string(),
            status: Status::Ok,
            residual: 0.0,
            census: None,
            timing_ms: 0.0,
            checks: BTreeMap::new(),
            output: None,
            notes: Vec::new(),
        }
    }

    /// Records `residual` and sets the status against `tol`.
    pub fn judge(&mut self, residual: f64, tol: f64) {
        self.residual = residual;
        self.status = if residual <= tol { Status::Ok } else { Status::Fail };
    }

    pub fn ok(&self) -> bool {
        self.status == Status::Ok
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = match self.status {
            Status::Ok => "ok",
            Status::Fail => "FAIL",
        };
        writeln!(f, "{}: {status}", self.command)?;
        writeln!(f, "  residual   {:.3e}", self.residual)?;
        if let Some(c) = &self.census {
            writeln!(
                f,
                "  census     {} BS0, {} phase shifters, {} permutations",
                c.bs0, c.phase_shifters, c.permutations
            )?;
        }
        for (name, value) in &self.checks {
            writeln!(f, "  {name:<10} {value:.6e}")?;
        }
        if let Some(out) = &self.output {
            writeln!(f, "  output     {out}")?;
        }
        for note in &self.notes {
            writeln!(f, "  note: {note}")?;
        }
        write!(f, "  timing     {:.3} ms", self.timing_ms)
    }
}
