//! JSON file formats.
//!
//! Matrices are stored row-major as `{"rows", "cols", "re", "im"}` and
//! vectors as `{"len", "re", "im"}`. Every floating-point value is written
//! with 17 significant digits so that files round-trip bit-exactly.

use std::io;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use serde_json::ser::{Formatter, PrettyFormatter};

use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, ComplexVector, RealMatrix};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub rows: usize,
    pub cols: usize,
    pub re: Vec<f64>,
    pub im: Vec<f64>,
}

impl MatrixJson {
    pub fn from_matrix(m: &ComplexMatrix) -> Self {
        let mut re = Vec::with_capacity(m.len());
        let mut im = Vec::with_capacity(m.len());
        for i in 0..m.nrows() {
            for j in 0..m.ncols() {
                re.push(m[(i, j)].re);
                im.push(m[(i, j)].im);
            }
        }
        MatrixJson {
            rows: m.nrows(),
            cols: m.ncols(),
            re,
            im,
        }
    }

    pub fn from_real(m: &RealMatrix) -> Self {
        let mut re = Vec::with_capacity(m.len());
        for i in 0..m.nrows() {
            for j in 0..m.ncols() {
                re.push(m[(i, j)]);
            }
        }
        MatrixJson {
            rows: m.nrows(),
            cols: m.ncols(),
            im: vec![0.0; re.len()],
            re,
        }
    }

    pub fn to_matrix(&self) -> Result<ComplexMatrix> {
        if self.rows == 0 || self.cols == 0 {
            return Err(Error::Format("matrix must have at least one row and column".into()));
        }
        let len = self.rows * self.cols;
        if self.re.len() != len || self.im.len() != len {
            return Err(Error::Format(format!(
                "matrix {}x{} needs {} entries, got re={} im={}",
                self.rows,
                self.cols,
                len,
                self.re.len(),
                self.im.len()
            )));
        }
        if !self.re.iter().chain(self.im.iter()).all(|x| x.is_finite()) {
            return Err(Error::Format("matrix entries must be finite".into()));
        }
        Ok(ComplexMatrix::from_fn(self.rows, self.cols, |i, j| {
            let k = i * self.cols + j;
            Complex64::new(self.re[k], self.im[k])
        }))
    }

    /// Real part, after checking the imaginary part is negligible.
    pub fn to_real(&self, tol: f64) -> Result<RealMatrix> {
        let m = self.to_matrix()?;
        if m.iter().any(|z| z.im.abs() > tol) {
            return Err(Error::Format("expected a real matrix".into()));
        }
        Ok(m.map(|z| z.re))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VectorJson {
    pub len: usize,
    pub re: Vec<f64>,
    pub im: Vec<f64>,
}

impl VectorJson {
    pub fn from_vector(v: &ComplexVector) -> Self {
        VectorJson {
            len: v.len(),
            re: v.iter().map(|z| z.re).collect(),
            im: v.iter().map(|z| z.im).collect(),
        }
    }

    pub fn to_vector(&self) -> Result<ComplexVector> {
        if self.re.len() != self.len || self.im.len() != self.len {
            return Err(Error::Format(format!(
                "vector of length {} has re={} im={} entries",
                self.len,
                self.re.len(),
                self.im.len()
            )));
        }
        if !self.re.iter().chain(self.im.iter()).all(|x| x.is_finite()) {
            return Err(Error::Format("vector entries must be finite".into()));
        }
        Ok(ComplexVector::from_iterator(
            self.len,
            self.re.iter().zip(&self.im).map(|(&r, &i)| Complex64::new(r, i)),
        ))
    }
}

/// Pretty JSON formatter that prints every `f64` with 17 significant digits.
pub struct Prec17Formatter<'a> {
    inner: PrettyFormatter<'a>,
}

impl Default for Prec17Formatter<'_> {
    fn default() -> Self {
        Prec17Formatter {
            inner: PrettyFormatter::with_indent(b"  "),
        }
    }
}

impl Formatter for Prec17Formatter<'_> {
    fn write_f64<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        write!(writer, "{}", format_f64(value))
    }

    fn write_f32<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f32) -> io::Result<()> {
        write!(writer, "{}", format_f64(value as f64))
    }

    fn begin_array<W: ?Sized + io::Write>(&mut self, writer: &mut W) -> io::Result<()> {
        self.inner.begin_array(writer)
    }

    fn end_array<W: ?Sized + io::Write>(&mut self, writer: &mut W) -> io::Result<()> {
        self.inner.end_array(writer)
    }

    fn begin_array_value<W: ?Sized + io::Write>(&mut self, writer: &mut W, first: bool) -> io::Result<()> {
        self.inner.begin_array_value(writer, first)
    }

    fn end_array_value<W: ?Sized + io::Write>(&mut self, writer: &mut W) -> io::Result<()> {
        self.inner.end_array_value(writer)
    }

    fn begin_object<W: ?Sized + io::Write>(&mut self, writer: &mut W) -> io::Result<()> {
        self.inner.begin_object(writer)
    }

    fn end_object<W: ?Sized + io::Write>(&mut self, writer: &mut W) -> io::Result<()> {
        self.inner.end_object(writer)
    }

    fn begin_object_key<W: ?Sized + io::Write>(&mut self, writer: &mut W, first: bool) -> io::Result<()> {
        self.inner.begin_object_key(writer, first)
    }

    fn begin_object_value<W: ?Sized + io::Write>(&mut self, writer: &mut W) -> io::Result<()> {
        self.inner.begin_object_value(writer)
    }

    fn end_object_value<W: ?Sized + io::Write>(&mut self, writer: &mut W) -> io::Result<()> {
        self.inner.end_object_value(writer)
    }
}

fn format_f64(value: f64) -> String {
    if value.is_finite() {
        format!("{value:.16e}")
    } else {
        // JSON has no representation for non-finite numbers.
        "null".to_string()
    }
}

/// Serialises `value` as pretty JSON with 17-significant-digit floats and a
/// trailing newline.
pub fn to_json_string<T: Serialize + ?Sized>(value: &T) -> Result<String> {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, Prec17Formatter::default());
    value
        .serialize(&mut ser)
        .map_err(|e| Error::Format(e.to_string()))?;
    buf.push(b'\n');
    String::from_utf8(buf).map_err(|e| Error::Format(e.to_string()))
}

pub fn from_json_str<T: serde::de::DeserializeOwned>(s: &str) -> Result<T> {
    serde_json::from_str(s).map_err(|e| Error::Format(e.to_string()))
}

pub fn matrix_from_json(s: &str) -> Result<ComplexMatrix> {
    from_json_str::<MatrixJson>(s)?.to_matrix()
}

pub fn matrix_to_json(m: &ComplexMatrix) -> Result<String> {
    to_json_string(&MatrixJson::from_matrix(m))
}
