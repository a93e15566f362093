//! Dense exact linear algebra over [`ExactComplex`].
//!
//! Products skip zero entries, so the very sparse operators built elsewhere in
//! the crate multiply quickly even at dimension 64.

use std::fmt;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::scalar::{ExactComplex, ExactReal, Rational};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    entries: Vec<ExactComplex>,
}

/// Polynomial coefficients, lowest degree first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyCoeffs {
    pub coefficients: Vec<ExactComplex>,
}

impl PolyCoeffs {
    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coefficients.iter().rposition(|c| !c.is_zero())
    }

    /// Evaluates the polynomial at `x`.
    pub fn eval(&self, x: &ExactComplex) -> ExactComplex {
        self.coefficients
            .iter()
            .rev()
            .fold(ExactComplex::zero(), |acc, c| &(&acc * x) + c)
    }
}

fn mismatch(op: &str, a: &Matrix, b: &Matrix) -> Error {
    Error::DimensionMismatch(format!("{op}: {}x{} vs {}x{}", a.rows, a.cols, b.rows, b.cols))
}

impl Matrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<ExactComplex>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        Ok(Self { rows, cols, entries })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![ExactComplex::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| {
            if i == j {
                ExactComplex::one()
            } else {
                ExactComplex::zero()
            }
        })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> ExactComplex) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        Self { rows, cols, entries }
    }

    /// Matrix of small integers given row by row.
    pub fn from_integers(rows: &[&[i64]]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Self::from_fn(r, c, |i, j| ExactComplex::from_integer(rows[i][j]))
    }

    pub fn diagonal(values: Vec<ExactComplex>) -> Self {
        let n = values.len();
        let mut m = Self::zeros(n, n);
        for (i, v) in values.into_iter().enumerate() {
            m.entries[i * n + i] = v;
        }
        m
    }

    /// Column vector.
    pub fn column(values: Vec<ExactComplex>) -> Self {
        let rows = values.len();
        Self {
            rows,
            cols: 1,
            entries: values,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[ExactComplex] {
        &self.entries
    }

    /// Entry at 0-based `(i, j)`.
    pub fn get(&self, i: usize, j: usize) -> &ExactComplex {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: ExactComplex) {
        self.entries[i * self.cols + j] = value;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(ExactComplex::is_zero)
    }

    pub fn is_real(&self) -> bool {
        self.entries.iter().all(ExactComplex::is_real)
    }

    pub fn diagonal_entries(&self) -> Vec<ExactComplex> {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i).clone()).collect()
    }

    pub fn trace(&self) -> ExactComplex {
        self.diagonal_entries()
            .iter()
            .fold(ExactComplex::zero(), |acc, x| &acc + x)
    }

    pub fn kron(&self, other: &Matrix) -> Matrix {
        let rows = self.rows * other.rows;
        let cols = self.cols * other.cols;
        let mut out = Matrix::zeros(rows, cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        let b = other.get(k, l);
                        if !b.is_zero() {
                            out.set(i * other.rows + k, j * other.cols + l, a * b);
                        }
                    }
                }
            }
        }
        out
    }

    pub fn matmul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(mismatch("matmul", self, other));
        }
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let prod = a.checked_mul(b)?;
                        out.entries[i * other.cols + j] += &prod;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(mismatch("add", self, other));
        }
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect();
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            entries,
        })
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(mismatch("sub", self, other));
        }
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a - b).collect();
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            entries,
        })
    }

    /// In-place `self += factor · other`.
    pub fn add_scaled(&mut self, factor: &ExactComplex, other: &Matrix) -> Result<()> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(mismatch("add_scaled", self, other));
        }
        if factor.is_zero() {
            return Ok(());
        }
        for (a, b) in self.entries.iter_mut().zip(&other.entries) {
            if !b.is_zero() {
                *a += &factor.checked_mul(b)?;
            }
        }
        Ok(())
    }

    pub fn scale(&self, factor: &ExactComplex) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|a| a * factor).collect(),
        }
    }

    pub fn scale_real(&self, factor: &ExactReal) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|a| a.scale_real(factor)).collect(),
        }
    }

    pub fn scale_rational(&self, factor: &Rational) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|a| a.scale(factor)).collect(),
        }
    }

    pub fn neg(&self) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|a| -a).collect(),
        }
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    /// Conjugate transpose.
    pub fn dagger(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).conj())
    }

    fn require_square(&self, op: &str) -> Result<()> {
        if self.is_square() {
            Ok(())
        } else {
            Err(Error::DimensionMismatch(format!(
                "{op} needs a square matrix, got {}x{}",
                self.rows, self.cols
            )))
        }
    }

    pub fn pow(&self, k: u32) -> Result<Matrix> {
        self.require_square("pow")?;
        let mut out = Matrix::identity(self.rows);
        for _ in 0..k {
            out = out.matmul(self)?;
        }
        Ok(out)
    }

    /// Rank by Gaussian elimination with exact zero tests.
    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        let mut rank = 0;
        for col in 0..m.cols {
            let Some(pivot) = (rank..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                continue;
            };
            m.swap_rows(rank, pivot);
            let inv = m.get(rank, col).invert().expect("pivot is non-zero");
            for r in rank + 1..m.rows {
                let factor = m.get(r, col) * &inv;
                if !factor.is_zero() {
                    m.eliminate(r, rank, &factor, col);
                }
            }
            rank += 1;
            if rank == m.rows {
                break;
            }
        }
        rank
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// `row[target] -= factor · row[source]`, for columns `from..`.
    fn eliminate(&mut self, target: usize, source: usize, factor: &ExactComplex, from: usize) {
        for j in from..self.cols {
            let s = self.get(source, j);
            if !s.is_zero() {
                let delta = factor * s;
                self.entries[target * self.cols + j] -= &delta;
            }
        }
    }

    /// Characteristic polynomial `det(xI − A)` by the Faddeev–LeVerrier recurrence.
    pub fn char_poly(&self) -> Result<PolyCoeffs> {
        self.require_square("char_poly")?;
        let n = self.rows;
        let mut coeffs = vec![ExactComplex::zero(); n + 1];
        coeffs[n] = ExactComplex::one();
        let mut m = Matrix::zeros(n, n);
        for k in 1..=n {
            // M_k = A M_{k-1} + c_{n-k+1} I
            m = self.matmul(&m)?;
            for i in 0..n {
                m.entries[i * n + i] += &coeffs[n - k + 1];
            }
            let tr = self.matmul(&m)?.trace();
            coeffs[n - k] = -tr.scale(&Rational::new(1.into(), (k as i64).into()));
        }
        Ok(PolyCoeffs { coefficients: coeffs })
    }

    /// Solves `self · x = rhs` exactly by Gauss–Jordan elimination.
    pub fn solve(&self, rhs: &Matrix) -> Result<Matrix> {
        self.require_square("solve")?;
        if rhs.rows != self.rows {
            return Err(mismatch("solve", self, rhs));
        }
        let n = self.rows;
        let width = n + rhs.cols;
        let mut aug = Matrix::from_fn(n, width, |i, j| {
            if j < n {
                self.get(i, j).clone()
            } else {
                rhs.get(i, j - n).clone()
            }
        });
        for col in 0..n {
            let pivot = (col..n)
                .find(|&r| !aug.get(r, col).is_zero())
                .ok_or(Error::SingularMatrix)?;
            aug.swap_rows(col, pivot);
            let inv = aug.get(col, col).invert()?;
            for j in col..width {
                let v = aug.get(col, j) * &inv;
                aug.set(col, j, v);
            }
            for r in 0..n {
                if r == col {
                    continue;
                }
                let factor = aug.get(r, col).clone();
                if !factor.is_zero() {
                    aug.eliminate(r, col, &factor, col);
                }
            }
        }
        Ok(Matrix::from_fn(n, rhs.cols, |i, j| aug.get(i, n + j).clone()))
    }

    pub fn inverse(&self) -> Result<Matrix> {
        self.solve(&Matrix::identity(self.rows))
    }

    /// `{"rows":r,"cols":c,"entries":[["re","im"],…]}`, row-major.
    pub fn to_json(&self) -> Value {
        let entries: Vec<Value> = self
            .entries
            .iter()
            .map(|z| json!([z.re.to_string(), z.im.to_string()]))
            .collect();
        json!({"rows": self.rows, "cols": self.cols, "entries": entries})
    }

    pub fn from_json(value: &Value) -> Result<Matrix> {
        let bad = |what: &str| Error::Parse(format!("matrix JSON: {what}"));
        let dim = |key: &str| {
            value
                .get(key)
                .and_then(Value::as_u64)
                .map(|v| v as usize)
                .ok_or_else(|| bad(&format!("missing {key}")))
        };
        let (rows, cols) = (dim("rows")?, dim("cols")?);
        let raw = value
            .get("entries")
            .and_then(Value::as_array)
            .ok_or_else(|| bad("missing entries"))?;
        let entries = raw
            .iter()
            .map(|e| match e.as_array().map(Vec::as_slice) {
                Some([re, im]) => {
                    let part =
                        |v: &Value| -> Result<ExactReal> { v.as_str().ok_or_else(|| bad("non-string entry"))?.parse() };
                    Ok(ExactComplex::new(part(re)?, part(im)?))
                }
                _ => Err(bad("entry is not a [re, im] pair")),
            })
            .collect::<Result<Vec<_>>>()?;
        Matrix::new(rows, cols, entries)
    }
}

/// `ab + ba`.
pub fn anticommutator(a: &Matrix, b: &Matrix) -> Result<Matrix> {
    a.matmul(b)?.add(&b.matmul(a)?)
}

/// `ab − ba`.
pub fn commutator(a: &Matrix, b: &Matrix) -> Result<Matrix> {
    a.matmul(b)?.sub(&b.matmul(a)?)
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols)
                .map(|j| {
                    let z = self.get(i, j);
                    if z.is_real() {
                        z.re.to_string()
                    } else {
                        z.to_string()
                    }
                })
                .collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}
