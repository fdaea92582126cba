use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::scalar::{FieldDescriptor, Scalar};

/// A matrix over the coefficient field, stored as sparse `(row, col)` triples.
///
/// Zero coefficients are never stored, so `nnz` is exact and the density
/// drives the choice between the dense and sparse elimination kernels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlainMatrix {
    field: FieldDescriptor,
    rows: usize,
    cols: usize,
    entries: BTreeMap<(usize, usize), Scalar>,
}

impl PlainMatrix {
    pub fn zeros(field: FieldDescriptor, rows: usize, cols: usize) -> Self {
        PlainMatrix { field, rows, cols, entries: BTreeMap::new() }
    }

    pub fn identity(field: FieldDescriptor, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.entries.insert((i, i), field.one());
        }
        m
    }

    /// Builds a matrix from integer rows, reduced into `field`.
    pub fn from_i64_rows(field: FieldDescriptor, rows: &[Vec<i64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(field, rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != cols {
                return Err(Error::InvalidInput("ragged rows".into()));
            }
            for (j, &v) in row.iter().enumerate() {
                m.set(i, j, Scalar::from_i64(field, v))?;
            }
        }
        Ok(m)
    }

    pub fn field(&self) -> FieldDescriptor {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    /// Fraction of stored positions; `0` for empty shapes.
    pub fn density(&self) -> f64 {
        let total = self.rows * self.cols;
        if total == 0 {
            0.0
        } else {
            self.nnz() as f64 / total as f64
        }
    }

    pub fn get(&self, row: usize, col: usize) -> Scalar {
        self.entries.get(&(row, col)).cloned().unwrap_or_else(|| self.field.zero())
    }

    fn check(&self, row: usize, col: usize, value: &Scalar) -> Result<()> {
        if row >= self.rows || col >= self.cols {
            return Err(Error::InvalidInput(format!(
                "position ({row}, {col}) outside a {}x{} matrix",
                self.rows, self.cols
            )));
        }
        if value.field() != self.field {
            return Err(Error::FieldMismatch);
        }
        Ok(())
    }

    pub fn set(&mut self, row: usize, col: usize, value: Scalar) -> Result<()> {
        self.check(row, col, &value)?;
        if value.is_zero() {
            self.entries.remove(&(row, col));
        } else {
            self.entries.insert((row, col), value);
        }
        Ok(())
    }

    /// Adds `value` to the entry at `(row, col)`.
    pub fn accumulate(&mut self, row: usize, col: usize, value: &Scalar) -> Result<()> {
        self.check(row, col, value)?;
        let sum = self.get(row, col).add(value)?;
        self.set(row, col, sum)
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Scalar)> {
        self.entries.iter().map(|(&(i, j), v)| (i, j, v))
    }

    pub fn transpose(&self) -> Self {
        PlainMatrix {
            field: self.field,
            rows: self.cols,
            cols: self.rows,
            entries: self.entries.iter().map(|(&(i, j), v)| ((j, i), v.clone())).collect(),
        }
    }

    /// Row `i` of the result is row `perm[i]` of `self`.
    pub fn permute_rows(&self, perm: &[usize]) -> Self {
        let mut inverse = vec![0; perm.len()];
        for (i, &p) in perm.iter().enumerate() {
            inverse[p] = i;
        }
        PlainMatrix {
            entries: self.entries.iter().map(|(&(i, j), v)| ((inverse[i], j), v.clone())).collect(),
            ..self.clone()
        }
    }

    pub fn scale_row(&mut self, row: usize, factor: &Scalar) -> Result<()> {
        if factor.field() != self.field {
            return Err(Error::FieldMismatch);
        }
        for j in 0..self.cols {
            let v = self.get(row, j).mul(factor)?;
            self.set(row, j, v)?;
        }
        Ok(())
    }

    /// Block-diagonal sum.
    pub fn block_diag(&self, other: &PlainMatrix) -> Result<Self> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        let mut out = Self::zeros(self.field, self.rows + other.rows, self.cols + other.cols);
        out.entries = self.entries.clone();
        for (&(i, j), v) in &other.entries {
            out.entries.insert((i + self.rows, j + self.cols), v.clone());
        }
        Ok(out)
    }

    /// The product `self · other`.
    pub fn mul(&self, other: &PlainMatrix) -> Result<Self> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        if self.cols != other.rows {
            return Err(Error::InvalidInput(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let rows = other.sparse_rows(Scalar::clone);
        let mut out = Self::zeros(self.field, self.rows, other.cols);
        for (&(i, l), a) in &self.entries {
            for (&j, b) in &rows[l] {
                out.accumulate(i, j, &a.mul(b)?)?;
            }
        }
        Ok(out)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// Dense row-major copy.
    pub fn to_dense(&self) -> Vec<Vec<Scalar>> {
        let mut out = vec![vec![self.field.zero(); self.cols]; self.rows];
        for (&(i, j), v) in &self.entries {
            out[i][j] = v.clone();
        }
        out
    }

    /// Sparse rows with entries converted by `conv`.
    pub(crate) fn sparse_rows<E>(&self, conv: impl Fn(&Scalar) -> E) -> Vec<BTreeMap<usize, E>> {
        let mut out: Vec<BTreeMap<usize, E>> = (0..self.rows).map(|_| BTreeMap::new()).collect();
        for (&(i, j), v) in &self.entries {
            out[i].insert(j, conv(v));
        }
        out
    }

    pub(crate) fn dense_rows<E: Clone>(&self, zero: E, conv: impl Fn(&Scalar) -> E) -> Vec<Vec<E>> {
        let mut out = vec![vec![zero; self.cols]; self.rows];
        for (&(i, j), v) in &self.entries {
            out[i][j] = conv(v);
        }
        out
    }
}
