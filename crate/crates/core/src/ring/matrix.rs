use std::collections::{BTreeMap, BTreeSet};

use super::GroupRingElement;
use crate::error::{Error, Result};
use crate::group::{GroupDescriptor, GroupElement};
use crate::rank::LaurentMatrix;
use crate::scalar::FieldDescriptor;

/// An `r x s` matrix over `k[G]`, stored sparsely by `(row, col)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupRingMatrix {
    field: FieldDescriptor,
    group: GroupDescriptor,
    rows: usize,
    cols: usize,
    entries: BTreeMap<(usize, usize), GroupRingElement>,
}

impl GroupRingMatrix {
    pub fn zeros(field: FieldDescriptor, group: GroupDescriptor, rows: usize, cols: usize) -> Self {
        GroupRingMatrix { field, group, rows, cols, entries: BTreeMap::new() }
    }

    pub fn identity(field: FieldDescriptor, group: GroupDescriptor, n: usize) -> Self {
        let mut m = Self::zeros(field, group, n, n);
        for i in 0..n {
            m.entries.insert((i, i), GroupRingElement::one(field, group));
        }
        m
    }

    /// Builds a matrix from a row-major grid of elements.
    pub fn from_rows(field: FieldDescriptor, group: GroupDescriptor, rows: Vec<Vec<GroupRingElement>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(field, group, rows.len(), cols);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != cols {
                return Err(Error::InvalidInput(format!("row {i} has {} entries, expected {cols}", row.len())));
            }
            for (j, a) in row.into_iter().enumerate() {
                m.set(i, j, a)?;
            }
        }
        Ok(m)
    }

    pub fn field(&self) -> FieldDescriptor {
        self.field
    }

    pub fn group(&self) -> GroupDescriptor {
        self.group
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, row: usize, col: usize) -> GroupRingElement {
        self.entries.get(&(row, col)).cloned().unwrap_or_else(|| GroupRingElement::zero(self.field, self.group))
    }

    pub fn set(&mut self, row: usize, col: usize, value: GroupRingElement) -> Result<()> {
        if row >= self.rows || col >= self.cols {
            return Err(Error::InvalidInput(format!("position ({row}, {col}) outside a {}x{} matrix", self.rows, self.cols)));
        }
        if value.field() != self.field {
            return Err(Error::FieldMismatch);
        }
        if value.group() != self.group {
            return Err(Error::GroupMismatch);
        }
        if value.is_zero() {
            self.entries.remove(&(row, col));
        } else {
            self.entries.insert((row, col), value);
        }
        Ok(())
    }

    /// Nonzero entries in row-major order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &GroupRingElement)> {
        self.entries.iter().map(|(&(i, j), a)| (i, j, a))
    }

    /// Union of the supports of all entries.
    pub fn support(&self) -> BTreeSet<GroupElement> {
        self.entries.values().flat_map(|a| a.support()).collect()
    }

    fn check(&self, other: &GroupRingMatrix) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        if self.group != other.group {
            return Err(Error::GroupMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &GroupRingMatrix) -> Result<Self> {
        self.check(other)?;
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::InvalidInput("shape mismatch in matrix sum".into()));
        }
        let mut out = self.clone();
        for (&(i, j), b) in &other.entries {
            out.set(i, j, out.get(i, j).add(b)?)?;
        }
        Ok(out)
    }

    /// The product `self · other`; with row vectors acting on the left,
    /// `r_{AB} = r_B ∘ r_A`.
    pub fn mul(&self, other: &GroupRingMatrix) -> Result<Self> {
        self.check(other)?;
        if self.cols != other.rows {
            return Err(Error::InvalidInput(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut by_row: BTreeMap<usize, Vec<(usize, &GroupRingElement)>> = BTreeMap::new();
        for (&(l, j), b) in &other.entries {
            by_row.entry(l).or_default().push((j, b));
        }
        let mut out = Self::zeros(self.field, self.group, self.rows, other.cols);
        for (&(i, l), a) in &self.entries {
            for &(j, b) in by_row.get(&l).into_iter().flatten() {
                let sum = out.get(i, j).add(&a.convolve(b)?)?;
                out.set(i, j, sum)?;
            }
        }
        Ok(out)
    }

    pub fn block_diag(&self, other: &GroupRingMatrix) -> Result<Self> {
        self.check(other)?;
        let mut out = self.clone();
        out.rows += other.rows;
        out.cols += other.cols;
        for (&(i, j), b) in &other.entries {
            out.entries.insert((i + self.rows, j + self.cols), b.clone());
        }
        Ok(out)
    }

    /// Multiplies row `row` on the left by the unit `g`.
    pub fn scale_row(&mut self, row: usize, g: &GroupElement) -> Result<()> {
        for j in 0..self.cols {
            if let Some(a) = self.entries.get_mut(&(row, j)) {
                *a = a.left_translate(g)?;
            }
        }
        Ok(())
    }

    /// Multiplies column `col` on the right by the unit `g`.
    pub fn scale_col(&mut self, col: usize, g: &GroupElement) -> Result<()> {
        for i in 0..self.rows {
            if let Some(a) = self.entries.get_mut(&(i, col)) {
                *a = a.right_translate(g)?;
            }
        }
        Ok(())
    }

    /// The same matrix over another field; see
    /// [`GroupRingElement::change_field`].
    pub fn change_field(&self, field: FieldDescriptor) -> Result<Self> {
        let mut out = Self::zeros(field, self.group, self.rows, self.cols);
        for (&(i, j), a) in &self.entries {
            out.set(i, j, a.change_field(field)?)?;
        }
        Ok(out)
    }

    /// The Laurent polynomial matrix of a matrix over `k[Z^d]`.
    pub fn to_laurent(&self) -> Result<LaurentMatrix> {
        let GroupDescriptor::Zd(d) = self.group else {
            return Err(Error::OreUnavailable);
        };
        let mut m = LaurentMatrix::zeros(self.field, d, self.rows, self.cols);
        for (&(i, j), a) in &self.entries {
            for (g, c) in a.terms() {
                m.add_term(i, j, g.coordinates(), c.clone())?;
            }
        }
        Ok(m)
    }
}

/// The module `M = coker(r_A : k[G]^r -> k[G]^s)` with `r_A(x) = x A`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PresentedModule {
    matrix: GroupRingMatrix,
}

impl PresentedModule {
    pub fn new(matrix: GroupRingMatrix) -> Self {
        PresentedModule { matrix }
    }

    /// The free module `k[G]`, presented by the `1 x 1` zero matrix.
    pub fn free_rank_one(field: FieldDescriptor, group: GroupDescriptor) -> Self {
        Self::new(GroupRingMatrix::zeros(field, group, 1, 1))
    }

    pub fn matrix(&self) -> &GroupRingMatrix {
        &self.matrix
    }

    /// `s`, the number of generators.
    pub fn generators(&self) -> usize {
        self.matrix.cols()
    }

    /// `r`, the number of relations.
    pub fn relations(&self) -> usize {
        self.matrix.rows()
    }

    pub fn field(&self) -> FieldDescriptor {
        self.matrix.field()
    }

    pub fn group(&self) -> GroupDescriptor {
        self.matrix.group()
    }

    /// Presentation of `M ⊕ N`.
    pub fn direct_sum(&self, other: &PresentedModule) -> Result<Self> {
        Ok(Self::new(self.matrix.block_diag(&other.matrix)?))
    }
}

impl From<GroupRingMatrix> for PresentedModule {
    fn from(matrix: GroupRingMatrix) -> Self {
        Self::new(matrix)
    }
}
