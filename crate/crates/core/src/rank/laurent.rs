//! Matrices over the Laurent polynomial ring `k[t_1^±1, …, t_d^±1]` and their
//! rank over the rational function field `k(t_1, …, t_d)`.

use std::collections::BTreeMap;

use crate::arith::Arith;
use crate::error::{Error, Result};
use crate::scalar::{FieldDescriptor, Scalar};

/// Sparse Laurent polynomial: exponent vector to nonzero coefficient.
pub type LaurentPolynomial = BTreeMap<Vec<i64>, Scalar>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentMatrix {
    field: FieldDescriptor,
    nvars: usize,
    rows: usize,
    cols: usize,
    entries: BTreeMap<(usize, usize), LaurentPolynomial>,
}

impl LaurentMatrix {
    pub fn zeros(field: FieldDescriptor, nvars: usize, rows: usize, cols: usize) -> Self {
        LaurentMatrix { field, nvars, rows, cols, entries: BTreeMap::new() }
    }

    pub fn field(&self) -> FieldDescriptor {
        self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entry(&self, row: usize, col: usize) -> Option<&LaurentPolynomial> {
        self.entries.get(&(row, col))
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &LaurentPolynomial)> {
        self.entries.iter().map(|(&(i, j), p)| (i, j, p))
    }

    /// Adds `coeff · t^exps` to the entry at `(row, col)`.
    pub fn add_term(&mut self, row: usize, col: usize, exps: Vec<i64>, coeff: Scalar) -> Result<()> {
        if row >= self.rows || col >= self.cols {
            return Err(Error::InvalidInput(format!("position ({row}, {col}) out of range")));
        }
        if exps.len() != self.nvars {
            return Err(Error::InvalidInput(format!(
                "exponent vector of length {} in {} variables",
                exps.len(),
                self.nvars
            )));
        }
        if coeff.field() != self.field {
            return Err(Error::FieldMismatch);
        }
        let poly = self.entries.entry((row, col)).or_default();
        let sum = match poly.get(&exps) {
            Some(c) => c.add(&coeff)?,
            None => coeff,
        };
        if sum.is_zero() {
            poly.remove(&exps);
        } else {
            poly.insert(exps, sum);
        }
        if poly.is_empty() {
            self.entries.remove(&(row, col));
        }
        Ok(())
    }

    /// Convenience constructor from integer-coefficient terms per entry.
    pub fn from_terms(
        field: FieldDescriptor,
        nvars: usize,
        rows: usize,
        cols: usize,
        terms: &[(usize, usize, i64, Vec<i64>)],
    ) -> Result<Self> {
        let mut m = Self::zeros(field, nvars, rows, cols);
        for (i, j, c, e) in terms {
            m.add_term(*i, *j, e.clone(), Scalar::from_i64(field, *c))?;
        }
        Ok(m)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn transpose(&self) -> Self {
        LaurentMatrix {
            rows: self.cols,
            cols: self.rows,
            entries: self.entries.iter().map(|(&(i, j), p)| ((j, i), p.clone())).collect(),
            ..self.clone()
        }
    }

    /// Row `i` of the result is row `perm[i]` of `self`.
    pub fn permute_rows(&self, perm: &[usize]) -> Self {
        let mut inverse = vec![0; perm.len()];
        for (i, &p) in perm.iter().enumerate() {
            inverse[p] = i;
        }
        LaurentMatrix {
            entries: self.entries.iter().map(|(&(i, j), p)| ((inverse[i], j), p.clone())).collect(),
            ..self.clone()
        }
    }

    /// Column `j` of the result is column `perm[j]` of `self`.
    pub fn permute_cols(&self, perm: &[usize]) -> Self {
        self.transpose().permute_rows(perm).transpose()
    }

    /// Multiplies row `row` by the unit `c · t^exps`.
    pub fn scale_row(&mut self, row: usize, exps: &[i64], c: &Scalar) -> Result<()> {
        if c.is_zero() {
            return Err(Error::DivisionByZero);
        }
        for j in 0..self.cols {
            if let Some(p) = self.entries.get_mut(&(row, j)) {
                let mut out = LaurentPolynomial::new();
                for (e, v) in p.iter() {
                    let shifted: Vec<i64> = e.iter().zip(exps).map(|(a, b)| a + b).collect();
                    out.insert(shifted, v.mul(c)?);
                }
                *p = out;
            }
        }
        Ok(())
    }

    pub fn block_diag(&self, other: &LaurentMatrix) -> Result<Self> {
        if self.field != other.field || self.nvars != other.nvars {
            return Err(Error::FieldMismatch);
        }
        let mut out = self.clone();
        out.rows += other.rows;
        out.cols += other.cols;
        for (&(i, j), p) in &other.entries {
            out.entries.insert((i + self.rows, j + self.cols), p.clone());
        }
        Ok(out)
    }

    /// Rows multiplied by monomials so all exponents are nonnegative; units
    /// of the Laurent ring do not change the rank.
    pub(crate) fn polynomial_rows<E: Clone>(&self, conv: impl Fn(&Scalar) -> E) -> Vec<Vec<Poly<E>>> {
        let mut out: Vec<Vec<Poly<E>>> = vec![vec![Poly::new(); self.cols]; self.rows];
        for i in 0..self.rows {
            let mut low = vec![i64::MAX; self.nvars];
            for j in 0..self.cols {
                if let Some(p) = self.entries.get(&(i, j)) {
                    for e in p.keys() {
                        for (l, &x) in low.iter_mut().zip(e) {
                            *l = (*l).min(x);
                        }
                    }
                }
            }
            for j in 0..self.cols {
                if let Some(p) = self.entries.get(&(i, j)) {
                    out[i][j] = p
                        .iter()
                        .map(|(e, c)| (e.iter().zip(&low).map(|(x, l)| (x - l) as u32).collect(), conv(c)))
                        .collect();
                }
            }
        }
        out
    }

    /// Largest total degree of any entry after the row shift of
    /// `polynomial_rows`.
    pub(crate) fn max_shifted_degree(&self) -> u64 {
        self.polynomial_rows(|_| ())
            .iter()
            .flatten()
            .flat_map(|p| p.keys())
            .map(|e| e.iter().map(|&x| x as u64).sum())
            .max()
            .unwrap_or(0)
    }
}

/// Polynomial with nonnegative exponents, ordered lexicographically; the
/// leading term is the last key.
pub(crate) type Poly<E> = BTreeMap<Vec<u32>, E>;

fn poly_mul<A: Arith>(arith: &A, a: &Poly<A::E>, b: &Poly<A::E>) -> Poly<A::E> {
    let mut out: Poly<A::E> = Poly::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
            let term = arith.mul(ca, cb);
            let slot = out.entry(e).or_insert_with(|| arith.zero());
            *slot = arith.add(slot, &term);
        }
    }
    out.retain(|_, c| !arith.is_zero(c));
    out
}

fn poly_sub<A: Arith>(arith: &A, a: &Poly<A::E>, b: &Poly<A::E>) -> Poly<A::E> {
    let mut out = a.clone();
    for (e, c) in b {
        let slot = out.entry(e.clone()).or_insert_with(|| arith.zero());
        *slot = arith.sub(slot, c);
    }
    out.retain(|_, c| !arith.is_zero(c));
    out
}

/// `a / b` when `b` divides `a` exactly; `None` otherwise.
pub(crate) fn poly_div_exact<A: Arith>(arith: &A, a: &Poly<A::E>, b: &Poly<A::E>) -> Option<Poly<A::E>> {
    let (lead_exp, lead_coeff) = b.iter().next_back()?;
    let lead_inv = arith.inv(lead_coeff);
    let mut rem = a.clone();
    let mut quot = Poly::new();
    while let Some((e, c)) = rem.iter().next_back() {
        if e.iter().zip(lead_exp).any(|(x, y)| x < y) {
            return None;
        }
        let qe: Vec<u32> = e.iter().zip(lead_exp).map(|(x, y)| x - y).collect();
        let qc = arith.mul(c, &lead_inv);
        let mut term = Poly::new();
        term.insert(qe.clone(), qc.clone());
        rem = poly_sub(arith, &rem, &poly_mul(arith, &term, b));
        quot.insert(qe, qc);
    }
    Some(quot)
}

/// Rank over the fraction field by fraction-free (Bareiss) elimination.
///
/// After the step with pivot `(k, c)`, each remaining entry is a minor of the
/// original matrix, and the division by the previous pivot is exact by
/// Sylvester's identity.
pub(crate) fn bareiss_rank<A: Arith>(arith: &A, mut m: Vec<Vec<Poly<A::E>>>) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    // previous pivot; `None` stands for the constant 1 before the first step
    let mut prev: Option<Poly<A::E>> = None;
    let mut rank = 0;
    for c in 0..cols {
        if rank == rows {
            break;
        }
        // sparsest nonzero candidate keeps intermediate growth down
        let Some(p) = (rank..rows).filter(|&r| !m[r][c].is_empty()).min_by_key(|&r| (m[r][c].len(), r)) else {
            continue;
        };
        m.swap(rank, p);
        let (top, bottom) = m.split_at_mut(rank + 1);
        let pivot_row = &top[rank];
        let pivot = &pivot_row[c];
        for row in bottom.iter_mut() {
            for j in c + 1..cols {
                let lhs = poly_mul(arith, pivot, &row[j]);
                let rhs = poly_mul(arith, &row[c], &pivot_row[j]);
                let num = poly_sub(arith, &lhs, &rhs);
                row[j] = match &prev {
                    Some(d) => poly_div_exact(arith, &num, d).expect("Bareiss division is exact"),
                    None => num,
                };
            }
            row[c] = Poly::new();
        }
        prev = Some(pivot_row[c].clone());
        rank += 1;
    }
    rank
}
