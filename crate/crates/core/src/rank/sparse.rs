use std::collections::{BTreeMap, BTreeSet};

use super::dense::rank_dense_kernel;
use crate::arith::Arith;

/// Active-block density above which the sparse kernel hands the remainder to
/// the dense kernel.
const DENSE_FALLBACK: f64 = 0.5;

/// Rank by sparse elimination with Markowitz pivoting.
///
/// Each step picks the nonzero minimizing `(r_i - 1)(c_j - 1)`, with `r_i`
/// and `c_j` the live counts of its row and column; ties go to the lowest
/// `(row, col)`. In exact arithmetic every nonzero is numerically admissible,
/// so the threshold test of floating-point Markowitz codes is vacuous here.
pub(crate) fn rank_sparse_kernel<A: Arith>(arith: &A, mut rows: Vec<BTreeMap<usize, A::E>>, cols: usize) -> usize {
    let mut col_rows: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); cols];
    let mut nnz = 0usize;
    for (i, row) in rows.iter().enumerate() {
        for &j in row.keys() {
            col_rows[j].insert(i);
            nnz += 1;
        }
    }
    let mut rank = 0;
    loop {
        if nnz == 0 {
            return rank;
        }
        let live_rows = rows.iter().filter(|r| !r.is_empty()).count();
        let live_cols = col_rows.iter().filter(|c| !c.is_empty()).count();
        if nnz as f64 > DENSE_FALLBACK * (live_rows * live_cols) as f64 {
            return rank + dense_remainder(arith, &rows, &col_rows);
        }

        let mut best: Option<(usize, usize, usize)> = None;
        for (i, row) in rows.iter().enumerate() {
            if row.is_empty() {
                continue;
            }
            let rc = row.len() - 1;
            if let Some((cost, _, _)) = best {
                if cost == 0 {
                    break;
                }
            }
            for &j in row.keys() {
                let cost = rc * (col_rows[j].len() - 1);
                if best.is_none_or(|(b, _, _)| cost < b) {
                    best = Some((cost, i, j));
                }
            }
        }
        let (_, pr, pc) = best.expect("nonzero entries remain");

        let pivot_row = std::mem::take(&mut rows[pr]);
        for &j in pivot_row.keys() {
            col_rows[j].remove(&pr);
        }
        nnz -= pivot_row.len();
        let inv = arith.inv(&pivot_row[&pc]);
        let targets: Vec<usize> = col_rows[pc].iter().copied().collect();
        for i in targets {
            let factor = arith.mul(&rows[i][&pc], &inv);
            for (&j, v) in &pivot_row {
                let delta = arith.mul(&factor, v);
                let row = &mut rows[i];
                match row.get_mut(&j) {
                    Some(x) => {
                        *x = arith.sub(x, &delta);
                        if arith.is_zero(x) {
                            row.remove(&j);
                            col_rows[j].remove(&i);
                            nnz -= 1;
                        }
                    }
                    None => {
                        row.insert(j, arith.neg(&delta));
                        col_rows[j].insert(i);
                        nnz += 1;
                    }
                }
            }
            debug_assert!(!rows[i].contains_key(&pc));
        }
        rank += 1;
    }
}

fn dense_remainder<A: Arith>(arith: &A, rows: &[BTreeMap<usize, A::E>], col_rows: &[BTreeSet<usize>]) -> usize {
    let live_cols: Vec<usize> = (0..col_rows.len()).filter(|&j| !col_rows[j].is_empty()).collect();
    let position: BTreeMap<usize, usize> = live_cols.iter().enumerate().map(|(k, &j)| (j, k)).collect();
    let dense: Vec<Vec<A::E>> = rows
        .iter()
        .filter(|r| !r.is_empty())
        .map(|r| {
            let mut out = vec![arith.zero(); live_cols.len()];
            for (j, v) in r {
                out[position[j]] = v.clone();
            }
            out
        })
        .collect();
    rank_dense_kernel(arith, dense)
}
