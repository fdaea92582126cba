use crate::arith::Arith;

/// Rank by Gaussian elimination on a dense row-major array. The pivot in each
/// column is the first nonzero entry unless the arithmetic prefers another
/// (largest magnitude over `Q`).
pub(crate) fn rank_dense_kernel<A: Arith>(arith: &A, mut m: Vec<Vec<A::E>>) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let mut pivot: Option<usize> = None;
        for r in rank..rows {
            if arith.is_zero(&m[r][c]) {
                continue;
            }
            match pivot {
                None => pivot = Some(r),
                Some(p) if arith.better_pivot(&m[r][c], &m[p][c]) => pivot = Some(r),
                _ => {}
            }
        }
        let Some(p) = pivot else { continue };
        m.swap(rank, p);
        let inv = arith.inv(&m[rank][c]);
        let (top, bottom) = m.split_at_mut(rank + 1);
        let pivot_row = &top[rank];
        for row in bottom.iter_mut() {
            if arith.is_zero(&row[c]) {
                continue;
            }
            let factor = arith.mul(&row[c], &inv);
            row[c] = arith.zero();
            for j in c + 1..cols {
                if !arith.is_zero(&pivot_row[j]) {
                    row[j] = arith.sub(&row[j], &arith.mul(&factor, &pivot_row[j]));
                }
            }
        }
        rank += 1;
    }
    rank
}
