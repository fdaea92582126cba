//! Reference computations that share no elimination code with the library
//! kernels. The test suites and `oredim selftest` compare against them.

use std::collections::HashSet;

use num_rational::BigRational;

use crate::arith::{Arith, PrimeArith, RationalArith};
use crate::gf::GfArith;
use crate::rank::{LaurentMatrix, PlainMatrix};
use crate::scalar::{FieldDescriptor, Scalar};

/// Largest number of vectors [`rank_by_enumeration`] will visit.
pub const ENUMERATION_LIMIT: u64 = 1 << 20;

/// Rank over `F_p` as `log_p` of the number of distinct vectors `x M`,
/// `x ∈ F_p^rows`. `None` over `Q` or when `p^rows` exceeds
/// [`ENUMERATION_LIMIT`].
pub fn rank_by_enumeration(m: &PlainMatrix) -> Option<usize> {
    let p = m.field().modulus()? as u64;
    let total = (p as u128).checked_pow(m.rows() as u32)?;
    if total > ENUMERATION_LIMIT as u128 {
        return None;
    }
    let dense: Vec<Vec<u64>> = m.to_dense().iter().map(|r| r.iter().map(|s| s.residue().unwrap() as u64).collect()).collect();
    let mut images = HashSet::new();
    for code in 0..total as u64 {
        let mut x = code;
        let mut v = vec![0u64; m.cols()];
        for row in &dense {
            let c = x % p;
            x /= p;
            for (acc, a) in v.iter_mut().zip(row) {
                *acc = (*acc + c * a) % p;
            }
        }
        images.insert(v);
    }
    let mut rank = 0;
    let mut size = 1u64;
    while size < images.len() as u64 {
        size *= p;
        rank += 1;
    }
    Some(rank)
}

/// Rank by inserting rows one at a time into an echelon basis keyed by
/// leading column.
fn basis_insertion_rank<A: Arith>(arith: &A, rows: Vec<Vec<A::E>>) -> usize {
    let mut basis: Vec<(usize, Vec<A::E>)> = Vec::new();
    for mut v in rows {
        loop {
            let Some(lead) = v.iter().position(|x| !arith.is_zero(x)) else { break };
            match basis.iter().find(|(l, _)| *l == lead) {
                Some((_, b)) => {
                    let f = arith.mul(&v[lead], &arith.inv(&b[lead]));
                    for (x, y) in v.iter_mut().zip(b) {
                        *x = arith.sub(x, &arith.mul(&f, y));
                    }
                }
                None => {
                    basis.push((lead, v));
                    break;
                }
            }
        }
    }
    basis.len()
}

/// Rank over the coefficient field by basis insertion.
pub fn naive_rank(m: &PlainMatrix) -> usize {
    let dense = m.to_dense();
    match m.field().modulus() {
        Some(p) => {
            let rows = dense.iter().map(|r| r.iter().map(|s| s.residue().unwrap() as u64).collect()).collect();
            basis_insertion_rank(&PrimeArith { p: p as u64 }, rows)
        }
        None => {
            let rows = dense.iter().map(|r| r.iter().map(|s| s.as_rational().unwrap().clone()).collect()).collect();
            basis_insertion_rank(&RationalArith, rows)
        }
    }
}

/// Rank over `k(t_1, …, t_d)` as the largest rank of `M(x)` over the grid
/// `x ∈ S^d`, with `|S|` exceeding the degree `D` of every minor in each
/// variable (after clearing negative exponents row by row). A nonzero
/// polynomial of degree `<= D` in each variable cannot vanish on such a grid.
/// Cost is `(D + 1)^d` evaluations, so keep inputs small.
pub fn rank_over_function_field(m: &LaurentMatrix) -> usize {
    let full = m.rows().min(m.cols());
    let d = full * m.max_shifted_degree() as usize;
    let mut best = 0;
    match m.field().modulus() {
        None => {
            let rows = m.polynomial_rows(|s: &Scalar| s.as_rational().unwrap().clone());
            let axis: Vec<BigRational> = (0..=d as i64).map(|x| BigRational::from_integer(x.into())).collect();
            for point in grid(&axis, m.nvars()) {
                best = best.max(basis_insertion_rank(&RationalArith, evaluate(&RationalArith, &rows, &point)));
            }
        }
        Some(p) => {
            let p = p as u64;
            let mut e = 1u32;
            while p.pow(e) <= d as u64 {
                e += 1;
            }
            let gf = GfArith::new(p, e as usize);
            let rows = m.polynomial_rows(|s: &Scalar| gf.embed(s.residue().unwrap() as u64));
            let axis: Vec<Vec<u64>> = (0..=d as u64)
                .map(|mut n| {
                    (0..e)
                        .map(|_| {
                            let digit = n % p;
                            n /= p;
                            digit
                        })
                        .collect()
                })
                .collect();
            for point in grid(&axis, m.nvars()) {
                best = best.max(basis_insertion_rank(&gf, evaluate(&gf, &rows, &point)));
            }
        }
    }
    best
}

fn grid<T: Clone>(axis: &[T], dims: usize) -> Vec<Vec<T>> {
    let mut out: Vec<Vec<T>> = vec![vec![]];
    for _ in 0..dims {
        out = out
            .into_iter()
            .flat_map(|p| {
                axis.iter().map(move |x| {
                    let mut q = p.clone();
                    q.push(x.clone());
                    q
                })
            })
            .collect();
    }
    out
}

fn evaluate<A: Arith>(a: &A, rows: &[Vec<crate::rank::Poly<A::E>>], point: &[A::E]) -> Vec<Vec<A::E>> {
    rows.iter()
        .map(|row| {
            row.iter()
                .map(|poly| {
                    let mut acc = a.zero();
                    for (e, c) in poly {
                        let mut t = c.clone();
                        for (x, &k) in point.iter().zip(e) {
                            for _ in 0..k {
                                t = a.mul(&t, x);
                            }
                        }
                        acc = a.add(&acc, &t);
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

/// `dim_k H_j((Z/n)^d; k)` for `k` of characteristic `char` (0 for `Q`), by
/// the Künneth formula: each factor `Z/n` contributes `1` in degree 0 and,
/// in every positive degree, `1` exactly when `char` divides `n`.
pub fn cyclic_power_betti(d: usize, n: u64, char: u64, degree: usize) -> u64 {
    let positive = u64::from(char != 0 && n % char == 0);
    // coefficients of the product of d copies of 1 + positive·(t + t^2 + …)
    let mut poly = vec![0u64; degree + 1];
    poly[0] = 1;
    for _ in 0..d {
        let mut next = vec![0u64; degree + 1];
        for (i, &a) in poly.iter().enumerate() {
            next[i] += a;
            for slot in next.iter_mut().skip(i + 1) {
                *slot += a * positive;
            }
        }
        poly = next;
    }
    poly[degree]
}

/// `dim_k H_j((Z/n)^d; k)` for `j <= i_max` from the explicit tensor product
/// of `d` periodic resolutions `kG <- kG <- …` of `k` over `k[Z/n]`, with
/// differentials right multiplication by `t - 1` (odd degrees) and the norm
/// element (even degrees). Each map between summands is built as an
/// `n^d x n^d` Kronecker product of circulants; the map on coinvariants is
/// the augmentation of its row for the identity. Sizes grow like `n^d`, so
/// keep `n^d` small.
pub fn periodic_resolution_betti(d: usize, n: usize, field: FieldDescriptor, i_max: usize) -> Vec<usize> {
    let top = i_max + 1;
    let size = n.pow(d as u32);
    let circulant = |odd: bool| -> Vec<Vec<i64>> {
        let mut m = vec![vec![0i64; n]; n];
        for (a, row) in m.iter_mut().enumerate() {
            if odd {
                row[(a + 1) % n] += 1;
                row[a] -= 1;
            } else {
                row.iter_mut().for_each(|x| *x += 1);
            }
        }
        m
    };
    let identity: Vec<Vec<i64>> = (0..n).map(|a| (0..n).map(|b| i64::from(a == b)).collect()).collect();
    let kron = |a: &Vec<Vec<i64>>, b: &Vec<Vec<i64>>| -> Vec<Vec<i64>> {
        let (ra, rb) = (a.len(), b.len());
        let mut out = vec![vec![0i64; ra * rb]; ra * rb];
        for i in 0..ra {
            for j in 0..ra {
                for k in 0..rb {
                    for l in 0..rb {
                        out[i * rb + k][j * rb + l] = a[i][j] * b[k][l];
                    }
                }
            }
        }
        out
    };
    let indices = |i: usize| -> Vec<Vec<usize>> {
        grid(&(0..=top).collect::<Vec<_>>(), d).into_iter().filter(|v| v.iter().sum::<usize>() == i).collect()
    };
    let bases: Vec<Vec<Vec<usize>>> = (0..=top).map(indices).collect();
    let mut ranks = Vec::new();
    for i in 1..=top {
        let mut coinvariant = vec![vec![0i64; bases[i - 1].len()]; bases[i].len()];
        for (row, idx) in bases[i].iter().enumerate() {
            let mut sign = 1i64;
            for k in 0..d {
                if idx[k] > 0 {
                    let mut face = idx.clone();
                    face[k] -= 1;
                    let col = bases[i - 1].iter().position(|t| *t == face).unwrap();
                    let mut big = vec![vec![1i64]];
                    for f in 0..d {
                        let factor = if f == k { circulant(idx[k] % 2 == 1) } else { identity.clone() };
                        big = kron(&big, &factor);
                    }
                    debug_assert_eq!(big.len(), size);
                    coinvariant[row][col] += sign * big[0].iter().sum::<i64>();
                }
                if idx[k] % 2 == 1 {
                    sign = -sign;
                }
            }
        }
        let m = PlainMatrix::from_i64_rows(field, &coinvariant).unwrap();
        ranks.push(naive_rank(&m));
    }
    (0..=i_max).map(|i| bases[i].len() - if i >= 1 { ranks[i - 1] } else { 0 } - ranks[i]).collect()
}
