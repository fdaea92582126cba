use num_rational::BigRational;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::scalar::{FieldDescriptor, Scalar};

fn fp(p: u64) -> FieldDescriptor {
    FieldDescriptor::prime(p).unwrap()
}

fn circulant_shift_minus_identity(field: FieldDescriptor, n: usize) -> PlainMatrix {
    let mut m = PlainMatrix::zeros(field, n, n);
    for i in 0..n {
        m.accumulate(i, (i + 1) % n, &field.one()).unwrap();
        m.accumulate(i, i, &field.one().neg()).unwrap();
    }
    m
}

/// Rank by exhaustive search: the largest `k` with a nonzero `k x k` minor,
/// minors evaluated by cofactor expansion over `Q`.
fn rank_by_minors(rows: &[Vec<i64>]) -> usize {
    fn det(m: &[Vec<BigRational>]) -> BigRational {
        if m.is_empty() {
            return BigRational::from_integer(1.into());
        }
        let mut acc = BigRational::from_integer(0.into());
        for j in 0..m.len() {
            let minor: Vec<Vec<_>> =
                m[1..].iter().map(|r| r.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, v)| v.clone()).collect()).collect();
            let term = &m[0][j] * det(&minor);
            acc = if j % 2 == 0 { acc + term } else { acc - term };
        }
        acc
    }
    fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
        if k == 0 {
            return vec![vec![]];
        }
        if n < k {
            return vec![];
        }
        let mut out = subsets(n - 1, k);
        for mut s in subsets(n - 1, k - 1) {
            s.push(n - 1);
            out.push(s);
        }
        out
    }
    let r = rows.len();
    let c = rows.first().map_or(0, Vec::len);
    for k in (1..=r.min(c)).rev() {
        for rs in subsets(r, k) {
            for cs in subsets(c, k) {
                let sub: Vec<Vec<BigRational>> =
                    rs.iter().map(|&i| cs.iter().map(|&j| BigRational::from_integer(rows[i][j].into())).collect()).collect();
                if det(&sub) != BigRational::from_integer(0.into()) {
                    return k;
                }
            }
        }
    }
    0
}

#[test]
fn dense_examples() {
    let m = PlainMatrix::from_i64_rows(fp(5), &[vec![1, 2], vec![2, 4]]).unwrap();
    assert_eq!(rank_dense(&m), 1);
    for n in [0, 1, 7] {
        assert_eq!(rank_dense(&PlainMatrix::identity(fp(3), n)), n);
        assert_eq!(rank_dense(&PlainMatrix::identity(FieldDescriptor::rationals(), n)), n);
    }
    assert_eq!(rank_dense(&PlainMatrix::zeros(fp(2), 4, 6)), 0);
    assert_eq!(rank_dense(&PlainMatrix::zeros(fp(2), 0, 6)), 0);
}

#[test]
fn sparse_examples() {
    assert_eq!(rank_sparse(&circulant_shift_minus_identity(fp(2), 3)), 2);
    let perm = [3usize, 0, 4, 1, 2];
    let mut m = PlainMatrix::zeros(fp(7), 5, 5);
    for (i, &j) in perm.iter().enumerate() {
        m.set(i, j, fp(7).one()).unwrap();
    }
    assert_eq!(rank_sparse(&m), 5);
    assert_eq!(rank_sparse(&PlainMatrix::zeros(fp(7), 3, 0)), 0);
}

#[test]
fn dense_and_sparse_agree_with_minors_over_q() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..60 {
        let r = rng.gen_range(1..=4);
        let c = rng.gen_range(1..=4);
        let rows: Vec<Vec<i64>> = (0..r).map(|_| (0..c).map(|_| if rng.gen_bool(0.4) { rng.gen_range(-2..=2) } else { 0 }).collect()).collect();
        let expect = rank_by_minors(&rows);
        let m = PlainMatrix::from_i64_rows(FieldDescriptor::rationals(), &rows).unwrap();
        assert_eq!(rank_dense(&m), expect, "{rows:?}");
        assert_eq!(rank_sparse(&m), expect, "{rows:?}");
    }
}

fn random_sparse(rng: &mut ChaCha8Rng, field: FieldDescriptor) -> PlainMatrix {
    let r = rng.gen_range(1..=64);
    let c = rng.gen_range(1..=64);
    let density = rng.gen_range(0.0..=0.1);
    let p = field.modulus().unwrap() as i64;
    let mut m = PlainMatrix::zeros(field, r, c);
    for i in 0..r {
        for j in 0..c {
            if rng.gen_bool(density) {
                m.set(i, j, Scalar::from_i64(field, rng.gen_range(1..p))).unwrap();
            }
        }
    }
    m
}

#[test]
fn sparse_matches_dense_on_random_instances() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for k in 0..200 {
        let field = fp([2, 3, 5, 101][k % 4]);
        let m = random_sparse(&mut rng, field);
        assert_eq!(rank_sparse(&m), rank_dense(&m));
    }
}

#[test]
fn auto_switches_kernels_consistently() {
    let big = circulant_shift_minus_identity(fp(3), 90);
    assert!(big.rows() * big.cols() > DENSE_MAX_ENTRIES);
    assert_eq!(rank(&big, RankAlgorithm::Auto), 89);
    assert_eq!(rank(&big, RankAlgorithm::Dense), 89);
    assert_eq!(rank(&big, RankAlgorithm::Sparse), 89);
}

#[test]
fn q_rank_matches_large_prime_rank() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for _ in 0..40 {
        let r = rng.gen_range(1..=6);
        let c = rng.gen_range(1..=6);
        let k = rng.gen_range(1..=r.min(c));
        // product of r x k and k x c integer matrices has rank <= k
        let left: Vec<Vec<i64>> = (0..r).map(|_| (0..k).map(|_| rng.gen_range(-3..=3)).collect()).collect();
        let right: Vec<Vec<i64>> = (0..k).map(|_| (0..c).map(|_| rng.gen_range(-3..=3)).collect()).collect();
        let rows: Vec<Vec<i64>> =
            (0..r).map(|i| (0..c).map(|j| (0..k).map(|l| left[i][l] * right[l][j]).sum()).collect()).collect();
        let q = rank_dense(&PlainMatrix::from_i64_rows(FieldDescriptor::rationals(), &rows).unwrap());
        assert_eq!(q, rank_by_minors(&rows));
        for p in [101, 103, 107] {
            assert_eq!(rank_dense(&PlainMatrix::from_i64_rows(fp(p), &rows).unwrap()), q);
        }
    }
}

fn arb_fp_matrix() -> impl Strategy<Value = (u64, Vec<Vec<i64>>)> {
    (prop::sample::select(vec![2u64, 3, 5, 7]), 1usize..7, 1usize..7).prop_flat_map(|(p, r, c)| {
        (Just(p), prop::collection::vec(prop::collection::vec(0i64..p as i64, c), r))
    })
}

proptest! {
    #[test]
    fn transpose_and_permutation_invariance((p, rows) in arb_fp_matrix(), seed in any::<u64>()) {
        let m = PlainMatrix::from_i64_rows(fp(p), &rows).unwrap();
        let r = rank_dense(&m);
        prop_assert_eq!(rank_dense(&m.transpose()), r);
        prop_assert_eq!(rank_sparse(&m.transpose()), r);
        let mut perm: Vec<usize> = (0..m.rows()).collect();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for i in (1..perm.len()).rev() {
            perm.swap(i, rng.gen_range(0..=i));
        }
        prop_assert_eq!(rank_sparse(&m.permute_rows(&perm)), r);
        let mut scaled = m.clone();
        scaled.scale_row(0, &Scalar::from_i64(fp(p), rng.gen_range(1..p as i64))).unwrap();
        prop_assert_eq!(rank_dense(&scaled), r);
    }

    #[test]
    fn block_diagonal_rank_adds((p, a) in arb_fp_matrix(), (_, b) in arb_fp_matrix()) {
        let a = PlainMatrix::from_i64_rows(fp(p), &a).unwrap();
        let b: Vec<Vec<i64>> = b.iter().map(|r| r.iter().map(|v| v % p as i64).collect()).collect();
        let b = PlainMatrix::from_i64_rows(fp(p), &b).unwrap();
        prop_assert_eq!(rank_sparse(&a.block_diag(&b).unwrap()), rank_dense(&a) + rank_dense(&b));
    }
}

// --- Laurent matrices -------------------------------------------------------

fn z_minus_one(field: FieldDescriptor, nvars: usize, var: usize) -> Vec<(i64, Vec<i64>)> {
    let _ = field;
    let mut e = vec![0; nvars];
    e[var] = 1;
    vec![(1, e), (-1, vec![0; nvars])]
}

fn laurent(field: FieldDescriptor, nvars: usize, rows: usize, cols: usize, cells: &[(usize, usize, Vec<(i64, Vec<i64>)>)]) -> LaurentMatrix {
    let mut m = LaurentMatrix::zeros(field, nvars, rows, cols);
    for (i, j, terms) in cells {
        for (c, e) in terms {
            m.add_term(*i, *j, e.clone(), Scalar::from_i64(field, *c)).unwrap();
        }
    }
    m
}

#[test]
fn bareiss_examples() {
    let f2 = fp(2);
    let m = laurent(f2, 1, 1, 1, &[(0, 0, z_minus_one(f2, 1, 0))]);
    assert_eq!(rank_laurent_bareiss(&m), 1);
    let m = laurent(f2, 2, 1, 2, &[(0, 0, z_minus_one(f2, 2, 0)), (0, 1, z_minus_one(f2, 2, 1))]);
    assert_eq!(rank_laurent_bareiss(&m), 1);
    let m = laurent(f2, 1, 2, 2, &[(0, 0, z_minus_one(f2, 1, 0)), (1, 1, z_minus_one(f2, 1, 0))]);
    assert_eq!(rank_laurent_bareiss(&m), 2);
    // [[z, 1], [z^2, z]] is singular; its rows differ by the unit z
    let q = FieldDescriptor::rationals();
    let m = laurent(q, 1, 2, 2, &[(0, 0, vec![(1, vec![1])]), (0, 1, vec![(1, vec![0])]), (1, 0, vec![(1, vec![2])]), (1, 1, vec![(1, vec![1])])]);
    assert_eq!(rank_laurent_bareiss(&m), 1);
    assert_eq!(rank_laurent_bareiss(&LaurentMatrix::zeros(q, 1, 3, 3)), 0);
}

fn random_laurent(rng: &mut ChaCha8Rng, field: FieldDescriptor, nvars: usize, rows: usize, cols: usize, low: i64, high: i64, density: f64) -> LaurentMatrix {
    let mut m = LaurentMatrix::zeros(field, nvars, rows, cols);
    let cmax = field.modulus().map_or(3, |p| p as i64 - 1);
    for i in 0..rows {
        for j in 0..cols {
            if !rng.gen_bool(density) {
                continue;
            }
            for _ in 0..rng.gen_range(1..=3) {
                let e: Vec<i64> = (0..nvars).map(|_| rng.gen_range(low..=high)).collect();
                m.add_term(i, j, e, Scalar::from_i64(field, rng.gen_range(1..=cmax))).unwrap();
            }
        }
    }
    m
}

#[test]
fn bareiss_matches_grid_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    for k in 0..60 {
        let field = [fp(2), fp(3), FieldDescriptor::rationals()][k % 3];
        let nvars = 1 + k % 2;
        let r = rng.gen_range(1..=3);
        let c = rng.gen_range(1..=3);
        let m = random_laurent(&mut rng, field, nvars, r, c, -1, 1, 0.6);
        assert_eq!(rank_laurent_bareiss(&m), crate::oracle::rank_over_function_field(&m), "{m:?}");
    }
}

#[test]
fn bareiss_detects_rank_deficiency() {
    // rows 3 = (1 + z) row 1 + z^-1 row 2 forces rank 2
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let q = FieldDescriptor::rationals();
    for _ in 0..10 {
        let m = random_laurent(&mut rng, q, 1, 2, 4, -1, 2, 0.9);
        let mut full = LaurentMatrix::zeros(q, 1, 3, 4);
        for (i, j, p) in m.entries() {
            for (e, c) in p {
                full.add_term(i, j, e.clone(), c.clone()).unwrap();
                if i == 0 {
                    full.add_term(2, j, e.clone(), c.clone()).unwrap();
                    full.add_term(2, j, vec![e[0] + 1], c.clone()).unwrap();
                } else {
                    full.add_term(2, j, vec![e[0] - 1], c.clone()).unwrap();
                }
            }
        }
        assert_eq!(rank_laurent_bareiss(&full), rank_laurent_bareiss(&m));
        assert!(rank_laurent_bareiss(&full) <= 2);
    }
}

#[test]
fn probabilistic_examples() {
    let f2 = fp(2);
    let m = laurent(f2, 1, 1, 1, &[(0, 0, z_minus_one(f2, 1, 0))]);
    let report = rank_laurent_probabilistic(&m, 0);
    assert_eq!(report.rank, 1);
    assert!(report.certified);
    let zero = rank_laurent_probabilistic(&LaurentMatrix::zeros(f2, 2, 3, 3), 9);
    assert_eq!(zero, RankReport::exact(0));
}

#[test]
fn probabilistic_reports_a_bound_when_deficient() {
    let f5 = fp(5);
    // [[z, z^2], [1, z]] has rank 1
    let m = laurent(f5, 1, 2, 2, &[(0, 0, vec![(1, vec![1])]), (0, 1, vec![(1, vec![2])]), (1, 0, vec![(1, vec![0])]), (1, 1, vec![(1, vec![1])])]);
    let report = rank_laurent_probabilistic(&m, 1);
    assert_eq!(report.rank, 1);
    assert!(!report.certified);
    // D = 2, and 5^4 is the first power of 5 reaching 64 D
    assert_eq!(report.failure_bound, BigRational::new(8.into(), (625u64.pow(3)).into()));
}

#[test]
fn probabilistic_matches_bareiss_and_never_exceeds_it() {
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    for k in 0..100 {
        let field = [fp(5), fp(2), FieldDescriptor::rationals()][k % 3];
        let m = random_laurent(&mut rng, field, 2, 5, 5, 0, 2, 0.5);
        let certified = rank_laurent_bareiss(&m);
        let report = rank_laurent_probabilistic(&m, k as u64);
        assert!(report.rank <= certified);
        assert_eq!(report.rank, certified);
    }
}

#[test]
fn laurent_metamorphic_invariances() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for k in 0..30 {
        let field = [fp(3), FieldDescriptor::rationals()][k % 2];
        let m = random_laurent(&mut rng, field, 1, 3, 4, -1, 2, 0.5);
        let r = rank_laurent_bareiss(&m);
        assert_eq!(rank_laurent_bareiss(&m.transpose()), r);
        assert_eq!(rank_laurent_bareiss(&m.permute_rows(&[2, 0, 1])), r);
        assert_eq!(rank_laurent_bareiss(&m.permute_cols(&[3, 1, 0, 2])), r);
        let mut scaled = m.clone();
        scaled.scale_row(1, &[-3], &Scalar::from_i64(field, 2)).unwrap();
        assert_eq!(rank_laurent_bareiss(&scaled), r);
        let other = random_laurent(&mut rng, field, 1, 2, 2, 0, 1, 0.7);
        assert_eq!(rank_laurent_bareiss(&m.block_diag(&other).unwrap()), r + rank_laurent_bareiss(&other));
    }
}

#[test]
fn policy() {
    let f2 = fp(2);
    let small = laurent(f2, 1, 1, 1, &[(0, 0, z_minus_one(f2, 1, 0))]);
    let opts = |algorithm| RankOptions { algorithm, seed: 0 };
    assert!(rank_laurent(&small, opts(RankAlgorithm::Auto)).unwrap().certified);
    let wide = LaurentMatrix::zeros(f2, 3, 2, 2);
    assert!(matches!(
        rank_laurent(&wide, opts(RankAlgorithm::Bareiss)),
        Err(Error::CertificationUnavailable(_))
    ));
    let tall = LaurentMatrix::zeros(f2, 1, 9, 1);
    assert!(rank_laurent(&tall, opts(RankAlgorithm::Bareiss)).is_err());
    assert_eq!(rank_laurent(&tall, opts(RankAlgorithm::Auto)).unwrap().rank, 0);
    assert_eq!("prob".parse::<RankAlgorithm>().unwrap(), RankAlgorithm::Prob);
    assert!("fast".parse::<RankAlgorithm>().is_err());
}
