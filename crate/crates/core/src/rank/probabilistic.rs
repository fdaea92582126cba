use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::dense::rank_dense_kernel;
use super::laurent::{LaurentMatrix, Poly};
use super::RankReport;
use crate::arith::{rational_value, Arith, RationalArith};
use crate::gf::GfArith;

/// Independent evaluation trials; the reported rank is their maximum.
pub const TRIALS: u32 = 3;
/// The sample space holds at least this many times the minor-degree bound.
pub const SAMPLE_FACTOR: u64 = 64;

/// Rank over `k(t_1, …, t_d)` by evaluating at random points.
///
/// Over `F_p` the points are drawn from `F_{p^e}` with `p^e >= 64 D`, over
/// `Q` from the integers in `[-64 D, 64 D]`, where `D = min(r, s) · maxdeg`
/// bounds the degree of every minor. Evaluation never raises the rank, so a
/// trial reaching `min(r, s)` settles the answer; otherwise the
/// Schwartz–Zippel bound `(D / |S|)^3` is reported.
pub fn rank_laurent_probabilistic(m: &LaurentMatrix, seed: u64) -> RankReport {
    let full = m.rows().min(m.cols());
    if m.is_zero() || full == 0 {
        return RankReport::exact(0);
    }
    let degree_bound = full as u64 * m.max_shifted_degree();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (rank, sample_space) = match m.field().modulus() {
        Some(p) => {
            let p = p as u64;
            let need = BigUint::from(SAMPLE_FACTOR * degree_bound.max(1));
            let mut e = 1usize;
            while BigUint::from(p).pow(e as u32) < need {
                e += 1;
            }
            let gf = GfArith::new(p, e);
            let rows = m.polynomial_rows(|s| s.residue().unwrap() as u64);
            let rank = trials(full, || {
                let point: Vec<_> = (0..m.nvars()).map(|_| gf.random(&mut rng)).collect();
                evaluate(&gf, &rows, &point, |&c| gf.embed(c))
            });
            (rank, BigInt::from(gf.order()))
        }
        None => {
            let bound = (SAMPLE_FACTOR * degree_bound.max(1)) as i64;
            let rows = m.polynomial_rows(rational_value);
            let rank = trials(full, || {
                let point: Vec<BigRational> = (0..m.nvars())
                    .map(|_| BigRational::from_integer(rng.gen_range(-bound..=bound).into()))
                    .collect();
                evaluate(&RationalArith, &rows, &point, |c| c.clone())
            });
            (rank, BigInt::from(2 * bound + 1))
        }
    };
    if rank == full || degree_bound == 0 {
        return RankReport::exact(rank);
    }
    let ratio = BigRational::new(BigInt::from(degree_bound), sample_space);
    RankReport { rank, certified: false, failure_bound: ratio.clone() * ratio.clone() * ratio }
}

fn trials<A: Arith>(full: usize, mut one: impl FnMut() -> (A, Vec<Vec<A::E>>)) -> usize {
    let mut best = 0;
    for _ in 0..TRIALS {
        let (arith, dense) = one();
        best = best.max(rank_dense_kernel(&arith, dense));
        if best == full {
            break;
        }
    }
    best
}

fn evaluate<A: Arith + Clone, C>(
    arith: &A,
    rows: &[Vec<Poly<C>>],
    point: &[A::E],
    lift: impl Fn(&C) -> A::E,
) -> (A, Vec<Vec<A::E>>) {
    let mut power_cache: Vec<Vec<A::E>> = point.iter().map(|x| vec![arith.one(), x.clone()]).collect();
    let mut power = |var: usize, k: u32| -> A::E {
        let cache = &mut power_cache[var];
        while cache.len() <= k as usize {
            let next = arith.mul(cache.last().unwrap(), &cache[1]);
            cache.push(next);
        }
        cache[k as usize].clone()
    };
    let dense = rows
        .iter()
        .map(|row| {
            row.iter()
                .map(|poly| {
                    let mut acc = arith.zero();
                    for (exps, c) in poly {
                        let mut term = lift(c);
                        for (var, &k) in exps.iter().enumerate() {
                            if k > 0 {
                                term = arith.mul(&term, &power(var, k));
                            }
                        }
                        acc = arith.add(&acc, &term);
                    }
                    acc
                })
                .collect()
        })
        .collect();
    (arith.clone(), dense)
}

