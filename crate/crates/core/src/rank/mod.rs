//! Exact rank computation: over the coefficient field for plain matrices,
//! and over the rational function field for Laurent polynomial matrices.

mod dense;
mod laurent;
mod plain;
mod probabilistic;
mod sparse;

pub use laurent::{LaurentMatrix, LaurentPolynomial};
pub(crate) use laurent::Poly;
pub use plain::PlainMatrix;

use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::arith::{prime_residue, rational_value, FieldArith};
use crate::error::{Error, Result};

/// Matrices up to this many positions always use the dense kernel.
pub const DENSE_MAX_ENTRIES: usize = 4096;
/// Density above which the dense kernel is used regardless of size.
pub const DENSE_MIN_DENSITY: f64 = 0.2;
/// Largest shape the certified (Bareiss) path accepts.
pub const BAREISS_MAX_SHAPE: usize = 8;
/// Largest number of variables the certified path accepts.
pub const BAREISS_MAX_VARS: usize = 2;

/// User-facing rank algorithm selector.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RankAlgorithm {
    /// Dense or sparse by size and density; Bareiss or evaluation by shape.
    #[default]
    Auto,
    Dense,
    Sparse,
    /// Certified fraction-free elimination for Laurent matrices.
    Bareiss,
    /// Random evaluation for Laurent matrices.
    Prob,
}

impl std::str::FromStr for RankAlgorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "auto" => RankAlgorithm::Auto,
            "dense" => RankAlgorithm::Dense,
            "sparse" => RankAlgorithm::Sparse,
            "bareiss" => RankAlgorithm::Bareiss,
            "prob" => RankAlgorithm::Prob,
            other => return Err(Error::InvalidInput(format!("unknown rank algorithm '{other}'"))),
        })
    }
}

/// Algorithm choice plus the seed for randomized evaluation.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct RankOptions {
    pub algorithm: RankAlgorithm,
    pub seed: u64,
}

/// Outcome of a rank computation over a function field.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankReport {
    pub rank: usize,
    pub certified: bool,
    /// Upper bound on the probability that `rank` is too small; zero when the
    /// value is exact.
    #[serde(with = "crate::json::ratio_string")]
    pub failure_bound: BigRational,
}

impl RankReport {
    pub(crate) fn exact(rank: usize) -> Self {
        RankReport { rank, certified: true, failure_bound: BigRational::zero() }
    }
}

/// Rank by dense Gaussian elimination.
pub fn rank_dense(m: &PlainMatrix) -> usize {
    match FieldArith::of(m.field()) {
        FieldArith::Prime(a) => dense::rank_dense_kernel(&a, m.dense_rows(0, prime_residue)),
        FieldArith::Rational(a) => {
            dense::rank_dense_kernel(&a, m.dense_rows(BigRational::zero(), rational_value))
        }
    }
}

/// Rank by sparse Markowitz elimination (with a dense tail).
pub fn rank_sparse(m: &PlainMatrix) -> usize {
    match FieldArith::of(m.field()) {
        FieldArith::Prime(a) => sparse::rank_sparse_kernel(&a, m.sparse_rows(prime_residue), m.cols()),
        FieldArith::Rational(a) => sparse::rank_sparse_kernel(&a, m.sparse_rows(rational_value), m.cols()),
    }
}

/// Rank with the kernel picked by `algorithm`; `Auto`, `Bareiss` and `Prob`
/// choose dense for small or dense inputs and sparse otherwise.
pub fn rank(m: &PlainMatrix, algorithm: RankAlgorithm) -> usize {
    match algorithm {
        RankAlgorithm::Dense => rank_dense(m),
        RankAlgorithm::Sparse => rank_sparse(m),
        _ => {
            if m.rows() * m.cols() <= DENSE_MAX_ENTRIES || m.density() > DENSE_MIN_DENSITY {
                rank_dense(m)
            } else {
                rank_sparse(m)
            }
        }
    }
}

/// Certified rank over `k(t_1, …, t_d)` by Bareiss elimination.
pub fn rank_laurent_bareiss(m: &LaurentMatrix) -> usize {
    match FieldArith::of(m.field()) {
        FieldArith::Prime(a) => laurent::bareiss_rank(&a, m.polynomial_rows(prime_residue)),
        FieldArith::Rational(a) => laurent::bareiss_rank(&a, m.polynomial_rows(rational_value)),
    }
}

pub use probabilistic::rank_laurent_probabilistic;

/// Rank over the function field following the algorithm policy:
/// `Auto` evaluates at random points when `d >= 2` or a side exceeds
/// [`BAREISS_MAX_SHAPE`] and runs Bareiss otherwise; `Bareiss` insists on
/// certification and fails outside its size limits; `Prob` always evaluates.
pub fn rank_laurent(m: &LaurentMatrix, options: RankOptions) -> Result<RankReport> {
    let shape = m.rows().max(m.cols());
    match options.algorithm {
        RankAlgorithm::Bareiss => {
            if m.nvars() > BAREISS_MAX_VARS || shape > BAREISS_MAX_SHAPE {
                return Err(Error::CertificationUnavailable(format!(
                    "Bareiss is limited to d <= {BAREISS_MAX_VARS} and shape <= {BAREISS_MAX_SHAPE}, got d = {} and {}x{}",
                    m.nvars(),
                    m.rows(),
                    m.cols()
                )));
            }
            Ok(RankReport::exact(rank_laurent_bareiss(m)))
        }
        RankAlgorithm::Prob => Ok(rank_laurent_probabilistic(m, options.seed)),
        _ => {
            if m.nvars() >= 2 || shape > BAREISS_MAX_SHAPE {
                Ok(rank_laurent_probabilistic(m, options.seed))
            } else {
                Ok(RankReport::exact(rank_laurent_bareiss(m)))
            }
        }
    }
}

#[cfg(test)]
mod tests;
