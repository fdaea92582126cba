//! Finite free chain complexes over `k[G]` and their homology dimensions.
//!
//! Degree `i` is `k[G]^{r_i}` and the differential `c_i` is an `r_i x r_{i-1}`
//! matrix acting on row vectors, so `c_{i+1} c_i = 0` is the complex
//! condition.

use num_rational::BigRational;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dimension::{check_levels, ratio, DimensionMethod, DimensionValue, Record};
use crate::error::{Error, Result};
use crate::group::{quotient, GroupDescriptor};
use crate::rank::{rank, rank_laurent, PlainMatrix, RankAlgorithm, RankOptions};
use crate::ring::{induce_to_quotient, GroupRingElement, GroupRingMatrix};
use crate::scalar::{is_prime, FieldDescriptor, FieldKind, Scalar};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeChainComplex {
    field: FieldDescriptor,
    group: GroupDescriptor,
    ranks: Vec<usize>,
    /// `differentials[i - 1]` is `c_i`.
    differentials: Vec<GroupRingMatrix>,
}

impl FreeChainComplex {
    /// Validates shapes, descriptors and `c_{i+1} c_i = 0`.
    pub fn new(
        field: FieldDescriptor,
        group: GroupDescriptor,
        ranks: Vec<usize>,
        differentials: Vec<GroupRingMatrix>,
    ) -> Result<Self> {
        if ranks.is_empty() {
            return Err(Error::InvalidInput("a complex needs at least degree 0".into()));
        }
        if differentials.len() + 1 != ranks.len() {
            return Err(Error::InvalidInput(format!(
                "{} ranks need {} differentials, got {}",
                ranks.len(),
                ranks.len() - 1,
                differentials.len()
            )));
        }
        for (k, c) in differentials.iter().enumerate() {
            let i = k + 1;
            if c.field() != field {
                return Err(Error::FieldMismatch);
            }
            if c.group() != group {
                return Err(Error::GroupMismatch);
            }
            if (c.rows(), c.cols()) != (ranks[i], ranks[i - 1]) {
                return Err(Error::InvalidInput(format!(
                    "c_{i} must be {}x{}, got {}x{}",
                    ranks[i],
                    ranks[i - 1],
                    c.rows(),
                    c.cols()
                )));
            }
        }
        for k in 1..differentials.len() {
            if !differentials[k].mul(&differentials[k - 1])?.is_zero() {
                return Err(Error::NotAComplex { degree: k + 1 });
            }
        }
        Ok(FreeChainComplex { field, group, ranks, differentials })
    }

    pub fn field(&self) -> FieldDescriptor {
        self.field
    }

    pub fn group(&self) -> GroupDescriptor {
        self.group
    }

    /// Highest degree.
    pub fn top(&self) -> usize {
        self.ranks.len() - 1
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    /// `c_i` for `1 <= i <= top`.
    pub fn differential(&self, i: usize) -> Option<&GroupRingMatrix> {
        i.checked_sub(1).and_then(|k| self.differentials.get(k))
    }

    pub fn differentials(&self) -> &[GroupRingMatrix] {
        &self.differentials
    }

    /// The same complex over another field (reduction of integer
    /// coefficients when going from `Q` to `F_p`).
    pub fn change_field(&self, field: FieldDescriptor) -> Result<Self> {
        let diffs = self.differentials.iter().map(|c| c.change_field(field)).collect::<Result<Vec<_>>>()?;
        Self::new(field, self.group, self.ranks.clone(), diffs)
    }

    /// `Σ (-1)^i r_i`.
    pub fn euler_characteristic(&self) -> i64 {
        alternating(&self.ranks)
    }

    fn homology_from_ranks(&self, scale: usize, ranks: &[usize]) -> Vec<usize> {
        // ranks[i - 1] is the rank of c_i
        (0..=self.top())
            .map(|i| {
                let incoming = if i >= 1 { ranks[i - 1] } else { 0 };
                let outgoing = ranks.get(i).copied().unwrap_or(0);
                self.ranks[i] * scale - incoming - outgoing
            })
            .collect()
    }
}

fn alternating(values: &[usize]) -> i64 {
    values.iter().enumerate().map(|(i, &v)| if i % 2 == 0 { v as i64 } else { -(v as i64) }).sum()
}

/// `dim_k H_i` at one quotient level.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyRow {
    pub level: usize,
    pub degree: usize,
    pub normalizer: usize,
    pub raw: usize,
    #[serde(with = "crate::json::ratio_string")]
    pub normalized: BigRational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyReport {
    /// Rows ordered by level, then degree.
    pub rows: Vec<HomologyRow>,
    /// Exact Ore dimension of each `H_i`, when the group is `Z^d`.
    pub ore: Option<Vec<DimensionValue>>,
}

impl HomologyReport {
    /// Raw dimensions `H_0, …, H_top` at `level`.
    pub fn raw_at(&self, level: usize) -> Vec<usize> {
        self.rows.iter().filter(|r| r.level == level).map(|r| r.raw).collect()
    }

    pub fn normalized_at(&self, level: usize) -> Vec<BigRational> {
        self.rows.iter().filter(|r| r.level == level).map(|r| r.normalized.clone()).collect()
    }

    pub fn levels(&self) -> Vec<usize> {
        let mut out: Vec<usize> = self.rows.iter().map(|r| r.level).collect();
        out.dedup();
        out
    }

    /// Checks `Σ (-1)^i dim H_i = N · Σ (-1)^i r_i` at every level.
    pub fn euler_consistent(&self, complex: &FreeChainComplex) -> bool {
        self.levels().into_iter().all(|level| {
            let rows: Vec<&HomologyRow> = self.rows.iter().filter(|r| r.level == level).collect();
            let raw: Vec<usize> = rows.iter().map(|r| r.raw).collect();
            alternating(&raw) == rows[0].normalizer as i64 * complex.euler_characteristic()
        })
    }

    /// Records with method `quotient-h<i>` and, for the Ore rows, `ore-h<i>`.
    pub fn records(&self) -> Vec<Record> {
        let mut out: Vec<Record> = Vec::new();
        for (i, v) in self.ore.iter().flatten().enumerate() {
            let mut rec = Record::from_value(v);
            rec.method = format!("ore-h{i}");
            out.push(rec);
        }
        out.extend(self.rows.iter().map(|r| Record {
            method: format!("quotient-h{}", r.degree),
            level: Some(r.level),
            normalizer: r.normalizer,
            raw: r.raw,
            normalized: r.normalized.clone(),
            certified: true,
        }));
        out
    }
}

/// `dim_k H_i(k[G/G_n] ⊗ C) = r_i N - rank(c_i) - rank(c_{i+1})` per level.
pub fn quotient_homology(c: &FreeChainComplex, levels: &[usize], algorithm: RankAlgorithm) -> Result<HomologyReport> {
    check_levels(levels)?;
    let per_level = levels
        .par_iter()
        .map(|&n| {
            let q = quotient(c.group, n)?;
            let ranks = c
                .differentials
                .iter()
                .map(|d| Ok(rank(&induce_to_quotient(d, &q)?, algorithm)))
                .collect::<Result<Vec<_>>>()?;
            let index = q.index();
            Ok(c.homology_from_ranks(index, &ranks)
                .into_iter()
                .enumerate()
                .map(|(degree, raw)| HomologyRow { level: n, degree, normalizer: index, raw, normalized: ratio(raw, index) })
                .collect::<Vec<_>>())
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(HomologyReport { rows: per_level.into_iter().flatten().collect(), ore: None })
}

/// `dim^Ore H_i = r_i - rank(c_i) - rank(c_{i+1})` over `k(t_1, …, t_d)`.
pub fn ore_homology(c: &FreeChainComplex, options: RankOptions) -> Result<Vec<DimensionValue>> {
    if !matches!(c.group, GroupDescriptor::Zd(_)) {
        return Err(Error::OreUnavailable);
    }
    let reports = c
        .differentials
        .iter()
        .map(|d| rank_laurent(&d.to_laurent()?, options))
        .collect::<Result<Vec<_>>>()?;
    let ranks: Vec<usize> = reports.iter().map(|r| r.rank).collect();
    Ok(c.homology_from_ranks(1, &ranks)
        .into_iter()
        .enumerate()
        .map(|(i, raw)| {
            let touching: Vec<_> = [i.checked_sub(1), Some(i)].into_iter().flatten().filter_map(|k| reports.get(k)).collect();
            DimensionValue {
                method: DimensionMethod::Ore,
                value: ratio(raw, 1),
                raw,
                index: 1,
                certified: touching.iter().all(|r| r.certified),
                failure_bound: touching.iter().map(|r| r.failure_bound.clone()).sum(),
            }
        })
        .collect())
}

/// The cellular complex of `S^1 ∨ S^d` with a `(d+1)`-cell attached by a
/// degree-`p` map, lifted to the cover with group `Z`: ranks `1` in degrees
/// `0, 1, d, d+1`, `c_1 = [z - 1]`, `c_{d+1} = [p]`, all else zero.
pub fn build_example_62(d: usize, p: u64, field: FieldDescriptor) -> Result<FreeChainComplex> {
    if d < 2 {
        return Err(Error::InvalidInput(format!("the construction needs d >= 2, got {d}")));
    }
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let group = GroupDescriptor::Zd(1);
    let ranks: Vec<usize> = (0..=d + 1).map(|i| usize::from(i <= 1 || i >= d)).collect();
    let mut diffs: Vec<GroupRingMatrix> =
        (1..=d + 1).map(|i| GroupRingMatrix::zeros(field, group, ranks[i], ranks[i - 1])).collect();
    diffs[0].set(0, 0, GroupRingElement::from_ints(field, group, &[(1, &[1]), (-1, &[0])])?)?;
    let scalar = Scalar::from_i64(field, p as i64);
    diffs[d].set(0, 0, GroupRingElement::monomial(scalar, group.identity())?)?;
    FreeChainComplex::new(field, group, ranks, diffs)
}

/// `i`-element subsets of `0..d` in lexicographic order.
fn subsets(d: usize, i: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, d: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for x in start..d {
            cur.push(x);
            go(x + 1, d, left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, d, i, &mut Vec::new(), &mut out);
    out
}

/// Largest `d` accepted by [`build_koszul`].
pub const MAX_KOSZUL_RANK: usize = 4;

/// The Koszul resolution of the trivial module over `k[Z^d]`: degree `i` has
/// basis the `i`-subsets `S` of `{1, …, d}`, and `c_i` sends `e_S` to
/// `Σ_k (-1)^{i-1-k} (z_{s_k} - 1) e_{S \ s_k}` with `s_0 < s_1 < …`.
pub fn build_koszul(d: usize, field: FieldDescriptor) -> Result<FreeChainComplex> {
    if !(1..=MAX_KOSZUL_RANK).contains(&d) {
        return Err(Error::InvalidInput(format!("Koszul complexes are built for 1 <= d <= {MAX_KOSZUL_RANK}, got {d}")));
    }
    let group = GroupDescriptor::Zd(d);
    let bases: Vec<Vec<Vec<usize>>> = (0..=d).map(|i| subsets(d, i)).collect();
    let ranks: Vec<usize> = bases.iter().map(Vec::len).collect();
    let mut diffs = Vec::new();
    for i in 1..=d {
        let mut c = GroupRingMatrix::zeros(field, group, ranks[i], ranks[i - 1]);
        for (row, s) in bases[i].iter().enumerate() {
            for (k, &var) in s.iter().enumerate() {
                let face: Vec<usize> = s.iter().copied().filter(|&x| x != var).collect();
                let col = bases[i - 1].iter().position(|t| *t == face).expect("faces are listed");
                let sign = if (i - 1 - k) % 2 == 0 { 1 } else { -1 };
                let mut unit = vec![0; d];
                unit[var] = 1;
                c.set(row, col, GroupRingElement::from_ints(field, group, &[(sign, &unit), (-sign, &vec![0; d])])?)?;
            }
        }
        diffs.push(c);
    }
    FreeChainComplex::new(field, group, ranks, diffs)
}

/// Limits of [`finite_group_betti`].
pub const MAX_BETTI_RANK: usize = 3;
pub const MAX_BETTI_DEGREE: usize = 6;

/// `b_i((Z/n)^d; k)` for `0 <= i <= i_max`, from the tensor product of `d`
/// copies of the periodic resolution of `k` over `k[Z/n]` after applying
/// `k ⊗_{k[Z/n]} -`; there each factor is `k` in every degree with
/// differential `0` out of odd degrees and `n` out of even positive degrees.
pub fn finite_group_betti(d: usize, n: usize, field: FieldDescriptor, i_max: usize) -> Result<Vec<usize>> {
    if !(1..=MAX_BETTI_RANK).contains(&d) || n < 2 || i_max > MAX_BETTI_DEGREE {
        return Err(Error::InvalidInput(format!(
            "finite_group_betti needs 1 <= d <= {MAX_BETTI_RANK}, n >= 2, i_max <= {MAX_BETTI_DEGREE}; got d = {d}, n = {n}, i_max = {i_max}"
        )));
    }
    let top = i_max + 1;
    let basis = |i: usize| -> Vec<Vec<usize>> {
        let mut out: Vec<Vec<usize>> = vec![vec![]];
        for _ in 0..d {
            out = out.into_iter().flat_map(|p| (0..=top).map(move |j| [p.clone(), vec![j]].concat())).collect();
        }
        out.retain(|v| v.iter().sum::<usize>() == i);
        out
    };
    let factor = |j: usize| -> i64 {
        if j >= 2 && j % 2 == 0 {
            n as i64
        } else {
            0
        }
    };
    let bases: Vec<Vec<Vec<usize>>> = (0..=top).map(basis).collect();
    let differential = |i: usize| -> Result<PlainMatrix> {
        let mut m = PlainMatrix::zeros(field, bases[i].len(), bases[i - 1].len());
        for (row, idx) in bases[i].iter().enumerate() {
            let mut before = 0;
            for k in 0..d {
                let f = factor(idx[k]);
                if idx[k] > 0 && f != 0 {
                    let mut face = idx.clone();
                    face[k] -= 1;
                    let col = bases[i - 1].iter().position(|t| *t == face).expect("faces are listed");
                    let sign = if before % 2 == 0 { 1 } else { -1 };
                    m.accumulate(row, col, &Scalar::from_i64(field, sign * f))?;
                }
                before += idx[k];
            }
        }
        Ok(m)
    };
    let ranks = (1..=top).map(|i| Ok(rank(&differential(i)?, RankAlgorithm::Auto))).collect::<Result<Vec<_>>>()?;
    Ok((0..=i_max)
        .map(|i| bases[i].len() - if i >= 1 { ranks[i - 1] } else { 0 } - ranks[i])
        .collect())
}

/// Homology over `Q` and over `F_p` of the same integral complex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharComparison {
    pub p: u64,
    pub rational: HomologyReport,
    pub modular: HomologyReport,
    /// `(level, degree)` where `dim_{F_p} H_i < dim_Q H_i`; empty when the
    /// inequality holds everywhere.
    pub violations: Vec<(usize, usize)>,
}

impl CharComparison {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Quotient homology over `Q` and over `F_p` at the same levels, with the
/// degreewise comparison `dim_{F_p} H_i >= dim_Q H_i`.
pub fn char_comparison(c: &FreeChainComplex, p: u64, levels: &[usize], algorithm: RankAlgorithm) -> Result<CharComparison> {
    if c.field.kind() != FieldKind::Rationals {
        return Err(Error::InvalidInput("the comparison starts from a complex over Q with integer coefficients".into()));
    }
    let modular_field = FieldDescriptor::prime(p)?;
    let modular_complex = c.change_field(modular_field)?;
    let rational = quotient_homology(c, levels, algorithm)?;
    let modular = quotient_homology(&modular_complex, levels, algorithm)?;
    let violations = rational
        .rows
        .iter()
        .zip(&modular.rows)
        .filter(|(q, m)| m.raw < q.raw)
        .map(|(q, _)| (q.level, q.degree))
        .collect();
    Ok(CharComparison { p, rational, modular, violations })
}
