//! Dimension functions of presented modules: the exact Ore dimension over
//! `k[Z^d]`, the virtual Ore dimension through a finite-index subgroup, and
//! the Følner-truncation and finite-quotient tables that approximate them.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{folner_set, quotient, GroupDescriptor};
use crate::rank::{rank, rank_laurent, RankAlgorithm, RankOptions};
use crate::ring::{compress_to_folner, induce_to_quotient, restrict_scalars, PresentedModule, Subgroup};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DimensionMethod {
    Ore,
    #[serde(rename = "elek")]
    ElekTruncation,
    #[serde(rename = "quotient")]
    QuotientBetti,
    #[serde(rename = "vdim")]
    VirtualOre,
}

impl DimensionMethod {
    pub fn name(&self) -> &'static str {
        match self {
            DimensionMethod::Ore => "ore",
            DimensionMethod::ElekTruncation => "elek",
            DimensionMethod::QuotientBetti => "quotient",
            DimensionMethod::VirtualOre => "vdim",
        }
    }
}

impl fmt::Display for DimensionMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// An exact dimension value. `raw / index = value`, where `index` is `1` for
/// the Ore dimension and `[G : H]` for the virtual one.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimensionValue {
    pub method: DimensionMethod,
    #[serde(with = "crate::json::ratio_string")]
    pub value: BigRational,
    pub raw: usize,
    pub index: usize,
    /// `false` iff a probabilistic rank with nonzero failure bound was used.
    pub certified: bool,
    #[serde(with = "crate::json::ratio_string")]
    pub failure_bound: BigRational,
}

/// One level of a convergence table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRow {
    pub level: usize,
    /// `[G : G_n]` or `|F_n|`.
    pub normalizer: usize,
    pub raw: usize,
    #[serde(with = "crate::json::ratio_string")]
    pub normalized: BigRational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConvergenceTable {
    pub method: DimensionMethod,
    pub rows: Vec<TableRow>,
}

impl ConvergenceTable {
    pub fn last(&self) -> Option<&TableRow> {
        self.rows.last()
    }

    /// `Some(true)` when the last row lies within `tolerance` of `target`.
    pub fn agrees_with(&self, target: &BigRational, tolerance: &BigRational) -> Option<bool> {
        self.last().map(|row| (&row.normalized - target).abs() <= *tolerance)
    }
}

/// A flat output record; the CSV columns are exactly these fields.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Record {
    pub method: String,
    pub level: Option<usize>,
    pub normalizer: usize,
    pub raw: usize,
    #[serde(with = "crate::json::ratio_string")]
    pub normalized: BigRational,
    pub certified: bool,
}

impl Record {
    pub fn from_value(v: &DimensionValue) -> Self {
        Record {
            method: v.method.name().into(),
            level: None,
            normalizer: v.index,
            raw: v.raw,
            normalized: v.value.clone(),
            certified: v.certified,
        }
    }

    pub fn from_table(t: &ConvergenceTable) -> Vec<Self> {
        t.rows
            .iter()
            .map(|r| Record {
                method: t.method.name().into(),
                level: Some(r.level),
                normalizer: r.normalizer,
                raw: r.raw,
                normalized: r.normalized.clone(),
                certified: true,
            })
            .collect()
    }
}

pub(crate) fn ratio(num: usize, den: usize) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub(crate) fn check_levels(levels: &[usize]) -> Result<()> {
    if levels.is_empty() {
        return Err(Error::InvalidInput("at least one level is required".into()));
    }
    if levels[0] == 0 {
        return Err(Error::InvalidInput("levels must be >= 1".into()));
    }
    if levels.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidInput(format!("levels must be strictly increasing, got {levels:?}")));
    }
    Ok(())
}

/// `s - rank A` over `k(t_1, …, t_d)`.
pub fn ore_dim(m: &PresentedModule, options: RankOptions) -> Result<DimensionValue> {
    if !matches!(m.group(), GroupDescriptor::Zd(_)) {
        return Err(Error::OreUnavailable);
    }
    let report = rank_laurent(&m.matrix().to_laurent()?, options)?;
    let raw = m.generators() - report.rank;
    Ok(DimensionValue {
        method: DimensionMethod::Ore,
        value: ratio(raw, 1),
        raw,
        index: 1,
        certified: report.certified,
        failure_bound: report.failure_bound,
    })
}

/// `dim^Ore_{k[H]}(res M) / [G : H]`.
pub fn virtual_ore_dim(m: &PresentedModule, h: Subgroup, options: RankOptions) -> Result<DimensionValue> {
    let index = h.index(m.group())?;
    let restricted = PresentedModule::new(restrict_scalars(m.matrix(), h)?);
    let inner = ore_dim(&restricted, options)?;
    Ok(DimensionValue {
        method: DimensionMethod::VirtualOre,
        value: ratio(inner.raw, index),
        raw: inner.raw,
        index,
        certified: inner.certified,
        failure_bound: inner.failure_bound,
    })
}

/// For each `n`: `raw = s·|F_n| - rank(pr[F_n] ∘ r_A ∘ j[F_n])`.
pub fn elek_truncation_dim(m: &PresentedModule, levels: &[usize], algorithm: RankAlgorithm) -> Result<ConvergenceTable> {
    check_levels(levels)?;
    let rows = levels
        .par_iter()
        .map(|&n| {
            let f = folner_set(m.group(), n)?;
            let plain = compress_to_folner(m.matrix(), &f)?;
            let raw = m.generators() * f.len() - rank(&plain, algorithm);
            Ok(TableRow { level: n, normalizer: f.len(), raw, normalized: ratio(raw, f.len()) })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ConvergenceTable { method: DimensionMethod::ElekTruncation, rows })
}

/// For each `n`: `raw = s·N - rank(k[G/G_n] ⊗ r_A)` with `N = [G : G_n]`.
pub fn quotient_betti_dim(m: &PresentedModule, levels: &[usize], algorithm: RankAlgorithm) -> Result<ConvergenceTable> {
    check_levels(levels)?;
    let rows = levels
        .par_iter()
        .map(|&n| {
            let q = quotient(m.group(), n)?;
            let plain = induce_to_quotient(m.matrix(), &q)?;
            let raw = m.generators() * q.index() - rank(&plain, algorithm);
            Ok(TableRow { level: n, normalizer: q.index(), raw, normalized: ratio(raw, q.index()) })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ConvergenceTable { method: DimensionMethod::QuotientBetti, rows })
}

/// Parses a positive tolerance written as `"p/q"`, an integer or a decimal
/// such as `0.05`.
pub fn parse_tolerance(text: &str) -> Result<BigRational> {
    let value = match text.split_once('.') {
        Some((whole, frac)) if !text.contains('/') && frac.chars().all(|c| c.is_ascii_digit()) => {
            let digits: Option<num_bigint::BigInt> = format!("{}{frac}", if whole.is_empty() { "0" } else { whole }).parse().ok();
            digits.map(|n| BigRational::new(n, num_bigint::BigInt::from(10u32).pow(frac.len() as u32)))
        }
        _ => crate::json::ratio_string::parse(text),
    };
    match value {
        Some(v) if v > BigRational::zero() => Ok(v),
        Some(_) => Err(Error::InvalidInput(format!("tolerance must be positive, got {text}"))),
        None => Err(Error::InvalidInput(format!("invalid tolerance '{text}'"))),
    }
}

/// Settings for [`approx_report`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ApproxConfig {
    pub quotient_levels: Vec<usize>,
    pub folner_levels: Vec<usize>,
    pub tolerance: BigRational,
    pub rank: RankOptions,
    /// Subgroup for the virtual Ore dimension; `None` uses `<z>` in `D_inf`
    /// and skips it elsewhere.
    pub subgroup: Option<Subgroup>,
}

/// Default quotient levels.
pub const DEFAULT_LEVELS: [usize; 4] = [2, 4, 8, 16];
/// Default Følner sizes.
pub const DEFAULT_FOLNER_SIZES: [usize; 4] = [4, 8, 16, 32];
/// Default Følner sizes for `H_3(Z)`, whose `n`-th set has `n^4` elements.
pub const HEISENBERG_FOLNER_SIZES: [usize; 3] = [2, 4, 8];

impl ApproxConfig {
    pub fn defaults_for(group: GroupDescriptor) -> Self {
        let folner_levels = match group {
            GroupDescriptor::Heisenberg => HEISENBERG_FOLNER_SIZES.to_vec(),
            _ => DEFAULT_FOLNER_SIZES.to_vec(),
        };
        ApproxConfig {
            quotient_levels: DEFAULT_LEVELS.to_vec(),
            folner_levels,
            tolerance: BigRational::new(1.into(), 20.into()),
            rank: RankOptions::default(),
            subgroup: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Agreement {
    #[serde(with = "crate::json::ratio_string")]
    pub tolerance: BigRational,
    pub folner: Option<bool>,
    pub quotient: Option<bool>,
}

/// All computable dimension functions of one module side by side. Tables are
/// reported as computed; no limit is inferred from them.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ApproxReport {
    pub ore: Option<DimensionValue>,
    pub virtual_ore: Option<DimensionValue>,
    pub folner: ConvergenceTable,
    pub quotient: ConvergenceTable,
    pub agreement: Agreement,
}

impl ApproxReport {
    /// The exact value the tables are compared with: the Ore dimension when
    /// available, else the virtual one.
    pub fn target(&self) -> Option<&DimensionValue> {
        self.ore.as_ref().or(self.virtual_ore.as_ref())
    }

    pub fn records(&self) -> Vec<Record> {
        let mut out: Vec<Record> = self.ore.iter().chain(&self.virtual_ore).map(Record::from_value).collect();
        out.extend(Record::from_table(&self.folner));
        out.extend(Record::from_table(&self.quotient));
        out
    }
}

pub fn approx_report(m: &PresentedModule, config: &ApproxConfig) -> Result<ApproxReport> {
    if config.tolerance <= BigRational::zero() {
        return Err(Error::InvalidInput("tolerance must be positive".into()));
    }
    let ore = match m.group() {
        GroupDescriptor::Zd(_) => Some(ore_dim(m, config.rank)?),
        _ => None,
    };
    let subgroup = match (config.subgroup, m.group()) {
        (Some(h), _) => Some(h),
        (None, GroupDescriptor::DihedralInfinite) => Some(Subgroup::Rotations),
        (None, _) => None,
    };
    let virtual_ore = subgroup.map(|h| virtual_ore_dim(m, h, config.rank)).transpose()?;
    let (folner, quotient) = rayon::join(
        || elek_truncation_dim(m, &config.folner_levels, config.rank.algorithm),
        || quotient_betti_dim(m, &config.quotient_levels, config.rank.algorithm),
    );
    let (folner, quotient) = (folner?, quotient?);
    let target = ore.as_ref().or(virtual_ore.as_ref()).map(|v| v.value.clone());
    let agreement = Agreement {
        tolerance: config.tolerance.clone(),
        folner: target.as_ref().and_then(|t| folner.agrees_with(t, &config.tolerance)),
        quotient: target.as_ref().and_then(|t| quotient.agrees_with(t, &config.tolerance)),
    };
    Ok(ApproxReport { ore, virtual_ore, folner, quotient, agreement })
}
