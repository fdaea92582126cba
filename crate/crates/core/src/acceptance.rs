//! The acceptance suite: eight end-to-end checks, each compared against an
//! exact value or an independent oracle. Run by the `acceptance` test target
//! and by `oredim selftest`.

use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::complex::{build_example_62, build_koszul, char_comparison, finite_group_betti, ore_homology, quotient_homology};
use crate::dimension::{elek_truncation_dim, ore_dim, quotient_betti_dim, virtual_ore_dim};
use crate::error::Result;
use crate::group::{quotient, GroupDescriptor};
use crate::oracle::{cyclic_power_betti, naive_rank, periodic_resolution_betti, rank_over_function_field};
use crate::random::{random_group_element, random_matrix, random_scalar, EntrySpec};
use crate::rank::{rank_dense, rank_laurent_bareiss, rank_laurent_probabilistic, rank_sparse, PlainMatrix, RankAlgorithm, RankOptions};
use crate::ring::{induce_to_quotient, restrict_scalars, GroupRingElement, GroupRingMatrix, PresentedModule, Subgroup};
use crate::scalar::FieldDescriptor;

/// Seed shared by every randomized criterion.
pub const SEED: u64 = 0x0de_d1a;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CriterionResult {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl fmt::Display for CriterionResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "[{status}] {}. {}: {}", self.id, self.name, self.detail)
    }
}

type Check = fn() -> Result<(bool, String)>;

const CRITERIA: [(u8, &str, Check); 8] = [
    (1, "characteristic split of the wedge complex", characteristic_split),
    (2, "normalization and additivity", normalization_and_additivity),
    (3, "three-way agreement over F_2[Z]", three_way_agreement),
    (4, "the module [z1-1, z2-1] over Z^2", koszul_row),
    (5, "virtual Ore dimension", virtual_dimension),
    (6, "sublinear Betti growth of (Z/n)^2", sublinear_growth),
    (7, "F_2 homology dominates Q homology", characteristic_inequality),
    (8, "rank engine integrity", rank_engine),
];

pub fn criterion_ids() -> Vec<u8> {
    CRITERIA.iter().map(|c| c.0).collect()
}

/// Runs one criterion; `None` for an unknown id.
pub fn run_criterion(id: u8) -> Option<CriterionResult> {
    let &(id, name, check) = CRITERIA.iter().find(|c| c.0 == id)?;
    let (passed, detail) = match check() {
        Ok(outcome) => outcome,
        Err(e) => (false, format!("error: {e}")),
    };
    Some(CriterionResult { id, name, passed, detail })
}

pub fn run_all() -> Vec<CriterionResult> {
    criterion_ids().into_iter().filter_map(run_criterion).collect()
}

fn fp(p: u64) -> FieldDescriptor {
    FieldDescriptor::prime(p).expect("small primes")
}

fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn show(values: &[BigRational]) -> String {
    values.iter().map(|v| format!("{}/{}", v.numer(), v.denom())).collect::<Vec<_>>().join(",")
}

fn element(field: FieldDescriptor, group: GroupDescriptor, terms: &[(i64, &[i64])]) -> Result<GroupRingElement> {
    GroupRingElement::from_ints(field, group, terms)
}

fn one_by_one(e: GroupRingElement) -> Result<PresentedModule> {
    let (field, group) = (e.field(), e.group());
    Ok(PresentedModule::new(GroupRingMatrix::from_rows(field, group, vec![vec![e]])?))
}

fn characteristic_split() -> Result<(bool, String)> {
    let levels = [2, 4, 8, 16];
    let mut ok = true;
    let mut parts = Vec::new();
    for (p, ore_expected, top) in [(2, [0, 0, 1, 1], BigRational::one()), (5, [0, 0, 0, 0], BigRational::zero())] {
        let c = build_example_62(2, 2, fp(p))?;
        let ore: Vec<usize> = ore_homology(&c, RankOptions { seed: SEED, ..Default::default() })?.iter().map(|v| v.raw).collect();
        ok &= ore == ore_expected;
        let report = quotient_homology(&c, &levels, RankAlgorithm::Auto)?;
        for n in levels {
            let normalized = report.normalized_at(n);
            ok &= normalized[2] == top && normalized[3] == top;
        }
        parts.push(format!("F_{p}: ore {ore:?}, quotient h2,h3 at 16 = {}", show(&report.normalized_at(16)[2..])));
    }
    Ok((ok, parts.join("; ")))
}

/// `(raw, normalized)` for every method the group supports, in a fixed order.
fn every_method(m: &PresentedModule, quotient_levels: &[usize], folner_levels: &[usize]) -> Result<Vec<(usize, BigRational)>> {
    let options = RankOptions { seed: SEED, ..Default::default() };
    let mut out = Vec::new();
    for row in elek_truncation_dim(m, folner_levels, RankAlgorithm::Auto)?.rows {
        out.push((row.raw, row.normalized));
    }
    for row in quotient_betti_dim(m, quotient_levels, RankAlgorithm::Auto)?.rows {
        out.push((row.raw, row.normalized));
    }
    let subgroup = match m.group() {
        GroupDescriptor::Zd(_) => {
            let v = ore_dim(m, options)?;
            out.push((v.raw, v.value));
            Some(Subgroup::Scaled { n: 2 })
        }
        GroupDescriptor::DihedralInfinite => Some(Subgroup::Rotations),
        GroupDescriptor::Heisenberg => None,
    };
    if let Some(h) = subgroup {
        let v = virtual_ore_dim(m, h, options)?;
        out.push((v.raw, v.value));
    }
    Ok(out)
}

fn normalization_and_additivity() -> Result<(bool, String)> {
    let mut ok = true;
    let one = BigRational::one();
    for (group, quotient_levels, folner_levels) in [
        (GroupDescriptor::Zd(1), &[2, 4, 8, 16][..], &[4, 8, 16, 32][..]),
        (GroupDescriptor::Zd(2), &[2, 4, 8][..], &[2, 4, 8][..]),
        (GroupDescriptor::DihedralInfinite, &[2, 4, 8, 16][..], &[4, 8, 16, 32][..]),
        (GroupDescriptor::Heisenberg, &[2, 3][..], &[2, 4][..]),
    ] {
        let zero = PresentedModule::new(GroupRingMatrix::zeros(fp(2), group, 1, 1));
        ok &= every_method(&zero, quotient_levels, folner_levels)?.iter().all(|(_, v)| *v == one);
    }
    let normalized = ok;
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 2);
    let (quotient_levels, folner_levels) = ([2, 4, 8, 16], [4, 8, 16, 32]);
    let spec = EntrySpec { low: -1, high: 2, max_terms: 3, density: 0.7 };
    let mut failures = 0;
    for k in 0..50 {
        let field = fp([2, 3, 5][k % 3]);
        let mut shape = || (rng.gen_range(1..=2), rng.gen_range(1..=2));
        let ((r1, s1), (r2, s2)) = (shape(), shape());
        let a = PresentedModule::new(random_matrix(&mut rng, field, GroupDescriptor::Zd(1), r1, s1, &spec));
        let b = PresentedModule::new(random_matrix(&mut rng, field, GroupDescriptor::Zd(1), r2, s2, &spec));
        let sum = every_method(&a.direct_sum(&b)?, &quotient_levels, &folner_levels)?;
        let parts: Vec<(usize, BigRational)> = every_method(&a, &quotient_levels, &folner_levels)?
            .into_iter()
            .zip(every_method(&b, &quotient_levels, &folner_levels)?)
            .map(|((ra, va), (rb, vb))| (ra + rb, va + vb))
            .collect();
        if sum != parts {
            failures += 1;
        }
    }
    ok &= failures == 0;
    Ok((ok, format!("zero module gives 1 everywhere: {normalized}; additivity failures: {failures}/50")))
}

fn three_way_agreement() -> Result<(bool, String)> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 3);
    let tolerance = ratio(1, 20);
    let spec = EntrySpec { low: 0, high: 2, max_terms: 3, density: 0.7 };
    let mut misses = Vec::new();
    let mut worst = BigRational::zero();
    for k in 0..20 {
        let (r, s) = (rng.gen_range(1..=3), rng.gen_range(1..=3));
        let m = PresentedModule::new(random_matrix(&mut rng, fp(2), GroupDescriptor::Zd(1), r, s, &spec));
        let ore = ore_dim(&m, RankOptions { seed: SEED, ..Default::default() })?.value;
        let q = quotient_betti_dim(&m, &[64], RankAlgorithm::Auto)?.rows[0].normalized.clone();
        let f = elek_truncation_dim(&m, &[64], RankAlgorithm::Auto)?.rows[0].normalized.clone();
        let (dq, df) = ((&q - &ore).abs(), (&f - &ore).abs());
        worst = worst.max(dq.clone()).max(df.clone());
        if dq > tolerance || df > tolerance {
            misses.push(format!("#{k} ({r}x{s}) ore {} quotient {} folner {}", show(&[ore]), show(&[q]), show(&[f])));
        }
    }
    let mut detail = format!("{}/20 within 1/20, largest gap {}", 20 - misses.len(), show(&[worst]));
    if !misses.is_empty() {
        detail.push_str(&format!("; outside: {}", misses.join(", ")));
    }
    Ok((misses.is_empty(), detail))
}

fn koszul_row() -> Result<(bool, String)> {
    let z2 = GroupDescriptor::Zd(2);
    let field = fp(2);
    let a = GroupRingMatrix::from_rows(
        field,
        z2,
        vec![vec![element(field, z2, &[(1, &[1, 0]), (-1, &[0, 0])])?, element(field, z2, &[(1, &[0, 1]), (-1, &[0, 0])])?]],
    )?;
    let m = PresentedModule::new(a.clone());
    let ore = ore_dim(&m, RankOptions { seed: SEED, ..Default::default() })?;
    let levels: Vec<usize> = (2..=8).collect();
    let table = quotient_betti_dim(&m, &levels, RankAlgorithm::Auto)?;
    let mut ok = ore.value == BigRational::one();
    for (row, &n) in table.rows.iter().zip(&levels) {
        let n2 = (n * n) as i64;
        let oracle = 2 * n * n - naive_rank(&induce_to_quotient(&a, &quotient(z2, n)?)?);
        ok &= row.normalized == ratio(n2 + 1, n2) && row.raw == oracle;
    }
    let values: Vec<BigRational> = table.rows.iter().map(|r| r.normalized.clone()).collect();
    Ok((ok, format!("ore {}, quotient n=2..8: {}", show(&[ore.value]), show(&values))))
}

fn virtual_dimension() -> Result<(bool, String)> {
    let dinf = GroupDescriptor::DihedralInfinite;
    let f3 = fp(3);
    let options = RankOptions { seed: SEED, ..Default::default() };
    let s_minus_one = one_by_one(element(f3, dinf, &[(1, &[0, 1]), (-1, &[0, 0])])?)?;
    let z_minus_one = one_by_one(element(f3, dinf, &[(1, &[1, 0]), (-1, &[0, 0])])?)?;
    let half = ratio(1, 2);
    let v_s = virtual_ore_dim(&s_minus_one, Subgroup::Rotations, options)?.value;
    let v_z = virtual_ore_dim(&z_minus_one, Subgroup::Rotations, options)?.value;
    let levels: Vec<usize> = (2..=8).collect();
    let table = quotient_betti_dim(&s_minus_one, &levels, RankAlgorithm::Auto)?;
    let mut ok = v_s == half && v_z.is_zero() && table.rows.iter().all(|r| r.normalized == half);
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 5);
    let spec = EntrySpec { low: 0, high: 2, max_terms: 3, density: 0.6 };
    let mut failures = 0;
    for k in 0..50 {
        let (r, s) = (rng.gen_range(1..=3), rng.gen_range(1..=3));
        let m = PresentedModule::new(random_matrix(&mut rng, fp(2), GroupDescriptor::Zd(1), r, s, &spec));
        let n = 2 + k % 2;
        let restricted = PresentedModule::new(restrict_scalars(m.matrix(), Subgroup::Scaled { n })?);
        let base = ore_dim(&m, options)?.raw;
        let scaled = ore_dim(&restricted, options)?.raw;
        let oracle = restricted.generators() - rank_over_function_field(&restricted.matrix().to_laurent()?);
        if scaled != n * base || oracle != n * base {
            failures += 1;
        }
    }
    ok &= failures == 0;
    Ok((
        ok,
        format!("vdim(s-1) {}, vdim(z-1) {}, quotient n=2..8 all 1/2: {}; restriction failures {failures}/50", show(&[v_s]), show(&[v_z]), table.rows.iter().all(|r| r.normalized == half)),
    ))
}

fn sublinear_growth() -> Result<(bool, String)> {
    let sizes = [2usize, 4, 8];
    let mut ok = true;
    let mut normalized: Vec<Vec<BigRational>> = Vec::new();
    for &n in &sizes {
        let b = finite_group_betti(2, n, fp(2), 2)?;
        let kunneth: Vec<usize> = (0..=2).map(|j| cyclic_power_betti(2, n as u64, 2, j) as usize).collect();
        ok &= b == periodic_resolution_betti(2, n, fp(2), 2) && b == kunneth;
        normalized.push(b.iter().map(|&x| ratio(x as i64, (n * n) as i64)).collect());
    }
    for i in [1, 2] {
        ok &= normalized.windows(2).all(|w| w[1][i] < w[0][i]);
        ok &= normalized[0][i] <= ratio(3, 4) && normalized[2][i] <= ratio(3, 64);
    }
    let detail = sizes
        .iter()
        .zip(&normalized)
        .map(|(n, v)| format!("n={n}: b1/n^2 {}, b2/n^2 {}", show(&v[1..2]), show(&v[2..3])))
        .collect::<Vec<_>>()
        .join("; ");
    Ok((ok, detail))
}

fn characteristic_inequality() -> Result<(bool, String)> {
    let levels = [2, 4, 8];
    let mut ok = true;
    let mut parts = Vec::new();
    for (name, c) in [("wedge d=2 p=2", build_example_62(2, 2, FieldDescriptor::rationals())?), ("Koszul d=2", build_koszul(2, FieldDescriptor::rationals())?)] {
        let cmp = char_comparison(&c, 2, &levels, RankAlgorithm::Auto)?;
        ok &= cmp.holds();
        parts.push(format!("{name}: F_2 {:?} vs Q {:?} at 8", cmp.modular.raw_at(8), cmp.rational.raw_at(8)));
    }
    Ok((ok, parts.join("; ")))
}

fn random_plain(rng: &mut ChaCha8Rng) -> PlainMatrix {
    let field = fp([2, 3, 5, 101][rng.gen_range(0..4)]);
    let (r, c) = (rng.gen_range(1..=64), rng.gen_range(1..=64));
    let density = rng.gen_range(0.0..=0.1);
    let mut m = PlainMatrix::zeros(field, r, c);
    for i in 0..r {
        for j in 0..c {
            if rng.gen_bool(density) {
                m.set(i, j, random_scalar(rng, field)).expect("in range");
            }
        }
    }
    m
}

fn rank_engine() -> Result<(bool, String)> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 8);
    let z2 = GroupDescriptor::Zd(2);
    let f5 = fp(5);
    let spec = EntrySpec { low: 0, high: 2, max_terms: 3, density: 0.5 };
    let (mut prob_mismatch, mut laurent_meta) = (0, 0);
    for k in 0..100 {
        let m = random_matrix(&mut rng, f5, z2, 5, 5, &spec).to_laurent()?;
        let certified = rank_laurent_bareiss(&m);
        if rank_laurent_probabilistic(&m, SEED + k).rank != certified {
            prob_mismatch += 1;
        }
        let mut perm: Vec<usize> = (0..5).collect();
        perm.shuffle(&mut rng);
        let mut scaled = m.clone();
        let g = random_group_element(&mut rng, z2, -2, 2).coordinates();
        scaled.scale_row(rng.gen_range(0..5), &g, &random_scalar(&mut rng, f5))?;
        if [m.transpose(), m.permute_rows(&perm), m.permute_cols(&perm), scaled].iter().any(|x| rank_laurent_bareiss(x) != certified) {
            laurent_meta += 1;
        }
    }
    let (mut sparse_mismatch, mut plain_meta) = (0, 0);
    for _ in 0..200 {
        let m = random_plain(&mut rng);
        let dense = rank_dense(&m);
        if rank_sparse(&m) != dense {
            sparse_mismatch += 1;
        }
        let mut perm: Vec<usize> = (0..m.rows()).collect();
        perm.shuffle(&mut rng);
        let mut scaled = m.clone();
        scaled.scale_row(rng.gen_range(0..m.rows()), &random_scalar(&mut rng, m.field()))?;
        if [m.transpose(), m.permute_rows(&perm), scaled].iter().any(|x| rank_sparse(x) != dense || rank_dense(x) != dense) {
            plain_meta += 1;
        }
    }
    let ok = prob_mismatch + laurent_meta + sparse_mismatch + plain_meta == 0;
    Ok((
        ok,
        format!(
            "prob vs Bareiss mismatches {prob_mismatch}/100, sparse vs dense {sparse_mismatch}/200, invariance failures {laurent_meta} Laurent, {plain_meta} plain"
        ),
    ))
}
