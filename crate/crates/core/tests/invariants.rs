use oredim::complex::{build_koszul, quotient_homology, FreeChainComplex};
use oredim::dimension::{elek_truncation_dim, quotient_betti_dim};
use oredim::group::{folner_set, quotient};
use oredim::json::{complex_to_string, matrix_to_string, parse_complex, parse_matrix};
use oredim::oracle::naive_rank;
use oredim::random::{random_matrix, EntrySpec};
use oredim::ring::{compress_to_folner, induce_to_quotient};
use oredim::{FieldDescriptor, GroupDescriptor, GroupRingMatrix, PresentedModule, RankAlgorithm};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn field(code: u8) -> FieldDescriptor {
    match code % 4 {
        0 => FieldDescriptor::prime(2).unwrap(),
        1 => FieldDescriptor::prime(3).unwrap(),
        2 => FieldDescriptor::prime(5).unwrap(),
        _ => FieldDescriptor::rationals(),
    }
}

fn group(code: u8) -> GroupDescriptor {
    match code % 4 {
        0 => GroupDescriptor::Zd(1),
        1 => GroupDescriptor::Zd(2),
        2 => GroupDescriptor::DihedralInfinite,
        _ => GroupDescriptor::Heisenberg,
    }
}

fn sample(seed: u64, f: u8, g: u8, rows: usize, cols: usize) -> GroupRingMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_matrix(&mut rng, field(f), group(g), rows, cols, &EntrySpec::default())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn matrix_json_round_trips(seed in any::<u64>(), f in 0u8..4, g in 0u8..4, rows in 0usize..4, cols in 0usize..4) {
        let m = sample(seed, f, g, rows, cols);
        prop_assert_eq!(parse_matrix(&matrix_to_string(&m)).unwrap(), m);
    }

    #[test]
    fn quotient_table_matches_oracle(seed in any::<u64>(), f in 0u8..4, g in 0u8..3, level in 1usize..5) {
        let a = sample(seed, f, g, 2, 2);
        let table = quotient_betti_dim(&PresentedModule::new(a.clone()), &[level], RankAlgorithm::Auto).unwrap();
        let q = quotient(a.group(), level).unwrap();
        prop_assert_eq!(table.rows[0].raw, 2 * q.index() - naive_rank(&induce_to_quotient(&a, &q).unwrap()));
    }

    #[test]
    fn folner_table_matches_oracle(seed in any::<u64>(), f in 0u8..4, g in 0u8..4, size in 1usize..4) {
        let a = sample(seed, f, g, 2, 1);
        let table = elek_truncation_dim(&PresentedModule::new(a.clone()), &[size], RankAlgorithm::Auto).unwrap();
        let set = folner_set(a.group(), size).unwrap();
        prop_assert_eq!(table.rows[0].raw, set.len() - naive_rank(&compress_to_folner(&a, &set).unwrap()));
    }

    #[test]
    fn normalized_values_stay_in_range(seed in any::<u64>(), f in 0u8..4, g in 0u8..3, rows in 1usize..4, cols in 1usize..4) {
        let m = PresentedModule::new(sample(seed, f, g, rows, cols));
        for row in quotient_betti_dim(&m, &[2, 3], RankAlgorithm::Auto).unwrap().rows {
            prop_assert!(row.raw <= cols * row.normalizer);
        }
    }
}

#[test]
fn complexes_round_trip_and_keep_their_homology() {
    for d in 1..=3 {
        let c = build_koszul(d, FieldDescriptor::prime(3).unwrap()).unwrap();
        let back: FreeChainComplex = parse_complex(&complex_to_string(&c)).unwrap();
        assert_eq!(
            quotient_homology(&back, &[2, 3], RankAlgorithm::Auto).unwrap(),
            quotient_homology(&c, &[2, 3], RankAlgorithm::Auto).unwrap()
        );
    }
}
