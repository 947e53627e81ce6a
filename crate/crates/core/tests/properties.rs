//! Randomized property suites: algebraic laws that must hold regardless
//! of the inputs, checked over generated cases.

mod common;

use nilcomm::ff::Field;
use nilcomm::modvar::{decompose, DecomposeOpts, PairModule};
use nilcomm::variety::{random_invertible, random_pair};
use proptest::prelude::*;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn field_axioms_hold_exhaustively_for_every_supported_order() {
    for &q in common::AXIOM_ORDERS {
        common::field_axioms_exhaustive(q).unwrap();
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn packed_and_schoolbook_linear_algebra_agree(
        rows in 1usize..=16,
        mid in 1usize..=16,
        cols in 1usize..=16,
        seed: u64,
    ) {
        let f2 = Field::from_order(2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = common::random_mat(&f2, rows, mid, &mut rng);
        let b = common::random_mat(&f2, mid, cols, &mut rng);
        prop_assert_eq!(a.mul(&b).unwrap(), a.mul_generic(&b));
        prop_assert_eq!(a.rank_kernel(), a.rank_kernel_generic());
    }

    #[test]
    fn module_fingerprints_are_conjugation_invariants(
        n in 2usize..=6,
        wide in any::<bool>(),
        seed: u64,
    ) {
        let field = Field::from_order(if wide { 4 } else { 2 }).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let module = PairModule::new(random_pair(&field, n, &mut rng).unwrap());
        let g = random_invertible(&field, n, &mut rng).unwrap();
        let conj = module.conjugate_by(&g).unwrap();
        prop_assert_eq!(
            module.fingerprint().unwrap(),
            conj.fingerprint().unwrap()
        );
    }

    #[test]
    fn dualizing_swaps_radical_and_socle_and_is_an_involution(
        n in 2usize..=6,
        wide in any::<bool>(),
        seed: u64,
    ) {
        let field = Field::from_order(if wide { 4 } else { 2 }).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let module = PairModule::new(random_pair(&field, n, &mut rng).unwrap());
        let fp = module.fingerprint().unwrap();
        let dual = module.dualize().unwrap();
        let dfp = dual.fingerprint().unwrap();
        prop_assert_eq!(dfp.rk_x, fp.rk_x);
        prop_assert_eq!(dfp.rk_y, fp.rk_y);
        prop_assert_eq!(dfp.rk_xy, fp.rk_xy);
        prop_assert_eq!(dfp.dim_rad, fp.dim - fp.dim_soc);
        prop_assert_eq!(dfp.dim_soc, fp.dim - fp.dim_rad);
        prop_assert_eq!(dfp.loewy, fp.loewy);
        prop_assert_eq!(dfp.end_dim, fp.end_dim);
        prop_assert_eq!(dual.dualize().unwrap().fingerprint().unwrap(), fp);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn decompositions_partition_the_dimension_and_survive_conjugation(
        n in 2usize..=5,
        seed: u64,
    ) {
        let f2 = Field::from_order(2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let opts = DecomposeOpts::default();
        let module = PairModule::new(random_pair(&f2, n, &mut rng).unwrap());
        let dec = decompose(&module, &opts).unwrap();
        prop_assert_eq!(dec.dims().iter().sum::<usize>(), n);
        let g = random_invertible(&f2, n, &mut rng).unwrap();
        let conj = decompose(&module.conjugate_by(&g).unwrap(), &opts).unwrap();
        prop_assert_eq!(dec.fingerprints(), conj.fingerprints());
    }
}
