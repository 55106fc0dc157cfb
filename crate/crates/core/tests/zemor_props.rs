mod common;

use cayley_core::ff::FieldSpec;
use cayley_core::msg::Message;
use cayley_core::zemor::{
    bounded_diag_search, bounded_triang_search, diagonalize_ext, extend, gamma_of, hash, triangularize_by_gamma, triangularize_ext,
    ZemorParams,
};
use common::{random_nonzero, random_word};
use proptest::prelude::*;
use rand::{rngs::StdRng, Rng, SeedableRng};

fn params(rng: &mut StdRng, p: u64, k: usize) -> ZemorParams {
    let f = FieldSpec::with_default_modulus(p, k).unwrap();
    ZemorParams::new(random_nonzero(rng, &f), random_nonzero(rng, &f)).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn hash_is_a_homomorphism(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let k = rng.gen_range(1..=3);
        let zp = params(&mut rng, 7919, k);
        let x = random_word(&mut rng, 0, 300);
        let y = random_word(&mut rng, 0, 300);
        let hx = hash(&zp, &x);
        prop_assert!(hx.det().is_one());
        prop_assert_eq!(hash(&zp, &x.concat(&y)), &hx * &hash(&zp, &y));
    }

    #[test]
    fn run_length_matches_bitwise(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let zp = params(&mut rng, 239, 2);
        let w = random_word(&mut rng, 0, 200);
        let bitwise = w.bits().fold(cayley_core::Mat2::identity(zp.spec()), |acc, b| &acc * &zp.generator(b));
        prop_assert_eq!(hash(&zp, &w), bitwise);
    }

    #[test]
    fn diagonal_extension_diagonalizes(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let zp = params(&mut rng, 7919, 1);
        let c = hash(&zp, &random_word(&mut rng, 1, 100));
        if let Ok(ext) = diagonalize_ext(&zp, &c) {
            prop_assert!(extend(&zp, &c, ext.m, ext.n).is_diagonal());
        } else {
            prop_assert!(c.c().is_zero() || c.d().is_zero());
        }
    }

    #[test]
    fn degree_two_always_triangularizes(seed in any::<u64>(), p in prop::sample::select(vec![3u64, 7, 239, 7919])) {
        let mut rng = StdRng::seed_from_u64(seed);
        let zp = params(&mut rng, p, 2);
        let c = hash(&zp, &random_word(&mut rng, 1, 100));
        if c.c().is_zero() {
            return Ok(());
        }
        let ext = if zp.ab_in_base() {
            triangularize_ext(&zp, &c, None).unwrap()
        } else {
            let gamma = gamma_of(&zp, &c).unwrap();
            prop_assert!(gamma.is_frobenius_fixed());
            match triangularize_by_gamma(&zp, &c).unwrap() {
                Some(ext) => ext,
                None => {
                    prop_assert!((&(&gamma * c.c()) * zp.alpha() + c.d().clone()).is_zero());
                    return Ok(());
                }
            }
        };
        prop_assert!(ext.t.is_upper_triangular());
        prop_assert_eq!(extend(&zp, &c, ext.m, ext.n), ext.t);
    }
}

#[test]
fn short_triangular_witnesses_exist_for_small_p() {
    let f = FieldSpec::prime(239).unwrap();
    let mut rng = StdRng::seed_from_u64(239);
    let mut found = 0;
    for _ in 0..20 {
        let zp = ZemorParams::from_u64(&f, rng.gen_range(1..239), rng.gen_range(1..239)).unwrap();
        if let Some(w) = bounded_triang_search(&zp, 15).unwrap() {
            let h = hash(&zp, &w.message());
            assert!(h.is_upper_triangular());
            found += 1;
        }
    }
    assert!(found > 0);
}

#[test]
fn diagonal_search_results_verify() {
    let f = FieldSpec::prime(7919).unwrap();
    let mut rng = StdRng::seed_from_u64(7919);
    for _ in 0..10 {
        let zp = ZemorParams::from_u64(&f, rng.gen_range(1..7919), rng.gen_range(1..7919)).unwrap();
        if let Some(w) = bounded_diag_search(&zp, 10).unwrap() {
            assert!(w.r.max(w.s).max(w.m).max(w.n) <= 10);
            assert!(hash(&zp, &w.message()).is_diagonal());
        }
    }
}

#[test]
fn empty_message_hashes_to_identity() {
    let f = FieldSpec::with_default_modulus(5, 4).unwrap();
    let zp = ZemorParams::new(f.generator(), f.one()).unwrap();
    assert!(hash(&zp, &Message::empty()).is_identity());
}
