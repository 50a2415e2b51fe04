use proptest::prelude::*;
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use lrc_core::designs::{build_affine_design, build_zigzag_membership, design_to_membership, ZigzagSpec};
use lrc_core::lrc::{construction1, construction2, decode_generic, decode_thm3, decode_thm4, repair_symbol};
use lrc_core::mds::{gabidulin, systematic_rs};
use lrc_core::{GaloisField, LrcCode};

fn c1_affine3() -> LrcCode {
    let rm = design_to_membership(&build_affine_design(3).unwrap(), 2).unwrap();
    let f = GaloisField::with_default(2, 4).unwrap().shared();
    construction1(&systematic_rs(f, 13, 9).unwrap(), &rm, 3, 2).unwrap()
}

fn c1_zigzag(r: usize, t: usize) -> LrcCode {
    let rm = build_zigzag_membership(ZigzagSpec::new(r, t).unwrap()).unwrap();
    let k = rm.k();
    let f = GaloisField::with_default(2, 8).unwrap().shared();
    construction1(&systematic_rs(f, k + 3 + t, k).unwrap(), &rm, r, t).unwrap()
}

fn c2_affine2() -> LrcCode {
    let rm = design_to_membership(&build_affine_design(2).unwrap(), 2).unwrap();
    let f = GaloisField::with_default(2, 7).unwrap().shared();
    construction2(&gabidulin(f, 2, 7, 4).unwrap(), &rm, 2, 2).unwrap()
}

fn message(code: &LrcCode, rng: &mut ChaCha8Rng) -> Vec<u64> {
    let q = code.field().order();
    (0..code.k()).map(|_| rng.gen_range(0..q)).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn structured_decoders_recover_within_guarantee(seed in any::<u64>(), which in 0usize..4) {
        let code = match which {
            0 => c1_affine3(),
            1 => c1_zigzag(2, 2),
            2 => c1_zigzag(3, 2),
            _ => c2_affine2(),
        };
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let msg = message(&code, &mut rng);
        let e = rng.gen_range(0..=code.erasure_guarantee().unwrap());
        let word = code.encode(&msg).unwrap().with_erasures(&sample(&mut rng, code.n(), e).into_vec());
        let out = if which == 3 { decode_thm4(&code, &word) } else { decode_thm3(&code, &word) }.unwrap();
        prop_assert_eq!(&out.message, &msg);
        prop_assert!(out.within_guarantee);
        prop_assert_eq!(decode_generic(&code, &word).unwrap(), msg);
    }

    #[test]
    fn every_group_repairs_its_symbol(seed in any::<u64>(), which in 0usize..3) {
        let code = match which {
            0 => c1_affine3(),
            1 => c1_zigzag(2, 2),
            _ => c2_affine2(),
        };
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let word = code.encode(&message(&code, &mut rng)).unwrap();
        for s in 0..code.k() {
            let erased = word.with_erasures(&[s]);
            for j in 0..code.groups(s).len() {
                prop_assert_eq!(repair_symbol(&code, &erased, s, j).unwrap(), word.get(s).unwrap());
            }
        }
    }

    #[test]
    fn bundle_round_trip_preserves_encoding(seed in any::<u64>(), which in 0usize..2) {
        let code = if which == 0 { c1_affine3() } else { c2_affine2() };
        let back = LrcCode::from_json(&code.to_json()).unwrap();
        prop_assert_eq!(back.params(), code.params());
        prop_assert_eq!(back.all_groups(), code.all_groups());
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let msg = message(&code, &mut rng);
        prop_assert_eq!(back.encode(&msg).unwrap(), code.encode(&msg).unwrap());
    }
}
