mod common;

use std::collections::BTreeSet;

use common::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use simred_core::{
    assert_equal_path_sets, brute_codewords, brute_errors, build_code_trellis, build_error_trellis,
    enumerate_paths, shift_code, shift_received, simultaneous_reduce, syndrome, unshift_received,
    verify_simultaneous_reduction, BlockSequence, OracleConfig, PolyMatrix,
};

fn padded_syndrome(z: &BlockSequence, h: &PolyMatrix, n: usize) -> BlockSequence {
    syndrome(&z.padded(n + h.memory()), h).unwrap()
}

#[test]
fn code_trellis_matches_brute_force() {
    let cfg = OracleConfig::default();
    for (name, pair) in example_pairs() {
        let g = pair.g();
        for n in g.memory().max(3)..=6 {
            let trellis = enumerate_paths(&build_code_trellis(g, n).unwrap());
            let brute = brute_codewords(g, n, &cfg).unwrap();
            let report = assert_equal_path_sets(&trellis, &brute);
            assert!(report.passed(), "{name} N={n}\n{report}");
            assert_eq!(trellis.len(), 1 << (n - g.memory()));
        }
    }
}

#[test]
fn error_trellis_matches_brute_force() {
    let cfg = OracleConfig::default();
    let mut rng = ChaCha8Rng::seed_from_u64(0x61);
    let n = 4;
    for (name, pair) in example_pairs() {
        let h = pair.h();
        for _ in 0..20 {
            let z = random_blocks(&mut rng, pair.n(), n);
            let zeta = padded_syndrome(&z, h, n);
            let trellis = enumerate_paths(&build_error_trellis(h, &zeta).unwrap());
            let brute = brute_errors(h, &zeta, n, None, &cfg).unwrap();
            let report = assert_equal_path_sets(&trellis, &brute);
            assert!(report.passed(), "{name} z={z}\n{report}");
            assert!(trellis.contains(&z.padded(zeta.len())));
        }
    }
}

#[test]
fn zero_syndrome_gives_the_codewords() {
    let cfg = OracleConfig::default();
    for (name, pair) in example_pairs() {
        let (g, h) = (pair.g(), pair.h());
        for n in g.memory().max(1)..=4 {
            let len = n + h.memory();
            let errors = enumerate_paths(
                &build_error_trellis(h, &BlockSequence::zeros(h.rows(), len)).unwrap(),
            );
            let words: BTreeSet<_> = brute_codewords(g, n, &cfg)
                .unwrap()
                .into_iter()
                .map(|y| y.padded(len))
                .collect();
            assert_eq!(words, errors, "{name} N={n}");
        }
    }
}

#[test]
fn codewords_have_zero_syndrome() {
    for (name, pair) in example_pairs() {
        for n in pair.g().memory()..=6 {
            for y in enumerate_paths(&build_code_trellis(pair.g(), n).unwrap()) {
                let s = syndrome(&y.padded(n + pair.h().memory()), pair.h()).unwrap();
                assert!(s.is_zero(), "{name} y={y}");
            }
        }
    }
}

#[test]
fn syndrome_is_invariant_under_the_shift() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x62);
    let pair = pair2();
    let plan = example2_plan();
    let h_red = simultaneous_reduce(&pair, &plan).unwrap().reduced_pair.h().clone();
    for _ in 0..50 {
        let z = random_blocks(&mut rng, 3, 4).padded(5);
        let zs = shift_received(&z, &plan, 4).unwrap();
        assert_eq!(syndrome(&zs, &h_red).unwrap(), syndrome(&z, pair.h()).unwrap(), "z={z}");
    }
}

#[test]
fn shift_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x63);
    for _ in 0..200 {
        let plan = random_csr_plan(&mut rng, 3, 3);
        let d = plan.error_delays().into_iter().max().unwrap() as usize;
        let z = random_blocks(&mut rng, 3, 4).padded(4 + d);
        let zs = shift_received(&z, &plan, 4).unwrap();
        assert_eq!(unshift_received(&zs, &plan).unwrap(), z);
        assert_eq!(zs.weight(), z.weight());
    }
}

#[test]
fn shifted_codewords_match_the_reduced_trellis_for_example_2() {
    let cfg = OracleConfig::default();
    let plan = example2_plan();
    let expected: BTreeSet<_> = [
        "000 000 000 000 000",
        "000 000 101 111 000",
        "000 101 111 000 000",
        "000 101 010 111 000",
    ]
    .iter()
    .map(|s| seq(s))
    .collect();
    let shifted: BTreeSet<_> = brute_codewords(pair2().g(), 4, &cfg)
        .unwrap()
        .iter()
        .map(|y| shift_code(&y.padded(5), &plan, 4).unwrap())
        .collect();
    assert_eq!(shifted, expected);
}

#[test]
fn unreduced_error_patterns_shift_onto_the_reduced_ones() {
    let cfg = OracleConfig::default();
    let plan = example2_plan();
    let zeta = seq("00 10 01 10 01");
    let shifted: BTreeSet<_> = brute_errors(pair2().h(), &zeta, 4, None, &cfg)
        .unwrap()
        .iter()
        .map(|e| shift_received(e, &plan, 4).unwrap())
        .collect();
    let expected: BTreeSet<_> = [
        "000 001 010 011 000",
        "000 001 111 100 000",
        "000 100 101 011 000",
        "000 100 000 100 000",
    ]
    .iter()
    .map(|s| seq(s))
    .collect();
    assert_eq!(shifted, expected);
}

#[test]
fn example_4_verification_in_both_orders() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x64);
    let pair = pair4();
    for plan in [example4_plan(), example4_alternate_plan()] {
        for _ in 0..5 {
            let z = random_blocks(&mut rng, 3, 6);
            let r = verify_simultaneous_reduction(&pair, &plan, &z, 6).unwrap();
            assert!(r.passed(), "{r}");
            assert_eq!((r.code_states_before, r.code_states_after), (32, 4));
            assert_eq!((r.error_states_before, r.error_states_after), (32, 4));
            assert_eq!(r.code_paths_after.len(), r.error_paths_after.len());
        }
    }
}

#[test]
fn random_csr_plans_verify() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x65);
    for (name, pair) in example_pairs() {
        let mut checked = 0;
        let mut attempts = 0;
        while checked < 10 && attempts < 10_000 {
            attempts += 1;
            let plan = random_csr_plan(&mut rng, pair.n(), 2);
            if simultaneous_reduce(&pair, &plan).is_err() {
                continue;
            }
            let n = pair.g().memory().max(pair.h().memory()) + 2;
            let z = random_blocks(&mut rng, pair.n(), n);
            let r = verify_simultaneous_reduction(&pair, &plan, &z, n).unwrap();
            assert!(r.passed(), "{name}\n{plan}\n{r}");
            checked += 1;
        }
        assert_eq!(checked, 10, "{name}");
    }
}
