mod common;

use common::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use simred_core::{apply_plan, check_gh_relation, Error};

#[test]
fn legal_csr_plans_preserve_the_gh_relation() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x51);
    for (name, pair) in example_pairs() {
        let mut legal = 0;
        let mut attempts = 0;
        while legal < 120 {
            attempts += 1;
            assert!(attempts < 200_000, "{name}: too few legal plans");
            let plan = random_csr_plan(&mut rng, pair.n(), 3);
            match apply_plan(&pair, &plan) {
                Ok(out) => {
                    assert!(out.g().mul_transpose(out.h()).unwrap().is_zero(), "{name} {plan}");
                    assert_eq!(check_gh_relation(out.g(), out.h()), Ok(true));
                    legal += 1;
                }
                Err(Error::IllegalDivision { .. }) => {}
                Err(e) => panic!("{name}: plan\n{plan}failed with {e}"),
            }
        }
    }
}

#[test]
fn non_csr_plans_are_rejected_before_application() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x52);
    for (name, pair) in example_pairs() {
        for _ in 0..120 {
            let plan = random_non_csr_plan(&mut rng, pair.n(), 3);
            assert!(
                matches!(apply_plan(&pair, &plan), Err(Error::CsrViolated { .. })),
                "{name}: {plan}"
            );
        }
    }
}

#[test]
fn inverse_plan_restores_the_pair() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x53);
    for (_, pair) in example_pairs() {
        let mut checked = 0;
        while checked < 30 {
            let plan = random_csr_plan(&mut rng, pair.n(), 2);
            let Ok(out) = apply_plan(&pair, &plan) else { continue };
            assert_eq!(apply_plan(&out, &plan.inverse()).unwrap(), pair);
            checked += 1;
        }
    }
}
