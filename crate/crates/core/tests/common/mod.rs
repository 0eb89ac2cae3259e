#![allow(dead_code)]

use rand::Rng;
use simred_core::{BlockSequence, ColumnShift, GhPair, PolyMatrix, ShiftPlan};

pub fn m(s: &str) -> PolyMatrix {
    s.parse().unwrap()
}

pub fn seq(s: &str) -> BlockSequence {
    s.parse().unwrap()
}

pub fn pair(g: &str, h: &str) -> GhPair {
    GhPair::new(m(g), m(h)).unwrap()
}

pub fn pair1() -> GhPair {
    pair("1+D+D^2,1,D^3+D^4", "D^2,D^2,1;1,1+D+D^2,0")
}

pub fn pair2() -> GhPair {
    pair("D+D^2,D^2,1+D", "1,0,D;D,1+D,0")
}

pub fn pair3() -> GhPair {
    pair("1+D,1,D+D^2", "D,0,1;1,1+D,0")
}

pub fn pair4() -> GhPair {
    pair("1+D+D^2,D,D^4+D^5", "D^3,D^2,1;D,1+D+D^2,0")
}

pub fn example_pairs() -> Vec<(&'static str, GhPair)> {
    vec![("G1/H1", pair1()), ("G2/H2", pair2()), ("G3/H3", pair3()), ("G4/H4", pair4())]
}

pub fn example2_plan() -> ShiftPlan {
    ShiftPlan::type1(3, 1, &[0, 1], &[2]).unwrap()
}

pub fn example4_plan() -> ShiftPlan {
    ShiftPlan::type1(3, 1, &[1, 2], &[0])
        .unwrap()
        .compose(&ShiftPlan::type2(&[0, 0, 2]).unwrap())
        .unwrap()
}

pub fn example4_alternate_plan() -> ShiftPlan {
    ShiftPlan::type2(&[0, 0, 3])
        .unwrap()
        .compose(&ShiftPlan::type1(3, 1, &[1], &[0, 2]).unwrap())
        .unwrap()
}

/// Plan with exponents in `0..=max` whose columns all share the relative
/// shift `l`.
pub fn random_csr_plan<R: Rng>(rng: &mut R, n: usize, max: u32) -> ShiftPlan {
    let l: i64 = rng.gen_range(-(max as i64)..=max as i64);
    let columns = (0..n)
        .map(|_| loop {
            let g_div = rng.gen_range(0..=max);
            let g_mul = rng.gen_range(0..=max);
            let h_mul = rng.gen_range(0..=max);
            let h_div = l + g_mul as i64 + h_mul as i64 - g_div as i64;
            if (0..=max as i64).contains(&h_div) {
                break ColumnShift {
                    g_div,
                    g_mul,
                    h_div: h_div as u32,
                    h_mul,
                };
            }
        })
        .collect();
    ShiftPlan::new(columns).unwrap()
}

/// Plan with exponents in `0..=max` whose relative shifts are not all equal.
pub fn random_non_csr_plan<R: Rng>(rng: &mut R, n: usize, max: u32) -> ShiftPlan {
    loop {
        let columns: Vec<ColumnShift> = (0..n)
            .map(|_| ColumnShift {
                g_div: rng.gen_range(0..=max),
                g_mul: rng.gen_range(0..=max),
                h_div: rng.gen_range(0..=max),
                h_mul: rng.gen_range(0..=max),
            })
            .collect();
        let plan = ShiftPlan::new(columns).unwrap();
        if plan.csr_constant().is_err() {
            return plan;
        }
    }
}

pub fn random_blocks<R: Rng>(rng: &mut R, width: usize, len: usize) -> BlockSequence {
    let blocks = (0..len).map(|_| rng.gen_range(0..1u64 << width)).collect();
    BlockSequence::new(width, blocks).unwrap()
}
