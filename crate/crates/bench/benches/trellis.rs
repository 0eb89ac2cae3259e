use criterion::{black_box, criterion_group, criterion_main, Criterion};
use simred_core::{
    build_code_trellis, build_error_trellis, enumerate_paths, min_weight_path, search_plans,
    syndrome, verify_simultaneous_reduction, BlockSequence, GhPair, ShiftPlan,
};

fn pair4() -> GhPair {
    GhPair::new(
        "1+D+D^2,D,D^4+D^5".parse().unwrap(),
        "D^3,D^2,1;D,1+D+D^2,0".parse().unwrap(),
    )
    .unwrap()
}

fn example4_plan() -> ShiftPlan {
    ShiftPlan::type1(3, 1, &[1, 2], &[0])
        .unwrap()
        .compose(&ShiftPlan::type2(&[0, 0, 2]).unwrap())
        .unwrap()
}

fn received() -> BlockSequence {
    "101 011 110 000 111 010 001 100 011 101 110 010".parse().unwrap()
}

fn trellis_building(c: &mut Criterion) {
    let pair = pair4();
    let z = received().padded(12 + pair.h().memory());
    let zeta = syndrome(&z, pair.h()).unwrap();
    c.bench_function("code trellis G4, N=12", |b| {
        b.iter(|| build_code_trellis(black_box(pair.g()), 12).unwrap())
    });
    c.bench_function("error trellis H4, N=12", |b| {
        b.iter(|| build_error_trellis(black_box(pair.h()), &zeta).unwrap())
    });
    let t = build_error_trellis(pair.h(), &zeta).unwrap();
    c.bench_function("enumerate error paths H4, N=12", |b| b.iter(|| enumerate_paths(black_box(&t))));
    c.bench_function("min-weight path H4, N=12", |b| b.iter(|| min_weight_path(black_box(&t)).unwrap()));
}

fn reduction(c: &mut Criterion) {
    let pair = pair4();
    c.bench_function("plan search G4/H4, max exponent 3", |b| {
        b.iter(|| search_plans(black_box(&pair), 3).unwrap())
    });
    let plan = example4_plan();
    let z = received().truncated(6);
    c.bench_function("verify Example 4 plan, N=6", |b| {
        b.iter(|| verify_simultaneous_reduction(black_box(&pair), &plan, &z, 6).unwrap())
    });
}

criterion_group!(benches, trellis_building, reduction);
criterion_main!(benches);
