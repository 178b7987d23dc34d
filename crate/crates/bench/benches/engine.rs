use criterion::{black_box, criterion_group, criterion_main, Criterion};

use dsplogic::{
    agreement_linear_fragment, agreement_report, cond_prob_bounds, lottery, odds_swamp, ratio,
    CellSet, Event,
};
use dsplogic_bench::{ramp_spec, sliding_mass};

fn combination(c: &mut Criterion) {
    let m = sliding_mass(24).unwrap();
    c.bench_function("combine 22x22 focal sets", |b| {
        b.iter(|| black_box(&m).combine(&m).unwrap())
    });
}

fn closed_forms(c: &mut Criterion) {
    let m = ratio(1, 10);
    c.bench_function("lottery n=112", |b| {
        b.iter(|| lottery(black_box(112), &m).unwrap())
    });
    c.bench_function("lottery n=10^6", |b| {
        b.iter(|| lottery(black_box(1_000_000), &m).unwrap())
    });
    let (p, q) = (ratio(9, 10), ratio(999, 1000));
    c.bench_function("odds_swamp", |b| {
        b.iter(|| odds_swamp(&p, &p, black_box(&q)).unwrap())
    });
}

fn agreement(c: &mut Criterion) {
    let spec = ramp_spec(4).unwrap();
    let query = spec.blocks()[0].union(&spec.blocks()[1]).unwrap();
    c.bench_function("agreement_report k=4, 100 samples", |b| {
        b.iter(|| agreement_report(&spec, &query, 100, 7).unwrap())
    });
}

fn bounds(c: &mut Criterion) {
    let spec = ramp_spec(3).unwrap();
    let system = agreement_linear_fragment(&spec).unwrap();
    let a = Event::elements(&spec.blocks()[0]);
    let b = Event::evidence(spec.frame(), CellSet::E1E2);
    c.bench_function("conditional bounds k=3", |bch| {
        bch.iter(|| cond_prob_bounds(&system, &a, &b).unwrap())
    });
}

criterion_group!(benches, combination, closed_forms, agreement, bounds);
criterion_main!(benches);
