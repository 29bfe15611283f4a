use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use fg_orbits::{
    choose_t, closure_system, contains_primitive, decide_full_aut, decide_rational,
    fold_generators, is_primitive, parse_sigma_regex, w2, Alphabet, Limits, Problem,
};
use fg_orbits_bench::{primitivity_words, subgroup, words, SUBGROUPS};

fn fold(c: &mut Criterion) {
    let mut g = c.benchmark_group("fold");
    for (name, gens) in SUBGROUPS {
        let ws = words(gens);
        g.bench_with_input(BenchmarkId::from_parameter(name), &ws, |b, ws| {
            b.iter(|| fold_generators(2, ws).unwrap())
        });
    }
    g.finish();
}

fn primitivity(c: &mut Criterion) {
    let mut g = c.benchmark_group("is_primitive");
    for w in primitivity_words() {
        g.bench_with_input(BenchmarkId::from_parameter(w.len()), &w, |b, w| {
            b.iter(|| is_primitive(w))
        });
    }
    g.finish();
}

fn closure(c: &mut Criterion) {
    let mut g = c.benchmark_group("closure_system");
    g.sample_size(10);
    for (name, gens) in &SUBGROUPS[..2] {
        let h = subgroup(gens);
        let t = choose_t(&h, &[]).unwrap();
        g.bench_with_input(BenchmarkId::from_parameter(name), &h, |b, h| {
            b.iter(|| closure_system(h, t, Alphabet::Sigma, Limits::default()).unwrap())
        });
    }
    g.finish();
}

fn decisions(c: &mut Criterion) {
    let mut g = c.benchmark_group("decide");
    g.sample_size(10);
    let h = subgroup(&["aab", "bAb"]);
    let r = parse_sigma_regex("(S|I|X)*").unwrap();
    let p = Problem::Element(w2("abab"));
    g.bench_function("rational", |b| {
        b.iter(|| decide_rational(&p, &h, &r, Limits::default()).unwrap())
    });
    let bab = subgroup(&["bab"]);
    g.bench_function("full_aut_yes", |b| {
        b.iter(|| decide_full_aut(&w2("a"), &bab, Limits::default()).unwrap())
    });
    let commutator = subgroup(&["abAB"]);
    g.bench_function("full_aut_no", |b| {
        b.iter(|| decide_full_aut(&w2("a"), &commutator, Limits::default()).unwrap())
    });
    let aabb = subgroup(&["aabb"]);
    g.bench_function("contains_primitive_no", |b| {
        b.iter(|| contains_primitive(&aabb, Limits::default()).unwrap())
    });
    g.finish();
}

criterion_group!(benches, fold, primitivity, closure, decisions);
criterion_main!(benches);
