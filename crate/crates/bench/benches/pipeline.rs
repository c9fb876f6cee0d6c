use adek3::classifier::{classify_all, classify_with, ClassifyOptions, ReferenceData};
use adek3::glue::{search_isotropic_subgroups, SearchLimits};
use adek3::nikulin::embedding_verdict;
use adek3::{ade_discriminant_form, enumerate_configurations, AdeConfiguration};
use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

fn cfg(s: &str) -> AdeConfiguration {
    s.parse().unwrap()
}

fn enumeration(c: &mut Criterion) {
    c.bench_function("enumerate rank 19", |b| b.iter(|| enumerate_configurations(black_box(19)).unwrap()));
}

fn subgroup_search(c: &mut Criterion) {
    let mut group = c.benchmark_group("subgroup search");
    group.sample_size(10);
    for name in ["A1^12", "A2^9", "A3^6", "A1^6+D4^3", "A1^16"] {
        let config = cfg(name);
        group.bench_with_input(BenchmarkId::new("symmetry", name), &config, |b, c| {
            b.iter(|| search_isotropic_subgroups(c, SearchLimits::default()).unwrap())
        });
    }
    let config = cfg("A1^10");
    group.bench_with_input(BenchmarkId::new("no symmetry", "A1^10"), &config, |b, c| {
        b.iter(|| search_isotropic_subgroups(c, SearchLimits { symmetry: false, ..Default::default() }).unwrap())
    });
    group.finish();
}

fn embedding(c: &mut Criterion) {
    let forms: Vec<_> = ["A1+A2^3+A4^2+D4", "A2^9+A1", "A1^2+A2^2+A4^2+D5"]
        .iter()
        .map(|n| {
            let config = cfg(n);
            (config.rank(), ade_discriminant_form(&config))
        })
        .collect();
    c.bench_function("embedding verdicts", |b| {
        b.iter(|| forms.iter().map(|(r, f)| embedding_verdict(*r, f).embeds()).filter(|&e| e).count())
    });
}

fn classification(c: &mut Criterion) {
    let refs = ReferenceData::builtin();
    let opts = ClassifyOptions::default();
    let mut group = c.benchmark_group("classification");
    group.sample_size(10);
    group.bench_function("A1^16", |b| b.iter(|| classify_with(&cfg("A1^16"), &refs, &opts).unwrap()));
    let configs = enumerate_configurations(12).unwrap();
    group.bench_function("all up to rank 12", |b| b.iter(|| classify_all(&configs, &refs, &opts, 1)));
    group.finish();
}

criterion_group!(benches, enumeration, subgroup_search, embedding, classification);
criterion_main!(benches);
