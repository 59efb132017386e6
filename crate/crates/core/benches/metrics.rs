//! Compares the data-parallel metric kernels against their sequential
//! reference paths. With default features the dispatching functions run on
//! rayon; built with `--no-default-features` both sides are sequential.
//!
//! Run with `cargo bench -p charnet-core`.

use std::fs::File;
use std::io::BufReader;
use std::path::Path;

use criterion::{criterion_group, criterion_main, BatchSize, Criterion};

use charnet_core::centrality::{betweenness_centrality, closeness_centrality, seq};
use charnet_core::corpus::{parse_book, Genre, ParseOutcome, ParsedBook};
use charnet_core::distribution::{fit_power_law, sample_power_law, SplitMix64};
use charnet_core::graph::{build_graph, CharacterGraph};
use charnet_core::report::{book_report, corpus_reports};

fn load_corpus() -> Vec<(ParseOutcome, Option<Genre>)> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data");
    let ids = [
        ("acts", Genre::Legendary),
        ("apollonius", Genre::Legendary),
        ("arthur", Genre::Fiction),
        ("david", Genre::Fiction),
        ("dick", Genre::Biography),
        ("hawking", Genre::Biography),
        ("hobbit", Genre::Fiction),
        ("huck", Genre::Fiction),
        ("luke", Genre::Legendary),
        ("newton", Genre::Biography),
        ("pythagoras", Genre::Legendary),
        ("tolkien", Genre::Biography),
    ];
    ids.iter()
        .map(|(id, genre)| {
            let file = File::open(dir.join(format!("{id}.dat"))).expect("corpus file");
            let outcome = parse_book(BufReader::new(file), id).expect("parse");
            (outcome, Some(*genre))
        })
        .collect()
}

fn hawking_graph() -> CharacterGraph {
    let corpus = load_corpus();
    let (outcome, _) = corpus
        .into_iter()
        .find(|(o, _)| o.book.book_id == "hawking")
        .unwrap();
    build_graph(&outcome.book)
}

/// Synthetic preferential-attachment-style graph, large enough for the
/// shortest-path kernels to show parallel speedup.
fn synthetic_graph(n: usize) -> CharacterGraph {
    let mut rng = SplitMix64::new(0xbe9c);
    let label = |i: usize| {
        const A: &[u8] = b"ABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789";
        format!(
            "{}{}{}",
            A[i / (36 * 36)] as char,
            A[i / 36 % 36] as char,
            A[i % 36] as char
        )
    };
    let mut cliques: Vec<Vec<String>> = Vec::new();
    let mut endpoints: Vec<usize> = vec![0, 1];
    cliques.push(vec![label(0), label(1)]);
    for v in 2..n {
        for _ in 0..3 {
            let u = endpoints[rng.next_below(endpoints.len() as u64) as usize];
            if u != v {
                cliques.push(vec![label(v), label(u)]);
                endpoints.push(u);
                endpoints.push(v);
            }
        }
    }
    build_graph(&ParsedBook::from_cliques("synthetic", &cliques))
}

fn bench_betweenness(c: &mut Criterion) {
    let hawking = hawking_graph();
    let synthetic = synthetic_graph(1500);

    let mut group = c.benchmark_group("betweenness/hawking");
    group.bench_function("dispatch", |b| {
        b.iter(|| betweenness_centrality(&hawking).unwrap())
    });
    group.bench_function("sequential", |b| {
        b.iter(|| seq::betweenness_centrality(&hawking).unwrap())
    });
    group.finish();

    let mut group = c.benchmark_group("betweenness/synthetic_1500");
    group.sample_size(10);
    group.bench_function("dispatch", |b| {
        b.iter(|| betweenness_centrality(&synthetic).unwrap())
    });
    group.bench_function("sequential", |b| {
        b.iter(|| seq::betweenness_centrality(&synthetic).unwrap())
    });
    group.finish();
}

fn bench_closeness(c: &mut Criterion) {
    let synthetic = synthetic_graph(1500);
    let mut group = c.benchmark_group("closeness/synthetic_1500");
    group.bench_function("dispatch", |b| {
        b.iter(|| closeness_centrality(&synthetic).unwrap())
    });
    group.bench_function("sequential", |b| {
        b.iter(|| seq::closeness_centrality(&synthetic).unwrap())
    });
    group.finish();
}

fn bench_corpus_report(c: &mut Criterion) {
    let corpus = load_corpus();
    let mut group = c.benchmark_group("corpus_report");
    group.sample_size(20);
    group.bench_function("dispatch", |b| {
        b.iter_batched(
            || corpus.clone(),
            |corpus| corpus_reports(&corpus, 5).unwrap(),
            BatchSize::LargeInput,
        )
    });
    group.bench_function("sequential_books", |b| {
        b.iter_batched(
            || corpus.clone(),
            |corpus| {
                corpus
                    .iter()
                    .map(|(outcome, genre)| book_report(outcome, *genre, 5).unwrap())
                    .collect::<Vec<_>>()
            },
            BatchSize::LargeInput,
        )
    });
    group.finish();
}

fn bench_power_law_fit(c: &mut Criterion) {
    let samples = sample_power_law(10_000, 2.5, 1, 42);
    c.bench_function("fit_power_law/10k_samples", |b| {
        b.iter(|| fit_power_law(&samples, 5).unwrap())
    });
}

criterion_group!(
    benches,
    bench_betweenness,
    bench_closeness,
    bench_corpus_report,
    bench_power_law_fit
);
criterion_main!(benches);
