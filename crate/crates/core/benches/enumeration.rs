use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use openlp::open::{open_entails, OpenMode};
use openlp::stable::ground_models;
use openlp::syntax::{Atom, Program, Rule};
use openlp::{parse_open_program, parse_query, SolveConfig, Strategy};

/// `n` independent even loops: `2^n` stable models.
fn even_loops(n: usize) -> Program {
    let mut rules = Vec::new();
    for i in 0..n {
        let (p, q) = (Atom::prop(format!("p{i}")), Atom::prop(format!("q{i}")));
        rules.push(Rule::new(p.clone(), vec![], vec![q.clone()]));
        rules.push(Rule::new(q, vec![], vec![p]));
    }
    Program::new(rules)
}

fn configs() -> [(&'static str, SolveConfig); 2] {
    let base = SolveConfig::default().with_max_atoms(32);
    [("sequential", base.sequential()), ("parallel", base)]
}

fn stable(c: &mut Criterion) {
    let mut group = c.benchmark_group("stable");
    for (strategy, n) in [(Strategy::BruteForce, 7), (Strategy::Search, 12)] {
        let pg = even_loops(n);
        for (label, cfg) in configs() {
            let cfg = cfg.with_strategy(strategy);
            group.bench_with_input(
                BenchmarkId::new(format!("{strategy:?}"), label),
                &pg,
                |b, pg| b.iter(|| ground_models(black_box(pg), &cfg).unwrap()),
            );
        }
    }
    group.finish();
}

fn open_oracle(c: &mut Criterion) {
    let omega = parse_open_program(
        "p(a). p(b). q :- not p(X). s :- r(X), not p(X). #fresh c/0. #open r/1.",
    )
    .unwrap();
    let q = parse_query("q or s").unwrap();
    let mut group = c.benchmark_group("open");
    for (label, cfg) in configs() {
        group.bench_function(BenchmarkId::new("skp", label), |b| {
            b.iter(|| open_entails(black_box(&omega), OpenMode::Skp, &q, &cfg).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, stable, open_oracle);
criterion_main!(benches);
