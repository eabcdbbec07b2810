use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use ncdiv_bench::{derivations, pairing, words};
use ncdiv_core::algebra::AlgebraKind;
use ncdiv_core::bracket::derivation_from_ham;
use ncdiv_core::connection::{delta_k, div_k, DefaultConnection};
use ncdiv_core::io::load_surface;
use ncdiv_core::ribbon::{graph_operate, make_lk};

fn bench_div_k(c: &mut Criterion) {
    let mut g = c.benchmark_group("div_k");
    for k in 1..=4 {
        let fs = derivations(AlgebraKind::Tensor, 3, 3, k, 1);
        g.bench_with_input(BenchmarkId::new("tensor_rank3", k), &fs, |b, fs| {
            b.iter(|| div_k(AlgebraKind::Tensor, &DefaultConnection::Standard, fs).unwrap())
        });
    }
    g.finish();
}

fn bench_delta(c: &mut Criterion) {
    let (_, table) = load_surface().unwrap();
    let mut g = c.benchmark_group("delta_surface");
    for len in [2, 4, 6] {
        let xs = words(AlgebraKind::Group, 8, len, 2, 2);
        g.bench_with_input(BenchmarkId::new("k2_len", len), &xs, |b, xs| {
            b.iter(|| {
                delta_k(AlgebraKind::Group, &DefaultConnection::Standard, |x| derivation_from_ham(&table, x), xs)
                    .unwrap()
            })
        });
    }
    g.finish();
}

fn bench_graph_operate(c: &mut Criterion) {
    let p = pairing(4);
    let mut g = c.benchmark_group("graph_operate_lk");
    for k in 1..=3 {
        let lk = make_lk(k).unwrap();
        let ws = words(AlgebraKind::Tensor, 4, 5, k, 3);
        g.bench_with_input(BenchmarkId::new("len5", k), &ws, |b, ws| b.iter(|| graph_operate(&lk, &p, ws).unwrap()));
    }
    g.finish();
}

criterion_group!(benches, bench_div_k, bench_delta, bench_graph_operate);
criterion_main!(benches);
