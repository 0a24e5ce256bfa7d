use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use strat_bench::{module, square_matrix};
use strat_core::ext::ext_presentation;
use strat_core::ideal::Ideal;
use strat_core::poly::PolyRing;
use strat_core::support::{rank_variety_oracle, support};

fn rref(c: &mut Criterion) {
    let mut g = c.benchmark_group("rref");
    for n in [32, 128, 256] {
        let a = square_matrix(3, n);
        g.bench_with_input(BenchmarkId::from_parameter(n), &a, |b, a| b.iter(|| a.rref()));
    }
    g.finish();
}

fn groebner(c: &mut Criterion) {
    let ring = PolyRing::new(3, 3, 1).unwrap();
    let gens = ["x1^2*x2 + 2*x3^3", "x1*x3^2 + x2^3", "x1^3 + 2*x2*x3^2 + x3^3"];
    c.bench_function("groebner/cubics", |b| {
        b.iter(|| Ideal::parse(&ring, &gens).unwrap().groebner().len())
    });
}

fn supports(c: &mut Criterion) {
    let mut g = c.benchmark_group("support");
    g.sample_size(20);
    for (p, r, dim) in [(2, 2, 8), (3, 2, 8), (2, 3, 8)] {
        let m = module(p, r, dim);
        let id = format!("p{p}_r{r}_dim{dim}");
        g.bench_function(BenchmarkId::new("ext", &id), |b| b.iter(|| support(&m).unwrap()));
        g.bench_function(BenchmarkId::new("rank_variety", &id), |b| b.iter(|| rank_variety_oracle(&m).unwrap()));
    }
    g.finish();
}

fn ext(c: &mut Criterion) {
    let mut g = c.benchmark_group("ext_presentation");
    g.sample_size(20);
    for d in [4, 8] {
        let m = module(3, 2, 6);
        g.bench_with_input(BenchmarkId::from_parameter(d), &d, |b, &d| b.iter(|| ext_presentation(&m, d).unwrap()));
    }
    g.finish();
}

criterion_group!(benches, rref, groebner, supports, ext);
criterion_main!(benches);
