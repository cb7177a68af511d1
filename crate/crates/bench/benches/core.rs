use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use ffl_bench::{f3, phi2, phi3};
use ffl_core::algebra::{enumerate_monic_irreducibles, PolyA};
use ffl_core::frobenius::FrobCharPoly;
use ffl_core::lseries::{dirichlet_sum, euler_product, SeriesSpec};
use ffl_core::regulators::{reg_closed_form, reg_via_basis};
use ffl_core::tmodule::{log_coeffs, TModule, TensorKind};

fn charpoly(c: &mut Criterion) {
    let phi = phi3();
    let f = PolyA::parse(f3(), "theta^3+2*theta+1").unwrap();
    c.bench_function("charpoly rank 3 degree 3", |b| b.iter(|| FrobCharPoly::compute(black_box(&phi), &f).unwrap()));
}

fn irreducibles(c: &mut Criterion) {
    c.bench_function("irreducibles q=3 d<=6", |b| b.iter(|| enumerate_monic_irreducibles(f3(), black_box(6))));
}

fn series(c: &mut Criterion) {
    let phi = phi2();
    let spec = SeriesSpec::goss_dual(&phi, 0, 4).unwrap().with_cutoff(4);
    c.bench_function("dirichlet goss_dual cutoff 4", |b| b.iter(|| dirichlet_sum(black_box(&spec)).unwrap()));
    c.bench_function("euler goss_dual dmax 4", |b| b.iter(|| euler_product(black_box(&spec), 4).unwrap()));
}

fn regulators(c: &mut Criterion) {
    let phi = phi2();
    let mut g = c.benchmark_group("regulator M=10");
    g.sample_size(10);
    for kind in [TensorKind::Alt2, TensorKind::Sym2, TensorKind::Tensor2] {
        g.bench_function(format!("closed {}", kind.name()), |b| b.iter(|| reg_closed_form(kind, &phi, 10).unwrap()));
        g.bench_function(format!("basis {}", kind.name()), |b| b.iter(|| reg_via_basis(kind, &phi, 10).unwrap()));
    }
    g.finish();
}

fn explog(c: &mut Criterion) {
    let e = TModule::sym2(&phi2()).unwrap();
    c.bench_function("log coefficients sym2 n=4", |b| b.iter(|| log_coeffs(black_box(&e), 4).unwrap()));
}

criterion_group!(benches, charpoly, irreducibles, series, regulators, explog);
criterion_main!(benches);
