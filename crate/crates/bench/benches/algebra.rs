use std::hint::black_box;

use abtrace_core::exact_algebra::{char_poly_via_exterior, det, det_one_plus_s};
use abtrace_core::kernel2cat::trace_of_lax_square;
use abtrace_core::projective::{verify_ab, BundleSpec, ProjScenario};
use abtrace_core::random;
use abtrace_core::weyl::{build_root_system, fixed_point_character_sum, weyl_character, RootType};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

fn determinants(c: &mut Criterion) {
    let mut g = c.benchmark_group("det");
    for n in [4, 6, 8] {
        let a = random::rational_matrix(&mut random::rng(n as u64), n, n);
        g.bench_with_input(BenchmarkId::new("bareiss", n), &a, |b, a| b.iter(|| det(black_box(a))));
        g.bench_with_input(BenchmarkId::new("char_poly_elimination", n), &a, |b, a| {
            b.iter(|| det_one_plus_s(black_box(a)))
        });
        g.bench_with_input(BenchmarkId::new("char_poly_exterior", n), &a, |b, a| {
            b.iter(|| char_poly_via_exterior(black_box(a)))
        });
    }
    g.finish();
}

fn characters(c: &mut Criterion) {
    let mut g = c.benchmark_group("weyl");
    for (t, lam) in [(RootType::A2, vec![3, 3]), (RootType::A3, vec![2, 2, 2]), (RootType::G2, vec![2, 2])] {
        let rs = build_root_system(t).unwrap();
        g.bench_with_input(BenchmarkId::new("character", t), &lam, |b, lam| b.iter(|| weyl_character(&rs, lam)));
        g.bench_with_input(BenchmarkId::new("fixed_point_sum", t), &lam, |b, lam| {
            b.iter(|| fixed_point_character_sum(&rs, lam))
        });
    }
    g.finish();
}

fn projective(c: &mut Criterion) {
    let mut g = c.benchmark_group("verify_ab");
    for n in [1, 2, 3] {
        let sc = ProjScenario::powers_of("q", n);
        let bundle = BundleSpec::line(4);
        g.bench_with_input(BenchmarkId::new("symbolic_o4", n), &sc, |b, sc| b.iter(|| verify_ab(sc, &bundle)));
    }
    g.finish();
}

fn lax_squares(c: &mut Criterion) {
    let mut rng = random::rng(17);
    let squares: Vec<_> = (0..8).map(|_| random::lax_square(&mut rng, 4, 2)).collect();
    c.bench_function("trace_of_lax_square/random_8", |b| {
        b.iter(|| squares.iter().map(|sq| trace_of_lax_square(black_box(sq))).collect::<Vec<_>>())
    });
}

criterion_group!(benches, determinants, characters, projective, lax_squares);
criterion_main!(benches);
