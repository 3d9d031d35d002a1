use criterion::{black_box, criterion_group, criterion_main, Criterion};
use ply_core::bases::{enumerate_shat, phi};
use ply_core::osbb::osbb_decompose;
use ply_core::ply::{enumerate_b, normalize};
use ply_core::syntax::{eval, parse};
use ply_core::Alphabet;

fn bench_normalize(c: &mut Criterion) {
    let al = Alphabet::first(2);
    let x = eval(&parse("tri(bk(a, b), gr(b; bk(a, gr(a; b))))", &al).unwrap(), None).unwrap().into_a().unwrap();
    c.bench_function("normalize", |b| b.iter(|| normalize(black_box(&x)).unwrap()));
}

fn bench_enumerate_b(c: &mut Criterion) {
    let al = Alphabet::first(1);
    c.bench_function("enumerate_b 6", |b| b.iter(|| enumerate_b(black_box(6), &al)));
}

fn bench_osbb(c: &mut Criterion) {
    let al = Alphabet::first(3);
    let w = eval(&parse("w(c, a, b, a)", &al).unwrap(), None).unwrap().into_d();
    c.bench_function("osbb_decompose", |b| b.iter(|| osbb_decompose(black_box(&w))));
}

fn bench_phi(c: &mut Criterion) {
    let s = enumerate_shat(4, &Alphabet::first(2));
    c.bench_function("phi shat 4", |b| b.iter(|| s.iter().map(phi).count()));
}

criterion_group!(benches, bench_normalize, bench_enumerate_b, bench_osbb, bench_phi);
criterion_main!(benches);
