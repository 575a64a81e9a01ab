use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use galois_core::constructions::{fixed_field, minimal_splitting_tower, solve_by_radicals};
use galois_core::engine::galois_group;
use galois_core::perm::PermGroup;
use galois_core::towers::dual_basis_local;
use galois_core::IntPoly;

fn groups(c: &mut Criterion) {
    let mut g = c.benchmark_group("galois_group");
    for (name, coeffs) in [
        ("x^3-2", vec![-2, 0, 0, 1]),
        ("x^4+x+1", vec![1, 1, 0, 0, 1]),
        ("x^5-2", vec![-2, 0, 0, 0, 0, 1]),
        ("x^5-x+1", vec![1, -1, 0, 0, 0, 1]),
    ] {
        let f = IntPoly::from_i64(&coeffs);
        g.bench_function(name, |b| b.iter(|| galois_group(black_box(&f)).unwrap()));
    }
    g.finish();
}

fn constructions(c: &mut Criterion) {
    let f = IntPoly::from_i64(&[1, 1, 0, 0, 1]);
    let (g, data) = galois_group(&f).unwrap();
    let a4 = g.intersection(&PermGroup::alternating(4));
    c.bench_function("fixed_field x^4+x+1 A4", |b| b.iter(|| fixed_field(&data, black_box(&a4)).unwrap()));
    c.bench_function("splitting tower x^4+x+1", |b| b.iter(|| minimal_splitting_tower(black_box(&data)).unwrap()));
    let (t, _) = minimal_splitting_tower(&data).unwrap();
    let local = t.data.ensure_precision(t.ctx.precision_for(&t.data.local, &1.into())).unwrap();
    c.bench_function("dual basis degree 24", |b| {
        b.iter(|| dual_basis_local(&t.field, black_box(&local), &t.ctx).unwrap())
    });
    let mut slow = c.benchmark_group("radicals");
    slow.sample_size(10);
    let f = IntPoly::from_i64(&[-2, 0, 0, 0, 0, 1]);
    slow.bench_function("x^5-2", |b| b.iter(|| solve_by_radicals(black_box(&f)).unwrap()));
    slow.finish();
}

criterion_group!(benches, groups, constructions);
criterion_main!(benches);
