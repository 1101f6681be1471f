use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use fdsg::algebra::{coproduct, Polynomial};
use fdsg::analytic::{li, zeta};
use fdsg::ddl::{fd_criterion_check, fig1_system};
use fdsg::qshuffle::{diamond, shuffle, stuffle};
use fdsg::structure::peel;
use fdsg::{builtin, Element, Monomial};

fn quasi_shuffles(c: &mut Criterion) {
    let s = [1, 2, 1, 3, 1, 2];
    let t = [2, 1, 2, 1, 1];
    c.bench_function("stuffle 6x5", |b| b.iter(|| stuffle(black_box(&s), black_box(&t)).unwrap()));
    let u = ["x0", "x1", "x0", "x1", "x1", "x0"];
    let v = ["x1", "x0", "x1", "x1", "x0", "x1"];
    c.bench_function("shuffle 6x6", |b| b.iter(|| shuffle(black_box(&u), black_box(&v))));
    let p = [(1, 0), (0, 1), (1, 1), (2, 0)];
    let q = [(0, 2), (1, 1), (1, 0), (0, 1)];
    c.bench_function("diamond 4x4", |b| b.iter(|| diamond(black_box(&p), black_box(&q)).unwrap()));
}

fn coproducts(c: &mut Criterion) {
    let nat = builtin("nat-plus").unwrap();
    let sum = Polynomial::from_terms((1..=64).map(|n| (Element::Nat(n), fdsg::algebra::integer(n as i64))));
    c.bench_function("coproduct nat-plus 1..64", |b| b.iter(|| coproduct(&*nat, black_box(&sum)).unwrap()));
    let mon = builtin("mon").unwrap();
    let m = Polynomial::basis(Element::Monomial(Monomial::from_exponents([(1, 6), (2, 5), (3, 4)])));
    c.bench_function("coproduct mon x1^6 x2^5 x3^4", |b| b.iter(|| coproduct(&*mon, black_box(&m)).unwrap()));
}

fn structure(c: &mut Criterion) {
    let t4 = builtin("t4").unwrap();
    c.bench_function("peel t4", |b| b.iter(|| peel(black_box(&t4)).unwrap()));
    let fig1 = fig1_system();
    c.bench_function("criterion fig1 bound 8", |b| b.iter(|| fd_criterion_check(black_box(&fig1), 8).unwrap()));
}

fn analytic(c: &mut Criterion) {
    c.bench_function("zeta(2,2) N=1e4", |b| b.iter(|| zeta(black_box(&[2, 2]), 10_000).unwrap()));
    let w = ["x0", "x1", "x0", "x1", "x1"];
    c.bench_function("li x0x1x0x1x1 z=0.5 N=2000", |b| b.iter(|| li(black_box(&w), 0.5, 2000).unwrap()));
}

criterion_group!(benches, quasi_shuffles, coproducts, structure, analytic);
criterion_main!(benches);
