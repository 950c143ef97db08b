use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use epicyclic::barcat::{check_diagonal_on_tuples, cyclic_bar, Monoid};
use epicyclic::homology::homology_through;
use epicyclic::ring::{Integers, IntegersMod, Ring};
use epicyclic::simplicial::{circle, sphere2, validate};
use epicyclic::subdivision::{edgewise_subdivide, verify_cube_face_relations};
use epicyclic::trace::{trc0, RingMatrix};
use epicyclic::witt::{TruncationSet, WittVector};

fn bar(c: &mut Criterion) {
    let s3 = Monoid::symmetric3().as_category();
    c.bench_function("cyclic_bar s3 through degree 4", |b| b.iter(|| cyclic_bar(black_box(&s3), 4)));
    c.bench_function("category laws s3", |b| b.iter(|| black_box(&s3).validate()));
    c.bench_function("diagonal on tuples s3 r=3", |b| b.iter(|| check_diagonal_on_tuples(black_box(&s3), 3, 4).unwrap()));
}

fn subdivision(c: &mut Criterion) {
    let s1 = circle(8);
    c.bench_function("sd_3 circle", |b| b.iter(|| edgewise_subdivide(black_box(&s1), 3).unwrap()));
    let sd = edgewise_subdivide(&s1, 2).unwrap();
    c.bench_function("validate sd_2 circle", |b| b.iter(|| validate(black_box(&sd.result))));
    c.bench_function("coherence cubes 2,3,5,7", |b| b.iter(|| verify_cube_face_relations(black_box(&[2, 3, 5, 7])).unwrap()));
}

fn homology(c: &mut Criterion) {
    let s2 = sphere2(6);
    c.bench_function("homology sphere2 through 5", |b| b.iter(|| homology_through(black_box(&s2), 5).unwrap()));
    let bz3 = cyclic_bar(&Monoid::cyclic(3).as_category(), 5).set;
    c.bench_function("homology bar z3 through 4", |b| b.iter(|| homology_through(black_box(&bz3), 4).unwrap()));
}

fn witt(c: &mut Criterion) {
    let set = TruncationSet::divisors_of(360);
    let coords = |seed: i64| (0..set.len() as i64).map(|i| Integers.from_i64((i * 7 + seed) % 11 - 5)).collect::<Vec<_>>();
    let x = WittVector::from_coords(Integers, set.clone(), coords(1)).unwrap();
    let y = WittVector::from_coords(Integers, set.clone(), coords(4)).unwrap();
    c.bench_function("witt mul Z <360>", |b| b.iter(|| black_box(&x).mul(black_box(&y)).unwrap()));
    c.bench_function("witt ghost Z <360>", |b| b.iter(|| black_box(&x).ghost()));

    let ring = IntegersMod::new(6).unwrap();
    let set = TruncationSet::initial(24);
    let reduce = |v: Vec<i64>| v.into_iter().map(|a| ring.from_i64(a)).collect::<Vec<_>>();
    let x = WittVector::from_coords(ring, set.clone(), reduce((0..24).map(|i| i % 5).collect())).unwrap();
    let y = WittVector::from_coords(ring, set, reduce((0..24).map(|i| (i * 3) % 4).collect())).unwrap();
    c.bench_function("witt mul Z/6 {1..24}", |b| b.iter(|| black_box(&x).mul(black_box(&y)).unwrap()));
}

fn trace(c: &mut Criterion) {
    let alpha = RingMatrix::from_fn(Integers, 6, |i, j| Integers.from_i64(((i * 5 + j * 3) % 7) as i64 - 3));
    let set = TruncationSet::divisors_of(12);
    c.bench_function("trc0 6x6 over Z on <12>", |b| b.iter(|| trc0(black_box(&alpha), &set, true).unwrap()));
}

criterion_group!(benches, bar, subdivision, homology, witt, trace);
criterion_main!(benches);
