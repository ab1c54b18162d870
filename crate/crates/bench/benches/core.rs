use criterion::{black_box, criterion_group, criterion_main, Criterion};

use normone::exactla::snf as smith;
use normone::fpgroups::todd_coxeter;
use normone::{norm_one_invariant, presentation_catalog, GroupKind, IntMatrix, SubgroupHandle};

fn snf(c: &mut Criterion) {
    let n = 24;
    let rows: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| ((i * 7 + j * 13 + i * j) % 11) as i64 - 5).collect()).collect();
    let a = IntMatrix::from_rows(&rows);
    c.bench_function("snf 24x24", |b| b.iter(|| smith(black_box(&a))));
}

fn norm_one_a5(c: &mut Criterion) {
    let g = GroupKind::Alternating(5).build().unwrap();
    let h = SubgroupHandle::point_stabilizer(&g, 5).unwrap();
    c.bench_function("norm_one_invariant A5/A4", |b| b.iter(|| norm_one_invariant(&g, &h).unwrap()));
}

fn coset_enumeration(c: &mut Criterion) {
    let p = presentation_catalog(&GroupKind::Alternating(6)).unwrap().fp_group();
    c.bench_function("todd_coxeter A6", |b| b.iter(|| todd_coxeter(black_box(&p), &[], 10_000).unwrap()));
}

criterion_group!(benches, snf, norm_one_a5, coset_enumeration);
criterion_main!(benches);
