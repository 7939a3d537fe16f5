use criterion::{black_box, criterion_group, criterion_main, Criterion};
use num_bigint::BigInt;

use twistkit_core::abelian::smith_diagonal;
use twistkit_core::catalog::{frozen_classes, homology_assignment, instantiate, EntryId, InstantiateOptions};
use twistkit_core::enumeration::{todd_coxeter, SubgroupSpec};
use twistkit_core::homology::{verify_relators, SurfaceModel};
use twistkit_core::presentation::parse_presentation;
use twistkit_core::word::{free_reduce, Alphabet, Letter};

fn word_reduce(c: &mut Criterion) {
    let alphabet = Alphabet::new(["a", "b", "c"]).unwrap();
    // x y y⁻¹ z z⁻¹ x⁻¹ ... nests cancellations deeply
    let mut letters = Vec::new();
    for i in 0..2000 {
        letters.push(Letter::new(i % alphabet.len(), i % 2 == 0));
    }
    let back: Vec<Letter> = letters.iter().rev().map(|l| l.inv()).collect();
    letters.extend(back);
    c.bench_function("free_reduce 4000 letters", |b| b.iter(|| free_reduce(black_box(letters.iter().copied()))));
}

fn coset_enumeration(c: &mut Criterion) {
    let p = parse_presentation(include_str!("../../core/data/m_n3_0.pres")).unwrap();
    c.bench_function("todd_coxeter M(N3) parity subgroup", |b| {
        b.iter(|| todd_coxeter(black_box(&p), &SubgroupSpec::parity("y"), 1_000_000).unwrap())
    });
}

fn smith_normal_form(c: &mut Criterion) {
    let p = instantiate(EntryId::parse("t_ng1_odd").unwrap(), 7, 1, &InstantiateOptions::default()).unwrap();
    let cols = p.alphabet().len();
    let rows: Vec<Vec<BigInt>> = p
        .relators()
        .iter()
        .map(|r| (0..cols).map(|g| BigInt::from(r.word.exponent_sum_index(g))).collect())
        .collect();
    c.bench_function("smith_diagonal T(N7,1)", |b| b.iter(|| smith_diagonal(black_box(&rows), cols)));
}

fn homology_verify(c: &mut Criterion) {
    let p = instantiate(EntryId::parse("t_ng1_even").unwrap(), 8, 1, &InstantiateOptions::default()).unwrap();
    let m = SurfaceModel::new(8, 1).unwrap();
    let assign = homology_assignment(&p, 8, 1, frozen_classes()).unwrap();
    c.bench_function("verify_relators T(N8,1)", |b| b.iter(|| verify_relators(black_box(&p), &m, &assign).unwrap()));
}

criterion_group!(kernels, word_reduce, coset_enumeration, smith_normal_form, homology_verify);
criterion_main!(kernels);
