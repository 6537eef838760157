use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use finspace::classify::{is_schematic, is_semiseparated};
use finspace::cohomology::cohomology_report;
use finspace::homotopy::core;
use finspace::models;
use finspace::sheafmod::SheafModule;
use finspace::zmat::{snf, ZMat};

fn cohomology(c: &mut Criterion) {
    let circle = models::pseudocircle();
    let o = SheafModule::structure(&circle);
    let all: Vec<usize> = (0..circle.len()).collect();
    c.bench_function("cohomology/pseudocircle", |b| b.iter(|| cohomology_report(black_box(&o), &all, None).unwrap()));

    let w = models::twist_window(0);
    let t = models::twist(-3);
    let all: Vec<usize> = (0..t.space().len()).collect();
    c.bench_function("cohomology/p1_twist", |b| b.iter(|| cohomology_report(black_box(&t), &all, Some(&w)).unwrap()));
}

fn cores(c: &mut Criterion) {
    let cone = models::cone_z(&models::pseudocircle()).unwrap();
    c.bench_function("core/cone_pseudocircle", |b| b.iter(|| core(black_box(&cone)).unwrap()));
    let chain = models::chain_z(8).unwrap();
    c.bench_function("core/chain8", |b| b.iter(|| core(black_box(&chain)).unwrap()));
}

fn classification(c: &mut Criterion) {
    let w = models::twist_window(0);
    let plane = models::doubled_origin_plane();
    c.bench_function("schematic/plane_doubled_origin", |b| b.iter(|| is_schematic(black_box(&plane), Some(&w)).unwrap()));
    c.bench_function("semiseparated/plane_doubled_origin", |b| b.iter(|| is_semiseparated(black_box(&plane), Some(&w)).unwrap()));
}

fn smith(c: &mut Criterion) {
    let rows: Vec<Vec<i64>> = (0..8).map(|i| (0..8).map(|j| ((i * 7 + j * 3) % 11) as i64 - 5).collect()).collect();
    let refs: Vec<&[i64]> = rows.iter().map(|r| r.as_slice()).collect();
    let a = ZMat::from_i64(&refs);
    c.bench_function("snf/8x8", |b| b.iter(|| snf(black_box(&a))));
}

criterion_group!(benches, cohomology, cores, classification, smith);
criterion_main!(benches);
