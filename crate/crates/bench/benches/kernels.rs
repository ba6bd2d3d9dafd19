use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use cmtaylor::congruence::{detect_quasiperiod, MIN_REPEATS};
use cmtaylor::qseries::{eta, theta};
use cmtaylor::taylor::{normalized_sequence, normalized_sequence_mod, TaylorForm, TaylorPreset};

fn recursion(c: &mut Criterion) {
    let preset = TaylorPreset::by_label("i").unwrap();
    let mut g = c.benchmark_group("recursion");
    for n in [20, 40, 80] {
        g.bench_with_input(BenchmarkId::new("exact", n), &n, |b, &n| {
            b.iter(|| normalized_sequence(&preset, &TaylorForm::Theta, black_box(n)).unwrap())
        });
    }
    for n in [200, 1000] {
        g.bench_with_input(BenchmarkId::new("mod 5^3", n), &n, |b, &n| {
            b.iter(|| {
                normalized_sequence_mod(&preset, &TaylorForm::Theta, black_box(n), 5, 3).unwrap()
            })
        });
    }
    let romik = TaylorPreset::by_label("romik").unwrap();
    g.bench_function("lifted mod 3, 200", |b| {
        b.iter(|| {
            normalized_sequence_mod(&romik, &TaylorForm::Theta, black_box(200), 3, 1).unwrap()
        })
    });
    g.finish();
}

fn detection(c: &mut Criterion) {
    let preset = TaylorPreset::by_label("i-printed").unwrap();
    let s = normalized_sequence_mod(&preset, &TaylorForm::Theta, 1000, 5, 3).unwrap();
    c.bench_function("detect mod 5^3, 1000 terms", |b| {
        b.iter(|| detect_quasiperiod(black_box(&s), MIN_REPEATS))
    });
}

fn series(c: &mut Criterion) {
    let mut g = c.benchmark_group("series");
    for n in [200, 1000] {
        g.bench_with_input(BenchmarkId::new("theta^4", n), &n, |b, &n| {
            b.iter(|| theta(black_box(n)).pow(4).unwrap())
        });
        g.bench_with_input(BenchmarkId::new("eta", n), &n, |b, &n| {
            b.iter(|| eta(black_box(n)))
        });
    }
    g.finish();
}

criterion_group!(benches, recursion, detection, series);
criterion_main!(benches);
