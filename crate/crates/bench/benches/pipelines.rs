use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use qsurf_core::enumeration::{beta_row, beta_z, DEFAULT_BUDGET};
use qsurf_core::montecarlo::{exact_logical_error_rate, simulate};
use qsurf_core::{build_surface_code, ChannelModel, Decoder, DecoderKind};

fn enumeration(c: &mut Criterion) {
    let mut group = c.benchmark_group("enumeration");
    group.sample_size(10);
    let c13 = build_surface_code(3, 3).unwrap();
    let d13 = Decoder::new(&c13, DecoderKind::Mwpm, None).unwrap();
    group.bench_function("[[13,1,3]] weight 3 row", |b| {
        b.iter(|| black_box(beta_row(&c13, &d13, 3, DEFAULT_BUDGET).unwrap()))
    });
    let c23 = build_surface_code(3, 5).unwrap();
    let d23 = Decoder::new(&c23, DecoderKind::Mwpm, None).unwrap();
    group.bench_function("[[23,1,3/5]] pure-Z weight 5", |b| {
        b.iter(|| black_box(beta_z(&c23, &d23, 5, DEFAULT_BUDGET).unwrap()))
    });
    group.finish();
}

fn simulation(c: &mut Criterion) {
    let mut group = c.benchmark_group("simulate");
    group.sample_size(10);
    let channel = ChannelModel::depolarizing(0.06).unwrap();
    for (dx, dz) in [(3, 3), (5, 5)] {
        let code = build_surface_code(dx, dz).unwrap();
        let decoder = Decoder::new(&code, DecoderKind::Mwpm, None).unwrap();
        group.bench_function(format!("{} MWPM 10^4 trials", code.label()), |b| {
            b.iter(|| black_box(simulate(&code, &decoder, &channel, 10_000, 1).unwrap()))
        });
    }
    let code = build_surface_code(3, 3).unwrap();
    let decoder = Decoder::new(&code, DecoderKind::Mwpm, None).unwrap();
    group.bench_function("[[13,1,3]] exact oracle", |b| {
        b.iter(|| black_box(exact_logical_error_rate(&code, &decoder, &channel).unwrap()))
    });
    group.finish();
}

criterion_group!(benches, enumeration, simulation);
criterion_main!(benches);
