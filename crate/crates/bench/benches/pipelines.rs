use craftgen_bench::{inspiration, motif};
use craftgen_core::blockprint::{block_divide, recursive_divide, render_pattern, tile_pattern, BaseShape, RotationPolicy, ShapeKind};
use craftgen_core::ikat::{run_ikat_pipeline, Motif, PrimitivePalette};
use craftgen_core::palette::extract_palette;
use craftgen_core::pruning::extract_features;
use craftgen_core::RgbColor;
use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

fn ikat(c: &mut Criterion) {
    let m = Motif::new(motif(512)).unwrap();
    let insp = inspiration(320, 240);
    let palette = PrimitivePalette::default();
    c.bench_function("ikat_pipeline/512px to 128 grid", |b| {
        b.iter(|| run_ikat_pipeline(&m, &insp, &palette, black_box(7), 128).unwrap())
    });
}

fn blockprint(c: &mut Criterion) {
    let palette = [
        RgbColor::from_u8(200, 40, 40),
        RgbColor::from_u8(240, 200, 70),
        RgbColor::from_u8(30, 70, 160),
        RgbColor::from_u8(30, 30, 30),
    ];
    let square = BaseShape::new(ShapeKind::Square);
    c.bench_function("block_divide/6 chords", |b| b.iter(|| block_divide(square, 6, black_box(3)).unwrap()));
    c.bench_function("recursive_divide/depth 5", |b| b.iter(|| recursive_divide(square, 5, black_box(3)).unwrap()));
    let block = block_divide(BaseShape::new(ShapeKind::Hexagon), 5, 11).unwrap();
    let pattern = tile_pattern(&block, 4, 4, RotationPolicy::Seeded, 11).unwrap();
    c.bench_function("render_pattern/4x4 hexagons 256px", |b| {
        b.iter(|| render_pattern(black_box(&pattern), &palette, 256).unwrap())
    });
    let img = render_pattern(&pattern, &palette, 256).unwrap();
    c.bench_function("extract_features/256px render", |b| b.iter(|| extract_features(black_box(&img)).unwrap()));
}

fn palette(c: &mut Criterion) {
    let img = inspiration(320, 240);
    c.bench_function("extract_palette/320x240", |b| b.iter(|| extract_palette(black_box(&img)).unwrap()));
}

criterion_group!(benches, ikat, blockprint, palette);
criterion_main!(benches);
