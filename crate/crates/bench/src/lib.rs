//! Deterministic inputs shared by the benchmarks.

use craftgen_core::pruning::{FeatureVector, Harmony, LabeledDesign, TOP_COLORS};
use craftgen_core::{seed, Raster, RgbColor};
use rand::Rng;

/// Black diagonal lattice with a frame on white.
pub fn motif(size: usize) -> Raster {
    let pitch = (size / 4).max(4);
    let pixels = (0..size * size)
        .map(|i| {
            let (x, y) = (i % size, i / size);
            let line = (x + y) % pitch < 2 || (x + size - y) % pitch < 2 || x < 2 || y < 2;
            if line {
                RgbColor::BLACK
            } else {
                RgbColor::WHITE
            }
        })
        .collect();
    Raster::new(size, size, pixels).expect("motif dimensions")
}

/// Smooth warm gradient.
pub fn inspiration(w: usize, h: usize) -> Raster {
    let pixels = (0..w * h)
        .map(|i| {
            let (x, y) = ((i % w) as f64 / w as f64, (i / w) as f64 / h as f64);
            RgbColor::new(0.55 + 0.4 * x, 0.2 + 0.5 * y, 0.15 + 0.2 * x * y)
        })
        .collect();
    Raster::new(w, h, pixels).expect("inspiration dimensions")
}

pub fn random_raster(w: usize, h: usize, s: u64) -> Raster {
    let mut r = seed::rng(s);
    let pixels = (0..w * h).map(|_| RgbColor::new(r.random(), r.random(), r.random())).collect();
    Raster::new(w, h, pixels).expect("raster dimensions")
}

/// Labeled feature vectors whose appeal grows with contrast and falls with dullness.
pub fn synthetic_dataset(n: usize, s: u64) -> Vec<LabeledDesign> {
    let mut r = seed::rng(s);
    (0..n)
        .map(|_| {
            let k = r.random_range(1..=TOP_COLORS);
            let mut raw: Vec<f64> = (0..k).map(|_| r.random_range(0.05..1.0)).collect();
            raw.sort_by(|a, b| b.total_cmp(a));
            let total: f64 = raw.iter().sum();
            let mut area_fractions = [0.0; TOP_COLORS];
            for (slot, v) in area_fractions.iter_mut().zip(&raw) {
                *slot = v / total;
            }
            let features = FeatureVector {
                area_fractions,
                dark_flags: [r.random_bool(0.3), r.random_bool(0.3)],
                dullness: r.random(),
                harmony: Harmony::ALL[r.random_range(0..Harmony::ALL.len())],
                global_contrast: r.random_range(0.0..100.0),
            };
            let appeal = features.global_contrast / 100.0 - features.dullness;
            let votes = [0; 3].map(|_| appeal + r.random_range(-0.35..0.35) > 0.0);
            LabeledDesign::new(features, votes)
        })
        .collect()
}
