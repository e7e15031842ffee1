#![allow(dead_code)]

use craftgen_core::blockprint::{BlockDesign, Point};
use craftgen_core::{Raster, RgbColor};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

// Sharma, Wu & Dalal CIEDE2000 verification pairs: (L1, a1, b1), (L2, a2, b2), dE00.
pub const SHARMA_PAIRS: &[([f64; 3], [f64; 3], f64)] = &[
    ([50.0000, 2.6772, -79.7751], [50.0000, 0.0000, -82.7485], 2.0425),
    ([50.0000, 3.1571, -77.2803], [50.0000, 0.0000, -82.7485], 2.8615),
    ([50.0000, 2.8361, -74.0200], [50.0000, 0.0000, -82.7485], 3.4412),
    ([50.0000, -1.3802, -84.2814], [50.0000, 0.0000, -82.7485], 1.0000),
    ([50.0000, -1.1848, -84.8006], [50.0000, 0.0000, -82.7485], 1.0000),
    ([50.0000, -0.9009, -85.5211], [50.0000, 0.0000, -82.7485], 1.0000),
    ([50.0000, 0.0000, 0.0000], [50.0000, -1.0000, 2.0000], 2.3669),
    ([50.0000, -1.0000, 2.0000], [50.0000, 0.0000, 0.0000], 2.3669),
    ([50.0000, 2.4900, -0.0010], [50.0000, -2.4900, 0.0009], 7.1792),
    ([50.0000, 2.4900, -0.0010], [50.0000, -2.4900, 0.0010], 7.1792),
    ([50.0000, 2.4900, -0.0010], [50.0000, -2.4900, 0.0011], 7.2195),
    ([50.0000, 2.4900, -0.0010], [50.0000, -2.4900, 0.0012], 7.2195),
    ([50.0000, -0.0010, 2.4900], [50.0000, 0.0009, -2.4900], 4.8045),
    ([50.0000, -0.0010, 2.4900], [50.0000, 0.0010, -2.4900], 4.8045),
    ([50.0000, -0.0010, 2.4900], [50.0000, 0.0011, -2.4900], 4.7461),
    ([50.0000, 2.5000, 0.0000], [50.0000, 0.0000, -2.5000], 4.3065),
    ([50.0000, 2.5000, 0.0000], [73.0000, 25.0000, -18.0000], 27.1492),
    ([50.0000, 2.5000, 0.0000], [61.0000, -5.0000, 29.0000], 22.8977),
    ([50.0000, 2.5000, 0.0000], [56.0000, -27.0000, -3.0000], 31.9030),
    ([50.0000, 2.5000, 0.0000], [58.0000, 24.0000, 15.0000], 19.4535),
    ([50.0000, 2.5000, 0.0000], [50.0000, 3.1736, 0.5854], 1.0000),
    ([50.0000, 2.5000, 0.0000], [50.0000, 3.2972, 0.0000], 1.0000),
    ([50.0000, 2.5000, 0.0000], [50.0000, 1.8634, 0.5757], 1.0000),
    ([50.0000, 2.5000, 0.0000], [50.0000, 3.2592, 0.3350], 1.0000),
    ([60.2574, -34.0099, 36.2677], [60.4626, -34.1751, 39.4387], 1.2644),
    ([63.0109, -31.0961, -5.8663], [62.8187, -29.7946, -4.0864], 1.2630),
    ([61.2901, 3.7196, -5.3901], [61.4292, 2.2480, -4.9620], 1.8731),
    ([35.0831, -44.1164, 3.7933], [35.0232, -40.0716, 1.5901], 1.8645),
    ([22.7233, 20.0904, -46.6940], [23.0331, 14.9730, -42.5619], 2.0373),
    ([36.4612, 47.8580, 18.3852], [36.2715, 50.5065, 21.2231], 1.4146),
    ([90.8027, -2.0831, 1.4410], [91.1528, -1.6435, 0.0447], 1.4441),
    ([90.9257, -0.5406, -0.9208], [88.6381, -0.8985, -0.7239], 1.5381),
    ([6.7747, -0.2908, -2.4247], [5.8714, -0.0985, -2.2286], 0.6377),
    ([2.0776, 0.0795, -1.1350], [0.9033, -0.0636, -0.5514], 0.9082),
];

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_raster(rng: &mut ChaCha8Rng, w: usize, h: usize) -> Raster {
    Raster::from_fn(w, h, |_, _| RgbColor::new(rng.random(), rng.random(), rng.random()))
}

/// Random image whose channels stay inside `[lo, hi]`.
pub fn random_raster_in(rng: &mut ChaCha8Rng, w: usize, h: usize, lo: f64, hi: f64) -> Raster {
    Raster::from_fn(w, h, |_, _| {
        RgbColor::new(
            rng.random_range(lo..=hi),
            rng.random_range(lo..=hi),
            rng.random_range(lo..=hi),
        )
    })
}

fn segment_distance(p: Point, a: Point, b: Point) -> f64 {
    let (dx, dy) = (b.x - a.x, b.y - a.y);
    let len2 = dx * dx + dy * dy;
    let t = if len2 == 0.0 {
        0.0
    } else {
        (((p.x - a.x) * dx + (p.y - a.y) * dy) / len2).clamp(0.0, 1.0)
    };
    let (qx, qy) = (a.x + t * dx - p.x, a.y + t * dy - p.y);
    (qx * qx + qy * qy).sqrt()
}

fn inside_convex(vertices: &[Point], p: Point) -> bool {
    let n = vertices.len();
    let mut sign = 0.0f64;
    for i in 0..n {
        let (a, b) = (vertices[i], vertices[(i + 1) % n]);
        let c = (b.x - a.x) * (p.y - a.y) - (b.y - a.y) * (p.x - a.x);
        if c != 0.0 {
            if sign != 0.0 && c.signum() != sign {
                return false;
            }
            sign = c.signum();
        }
    }
    true
}

/// Counts the faces a block's chords cut it into: chords are drawn as
/// barrier pixels on a `res x res` raster of the bounding box and the
/// remaining inside pixels are flood filled (8-connected). Components
/// smaller than `min_pixels` are rasterization crumbs and ignored.
pub fn flood_fill_regions(design: &BlockDesign, res: usize, min_pixels: usize) -> usize {
    let outer = design.shape.polygon().vertices;
    let (mut x0, mut y0, mut x1, mut y1) = (f64::MAX, f64::MAX, f64::MIN, f64::MIN);
    for v in &outer {
        x0 = x0.min(v.x);
        y0 = y0.min(v.y);
        x1 = x1.max(v.x);
        y1 = y1.max(v.y);
    }
    let scale = (x1 - x0).max(y1 - y0) / res as f64;
    let segments: Vec<(Point, Point)> = design
        .chords
        .iter()
        .flat_map(|c| {
            let pts = c.polyline();
            pts.windows(2).map(|w| (w[0], w[1])).collect::<Vec<_>>()
        })
        .collect();
    let barrier = 0.75 * scale;
    let mut open = vec![false; res * res];
    for py in 0..res {
        for px in 0..res {
            let p = Point::new(x0 + (px as f64 + 0.5) * scale, y0 + (py as f64 + 0.5) * scale);
            open[py * res + px] =
                inside_convex(&outer, p) && segments.iter().all(|&(a, b)| segment_distance(p, a, b) >= barrier);
        }
    }
    let mut seen = vec![false; res * res];
    let mut regions = 0;
    for start in 0..res * res {
        if !open[start] || seen[start] {
            continue;
        }
        seen[start] = true;
        let mut stack = vec![start];
        let mut size = 0;
        while let Some(i) = stack.pop() {
            size += 1;
            let (x, y) = ((i % res) as i64, (i / res) as i64);
            for dy in -1..=1i64 {
                for dx in -1..=1i64 {
                    let (nx, ny) = (x + dx, y + dy);
                    if nx < 0 || ny < 0 || nx >= res as i64 || ny >= res as i64 {
                        continue;
                    }
                    let j = ny as usize * res + nx as usize;
                    if open[j] && !seen[j] {
                        seen[j] = true;
                        stack.push(j);
                    }
                }
            }
        }
        if size >= min_pixels {
            regions += 1;
        }
    }
    regions
}

/// 128 x 128 line motif: a lattice of diagonal lines plus a frame.
pub fn fixture_motif() -> Raster {
    Raster::from_fn(128, 128, |x, y| {
        let on_line = (x + y) % 32 < 2 || (x + 128 - y) % 32 < 2 || x < 2 || y < 2 || x > 125 || y > 125;
        if on_line {
            RgbColor::BLACK
        } else {
            RgbColor::WHITE
        }
    })
}

/// Warm photograph stand-in: smooth gradients with a little texture.
pub fn fixture_inspiration() -> Raster {
    Raster::from_fn(96, 64, |x, y| {
        let (u, v) = (x as f64 / 95.0, y as f64 / 63.0);
        let t = ((x * 7 + y * 13) % 17) as f64 / 170.0;
        RgbColor::new(0.55 + 0.35 * u, 0.25 + 0.3 * v + t, 0.15 + 0.2 * (1.0 - u) * v)
    })
}

/// Twenty varied 64 x 64 inspiration stand-ins: noise, gradients, blocks of
/// random flat colors, and mixtures of those.
pub fn palette_corpus() -> Vec<Raster> {
    let mut r = rng(2024);
    (0..20)
        .map(|i| match i % 4 {
            0 => random_raster(&mut r, 64, 64),
            1 => {
                let (a, b): ([f64; 3], [f64; 3]) = (r.random(), r.random());
                Raster::from_fn(64, 64, |x, y| {
                    let t = (x + y) as f64 / 126.0;
                    RgbColor::new(a[0] + (b[0] - a[0]) * t, a[1] + (b[1] - a[1]) * t, a[2] + (b[2] - a[2]) * t)
                })
            }
            2 => {
                let colors: Vec<RgbColor> = (0..16).map(|_| RgbColor::new(r.random(), r.random(), r.random())).collect();
                Raster::from_fn(64, 64, |x, y| colors[(y / 16) * 4 + x / 16])
            }
            _ => {
                let base = RgbColor::new(r.random(), r.random(), r.random());
                let mut img = random_raster_in(&mut r, 64, 64, 0.2, 0.8);
                for y in 0..32 {
                    for x in 0..64 {
                        img.set(x, y, base);
                    }
                }
                img
            }
        })
        .collect()
}

/// Random but plausible feature vector.
pub fn random_features(r: &mut ChaCha8Rng) -> craftgen_core::pruning::FeatureVector {
    use craftgen_core::pruning::{FeatureVector, Harmony, TOP_COLORS};
    let k = r.random_range(1..=TOP_COLORS);
    let mut raw: Vec<f64> = (0..k).map(|_| r.random_range(0.05..1.0)).collect();
    raw.sort_by(|a, b| b.total_cmp(a));
    let total: f64 = raw.iter().sum();
    let mut area_fractions = [0.0; TOP_COLORS];
    for (slot, v) in area_fractions.iter_mut().zip(&raw) {
        *slot = v / total;
    }
    FeatureVector {
        area_fractions,
        dark_flags: [r.random_bool(0.3), r.random_bool(0.3)],
        dullness: r.random(),
        harmony: Harmony::ALL[r.random_range(0..Harmony::ALL.len())],
        global_contrast: r.random_range(0.0..100.0),
    }
}

/// Synthetic judged designs: judges like contrasty, lively designs, each
/// with independent noise.
pub fn synthetic_dataset(n: usize, seed: u64) -> Vec<craftgen_core::pruning::LabeledDesign> {
    use craftgen_core::pruning::LabeledDesign;
    let mut r = rng(seed);
    (0..n)
        .map(|_| {
            let f = random_features(&mut r);
            let appeal = f.global_contrast / 100.0 - f.dullness + if f.dark_flags[0] { -0.2 } else { 0.1 };
            let votes = [0; 3].map(|_| appeal + r.random_range(-0.35..0.35) > 0.0);
            LabeledDesign::new(f, votes)
        })
        .collect()
}
