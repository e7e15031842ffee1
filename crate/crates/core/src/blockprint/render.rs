//! Flat-fill rasterization of patterns.

use std::collections::{BTreeMap, BTreeSet};

use rand::Rng;

use super::geometry::{Point, ShapeKind};
use super::tiling::Pattern;
use crate::color::{Raster, RgbColor};
use crate::{seed, Error, Result};

pub const MIN_RENDER_SIDE: usize = 64;

const COLOR_STREAM: u64 = 0xC0_10_12;

/// Block-region key of every pixel of a rendered pattern.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegionMap {
    pub width: usize,
    pub height: usize,
    pub keys: Vec<u64>,
    /// Tile `(row, col)` of every pixel.
    pub tiles: Vec<(i64, i64)>,
    /// Horizontal repeat of the board in pixels; the map is exactly periodic
    /// under this shift when no tile is rotated.
    pub period_px: usize,
}

impl RegionMap {
    pub fn key(&self, x: usize, y: usize) -> u64 {
        self.keys[y * self.width + x]
    }

    /// Pairs of distinct keys that touch through a 4-neighbourhood.
    pub fn adjacency(&self) -> BTreeMap<u64, BTreeSet<u64>> {
        let mut adj: BTreeMap<u64, BTreeSet<u64>> = BTreeMap::new();
        for &k in &self.keys {
            adj.entry(k).or_default();
        }
        let mut link = |a: u64, b: u64| {
            if a != b {
                adj.entry(a).or_default().insert(b);
                adj.entry(b).or_default().insert(a);
            }
        };
        for y in 0..self.height {
            for x in 0..self.width {
                let k = self.key(x, y);
                if x + 1 < self.width {
                    link(k, self.key(x + 1, y));
                }
                if y + 1 < self.height {
                    link(k, self.key(x, y + 1));
                }
            }
        }
        adj
    }
}

/// Rasterizes the pattern's region structure. The output is `px` wide; the
/// height follows the board's aspect ratio. The horizontal period is snapped
/// to a whole number of pixels.
pub fn region_map(pattern: &Pattern, px: usize) -> Result<RegionMap> {
    if px < MIN_RENDER_SIDE {
        return Err(Error::invalid("px", format!("{px} < {MIN_RENDER_SIDE}")));
    }
    let tess = pattern.tessellation();
    let (period, cols_per_period) = tess.period();
    let (board_w, board_h) = pattern.board_size();
    let period_px = ((px as f64 / (board_w / period)).floor() as usize).max(1);
    let scale = period_px as f64 / period;
    let width = px;
    let height = ((board_h * scale - 1e-9).ceil() as usize).max(1);
    let square = tess.kind == ShapeKind::Square;
    let locator = pattern.block.locator();

    let mut keys = Vec::with_capacity(width * height);
    let mut tiles = Vec::with_capacity(width * height);
    for y in 0..height {
        let (v, row_shift) = if square {
            (((y % period_px) as f64 + 0.5) / scale, (y / period_px) as i64)
        } else {
            ((y as f64 + 0.5) / scale, 0)
        };
        for x in 0..width {
            let u = ((x % period_px) as f64 + 0.5) / scale;
            let col_shift = (x / period_px) as i64 * cols_per_period;
            let p = Point::new(u, v);
            let (r, c) = tess.locate(p);
            let local = p - tess.center(r, c);
            let (row, col) = (r + row_shift, c + col_shift);
            let rotation = tess.base_rotation(r, c) + pattern.tile_rotation(row, col);
            keys.push(locator.key(local.rotated(-rotation)));
            tiles.push((row, col));
        }
    }
    Ok(RegionMap {
        width,
        height,
        keys,
        tiles,
        period_px,
    })
}

/// Greedy seeded coloring: regions in key order each draw a palette color
/// not used by an already-colored neighbour, or any color when none is left.
pub fn assign_colors(map: &RegionMap, n_colors: usize, seed: u64) -> BTreeMap<u64, usize> {
    let mut rng = seed::rng(seed::derive(seed, COLOR_STREAM));
    let mut assignment: BTreeMap<u64, usize> = BTreeMap::new();
    for (key, neighbours) in map.adjacency() {
        let used: BTreeSet<usize> = neighbours.iter().filter_map(|n| assignment.get(n).copied()).collect();
        let free: Vec<usize> = (0..n_colors).filter(|c| !used.contains(c)).collect();
        let pick = if free.is_empty() {
            rng.random_range(0..n_colors)
        } else {
            free[rng.random_range(0..free.len())]
        };
        assignment.insert(key, pick);
    }
    assignment
}

/// Renders with flat fills: every pixel is exactly one palette color.
pub fn render_pattern(pattern: &Pattern, palette: &[RgbColor], px: usize) -> Result<Raster> {
    if palette.is_empty() {
        return Err(Error::EmptyPalette);
    }
    let map = region_map(pattern, px)?;
    let colors = assign_colors(&map, palette.len(), pattern.seed);
    let pixels = map.keys.iter().map(|k| palette[colors[k]]).collect();
    Raster::new(map.width, map.height, pixels)
}
