//! Palette extraction from an inspiration image.
//!
//! Colors are binned, the least prominent are dropped, similar survivors are
//! merged by CIEDE2000 distance into the more prominent member until at most
//! ten remain, and the result is grouped by hue.

use serde::{Deserialize, Serialize};

use crate::color::{delta_e_ciede2000, rgb_to_hsv, rgb_to_lab, Raster, RgbColor};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WeightedColor {
    pub color: RgbColor,
    pub area_fraction: f64,
    pub prominence: f64,
}

impl WeightedColor {
    pub fn new(color: RgbColor, area_fraction: f64) -> Self {
        WeightedColor {
            color,
            area_fraction,
            prominence: prominence_of(color, area_fraction),
        }
    }

    fn with_area(self, area_fraction: f64) -> Self {
        WeightedColor::new(self.color, area_fraction)
    }
}

/// `v * (0.5 + 0.5 * s) * area`: increasing in brightness, saturation and
/// area.
pub fn prominence_of(color: RgbColor, area_fraction: f64) -> f64 {
    let hsv = rgb_to_hsv(color);
    hsv.v * (0.5 + 0.5 * hsv.s) * area_fraction
}

pub fn prominence(c: &WeightedColor) -> f64 {
    prominence_of(c.color, c.area_fraction)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PaletteOptions {
    /// Uniform bins per RGB channel for the initial reduction.
    pub bins: usize,
    /// Colors below this prominence quantile are dropped.
    pub drop_quantile: f64,
    pub initial_threshold: f64,
    pub threshold_step: f64,
    pub max_colors: usize,
    /// Width of a hue group in degrees.
    pub hue_bucket: f64,
}

impl Default for PaletteOptions {
    fn default() -> Self {
        PaletteOptions {
            bins: 12,
            drop_quantile: 0.25,
            initial_threshold: 10.0,
            threshold_step: 2.0,
            max_colors: 10,
            hue_bucket: 30.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PaletteEntry {
    pub color: RgbColor,
    pub area_fraction: f64,
}

/// Up to ten colors, ordered by hue group and then by falling prominence.
#[derive(Debug, Clone, PartialEq)]
pub struct Palette {
    pub entries: Vec<PaletteEntry>,
    /// CIEDE2000 threshold of the last merge pass.
    pub merge_threshold: f64,
}

#[derive(Serialize, Deserialize)]
struct PaletteJson {
    colors: Vec<String>,
    area_fractions: Vec<f64>,
    merge_threshold: f64,
}

impl Palette {
    pub fn colors(&self) -> Vec<RgbColor> {
        self.entries.iter().map(|e| e.color).collect()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// `{"colors": ["#rrggbb", ..], "area_fractions": [..], "merge_threshold": t}`
    pub fn to_json(&self) -> Result<String> {
        let doc = PaletteJson {
            colors: self.entries.iter().map(|e| e.color.to_hex()).collect(),
            area_fractions: self.entries.iter().map(|e| e.area_fraction).collect(),
            merge_threshold: self.merge_threshold,
        };
        Ok(serde_json::to_string_pretty(&doc)?)
    }

    /// Reads a palette document; colors come back on the 8-bit lattice.
    pub fn from_json(text: &str) -> Result<Self> {
        let doc: PaletteJson = serde_json::from_str(text)?;
        if doc.colors.is_empty() || doc.colors.len() != doc.area_fractions.len() {
            return Err(Error::Parse("palette needs one area fraction per color".into()));
        }
        let entries = doc
            .colors
            .iter()
            .zip(&doc.area_fractions)
            .map(|(h, &a)| Ok(PaletteEntry { color: RgbColor::from_hex(h)?, area_fraction: a }))
            .collect::<Result<_>>()?;
        Ok(Palette {
            entries,
            merge_threshold: doc.merge_threshold,
        })
    }
}

/// Uniform per-channel binning. Each occupied bin yields its mean color and
/// its share of the pixels; bins are listed in `(r, g, b)` index order.
pub fn quantize_colors(img: &Raster, bins: usize) -> Result<Vec<WeightedColor>> {
    img.ensure_non_empty()?;
    if bins == 0 {
        return Err(Error::invalid("bins", "must be positive"));
    }
    let index = |v: f64| ((v.clamp(0.0, 1.0) * bins as f64) as usize).min(bins - 1);
    // sums are taken relative to the bin's first pixel so a bin of identical
    // pixels averages back to exactly that color
    type Bin = ([f64; 3], [f64; 3], usize);
    let mut acc: std::collections::BTreeMap<(usize, usize, usize), Bin> = Default::default();
    for c in img.pixels() {
        let v = c.to_array();
        let (origin, sum, count) = acc.entry((index(c.r), index(c.g), index(c.b))).or_insert((v, [0.0; 3], 0));
        for ((s, x), o) in sum.iter_mut().zip(v).zip(*origin) {
            *s += x - o;
        }
        *count += 1;
    }
    let total = img.pixels().len() as f64;
    Ok(acc
        .into_values()
        .map(|(origin, sum, count)| {
            let k = count as f64;
            let mean = [0, 1, 2].map(|i| origin[i] + sum[i] / k);
            WeightedColor::new(RgbColor::from_array(mean), k / total)
        })
        .collect())
}

/// Repeatedly takes the closest pair closer than `threshold` and folds the
/// less prominent member into the more prominent one (area fractions add up).
/// Equal prominence keeps the lexicographically smaller RGB. Survivors keep
/// their input order.
pub fn merge_similar(colors: &[WeightedColor], threshold: f64) -> Result<Vec<WeightedColor>> {
    if colors.is_empty() {
        return Err(Error::invalid("colors", "nothing to merge"));
    }
    if !(threshold > 0.0) {
        return Err(Error::invalid("threshold", format!("{threshold} must be positive")));
    }
    let labs: Vec<_> = colors.iter().map(|c| rgb_to_lab(c.color)).collect();
    let mut pairs = Vec::new();
    for i in 0..colors.len() {
        for j in i + 1..colors.len() {
            let d = delta_e_ciede2000(labs[i], labs[j]);
            if d < threshold {
                pairs.push((d, i, j));
            }
        }
    }
    // distances never change (survivors keep their color), so the closest
    // live pair is always the next live entry in this order
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)).then(a.2.cmp(&b.2)));

    let mut live: Vec<Option<WeightedColor>> = colors.iter().map(|&c| Some(c)).collect();
    for (_, i, j) in pairs {
        let (Some(a), Some(b)) = (live[i], live[j]) else {
            continue;
        };
        let keep_i = match a.prominence.total_cmp(&b.prominence) {
            std::cmp::Ordering::Greater => true,
            std::cmp::Ordering::Less => false,
            std::cmp::Ordering::Equal => a.color.lex_cmp(&b.color).is_le(),
        };
        let (win, lose) = if keep_i { (i, j) } else { (j, i) };
        let merged = live[win].unwrap().with_area(a.area_fraction + b.area_fraction);
        live[win] = Some(merged);
        live[lose] = None;
    }
    Ok(live.into_iter().flatten().collect())
}

/// Drops colors whose prominence is below the nearest-rank `quantile` of all
/// prominences, then renormalizes the survivors' areas to sum to one.
pub fn drop_low_prominence(colors: &[WeightedColor], quantile: f64) -> Vec<WeightedColor> {
    if colors.is_empty() {
        return Vec::new();
    }
    let mut sorted: Vec<f64> = colors.iter().map(|c| c.prominence).collect();
    sorted.sort_by(f64::total_cmp);
    let rank = (quantile * sorted.len() as f64).ceil() as usize;
    let cutoff = if rank == 0 { f64::NEG_INFINITY } else { sorted[rank - 1] };
    let kept: Vec<WeightedColor> = colors.iter().copied().filter(|c| c.prominence >= cutoff).collect();
    let total: f64 = kept.iter().map(|c| c.area_fraction).sum();
    kept.into_iter().map(|c| c.with_area(c.area_fraction / total)).collect()
}

pub fn hue_group(color: RgbColor, bucket: f64) -> usize {
    (rgb_to_hsv(color).h / bucket).floor() as usize
}

pub fn extract_palette(img: &Raster) -> Result<Palette> {
    extract_palette_with(img, &PaletteOptions::default())
}

pub fn extract_palette_with(img: &Raster, opts: &PaletteOptions) -> Result<Palette> {
    if opts.max_colors == 0 || !(opts.threshold_step > 0.0) || !(opts.hue_bucket > 0.0) {
        return Err(Error::invalid("palette options", format!("{opts:?}")));
    }
    let binned = quantize_colors(img, opts.bins)?;
    let mut colors = drop_low_prominence(&binned, opts.drop_quantile);
    let mut threshold = opts.initial_threshold;
    colors = merge_similar(&colors, threshold)?;
    while colors.len() > opts.max_colors {
        threshold += opts.threshold_step;
        colors = merge_similar(&colors, threshold)?;
    }
    colors.sort_by(|a, b| {
        hue_group(a.color, opts.hue_bucket)
            .cmp(&hue_group(b.color, opts.hue_bucket))
            .then(b.prominence.total_cmp(&a.prominence))
            .then(a.color.lex_cmp(&b.color))
    });
    Ok(Palette {
        entries: colors
            .iter()
            .map(|c| PaletteEntry { color: c.color, area_fraction: c.area_fraction })
            .collect(),
        merge_threshold: threshold,
    })
}
