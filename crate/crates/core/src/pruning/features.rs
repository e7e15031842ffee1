//! The five aesthetic feature families computed on flat-fill renders:
//! color area shares, darkness of the two dominant colors, dullness, color
//! harmony type, and global contrast between adjacent colors.

use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::color::{hsl_lightness, hue_distance, rgb_to_hsv, rgb_to_lab, Raster, RgbColor};
use crate::{Error, Result};

/// Number of area-fraction slots in a feature vector.
pub const TOP_COLORS: usize = 10;
/// Length of [`FeatureVector::to_vec`].
pub const FEATURE_DIM: usize = TOP_COLORS + 2 + 1 + Harmony::ALL.len() + 1;

/// Every threshold used by the feature rules.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AestheticRules {
    /// More distinct colors than this means the image is not a flat render.
    pub max_flat_colors: usize,
    /// HSL lightness below which a color is dark.
    pub dark_lightness: f64,
    /// Relaxed lightness cut for blues, which read darker.
    pub dark_lightness_blue: f64,
    pub blue_hue_range: (f64, f64),
    /// Colors less saturated than this carry no hue for harmony purposes.
    pub achromatic_saturation: f64,
    pub monochromatic_spread: f64,
    pub analogous_spread: f64,
    /// Hues further apart than this start a new cluster.
    pub cluster_gap: f64,
    /// Allowed deviation from the ideal 180/120/90 degree spacings.
    pub harmony_tolerance: f64,
}

impl Default for AestheticRules {
    fn default() -> Self {
        AestheticRules {
            max_flat_colors: 32,
            dark_lightness: 0.35,
            dark_lightness_blue: 0.45,
            blue_hue_range: (200.0, 280.0),
            achromatic_saturation: 0.15,
            monochromatic_spread: 15.0,
            analogous_spread: 40.0,
            cluster_gap: 30.0,
            harmony_tolerance: 20.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Harmony {
    Monochromatic,
    Analogous,
    Complementary,
    Triadic,
    Tetradic,
    None,
}

impl Harmony {
    pub const ALL: [Harmony; 6] = [
        Harmony::Monochromatic,
        Harmony::Analogous,
        Harmony::Complementary,
        Harmony::Triadic,
        Harmony::Tetradic,
        Harmony::None,
    ];

    pub fn one_hot(self) -> [f64; 6] {
        let mut v = [0.0; 6];
        v[Harmony::ALL.iter().position(|&h| h == self).unwrap()] = 1.0;
        v
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FeatureVector {
    /// Area shares of the ten largest colors, descending, zero-padded.
    pub area_fractions: [f64; TOP_COLORS],
    /// Darkness of the largest and second-largest color.
    pub dark_flags: [bool; 2],
    pub dullness: f64,
    pub harmony: Harmony,
    /// Mean absolute CIELAB lightness difference between adjacent colors.
    pub global_contrast: f64,
}

impl FeatureVector {
    /// Numeric encoding: fractions, dark flags, dullness, harmony one-hot,
    /// contrast scaled to `[0, 1]`.
    pub fn to_vec(&self) -> Vec<f64> {
        let mut v = Vec::with_capacity(FEATURE_DIM);
        v.extend_from_slice(&self.area_fractions);
        v.extend(self.dark_flags.iter().map(|&d| if d { 1.0 } else { 0.0 }));
        v.push(self.dullness);
        v.extend_from_slice(&self.harmony.one_hot());
        v.push(self.global_contrast / 100.0);
        v
    }
}

/// Exact pixel count per distinct color, largest first (ties in RGB order).
pub fn color_counts(img: &Raster, max_colors: usize) -> Result<Vec<(RgbColor, usize)>> {
    img.ensure_non_empty()?;
    let mut counts: HashMap<[u64; 3], (RgbColor, usize)> = HashMap::new();
    for &c in img.pixels() {
        counts.entry(c.key()).or_insert((c, 0)).1 += 1;
        if counts.len() > max_colors {
            let distinct = img.pixels().iter().map(|c| c.key()).collect::<BTreeSet<_>>().len();
            return Err(Error::NotFlatFill(distinct));
        }
    }
    let mut out: Vec<_> = counts.into_values().collect();
    out.sort_by(|a, b| b.1.cmp(&a.1).then(a.0.lex_cmp(&b.0)));
    Ok(out)
}

/// Share of the image covered by each distinct color, largest first.
pub fn area_fractions(img: &Raster) -> Result<Vec<(RgbColor, f64)>> {
    area_fractions_with(img, &AestheticRules::default())
}

pub fn area_fractions_with(img: &Raster, rules: &AestheticRules) -> Result<Vec<(RgbColor, f64)>> {
    let total = img.pixels().len() as f64;
    Ok(color_counts(img, rules.max_flat_colors)?
        .into_iter()
        .map(|(c, n)| (c, n as f64 / total))
        .collect())
}

pub fn darkness_class(c: RgbColor) -> bool {
    darkness_class_with(c, &AestheticRules::default())
}

/// Dark when HSL lightness is under the cut, using the relaxed cut for
/// chromatic colors in the blue hue range.
pub fn darkness_class_with(c: RgbColor, rules: &AestheticRules) -> bool {
    let hsv = rgb_to_hsv(c);
    let (lo, hi) = rules.blue_hue_range;
    let cut = if hsv.s > 0.0 && hsv.h >= lo && hsv.h <= hi {
        rules.dark_lightness_blue
    } else {
        rules.dark_lightness
    };
    hsl_lightness(c) < cut
}

/// Area-weighted mean of `1 - s * v`.
pub fn dullness_score(colors: &[(RgbColor, f64)]) -> Result<f64> {
    if colors.is_empty() {
        return Err(Error::invalid("colors", "dullness of an empty color set"));
    }
    let total: f64 = colors.iter().map(|c| c.1).sum();
    if !(total > 0.0) {
        return Err(Error::invalid("colors", "area fractions sum to zero"));
    }
    let weighted: f64 = colors
        .iter()
        .map(|&(c, f)| {
            let hsv = rgb_to_hsv(c);
            f * (1.0 - hsv.s * hsv.v)
        })
        .sum();
    Ok((weighted / total).clamp(0.0, 1.0))
}

pub fn harmony_type(colors: &[(RgbColor, f64)]) -> Harmony {
    harmony_type_with(colors, &AestheticRules::default())
}

/// Classifies the hue layout of the chromatic colors. Tight spreads are
/// monochromatic or analogous; otherwise hues are clustered on the wheel and
/// the cluster centres are matched against the 180/120/90 degree schemes.
pub fn harmony_type_with(colors: &[(RgbColor, f64)], rules: &AestheticRules) -> Harmony {
    let mut hues: Vec<f64> = colors
        .iter()
        .map(|&(c, _)| rgb_to_hsv(c))
        .filter(|hsv| hsv.s >= rules.achromatic_saturation)
        .map(|hsv| hsv.h)
        .collect();
    if hues.is_empty() {
        return Harmony::Monochromatic;
    }
    hues.sort_by(f64::total_cmp);

    let spread = hues
        .iter()
        .enumerate()
        .flat_map(|(i, a)| hues[i + 1..].iter().map(move |b| hue_distance(*a, *b)))
        .fold(0.0, f64::max);
    if spread <= rules.monochromatic_spread {
        return Harmony::Monochromatic;
    }
    if spread <= rules.analogous_spread {
        return Harmony::Analogous;
    }

    let Some(centres) = cluster_centres(&hues, rules) else {
        return Harmony::None;
    };
    let k = centres.len();
    let spacings: Vec<f64> = (0..k)
        .map(|i| {
            let next = centres[(i + 1) % k];
            (next - centres[i]).rem_euclid(360.0)
        })
        .collect();
    let near = |x: f64, ideal: f64| (x - ideal).abs() <= rules.harmony_tolerance;
    match k {
        2 if near(hue_distance(centres[0], centres[1]), 180.0) => Harmony::Complementary,
        3 if spacings.iter().all(|&s| near(s, 120.0)) => Harmony::Triadic,
        4 if spacings.iter().all(|&s| near(s, 90.0)) => Harmony::Tetradic,
        _ => Harmony::None,
    }
}

/// Splits sorted hues at gaps wider than `cluster_gap` and returns each
/// cluster's mean hue in ascending wheel order. `None` when the hues form a
/// single ring or a cluster is wider than the analogous spread.
fn cluster_centres(sorted: &[f64], rules: &AestheticRules) -> Option<Vec<f64>> {
    let m = sorted.len();
    let gap_after = |i: usize| {
        if i + 1 < m {
            sorted[i + 1] - sorted[i]
        } else {
            sorted[0] + 360.0 - sorted[m - 1]
        }
    };
    let cuts: Vec<usize> = (0..m).filter(|&i| gap_after(i) > rules.cluster_gap).collect();
    if cuts.is_empty() {
        return None;
    }
    let mut centres = Vec::with_capacity(cuts.len());
    for (ci, &cut) in cuts.iter().enumerate() {
        // cluster runs from just after this cut to the next cut, wrapping
        let end = cuts[(ci + 1) % cuts.len()];
        let start = (cut + 1) % m;
        let mut members = Vec::new();
        let mut i = start;
        loop {
            members.push(sorted[i]);
            if i == end {
                break;
            }
            i = (i + 1) % m;
        }
        let base = members[0];
        let offsets: Vec<f64> = members.iter().map(|h| (h - base).rem_euclid(360.0)).collect();
        if offsets.iter().fold(0.0f64, |a, &b| a.max(b)) > rules.analogous_spread {
            return None;
        }
        let mean = offsets.iter().sum::<f64>() / offsets.len() as f64;
        centres.push((base + mean).rem_euclid(360.0));
    }
    centres.sort_by(f64::total_cmp);
    Some(centres)
}

/// Mean `|dL|` (CIELAB) over the distinct color pairs that touch through a
/// 4-neighbourhood. Zero for single-color images.
pub fn global_contrast(img: &Raster) -> Result<f64> {
    img.ensure_non_empty()?;
    let (w, h) = img.dimensions();
    let mut pairs: BTreeSet<([u64; 3], [u64; 3])> = BTreeSet::new();
    let mut lightness: HashMap<[u64; 3], f64> = HashMap::new();
    let mut note = |a: RgbColor, b: RgbColor| {
        let (ka, kb) = (a.key(), b.key());
        if ka != kb {
            pairs.insert(if ka < kb { (ka, kb) } else { (kb, ka) });
            lightness.entry(ka).or_insert_with(|| rgb_to_lab(a).l);
            lightness.entry(kb).or_insert_with(|| rgb_to_lab(b).l);
        }
    };
    for y in 0..h {
        for x in 0..w {
            let c = img.get(x, y);
            if x + 1 < w {
                note(c, img.get(x + 1, y));
            }
            if y + 1 < h {
                note(c, img.get(x, y + 1));
            }
        }
    }
    if pairs.is_empty() {
        return Ok(0.0);
    }
    let total: f64 = pairs.iter().map(|(a, b)| (lightness[a] - lightness[b]).abs()).sum();
    Ok((total / pairs.len() as f64).clamp(0.0, 100.0))
}

pub fn extract_features(img: &Raster) -> Result<FeatureVector> {
    extract_features_with(img, &AestheticRules::default())
}

pub fn extract_features_with(img: &Raster, rules: &AestheticRules) -> Result<FeatureVector> {
    let colors = area_fractions_with(img, rules)?;
    let mut fractions = [0.0; TOP_COLORS];
    for (slot, (_, f)) in fractions.iter_mut().zip(&colors) {
        *slot = *f;
    }
    let dark = |i: usize| colors.get(i).is_some_and(|(c, _)| darkness_class_with(*c, rules));
    Ok(FeatureVector {
        area_fractions: fractions,
        dark_flags: [dark(0), dark(1)],
        dullness: dullness_score(&colors)?,
        harmony: harmony_type_with(&colors, rules),
        global_contrast: global_contrast(img)?,
    })
}
