//! Color spaces, color difference, per-channel statistics and statistical
//! color transfer.
//!
//! Every conversion assumes gamma-encoded sRGB with a D65 white point.

mod convert;
mod delta_e;
mod raster;
mod transfer;

pub use convert::{hsl_lightness, lab_to_rgb, lab_to_rgb_checked, rgb_to_hsv, rgb_to_lab};
pub use delta_e::delta_e_ciede2000;
pub use raster::Raster;
pub use transfer::{channel_stats, reinhard_transfer, reinhard_transfer_counted, ChannelStats};

use serde::{Deserialize, Serialize};

/// Gamma-encoded sRGB color, each channel in `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct RgbColor {
    pub r: f64,
    pub g: f64,
    pub b: f64,
}

impl RgbColor {
    pub const BLACK: RgbColor = RgbColor::new(0.0, 0.0, 0.0);
    pub const WHITE: RgbColor = RgbColor::new(1.0, 1.0, 1.0);
    pub const RED: RgbColor = RgbColor::new(1.0, 0.0, 0.0);
    pub const BLUE: RgbColor = RgbColor::new(0.0, 0.0, 1.0);
    pub const YELLOW: RgbColor = RgbColor::new(1.0, 1.0, 0.0);

    pub const fn new(r: f64, g: f64, b: f64) -> Self {
        RgbColor { r, g, b }
    }

    pub fn from_u8(r: u8, g: u8, b: u8) -> Self {
        RgbColor::new(
            f64::from(r) / 255.0,
            f64::from(g) / 255.0,
            f64::from(b) / 255.0,
        )
    }

    /// Rounds each channel to the nearest 8-bit level (after clamping).
    pub fn to_u8(self) -> [u8; 3] {
        let q = |v: f64| (v.clamp(0.0, 1.0) * 255.0).round() as u8;
        [q(self.r), q(self.g), q(self.b)]
    }

    /// The color snapped onto the 8-bit lattice.
    pub fn quantized(self) -> Self {
        let [r, g, b] = self.to_u8();
        RgbColor::from_u8(r, g, b)
    }

    pub fn clamped(self) -> Self {
        RgbColor::new(
            self.r.clamp(0.0, 1.0),
            self.g.clamp(0.0, 1.0),
            self.b.clamp(0.0, 1.0),
        )
    }

    pub fn is_in_gamut(self) -> bool {
        [self.r, self.g, self.b]
            .iter()
            .all(|v| (0.0..=1.0).contains(v))
    }

    pub fn to_array(self) -> [f64; 3] {
        [self.r, self.g, self.b]
    }

    pub fn from_array([r, g, b]: [f64; 3]) -> Self {
        RgbColor::new(r, g, b)
    }

    /// `#rrggbb`, lowercase.
    pub fn to_hex(self) -> String {
        let [r, g, b] = self.to_u8();
        format!("#{r:02x}{g:02x}{b:02x}")
    }

    pub fn from_hex(s: &str) -> crate::Result<Self> {
        let digits = s.strip_prefix('#').unwrap_or(s);
        if digits.len() != 6 || !digits.is_ascii() {
            return Err(crate::Error::Parse(format!("bad hex color `{s}`")));
        }
        let channel = |i: usize| {
            u8::from_str_radix(&digits[i..i + 2], 16)
                .map_err(|_| crate::Error::Parse(format!("bad hex color `{s}`")))
        };
        Ok(RgbColor::from_u8(channel(0)?, channel(2)?, channel(4)?))
    }

    /// Total order on the bit patterns of the channels, used for tie-breaks
    /// and as a hashable identity.
    pub fn key(self) -> [u64; 3] {
        [self.r.to_bits(), self.g.to_bits(), self.b.to_bits()]
    }

    /// Lexicographic comparison on `(r, g, b)`.
    pub fn lex_cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.r
            .total_cmp(&other.r)
            .then(self.g.total_cmp(&other.g))
            .then(self.b.total_cmp(&other.b))
    }
}

/// CIELAB color. `l` in `[0, 100]`, `a`/`b` nominally in `[-128, 127]`.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct LabColor {
    pub l: f64,
    pub a: f64,
    pub b: f64,
}

impl LabColor {
    pub const fn new(l: f64, a: f64, b: f64) -> Self {
        LabColor { l, a, b }
    }

    pub fn to_array(self) -> [f64; 3] {
        [self.l, self.a, self.b]
    }

    pub fn from_array([l, a, b]: [f64; 3]) -> Self {
        LabColor::new(l, a, b)
    }
}

/// Hexcone HSV. `h` in degrees `[0, 360)`, `s` and `v` in `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct HsvColor {
    pub h: f64,
    pub s: f64,
    pub v: f64,
}

impl HsvColor {
    /// Builds an HSV color, wrapping the hue into `[0, 360)`.
    pub fn new(h: f64, s: f64, v: f64) -> Self {
        HsvColor {
            h: wrap_hue(h),
            s,
            v,
        }
    }
}

/// Wraps an angle in degrees into `[0, 360)`.
pub fn wrap_hue(h: f64) -> f64 {
    let w = h.rem_euclid(360.0);
    // rem_euclid can return exactly 360.0 for tiny negative inputs
    if w >= 360.0 {
        0.0
    } else {
        w
    }
}

/// Smallest angle between two hues, in `[0, 180]`.
pub fn hue_distance(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(360.0);
    d.min(360.0 - d)
}
