use std::sync::LazyLock;

use super::{wrap_hue, HsvColor, LabColor, RgbColor};

// Linear sRGB -> XYZ, derived from the Rec. 709 primaries and the D65
// chromaticity (0.3127, 0.3290) at full precision.
const RGB_TO_XYZ: [[f64; 3]; 3] = [
    [0.412_390_799_265_959_5, 0.357_584_339_383_878_0, 0.180_480_788_401_834_3],
    [0.212_639_005_871_510_4, 0.715_168_678_767_755_9, 0.072_192_315_360_733_7],
    [0.019_330_818_715_591_85, 0.119_194_779_794_625_99, 0.950_532_152_249_660_6],
];

const WHITE_X: f64 = 0.3127 / 0.3290;
const WHITE_Z: f64 = (1.0 - 0.3127 - 0.3290) / 0.3290;

// CIE constants in their exact rational form.
const EPSILON: f64 = 216.0 / 24389.0;
const KAPPA: f64 = 24389.0 / 27.0;

static XYZ_TO_RGB: LazyLock<[[f64; 3]; 3]> = LazyLock::new(|| invert3(&RGB_TO_XYZ));

fn invert3(m: &[[f64; 3]; 3]) -> [[f64; 3]; 3] {
    let cof = |r0: usize, r1: usize, c0: usize, c1: usize| m[r0][c0] * m[r1][c1] - m[r0][c1] * m[r1][c0];
    let c00 = cof(1, 2, 1, 2);
    let c01 = -cof(1, 2, 0, 2);
    let c02 = cof(1, 2, 0, 1);
    let det = m[0][0] * c00 + m[0][1] * c01 + m[0][2] * c02;
    let inv_det = 1.0 / det;
    [
        [c00 * inv_det, -cof(0, 2, 1, 2) * inv_det, cof(0, 1, 1, 2) * inv_det],
        [c01 * inv_det, cof(0, 2, 0, 2) * inv_det, -cof(0, 1, 0, 2) * inv_det],
        [c02 * inv_det, -cof(0, 2, 0, 1) * inv_det, cof(0, 1, 0, 1) * inv_det],
    ]
}

fn mul(m: &[[f64; 3]; 3], v: [f64; 3]) -> [f64; 3] {
    [
        m[0][0] * v[0] + m[0][1] * v[1] + m[0][2] * v[2],
        m[1][0] * v[0] + m[1][1] * v[1] + m[1][2] * v[2],
        m[2][0] * v[0] + m[2][1] * v[1] + m[2][2] * v[2],
    ]
}

fn decode_gamma(c: f64) -> f64 {
    if c <= 0.04045 {
        c / 12.92
    } else {
        ((c + 0.055) / 1.055).powf(2.4)
    }
}

fn encode_gamma(c: f64) -> f64 {
    if c <= 0.003_130_8 {
        c * 12.92
    } else {
        1.055 * c.powf(1.0 / 2.4) - 0.055
    }
}

fn lab_f(t: f64) -> f64 {
    if t > EPSILON {
        t.cbrt()
    } else {
        (KAPPA * t + 16.0) / 116.0
    }
}

fn lab_f_inv(f: f64) -> f64 {
    let f3 = f * f * f;
    if f3 > EPSILON {
        f3
    } else {
        (116.0 * f - 16.0) / KAPPA
    }
}

/// sRGB -> XYZ (D65) -> CIELAB.
pub fn rgb_to_lab(c: RgbColor) -> LabColor {
    let lin = [decode_gamma(c.r), decode_gamma(c.g), decode_gamma(c.b)];
    let [x, y, z] = mul(&RGB_TO_XYZ, lin);
    let fx = lab_f(x / WHITE_X);
    let fy = lab_f(y);
    let fz = lab_f(z / WHITE_Z);
    LabColor::new(116.0 * fy - 16.0, 500.0 * (fx - fy), 200.0 * (fy - fz))
}

/// CIELAB -> sRGB with per-channel clamping of out-of-gamut results.
pub fn lab_to_rgb(c: LabColor) -> RgbColor {
    lab_to_rgb_checked(c).0
}

/// Like [`lab_to_rgb`], also reporting whether any channel had to be clamped.
pub fn lab_to_rgb_checked(c: LabColor) -> (RgbColor, bool) {
    let fy = (c.l + 16.0) / 116.0;
    let fx = fy + c.a / 500.0;
    let fz = fy - c.b / 200.0;
    // L <= 8 lies on the linear segment; invert it directly for exactness.
    let y = if c.l > KAPPA * EPSILON {
        fy * fy * fy
    } else {
        c.l / KAPPA
    };
    let xyz = [lab_f_inv(fx) * WHITE_X, y, lab_f_inv(fz) * WHITE_Z];
    let lin = mul(&XYZ_TO_RGB, xyz);
    let raw = lin.map(|v| encode_gamma(v.max(0.0)));
    // tolerate rounding noise at the gamut boundary
    const SLACK: f64 = 1e-9;
    let clipped = lin.iter().any(|&v| v < -SLACK) || raw.iter().any(|&v| v > 1.0 + SLACK);
    (RgbColor::from_array(raw.map(|v| v.clamp(0.0, 1.0))), clipped)
}

/// Hexcone HSV. Achromatic inputs get `s = 0` and `h = 0`.
pub fn rgb_to_hsv(c: RgbColor) -> HsvColor {
    let max = c.r.max(c.g).max(c.b);
    let min = c.r.min(c.g).min(c.b);
    let delta = max - min;
    if delta <= 0.0 || max <= 0.0 {
        return HsvColor { h: 0.0, s: 0.0, v: max };
    }
    let sector = if max == c.r {
        ((c.g - c.b) / delta).rem_euclid(6.0)
    } else if max == c.g {
        (c.b - c.r) / delta + 2.0
    } else {
        (c.r - c.g) / delta + 4.0
    };
    HsvColor {
        h: wrap_hue(60.0 * sector),
        s: delta / max,
        v: max,
    }
}

/// HSL lightness, `(max + min) / 2`.
pub fn hsl_lightness(c: RgbColor) -> f64 {
    let max = c.r.max(c.g).max(c.b);
    let min = c.r.min(c.g).min(c.b);
    (max + min) / 2.0
}
