use serde::{Deserialize, Serialize};

use super::{lab_to_rgb_checked, rgb_to_lab, LabColor, Raster};
use crate::Result;

/// Source channels whose standard deviation falls below this are treated as
/// constant and mapped straight to the target mean.
const DEGENERATE_STD: f64 = 1e-9;

/// Per-channel mean and population standard deviation in CIELAB.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChannelStats {
    pub mean: [f64; 3],
    pub std: [f64; 3],
}

/// Mean and population standard deviation of each LAB channel over all pixels.
pub fn channel_stats(img: &Raster) -> Result<ChannelStats> {
    img.ensure_non_empty()?;
    let labs: Vec<[f64; 3]> = img.pixels().iter().map(|&c| rgb_to_lab(c).to_array()).collect();
    Ok(stats_of(&labs))
}

fn stats_of(labs: &[[f64; 3]]) -> ChannelStats {
    let n = labs.len() as f64;
    // shifting by the first sample keeps a constant channel exactly constant
    let origin = labs[0];
    let mut mean = [0.0; 3];
    for lab in labs {
        for k in 0..3 {
            mean[k] += lab[k] - origin[k];
        }
    }
    for k in 0..3 {
        mean[k] = origin[k] + mean[k] / n;
    }
    let mut var = [0.0; 3];
    for lab in labs {
        for k in 0..3 {
            let d = lab[k] - mean[k];
            var[k] += d * d;
        }
    }
    ChannelStats {
        mean,
        std: var.map(|v| (v / n).sqrt()),
    }
}

/// Imposes `target` LAB statistics on `source`, clamping out-of-gamut pixels.
pub fn reinhard_transfer(source: &Raster, target: &ChannelStats) -> Result<Raster> {
    reinhard_transfer_counted(source, target).map(|(img, _)| img)
}

/// [`reinhard_transfer`] that also returns how many pixels needed clamping.
pub fn reinhard_transfer_counted(source: &Raster, target: &ChannelStats) -> Result<(Raster, usize)> {
    source.ensure_non_empty()?;
    let labs: Vec<[f64; 3]> = source.pixels().iter().map(|&c| rgb_to_lab(c).to_array()).collect();
    let src = stats_of(&labs);

    let mut clipped = 0;
    let pixels = labs
        .iter()
        .map(|lab| {
            let mut out = [0.0; 3];
            for k in 0..3 {
                out[k] = if src.std[k] < DEGENERATE_STD {
                    target.mean[k]
                } else {
                    (lab[k] - src.mean[k]) * (target.std[k] / src.std[k]) + target.mean[k]
                };
            }
            let (rgb, clip) = lab_to_rgb_checked(LabColor::from_array(out));
            clipped += usize::from(clip);
            rgb
        })
        .collect();
    let img = Raster::new(source.width(), source.height(), pixels)?;
    Ok((img, clipped))
}
