use anyhow::{bail, Result};
use clap::Args;
use craftgen_core::ikat::{run_ikat_pipeline, Motif, PrimitivePalette, DEFAULT_GRID, DEFAULT_THRESHOLD};
use serde::{Deserialize, Serialize};
use std::path::PathBuf;

use super::required;
use crate::config::{self, Common, Options};
use crate::io::{encode_png, read_image, Outputs};

#[derive(Debug, Clone, Default, Args, Serialize, Deserialize)]
#[serde(default)]
pub struct IkatArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub common: Common,
    /// Black line motif image
    #[arg(long)]
    pub motif: Option<PathBuf>,
    /// Photograph whose color statistics are transferred
    #[arg(long)]
    pub inspiration: Option<PathBuf>,
    /// Number of designs; design i uses seed + i [default: 1]
    #[arg(long)]
    pub count: Option<usize>,
    /// Grid side n of the n x n output [default: 128]
    #[arg(long)]
    pub grid: Option<usize>,
    /// Pixels per grid cell in the PNG preview [default: 4]
    #[arg(long)]
    pub cell_px: Option<usize>,
    /// Motif luminance at or above which pixels are colorable [default: 0.5]
    #[arg(long)]
    pub threshold: Option<f64>,
}

impl Options for IkatArgs {
    fn common(&self) -> &Common {
        &self.common
    }
    fn common_mut(&mut self) -> &mut Common {
        &mut self.common
    }
}

pub fn run(args: IkatArgs) -> Result<()> {
    let mut opts = config::resolve(args)?;
    let motif_path = required(&opts.motif, "motif")?;
    let inspiration_path = required(&opts.inspiration, "inspiration")?;
    let count = opts.count.unwrap_or(1);
    if count == 0 {
        bail!("--count must be at least 1");
    }
    let n = opts.grid.unwrap_or(DEFAULT_GRID);
    let cell_px = opts.cell_px.unwrap_or(4).max(1);
    let motif = Motif::from_luma(&read_image(motif_path)?, opts.threshold.unwrap_or(DEFAULT_THRESHOLD))?;
    let inspiration = read_image(inspiration_path)?;
    let palette = PrimitivePalette::default();
    let seed = opts.common.seed();
    opts.count = Some(count);
    opts.grid = Some(n);
    opts.cell_px = Some(cell_px);
    opts.threshold = Some(motif.threshold());

    let echo = config::echo(&opts)?;
    println!("config: {}", echo.replace('\n', " "));
    let mut out = Outputs::new(opts.common.out_dir());
    for i in 0..count as u64 {
        let s = seed.wrapping_add(i);
        let result = run_ikat_pipeline(&motif, &inspiration, &palette, s, n)?;
        println!("ikat seed {s}: {n}x{n} grid, {} out-of-gamut pixels clipped", result.clipped);
        out.add(format!("ikat_{s}.csv"), result.grid.to_csv());
        out.add(format!("ikat_{s}.png"), encode_png(&result.grid.render(cell_px))?);
    }
    out.add("run_config.json", echo);
    for path in out.commit()? {
        println!("wrote {}", path.display());
    }
    Ok(())
}
