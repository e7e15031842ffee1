use anyhow::Result;
use clap::Args;
use craftgen_core::palette::extract_palette;
use serde::{Deserialize, Serialize};
use std::path::PathBuf;

use super::required;
use crate::config::{self, Common, Options};
use crate::io::{read_image, Outputs};

#[derive(Debug, Clone, Default, Args, Serialize, Deserialize)]
#[serde(default)]
pub struct PaletteArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub common: Common,
    /// Inspiration image
    #[arg(long)]
    pub inspiration: Option<PathBuf>,
}

impl Options for PaletteArgs {
    fn common(&self) -> &Common {
        &self.common
    }
    fn common_mut(&mut self) -> &mut Common {
        &mut self.common
    }
}

pub fn run(args: PaletteArgs) -> Result<()> {
    let opts = config::resolve(args)?;
    let img = read_image(required(&opts.inspiration, "inspiration")?)?;
    let palette = extract_palette(&img)?;
    for e in &palette.entries {
        println!("{} {:.4}", e.color.to_hex(), e.area_fraction);
    }
    println!("merge threshold {}", palette.merge_threshold);
    let mut out = Outputs::new(opts.common.out_dir());
    out.add("palette.json", palette.to_json()?);
    out.add("run_config.json", config::echo(&opts)?);
    for path in out.commit()? {
        println!("wrote {}", path.display());
    }
    Ok(())
}
