use serde::{Deserialize, Serialize};

use super::render::render_pattern;
use super::tiling::Pattern;
use crate::color::{Raster, RgbColor};
use crate::{Error, Result};

pub const DESIGN_FORMAT_VERSION: u32 = 1;
const DESIGN_FORMAT: &str = "craftgen-design";

/// Self-contained, replayable description of a rendered Block Print design.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DesignDocument {
    pub format: String,
    pub version: u32,
    pub pattern: Pattern,
    /// Palette as `#rrggbb` strings, in assignment order.
    pub palette: Vec<String>,
    pub px: usize,
}

impl DesignDocument {
    pub fn new(pattern: Pattern, palette: &[RgbColor], px: usize) -> Self {
        DesignDocument {
            format: DESIGN_FORMAT.to_string(),
            version: DESIGN_FORMAT_VERSION,
            pattern,
            palette: palette.iter().map(|c| c.to_hex()).collect(),
            px,
        }
    }

    pub fn palette_colors(&self) -> Result<Vec<RgbColor>> {
        self.palette.iter().map(|h| RgbColor::from_hex(h)).collect()
    }

    pub fn render(&self) -> Result<Raster> {
        render_pattern(&self.pattern, &self.palette_colors()?, self.px)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: DesignDocument = serde_json::from_str(text)?;
        if doc.format != DESIGN_FORMAT || doc.version != DESIGN_FORMAT_VERSION {
            return Err(Error::Parse(format!(
                "unsupported design document {} v{}",
                doc.format, doc.version
            )));
        }
        doc.pattern.validate()?;
        Ok(doc)
    }
}
