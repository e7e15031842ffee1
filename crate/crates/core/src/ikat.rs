//! Ikat pipeline: primitive colorization of a black motif, global color
//! transfer from an inspiration image, and quantization onto a square grid
//! whose cells are flat dye colors.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::color::{channel_stats, reinhard_transfer_counted, Raster, RgbColor};
use crate::label::label_4;
use crate::{seed, Error, Result};

pub const DEFAULT_THRESHOLD: f64 = 0.5;
pub const DEFAULT_GRID: usize = 128;

const GRAY_TOLERANCE: f64 = 1.0 / 255.0;

/// Grayscale line drawing. Pixels at or above the threshold are background
/// (colorable); darker pixels are motif lines.
#[derive(Debug, Clone, PartialEq)]
pub struct Motif {
    raster: Raster,
    threshold: f64,
}

impl Motif {
    pub fn new(raster: Raster) -> Result<Self> {
        Motif::with_threshold(raster, DEFAULT_THRESHOLD)
    }

    pub fn with_threshold(raster: Raster, threshold: f64) -> Result<Self> {
        if !(threshold > 0.0 && threshold < 1.0) {
            return Err(Error::invalid("threshold", format!("{threshold} not in (0, 1)")));
        }
        for (i, c) in raster.pixels().iter().enumerate() {
            let spread = c.r.max(c.g).max(c.b) - c.r.min(c.g).min(c.b);
            if spread > GRAY_TOLERANCE {
                return Err(Error::NotGrayscale {
                    x: i % raster.width(),
                    y: i / raster.width(),
                });
            }
        }
        Ok(Motif { raster, threshold })
    }

    /// Converts an arbitrary raster to a motif by taking the channel mean.
    pub fn from_luma(raster: &Raster, threshold: f64) -> Result<Self> {
        let gray = raster.map(|c| {
            let v = (c.r + c.g + c.b) / 3.0;
            RgbColor::new(v, v, v)
        });
        Motif::with_threshold(gray, threshold)
    }

    pub fn raster(&self) -> &Raster {
        &self.raster
    }

    pub fn threshold(&self) -> f64 {
        self.threshold
    }

    pub fn dimensions(&self) -> (usize, usize) {
        self.raster.dimensions()
    }

    pub fn is_light(&self, index: usize) -> bool {
        let c = self.raster.pixels()[index];
        (c.r + c.g + c.b) / 3.0 >= self.threshold
    }
}

/// Small set of flat colors used to seed a motif's regions.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PrimitivePalette {
    colors: Vec<RgbColor>,
}

impl PrimitivePalette {
    pub fn new(colors: Vec<RgbColor>) -> Result<Self> {
        if colors.is_empty() {
            return Err(Error::EmptyPalette);
        }
        for (i, a) in colors.iter().enumerate() {
            if colors[i + 1..].contains(a) {
                return Err(Error::invalid("palette", format!("duplicate color {}", a.to_hex())));
            }
        }
        Ok(PrimitivePalette { colors })
    }

    pub fn colors(&self) -> &[RgbColor] {
        &self.colors
    }
}

impl Default for PrimitivePalette {
    /// White, black, red, blue, yellow.
    fn default() -> Self {
        PrimitivePalette {
            colors: vec![
                RgbColor::WHITE,
                RgbColor::BLACK,
                RgbColor::RED,
                RgbColor::BLUE,
                RgbColor::YELLOW,
            ],
        }
    }
}

/// First pipeline stage: turns a motif into a colored raster of the same size.
pub trait Colorizer: Send + Sync {
    fn colorize(&self, motif: &Motif, seed: u64) -> Result<Raster>;
}

/// Seeded flood-fill colorizer: every 4-connected background region gets one
/// palette color, motif lines stay black.
#[derive(Debug, Clone, Default)]
pub struct PrimitiveColorizer {
    pub palette: PrimitivePalette,
}

impl PrimitiveColorizer {
    pub fn new(palette: PrimitivePalette) -> Self {
        PrimitiveColorizer { palette }
    }
}

impl Colorizer for PrimitiveColorizer {
    fn colorize(&self, motif: &Motif, seed: u64) -> Result<Raster> {
        primitive_colorize(motif, &self.palette, seed)
    }
}

/// Returns the motif unchanged.
#[derive(Debug, Clone, Copy, Default)]
pub struct IdentityColorizer;

impl Colorizer for IdentityColorizer {
    fn colorize(&self, motif: &Motif, _seed: u64) -> Result<Raster> {
        Ok(motif.raster().clone())
    }
}

pub fn primitive_colorize(motif: &Motif, palette: &PrimitivePalette, seed: u64) -> Result<Raster> {
    let (w, h) = motif.dimensions();
    let regions = label_4(w, h, |i| motif.is_light(i).then_some(()));
    if regions.count == 0 {
        return Err(Error::NoColorableRegions);
    }
    let mut rng = seed::rng(seed);
    let colors = palette.colors();
    let fills: Vec<RgbColor> = (0..regions.count)
        .map(|_| colors[rng.random_range(0..colors.len())])
        .collect();
    let pixels = regions
        .labels
        .iter()
        .map(|l| l.map_or(RgbColor::BLACK, |id| fills[id as usize]))
        .collect();
    Raster::new(w, h, pixels)
}

/// Runs a pluggable colorizer and checks it preserved the motif's dimensions.
pub fn colorize_stage(motif: &Motif, stage: &dyn Colorizer, seed: u64) -> Result<Raster> {
    let out = stage.colorize(motif, seed)?;
    if out.dimensions() != motif.dimensions() {
        return Err(Error::StageDimensionMismatch {
            expected: motif.dimensions(),
            actual: out.dimensions(),
        });
    }
    Ok(out)
}

/// Recolors `primitive` with the LAB statistics of `inspiration`.
pub fn transfer_from_inspiration(primitive: &Raster, inspiration: &Raster) -> Result<Raster> {
    transfer_from_inspiration_counted(primitive, inspiration).map(|(img, _)| img)
}

/// [`transfer_from_inspiration`] plus the number of clamped pixels.
pub fn transfer_from_inspiration_counted(primitive: &Raster, inspiration: &Raster) -> Result<(Raster, usize)> {
    primitive.ensure_non_empty()?;
    let stats = channel_stats(inspiration)?;
    reinhard_transfer_counted(primitive, &stats)
}

/// An `n x n` grid of flat colors, each on the 8-bit lattice.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridDesign {
    n: usize,
    cells: Vec<RgbColor>,
}

impl GridDesign {
    pub fn new(n: usize, cells: Vec<RgbColor>) -> Result<Self> {
        if n == 0 || cells.len() != n * n {
            return Err(Error::invalid("cells", format!("expected {n}x{n} cells, got {}", cells.len())));
        }
        Ok(GridDesign {
            n,
            cells: cells.into_iter().map(RgbColor::quantized).collect(),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn cells(&self) -> &[RgbColor] {
        &self.cells
    }

    pub fn cell(&self, row: usize, col: usize) -> RgbColor {
        self.cells[row * self.n + col]
    }

    /// Draws each cell as a `k x k` block.
    pub fn render(&self, k: usize) -> Raster {
        let k = k.max(1);
        Raster::from_fn(self.n * k, self.n * k, |x, y| self.cell(y / k, x / k))
    }

    /// `row,col,hex_color` header followed by one line per cell, row-major.
    pub fn to_csv(&self) -> String {
        let mut out = String::with_capacity(16 + self.cells.len() * 16);
        out.push_str("row,col,hex_color\n");
        for row in 0..self.n {
            for col in 0..self.n {
                out.push_str(&format!("{row},{col},{}\n", self.cell(row, col).to_hex()));
            }
        }
        out
    }

    pub fn from_csv(text: &str) -> Result<Self> {
        let mut rdr = csv::Reader::from_reader(text.as_bytes());
        let mut entries = Vec::new();
        for rec in rdr.records() {
            let rec = rec?;
            let field = |i: usize| rec.get(i).ok_or_else(|| Error::Parse("short grid row".into()));
            let row: usize = field(0)?.trim().parse().map_err(|_| Error::Parse("bad row index".into()))?;
            let col: usize = field(1)?.trim().parse().map_err(|_| Error::Parse("bad col index".into()))?;
            entries.push((row, col, RgbColor::from_hex(field(2)?.trim())?));
        }
        let n = (entries.len() as f64).sqrt().round() as usize;
        if n * n != entries.len() {
            return Err(Error::Parse(format!("{} cells is not a square grid", entries.len())));
        }
        let mut cells = vec![None; n * n];
        for (row, col, c) in entries {
            if row >= n || col >= n || cells[row * n + col].replace(c).is_some() {
                return Err(Error::Parse(format!("bad or repeated cell ({row}, {col})")));
            }
        }
        GridDesign::new(n, cells.into_iter().map(Option::unwrap).collect())
    }
}

/// Averages `img` onto an `n x n` lattice. Cells are `width / n` by
/// `height / n` pixels; leftover pixels fold into the last row and column.
pub fn grid_quantize(img: &Raster, n: usize) -> Result<GridDesign> {
    if n == 0 {
        return Err(Error::invalid("n", "grid size must be positive"));
    }
    let (w, h) = img.dimensions();
    if w < n || h < n {
        return Err(Error::RasterSmallerThanGrid { width: w, height: h, n });
    }
    let (cw, ch) = (w / n, h / n);
    let mut sums = vec![[0.0f64; 3]; n * n];
    let mut counts = vec![0usize; n * n];
    for y in 0..h {
        let row = (y / ch).min(n - 1);
        for x in 0..w {
            let col = (x / cw).min(n - 1);
            let c = img.get(x, y);
            let s = &mut sums[row * n + col];
            s[0] += c.r;
            s[1] += c.g;
            s[2] += c.b;
            counts[row * n + col] += 1;
        }
    }
    let cells = sums
        .iter()
        .zip(&counts)
        .map(|(s, &k)| {
            let k = k as f64;
            RgbColor::new(s[0] / k, s[1] / k, s[2] / k)
        })
        .collect();
    GridDesign::new(n, cells)
}

#[derive(Debug, Clone, PartialEq)]
pub struct IkatOutput {
    pub grid: GridDesign,
    /// Pixels clamped back into gamut during the color transfer.
    pub clipped: usize,
}

/// Primitive colorization, color transfer, grid quantization.
pub fn run_ikat_pipeline(
    motif: &Motif,
    inspiration: &Raster,
    palette: &PrimitivePalette,
    seed: u64,
    n: usize,
) -> Result<IkatOutput> {
    run_ikat_pipeline_with(motif, inspiration, &PrimitiveColorizer::new(palette.clone()), seed, n)
}

/// [`run_ikat_pipeline`] with a caller-supplied colorization stage.
pub fn run_ikat_pipeline_with(
    motif: &Motif,
    inspiration: &Raster,
    stage: &dyn Colorizer,
    seed: u64,
    n: usize,
) -> Result<IkatOutput> {
    let primitive = colorize_stage(motif, stage, seed)?;
    let (recolored, clipped) = transfer_from_inspiration_counted(&primitive, inspiration)?;
    let grid = grid_quantize(&recolored, n)?;
    Ok(IkatOutput { grid, clipped })
}
