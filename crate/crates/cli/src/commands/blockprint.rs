use std::fmt::Write as _;
use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::{Args, ValueEnum};
use craftgen_core::blockprint::{
    block_divide_with, recursive_divide, tile_pattern, BaseShape, ChordStyle, DesignDocument, RotationPolicy,
    ShapeKind,
};
use craftgen_core::palette::extract_palette;
use craftgen_core::pruning::{extract_features, prune as prune_designs, GbmModel};
use craftgen_core::{seed, Raster};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::required;
use crate::config::{self, Common, Options};
use crate::io::{encode_png, read_image, read_text, Outputs};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Shape {
    Square,
    Triangle,
    Hexagon,
}

impl From<Shape> for ShapeKind {
    fn from(s: Shape) -> Self {
        match s {
            Shape::Square => ShapeKind::Square,
            Shape::Triangle => ShapeKind::Triangle,
            Shape::Hexagon => ShapeKind::Hexagon,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Style {
    /// Chords between points on the block's outer edges
    Block,
    /// Split every region in two, level by level
    Recursive,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Chords {
    Straight,
    Curved,
    Mixed,
}

impl From<Chords> for ChordStyle {
    fn from(c: Chords) -> Self {
        match c {
            Chords::Straight => ChordStyle::Straight,
            Chords::Curved => ChordStyle::Curved,
            Chords::Mixed => ChordStyle::Mixed,
        }
    }
}

#[derive(Debug, Clone, Default, Args, Serialize, Deserialize)]
#[serde(default)]
pub struct BlockprintArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub common: Common,
    /// Image the palette is extracted from
    #[arg(long)]
    pub inspiration: Option<PathBuf>,
    /// Number of designs to generate [default: 10]
    #[arg(long)]
    pub count: Option<usize>,
    /// Block shape [default: square]
    #[arg(long, value_enum)]
    pub shape: Option<Shape>,
    /// Division rule [default: block]
    #[arg(long, value_enum)]
    pub style: Option<Style>,
    /// Chords per block for block division [default: 4]
    #[arg(long)]
    pub chords: Option<usize>,
    /// Chord shapes for block division [default: mixed]
    #[arg(long, value_enum)]
    pub chord_style: Option<Chords>,
    /// Levels of recursive division [default: 3]
    #[arg(long)]
    pub depth: Option<u32>,
    /// Board rows [default: 4]
    #[arg(long)]
    pub rows: Option<usize>,
    /// Board columns [default: 4]
    #[arg(long)]
    pub cols: Option<usize>,
    /// Tile rotation: none, seeded, or a fixed angle in degrees [default: seeded]
    #[arg(long)]
    pub rotation: Option<String>,
    /// Output width in pixels [default: 256]
    #[arg(long)]
    pub px: Option<usize>,
    /// Pruning model; designs scoring below the threshold are discarded
    #[arg(long)]
    pub model: Option<PathBuf>,
    /// Require pruning (fails without --model)
    #[arg(long)]
    pub prune: bool,
    /// Minimum model score for a design to be kept [default: 0.5]
    #[arg(long)]
    pub threshold: Option<f64>,
}

impl Options for BlockprintArgs {
    fn common(&self) -> &Common {
        &self.common
    }
    fn common_mut(&mut self) -> &mut Common {
        &mut self.common
    }
}

pub(crate) fn parse_rotation(text: &str) -> Result<RotationPolicy> {
    match text.trim() {
        "none" => Ok(RotationPolicy::None),
        "seeded" => Ok(RotationPolicy::Seeded),
        other => other
            .parse::<f64>()
            .map(RotationPolicy::Fixed)
            .with_context(|| format!("rotation {other:?} is not none, seeded, or an angle")),
    }
}

struct Generated {
    index: usize,
    seed: u64,
    doc: DesignDocument,
    render: Raster,
}

pub fn run(args: BlockprintArgs) -> Result<()> {
    let mut opts = config::resolve(args)?;
    let inspiration = read_image(required(&opts.inspiration, "inspiration")?)?;
    if opts.prune && opts.model.is_none() {
        bail!("pruning requested without --model");
    }
    let model = match &opts.model {
        Some(path) => Some(GbmModel::from_json(&read_text(path, "model")?)?),
        None => None,
    };
    let threshold = opts.threshold.unwrap_or(0.5);
    let count = opts.count.unwrap_or(10);
    let shape = BaseShape::new(opts.shape.unwrap_or(Shape::Square).into());
    let style = opts.style.unwrap_or(Style::Block);
    let chords = opts.chords.unwrap_or(4);
    let chord_style: ChordStyle = opts.chord_style.unwrap_or(Chords::Mixed).into();
    let depth = opts.depth.unwrap_or(3);
    let (rows, cols) = (opts.rows.unwrap_or(4), opts.cols.unwrap_or(4));
    let rotation = parse_rotation(opts.rotation.as_deref().unwrap_or("seeded"))?;
    let px = opts.px.unwrap_or(256);
    let seed = opts.common.seed();
    opts.count = Some(count);
    opts.shape = Some(opts.shape.unwrap_or(Shape::Square));
    opts.style = Some(style);
    opts.chords = Some(chords);
    opts.chord_style = Some(opts.chord_style.unwrap_or(Chords::Mixed));
    opts.depth = Some(depth);
    opts.rows = Some(rows);
    opts.cols = Some(cols);
    opts.rotation = Some(opts.rotation.clone().unwrap_or_else(|| "seeded".into()));
    opts.px = Some(px);
    if model.is_some() {
        opts.threshold = Some(threshold);
    }

    let palette = extract_palette(&inspiration)?;
    let colors = palette.colors();
    let echo = config::echo(&opts)?;
    println!("config: {}", echo.replace('\n', " "));

    let designs: Vec<Generated> = (0..count)
        .into_par_iter()
        .map(|index| -> Result<Generated> {
            let s = seed::derive(seed, index as u64);
            let block = match style {
                Style::Block => block_divide_with(shape, chords, chord_style, s)?,
                Style::Recursive => recursive_divide(shape, depth, s)?,
            };
            let pattern = tile_pattern(&block, rows, cols, rotation, s)?;
            let doc = DesignDocument::new(pattern, &colors, px);
            let render = doc.render()?;
            Ok(Generated {
                index,
                seed: s,
                doc,
                render,
            })
        })
        .collect::<Result<_>>()?;

    let mut out = Outputs::new(opts.common.out_dir());
    out.add("palette.json", palette.to_json()?);
    let kept: Vec<(Generated, Option<f64>)> = match &model {
        None => designs.into_iter().map(|g| (g, None)).collect(),
        Some(model) => {
            let scored: Vec<(Generated, _)> = designs
                .into_par_iter()
                .map(|g| {
                    let f = extract_features(&g.render)?;
                    Ok((g, f))
                })
                .collect::<Result<_>>()?;
            let outcome = prune_designs(scored, model, threshold)?;
            let mut log = String::from("design,seed,score,kept\n");
            let mut rows: Vec<(usize, u64, f64, bool)> = outcome
                .kept
                .iter()
                .map(|s| (s.item.index, s.item.seed, s.score, true))
                .chain(outcome.discarded.iter().map(|s| (s.item.index, s.item.seed, s.score, false)))
                .collect();
            rows.sort_by_key(|r| r.0);
            for (index, s, score, keep) in rows {
                let _ = writeln!(log, "design_{index:04},{s},{score:.6},{keep}");
                if !keep {
                    println!("design_{index:04} seed {s}: discarded (score {score:.4})");
                }
            }
            out.add("prune_log.csv", log);
            outcome.kept.into_iter().map(|s| (s.item, Some(s.score))).collect()
        }
    };

    for (g, score) in &kept {
        let name = format!("design_{:04}", g.index);
        match score {
            Some(score) => println!("{name} seed {}: kept (score {score:.4})", g.seed),
            None => println!("{name} seed {}", g.seed),
        }
        out.add(format!("{name}.json"), g.doc.to_json()?);
        out.add(format!("{name}.png"), encode_png(&g.render)?);
    }
    out.add("run_config.json", echo);
    out.commit()?;
    println!("{} of {count} designs written to {}", kept.len(), opts.common.out_dir().display());
    Ok(())
}
