//! Placing copies of a block on the design board.

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::design::BlockDesign;
use super::geometry::{Point, Polygon, ShapeKind};
use crate::{seed, Error, Result};

const SQRT3: f64 = 1.732_050_807_568_877_2;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case", tag = "kind", content = "degrees")]
pub enum RotationPolicy {
    #[default]
    None,
    /// Each tile draws its rotation from the shape's rotation set.
    Seeded,
    /// Every tile uses the same rotation.
    Fixed(f64),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Pattern {
    pub block: BlockDesign,
    pub rows: usize,
    pub cols: usize,
    pub rotation_policy: RotationPolicy,
    pub seed: u64,
    /// Per-tile rotation in degrees, row-major, `rows * cols` entries.
    pub rotations: Vec<f64>,
}

/// One tile of a pattern.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Placement {
    pub row: i64,
    pub col: i64,
    /// Tile centroid in board units.
    pub center: Point,
    /// Rotation of the block inside this tile, including the flip that
    /// turns every other triangle upside down.
    pub rotation: f64,
}

impl Placement {
    pub fn polygon(&self, block: &BlockDesign) -> Polygon {
        block.shape.polygon().rotated(self.rotation).translated(self.center)
    }
}

/// Lays out `rows x cols` copies of `block` in its shape's regular
/// tessellation: a square grid, rows of alternating up and down triangles,
/// or offset rows of pointy-top hexagons.
pub fn tile_pattern(
    block: &BlockDesign,
    rows: usize,
    cols: usize,
    policy: RotationPolicy,
    seed: u64,
) -> Result<Pattern> {
    if rows < 1 || cols < 1 {
        return Err(Error::invalid("tiling", format!("{rows}x{cols} board")));
    }
    let angles = block.shape.kind.rotation_angles();
    let rotations = match policy {
        RotationPolicy::None => vec![0.0; rows * cols],
        RotationPolicy::Fixed(a) => {
            if !angles.contains(&a) {
                return Err(Error::invalid(
                    "rotation",
                    format!("{a} is not one of {angles:?} for a {:?}", block.shape.kind),
                ));
            }
            vec![a; rows * cols]
        }
        RotationPolicy::Seeded => {
            let mut rng = seed::rng(seed);
            (0..rows * cols)
                .map(|_| angles[rng.random_range(0..angles.len())])
                .collect()
        }
    };
    Ok(Pattern {
        block: block.clone(),
        rows,
        cols,
        rotation_policy: policy,
        seed,
        rotations,
    })
}

impl Pattern {
    pub fn validate(&self) -> Result<()> {
        self.block.validate()?;
        if self.rows < 1 || self.cols < 1 || self.rotations.len() != self.rows * self.cols {
            return Err(Error::invalid("tiling", "rotation table does not match the board"));
        }
        let angles = self.block.shape.kind.rotation_angles();
        if let Some(a) = self.rotations.iter().find(|a| !angles.contains(a)) {
            return Err(Error::invalid("rotation", format!("{a} breaks the tessellation")));
        }
        Ok(())
    }

    pub fn tessellation(&self) -> Tessellation {
        Tessellation::new(self.block.shape.kind, self.block.shape.side)
    }

    /// Policy rotation for a tile; indices outside the board wrap.
    pub fn tile_rotation(&self, row: i64, col: i64) -> f64 {
        let r = row.rem_euclid(self.rows as i64) as usize;
        let c = col.rem_euclid(self.cols as i64) as usize;
        self.rotations[r * self.cols + c]
    }

    /// The `rows * cols` tiles on the board, row-major.
    pub fn placements(&self) -> Vec<Placement> {
        let tess = self.tessellation();
        let mut out = Vec::with_capacity(self.rows * self.cols);
        for r in 0..self.rows as i64 {
            for c in 0..self.cols as i64 {
                out.push(Placement {
                    row: r,
                    col: c,
                    center: tess.center(r, c),
                    rotation: tess.base_rotation(r, c) + self.tile_rotation(r, c),
                });
            }
        }
        out
    }

    /// Board extent `(width, height)` in block units.
    pub fn board_size(&self) -> (f64, f64) {
        self.tessellation().board_size(self.rows, self.cols)
    }
}

/// Geometry of a shape's regular tiling.
#[derive(Debug, Clone, Copy)]
pub struct Tessellation {
    pub kind: ShapeKind,
    pub side: f64,
}

impl Tessellation {
    pub fn new(kind: ShapeKind, side: f64) -> Self {
        Tessellation { kind, side }
    }

    fn tri_height(&self) -> f64 {
        self.side * SQRT3 / 2.0
    }

    /// Horizontal translation that maps the tiling onto itself (ignoring
    /// per-tile rotations), and how many columns it spans.
    pub fn period(&self) -> (f64, i64) {
        match self.kind {
            ShapeKind::Square => (self.side, 1),
            ShapeKind::Triangle => (self.side, 2),
            ShapeKind::Hexagon => (self.side * SQRT3, 1),
        }
    }

    pub fn board_size(&self, rows: usize, cols: usize) -> (f64, f64) {
        let (r, c) = (rows as f64, cols as f64);
        let s = self.side;
        match self.kind {
            ShapeKind::Square => (c * s, r * s),
            ShapeKind::Triangle => ((c + 1.0) * s / 2.0, r * self.tri_height()),
            ShapeKind::Hexagon => {
                let w = if rows > 1 { c + 0.5 } else { c };
                (w * s * SQRT3, s * (2.0 + 1.5 * (r - 1.0)))
            }
        }
    }

    pub fn center(&self, row: i64, col: i64) -> Point {
        let (r, c) = (row as f64, col as f64);
        let s = self.side;
        match self.kind {
            ShapeKind::Square => Point::new((c + 0.5) * s, (r + 0.5) * s),
            ShapeKind::Triangle => {
                let h = self.tri_height();
                let y = if self.triangle_up(row, col) {
                    r * h + 2.0 * h / 3.0
                } else {
                    r * h + h / 3.0
                };
                Point::new((c + 1.0) * s / 2.0, y)
            }
            ShapeKind::Hexagon => {
                let shift = if row.rem_euclid(2) == 1 { 0.5 } else { 0.0 };
                Point::new(SQRT3 * s * (c + 0.5 + shift), s + 1.5 * s * r)
            }
        }
    }

    fn triangle_up(&self, row: i64, col: i64) -> bool {
        (row + col).rem_euclid(2) == 0
    }

    /// Orientation the tessellation itself imposes on a tile.
    pub fn base_rotation(&self, row: i64, col: i64) -> f64 {
        match self.kind {
            ShapeKind::Triangle if !self.triangle_up(row, col) => 180.0,
            _ => 0.0,
        }
    }

    fn tile_polygon(&self, row: i64, col: i64) -> Polygon {
        super::geometry::BaseShape { kind: self.kind, side: self.side }
            .polygon()
            .rotated(self.base_rotation(row, col))
            .translated(self.center(row, col))
    }

    /// Finds the tile containing `p` (board units). Every point belongs to
    /// exactly one tile; boundary points resolve deterministically.
    pub fn locate(&self, p: Point) -> (i64, i64) {
        let s = self.side;
        match self.kind {
            ShapeKind::Square => ((p.y / s).floor() as i64, (p.x / s).floor() as i64),
            ShapeKind::Triangle => {
                let row = (p.y / self.tri_height()).floor() as i64;
                let j = (2.0 * p.x / s).floor() as i64;
                let m0 = self.tile_polygon(row, j - 1).inside_margin(p);
                let m1 = self.tile_polygon(row, j).inside_margin(p);
                if m1 >= m0 {
                    (row, j)
                } else {
                    (row, j - 1)
                }
            }
            ShapeKind::Hexagon => {
                let r0 = ((p.y - s) / (1.5 * s)).floor() as i64;
                let mut best = (f64::INFINITY, 0, 0);
                for row in r0 - 1..=r0 + 2 {
                    let shift = if row.rem_euclid(2) == 1 { 0.5 } else { 0.0 };
                    let c0 = (p.x / (SQRT3 * s) - 0.5 - shift).round() as i64;
                    for col in c0 - 1..=c0 + 1 {
                        let d = (p - self.center(row, col)).norm();
                        if d < best.0 {
                            best = (d, row, col);
                        }
                    }
                }
                (best.1, best.2)
            }
        }
    }
}
