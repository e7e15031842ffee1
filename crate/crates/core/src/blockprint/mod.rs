//! Rule-based Block Print designs.
//!
//! A design starts from a square, triangle or hexagon block, draws chords
//! between points on distinct edges (either all across the block, or by
//! recursively halving each region), then repeats the block over a board in
//! the shape's regular tessellation with optional per-tile rotation. Rendering
//! uses flat fills only, so neighbouring colors never blend.

mod design;
mod document;
mod geometry;
mod render;
mod tiling;

pub use design::{
    block_divide, block_divide_with, recursive_divide, BlockDesign, ChordStyle, DivideStyle, RegionLocator,
    CORNER_MARGIN, MAX_BLOCK_CHORDS, MAX_BULGE, MAX_RECURSION_DEPTH,
};
pub use document::{DesignDocument, DESIGN_FORMAT_VERSION};
pub use geometry::{BaseShape, BoundaryPoint, Chord, ChordKind, Point, Polygon, ShapeKind};
pub use render::{assign_colors, region_map, render_pattern, RegionMap, MIN_RENDER_SIDE};
pub use tiling::{tile_pattern, Pattern, Placement, RotationPolicy, Tessellation};
