//! Generative textile-design toolkit.
//!
//! The crate covers two handicraft pipelines and the tooling around them:
//!
//! * [`ikat`]: primitive colorization of a black line motif, global color
//!   transfer from an inspiration photograph, and quantization to a flat
//!   dye-ready grid.
//! * [`blockprint`]: rule-based block designs (block divide, recursive divide),
//!   tilings with optional rotation, and flat-fill rendering.
//! * [`palette`]: inspiration palette extraction by prominence filtering and
//!   CIEDE2000 merging.
//! * [`pruning`]: aesthetic features of rendered designs and a gradient-boosted
//!   tree classifier used to discard unappealing ones.
//! * [`evaluation`]: the likeability index over a designs-by-judges vote grid.
//!
//! [`color`] holds the shared color science and the [`Raster`] image carrier.

pub mod blockprint;
pub mod color;
pub mod error;
pub mod evaluation;
pub mod ikat;
pub mod label;
pub mod palette;
pub mod pruning;
pub mod seed;

pub use color::{ChannelStats, HsvColor, LabColor, Raster, RgbColor};
pub use error::{Error, Result};
