use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("empty raster")]
    EmptyRaster,

    #[error("raster has {actual} pixels, expected {width}x{height}")]
    PixelCount {
        width: usize,
        height: usize,
        actual: usize,
    },

    #[error("motif is not grayscale at pixel ({x}, {y})")]
    NotGrayscale { x: usize, y: usize },

    #[error("no colorable regions")]
    NoColorableRegions,

    #[error("stage dimension mismatch: expected {expected:?}, got {actual:?}")]
    StageDimensionMismatch {
        expected: (usize, usize),
        actual: (usize, usize),
    },

    #[error("raster smaller than grid ({width}x{height} < {n}x{n})")]
    RasterSmallerThanGrid { width: usize, height: usize, n: usize },

    #[error("empty palette")]
    EmptyPalette,

    #[error("not a flat-fill design ({0} distinct colors)")]
    NotFlatFill(usize),

    #[error("degenerate labels")]
    DegenerateLabels,

    #[error("feature dimension mismatch: model expects {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }
}
