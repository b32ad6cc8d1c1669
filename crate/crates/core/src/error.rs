use std::path::PathBuf;

use crate::image::Mode;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid image dimensions {height}x{width}: both must be at least 1")]
    InvalidDimensions { height: u32, width: u32 },

    #[error("pixel buffer holds {actual} values, expected {expected}")]
    PixelCount { expected: usize, actual: usize },

    #[error("pixel value {value} at offset {offset} is outside [0, {max}]")]
    PixelOutOfRange { offset: usize, value: u8, max: u16 },

    #[error("image {index} does not match: {detail}")]
    DimensionMismatch { index: usize, detail: String },

    #[error("expected {expected} images, got {actual}")]
    ArityMismatch { expected: usize, actual: usize },

    #[error("unsupported n = {n} for {mode} images")]
    UnsupportedN { n: usize, mode: Mode },

    #[error("operation requires a mod-256 image mode, got {0}")]
    UnsupportedMode(Mode),

    #[error("shares belong to different sessions: {0}")]
    ManifestMismatch(String),

    #[error("duplicate share index {0}")]
    DuplicateShareIndex(u16),

    #[error("missing share index {}", join_indices(.0))]
    MissingShares(Vec<u16>),

    #[error("subset size k = {k} is outside [1, {n}]")]
    SubsetOutOfRange { k: usize, n: usize },

    #[error("at least 3 repetitions are required, got {0}")]
    TooFewRepetitions(usize),

    #[error("unsupported format: {0}")]
    UnsupportedFormat(String),

    #[error("unsupported bit depth: {0}")]
    UnsupportedBitDepth(String),

    #[error("corrupt file: {0}")]
    CorruptFile(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

fn join_indices(indices: &[u16]) -> String {
    indices
        .iter()
        .map(u16::to_string)
        .collect::<Vec<_>>()
        .join(", ")
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    /// Short stable identifier, used as the machine-readable error prefix.
    pub fn code(&self) -> &'static str {
        match self {
            Error::InvalidDimensions { .. } => "invalid-dimensions",
            Error::PixelCount { .. } => "pixel-count",
            Error::PixelOutOfRange { .. } => "pixel-out-of-range",
            Error::DimensionMismatch { .. } => "dimension-mismatch",
            Error::ArityMismatch { .. } => "arity-mismatch",
            Error::UnsupportedN { .. } => "unsupported-n",
            Error::UnsupportedMode(_) => "unsupported-mode",
            Error::ManifestMismatch(_) => "manifest-mismatch",
            Error::DuplicateShareIndex(_) => "duplicate-share-index",
            Error::MissingShares(_) => "missing-shares",
            Error::SubsetOutOfRange { .. } => "subset-out-of-range",
            Error::TooFewRepetitions(_) => "too-few-repetitions",
            Error::UnsupportedFormat(_) => "unsupported-format",
            Error::UnsupportedBitDepth(_) => "unsupported-bit-depth",
            Error::CorruptFile(_) => "corrupt-file",
            Error::Io { .. } => "io",
        }
    }
}
