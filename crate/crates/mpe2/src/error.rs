use thiserror::Error;

/// Errors emitted by the codec, the file formats, and the bench harness.
#[derive(Debug, Error)]
pub enum Error {
    /// Malformed PGM data.
    #[error("pgm format error: {0}")]
    PgmFormat(String),

    /// Malformed sidecar metadata text.
    #[error("sidecar format error: {0}")]
    SidecarFormat(String),

    /// Pixel coordinates outside the image (coordinates are 1-based).
    #[error("pixel ({row}, {col}) out of bounds for {width}x{height} image")]
    OutOfBounds {
        row: u32,
        col: u32,
        width: u32,
        height: u32,
    },

    /// Invalid algorithm configuration (predictor set, family/variant pairing).
    #[error("invalid algorithm configuration: {0}")]
    AlgorithmConfig(String),

    #[error("payload of {payload_bits} bits exceeds capacity of {capacity} bits")]
    PayloadExceedsCapacity { payload_bits: usize, capacity: usize },

    #[error("cover image must be at least 2x2, got {width}x{height}")]
    ImageTooSmall { width: u32, height: u32 },

    /// An embeddable position was classified without a payload bit; caller bug.
    #[error("embeddable position reached with no payload bit available")]
    MissingBit,

    /// A stego prediction-error vector that no embed, shift, or skip can
    /// produce; the stego image is corrupt or the algorithm is wrong.
    #[error("inconsistent stego state: {0}")]
    InconsistentState(String),

    #[error("metadata mismatch: {0}")]
    MetaMismatch(String),

    #[error("scan reached the last embedding position with {extracted} of {expected} payload bits")]
    PayloadShortfall { extracted: usize, expected: usize },

    /// Nonzero bits in the zero-padded tail of a packed bit stream.
    #[error("nonzero padding bits in final byte of bit stream")]
    PaddingNonZero,

    #[error("bit stream error: {0}")]
    BitStream(String),

    #[error("dimension mismatch: {width_a}x{height_a} vs {width_b}x{height_b}")]
    DimensionMismatch {
        width_a: u32,
        height_a: u32,
        width_b: u32,
        height_b: u32,
    },

    #[error("bench configuration error: {0}")]
    BenchConfig(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
