use thiserror::Error;

/// Errors produced by the core library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StegoError {
    #[error("image dimensions must be at least 1x1 (got {height}x{width})")]
    InvalidDimensions { height: usize, width: usize },

    #[error("pixel buffer holds {actual} samples, expected {expected}")]
    BufferSize { expected: usize, actual: usize },

    #[error("dimension mismatch: {left_height}x{left_width} vs {right_height}x{right_width}")]
    DimensionMismatch {
        left_height: usize,
        left_width: usize,
        right_height: usize,
        right_width: usize,
    },

    #[error("bit sequence of length {0} is not byte aligned")]
    LengthNotByteAligned(usize),

    #[error("message of {0} bytes does not fit a 32-bit length header")]
    MessageTooLarge(usize),

    #[error(
        "frame truncated: header claims {claimed_bytes} bytes, body carries {available_bits} bits"
    )]
    TruncatedFrame {
        claimed_bytes: u64,
        available_bits: usize,
    },

    #[error("bit sequence of odd length {0} cannot be pair-swapped")]
    OddLength(usize),

    #[error("stego key must not be empty")]
    EmptyKey,

    #[error("keystream must not be empty")]
    EmptyKeystream,

    #[error(
        "cover too small: frame needs {needed_bits} pixels, blue channel has {available_bits}"
    )]
    CoverTooSmall {
        needed_bits: usize,
        available_bits: usize,
    },

    #[error("corrupt header: frame needs {needed_bits} bits, image holds {available_bits} (wrong key or not a stego image)")]
    CorruptHeader {
        needed_bits: u64,
        available_bits: usize,
    },

    #[error("cover image is all zero; correlation is undefined")]
    ZeroImage,

    #[error("histogram totals differ ({left} vs {right})")]
    TotalMismatch { left: u64, right: u64 },
}

pub type Result<T, E = StegoError> = std::result::Result<T, E>;
