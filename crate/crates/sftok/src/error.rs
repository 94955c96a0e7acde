//! Crate-wide error type. Messages lead with the variant name so CLI
//! output and logs stay greppable.

use std::path::PathBuf;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// Data length does not match the product of the grid dimensions.
    #[error("DimensionMismatch: data length {actual} does not match {n_frames}x{height}x{width}x{channels} = {expected}")]
    DimensionMismatch {
        n_frames: usize,
        height: usize,
        width: usize,
        channels: usize,
        expected: usize,
        actual: usize,
    },

    /// A NaN or infinity was found at construction time.
    #[error("NonFiniteValue: value {value} at flat index {index}")]
    NonFiniteValue { index: usize, value: f32 },

    #[error("ZeroDimension: all grid dimensions must be >= 1")]
    ZeroDimension,

    /// Dimension does not fit the 32-bit fields of the VFGF header.
    #[error("DimensionTooLarge: {dim} = {value} exceeds the file format's 32-bit limit")]
    DimensionTooLarge { dim: &'static str, value: usize },

    #[error("IoFailure: {0}")]
    IoFailure(#[from] std::io::Error),

    #[error("BadMagic: expected b\"VFGF0001\", found {found:02x?}")]
    BadMagic { found: [u8; 8] },

    #[error("UnsupportedVersion: {found} (this reader supports version 1)")]
    UnsupportedVersion { found: u32 },

    #[error("TruncatedPayload: expected {expected} bytes of payload, got {actual}")]
    TruncatedPayload { expected: u64, actual: u64 },

    #[error("ZeroCount: {what} must be >= 1")]
    ZeroCount { what: &'static str },

    #[error("EmptyVideo: no decodable frames at {path}")]
    EmptyVideo { path: PathBuf },

    #[error("DecodeFailure: {path}: {reason}")]
    DecodeFailure { path: PathBuf, reason: String },

    /// Stride must evenly divide the spatial axis it pools over.
    #[error("NonDivisibleStride: {axis} {extent} % stride {stride} leaves remainder {remainder}")]
    NonDivisibleStride {
        axis: &'static str,
        extent: usize,
        stride: usize,
        remainder: usize,
    },

    #[error("TargetExceedsInput: target {axis} {target} exceeds input extent {extent} (or is 0)")]
    TargetExceedsInput {
        axis: &'static str,
        target: usize,
        extent: usize,
    },

    #[error("FrameCountMismatch: expected {expected} frames, got {actual}")]
    FrameCountMismatch { expected: usize, actual: usize },

    #[error("InvalidConfig: {0}")]
    InvalidConfig(String),

    #[error("InvalidSpec: {0}")]
    InvalidSpec(String),

    #[error("MissingOptions: multiple_choice bundles need a non-empty option list")]
    MissingOptions,

    #[error("UnexpectedOptions: options are only valid for multiple_choice bundles")]
    UnexpectedOptions,

    #[error("Unparseable: no option letter found in {answer:?}")]
    Unparseable { answer: String },

    #[error("OutOfRange: option '{letter}' is beyond the {n_options} offered options")]
    OutOfRange { letter: char, n_options: usize },

    #[error(
        "BadFrameSize: expected {expected}x{expected} pixels, frame {index} is {width}x{height}"
    )]
    BadFrameSize {
        index: usize,
        width: u32,
        height: u32,
        expected: u32,
    },

    #[error("NonDivisiblePatch: {extent} pixels do not split into {cells} equal patches")]
    NonDivisiblePatch { extent: u32, cells: usize },

    #[error("MissingSourcePath: file_backed encoder specs need source_path")]
    MissingSourcePath,

    #[error("BadConfig: {0}")]
    BadConfig(#[from] serde_json::Error),
}
