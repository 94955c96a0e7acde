//! Two-pathway video-token aggregation for video LLM inputs.
//!
//! The pipeline turns a video into a single LLM-ready token sequence with
//! exact budget accounting:
//!
//! 1. sample N key frames uniformly ([`sampler`]), resized to 336x336;
//! 2. encode each frame into an H x W grid of channel-vector tokens
//!    ([`encoder`], or external features via VFGF files, [`vfgf`]);
//! 3. run a slow pathway (few frames, mild spatial pooling) and a fast
//!    pathway (all frames, aggressive pooling) and concatenate their
//!    flattened tokens ([`pooling`], [`aggregator`]);
//! 4. account the tokens against a context limit and sweep alternative
//!    configurations ([`budget`]);
//! 5. wrap the tokens with the three-part prompt text ([`prompting`]).
//!
//! The default configuration (50 frames, 10 slow frames at stride 2x1,
//! fast target 4x4, 24x24 grids) emits 3680 visual tokens and fits an
//! 8192-token context with room for text.
//!
//! See the `examples/` directory for one runnable walkthrough per
//! capability, and the `sftok` binary for batch use.

pub mod aggregator;
pub mod budget;
pub mod encoder;
pub mod error;
pub mod grid;
pub mod pooling;
pub mod prompting;
pub mod sampler;
pub mod vfgf;

pub use aggregator::{
    aggregate, fast_pathway, fast_token_count, slow_pathway, slow_token_count, token_count,
    AggregatedTokens, PathwayConfig, TokenSpan,
};
pub use budget::{
    plan, report, sweep, write_sweep_csv, BudgetReport, SweepMode, SweepRow, SweepSpec,
    DEFAULT_CONTEXT_LIMIT, DEFAULT_RESERVED_TEXT, NATIVE_CONTEXT_LIMIT,
};
pub use encoder::{encode_frames, load_features, EncoderKind, EncoderSpec};
pub use error::{Error, Result};
pub use grid::{FeatureGrid, TokenSequence};
pub use pooling::{adaptive_avg_pool, avg_pool_stride, flatten};
pub use prompting::{build_prompt, parse_choice, AssembledInput, PromptBundle, TaskKind};
pub use sampler::{temporal_subsample, uniform_indices, VideoFrames, FRAME_SIZE};
pub use vfgf::{checksum, read_vfgf, read_vfgf_file, write_vfgf, write_vfgf_file};
