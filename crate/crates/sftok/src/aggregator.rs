//! The two-pathway aggregation: a slow stream (few frames, mild spatial
//! pooling) and a fast stream (all frames, aggressive pooling), flattened
//! and concatenated slow-first with no separator tokens.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::{FeatureGrid, TokenSequence};
use crate::pooling::{adaptive_avg_pool, avg_pool_stride, flatten};
use crate::sampler::temporal_subsample;

/// All pathway hyperparameters.
///
/// Defaults are the reference configuration: 50 sampled frames, 10 slow
/// frames pooled with a 2x1 stride, fast target 4x4 — 3680 tokens on a
/// 24x24 grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PathwayConfig {
    /// Key frames sampled from the video (N); the fast pathway keeps all of them.
    pub n_frames: usize,
    /// Frames the slow pathway keeps.
    pub n_slow: usize,
    pub slow_stride_h: usize,
    pub slow_stride_w: usize,
    pub fast_out_h: usize,
    pub fast_out_w: usize,
}

impl Default for PathwayConfig {
    fn default() -> Self {
        Self {
            n_frames: 50,
            n_slow: 10,
            slow_stride_h: 2,
            slow_stride_w: 1,
            fast_out_h: 4,
            fast_out_w: 4,
        }
    }
}

impl PathwayConfig {
    pub fn validate(&self) -> Result<()> {
        let fields = [
            ("n_frames", self.n_frames),
            ("n_slow", self.n_slow),
            ("slow_stride_h", self.slow_stride_h),
            ("slow_stride_w", self.slow_stride_w),
            ("fast_out_h", self.fast_out_h),
            ("fast_out_w", self.fast_out_w),
        ];
        for (name, value) in fields {
            if value == 0 {
                return Err(Error::InvalidConfig(format!("{name} must be >= 1")));
            }
        }
        if self.n_slow > self.n_frames {
            return Err(Error::InvalidConfig(format!(
                "n_slow ({}) must not exceed n_frames ({})",
                self.n_slow, self.n_frames
            )));
        }
        Ok(())
    }

    pub fn from_json(json: &str) -> Result<Self> {
        let cfg: Self = serde_json::from_str(json)?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }
}

/// Half-open index range into a token sequence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TokenSpan {
    pub start: usize,
    pub end: usize,
}

impl TokenSpan {
    pub fn len(&self) -> usize {
        self.end - self.start
    }

    pub fn is_empty(&self) -> bool {
        self.start == self.end
    }
}

/// Concatenated slow+fast token sequence with provenance spans.
///
/// The slow span always starts at 0 and the fast span follows with no gap
/// and no separator tokens.
#[derive(Debug, Clone, PartialEq)]
pub struct AggregatedTokens {
    pub tokens: TokenSequence,
    pub slow_span: TokenSpan,
    pub fast_span: TokenSpan,
    pub total: usize,
}

/// Slow pathway: subsample to `n_slow` frames, then stride-pool spatially.
pub fn slow_pathway(f_v: &FeatureGrid, cfg: &PathwayConfig) -> Result<FeatureGrid> {
    cfg.validate()?;
    if f_v.n_frames() != cfg.n_frames {
        return Err(Error::FrameCountMismatch {
            expected: cfg.n_frames,
            actual: f_v.n_frames(),
        });
    }
    let sampled = temporal_subsample(f_v, cfg.n_slow)?;
    avg_pool_stride(&sampled, cfg.slow_stride_h, cfg.slow_stride_w)
}

/// Fast pathway: keep every frame, pool each down to the fast target grid.
pub fn fast_pathway(f_v: &FeatureGrid, cfg: &PathwayConfig) -> Result<FeatureGrid> {
    cfg.validate()?;
    adaptive_avg_pool(f_v, cfg.fast_out_h, cfg.fast_out_w)
}

/// Run both pathways and concatenate their flattened tokens, slow first.
pub fn aggregate(f_v: &FeatureGrid, cfg: &PathwayConfig) -> Result<AggregatedTokens> {
    let slow = slow_pathway(f_v, cfg)?;
    let fast = fast_pathway(f_v, cfg)?;

    let mut tokens = flatten(&slow);
    let slow_len = tokens.len();
    let fast_tokens = flatten(&fast);
    let fast_len = fast_tokens.len();
    tokens.extend(&fast_tokens);

    Ok(AggregatedTokens {
        tokens,
        slow_span: TokenSpan {
            start: 0,
            end: slow_len,
        },
        fast_span: TokenSpan {
            start: slow_len,
            end: slow_len + fast_len,
        },
        total: slow_len + fast_len,
    })
}

/// Slow-pathway token count for a grid of `grid_h x grid_w` cells per frame.
pub fn slow_token_count(
    n_slow: usize,
    stride_h: usize,
    stride_w: usize,
    grid_h: usize,
    grid_w: usize,
) -> Result<usize> {
    if stride_h == 0 || !grid_h.is_multiple_of(stride_h) {
        return Err(Error::NonDivisibleStride {
            axis: "height",
            extent: grid_h,
            stride: stride_h,
            remainder: if stride_h == 0 {
                grid_h
            } else {
                grid_h % stride_h
            },
        });
    }
    if stride_w == 0 || !grid_w.is_multiple_of(stride_w) {
        return Err(Error::NonDivisibleStride {
            axis: "width",
            extent: grid_w,
            stride: stride_w,
            remainder: if stride_w == 0 {
                grid_w
            } else {
                grid_w % stride_w
            },
        });
    }
    Ok(n_slow * (grid_h / stride_h) * (grid_w / stride_w))
}

/// Fast-pathway token count: all frames at the target grid.
pub fn fast_token_count(
    n_frames: usize,
    out_h: usize,
    out_w: usize,
    grid_h: usize,
    grid_w: usize,
) -> Result<usize> {
    if out_h == 0 || out_h > grid_h {
        return Err(Error::TargetExceedsInput {
            axis: "height",
            target: out_h,
            extent: grid_h,
        });
    }
    if out_w == 0 || out_w > grid_w {
        return Err(Error::TargetExceedsInput {
            axis: "width",
            target: out_w,
            extent: grid_w,
        });
    }
    Ok(n_frames * out_h * out_w)
}

/// Exact visual-token count for a config, without touching tensor data.
pub fn token_count(cfg: &PathwayConfig, grid_h: usize, grid_w: usize) -> Result<usize> {
    cfg.validate()?;
    let slow = slow_token_count(
        cfg.n_slow,
        cfg.slow_stride_h,
        cfg.slow_stride_w,
        grid_h,
        grid_w,
    )?;
    let fast = fast_token_count(cfg.n_frames, cfg.fast_out_h, cfg.fast_out_w, grid_h, grid_w)?;
    Ok(slow + fast)
}
