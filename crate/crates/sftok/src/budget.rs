//! Context-window accounting and ablation sweeps over pathway configs.
//!
//! Over-budget is a result (`fits == false`), never an error; only malformed
//! shapes (non-divisible strides, oversized targets) fail.

use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::aggregator::{fast_token_count, slow_token_count, token_count, PathwayConfig};
use crate::error::{Error, Result};

/// Context length after RoPE scaling by 2.
pub const DEFAULT_CONTEXT_LIMIT: usize = 8192;
/// Native context length of the unscaled base LLM.
pub const NATIVE_CONTEXT_LIMIT: usize = 4096;
/// Default headroom kept for prompt, question, and generated text.
pub const DEFAULT_RESERVED_TEXT: usize = 512;

/// Token accounting against a context limit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BudgetReport {
    pub visual_tokens: usize,
    pub reserved_text_tokens: usize,
    pub context_limit: usize,
    /// context_limit - visual_tokens - reserved_text_tokens; negative when over.
    pub margin: i64,
    pub fits: bool,
}

/// Account a known visual-token count against a context limit.
pub fn report(
    visual_tokens: usize,
    context_limit: usize,
    reserved_text_tokens: usize,
) -> BudgetReport {
    let margin = context_limit as i64 - visual_tokens as i64 - reserved_text_tokens as i64;
    BudgetReport {
        visual_tokens,
        reserved_text_tokens,
        context_limit,
        margin,
        fits: margin >= 0,
    }
}

/// Account a pathway config's visual tokens against a context limit.
pub fn plan(
    cfg: &PathwayConfig,
    grid_h: usize,
    grid_w: usize,
    context_limit: usize,
    reserved_text_tokens: usize,
) -> Result<BudgetReport> {
    if context_limit == 0 {
        return Err(Error::ZeroCount {
            what: "context_limit",
        });
    }
    let visual = token_count(cfg, grid_h, grid_w)?;
    Ok(report(visual, context_limit, reserved_text_tokens))
}

/// Which pathway(s) a sweep row counts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepMode {
    Slowfast,
    SlowOnly,
    FastOnly,
}

impl SweepMode {
    pub fn as_str(&self) -> &'static str {
        match self {
            SweepMode::Slowfast => "slowfast",
            SweepMode::SlowOnly => "slow_only",
            SweepMode::FastOnly => "fast_only",
        }
    }
}

/// Axes to cross-product into sweep rows.
///
/// Rows iterate in lexicographic axis order: n_frames outermost, then
/// n_slow, then slow strides, then fast targets, each axis in its given
/// order. Axes left out of a JSON spec fall back to length-1 defaults, so
/// the row count is always the product of the axis lengths.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SweepSpec {
    pub mode: SweepMode,
    pub n_frames: Vec<usize>,
    pub n_slow: Vec<usize>,
    /// (stride_h, stride_w) pairs for the slow pathway.
    pub slow_strides: Vec<(usize, usize)>,
    /// (out_h, out_w) targets for the fast pathway.
    pub fast_targets: Vec<(usize, usize)>,
}

impl Default for SweepSpec {
    fn default() -> Self {
        Self {
            mode: SweepMode::Slowfast,
            n_frames: vec![50],
            n_slow: vec![10],
            slow_strides: vec![(2, 1)],
            fast_targets: vec![(4, 4)],
        }
    }
}

impl SweepSpec {
    pub fn validate(&self) -> Result<()> {
        let axes = [
            ("n_frames", self.n_frames.is_empty()),
            ("n_slow", self.n_slow.is_empty()),
            ("slow_strides", self.slow_strides.is_empty()),
            ("fast_targets", self.fast_targets.is_empty()),
        ];
        for (name, empty) in axes {
            if empty {
                return Err(Error::InvalidSpec(format!("axis {name} is empty")));
            }
        }
        Ok(())
    }

    pub fn from_json(json: &str) -> Result<Self> {
        let spec: Self = serde_json::from_str(json)?;
        spec.validate()?;
        Ok(spec)
    }
}

/// One sweep cell: the config coordinates that matter for its mode, the
/// token count, and whether it fits the context limit.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SweepRow {
    pub mode: SweepMode,
    pub n_frames: usize,
    /// None for fast-only rows, which have no slow pathway.
    pub n_slow: Option<usize>,
    /// Per-frame output grid: the slow output shape for slow-only rows,
    /// the fast target otherwise.
    pub out_h: usize,
    pub out_w: usize,
    pub visual_tokens: usize,
    pub fits: bool,
}

/// Expand a sweep spec into one row per cross-product cell.
pub fn sweep(
    spec: &SweepSpec,
    grid_h: usize,
    grid_w: usize,
    context_limit: usize,
    reserved_text_tokens: usize,
) -> Result<Vec<SweepRow>> {
    spec.validate()?;
    let mut rows = Vec::with_capacity(
        spec.n_frames.len() * spec.n_slow.len() * spec.slow_strides.len() * spec.fast_targets.len(),
    );
    for &n_frames in &spec.n_frames {
        for &n_slow in &spec.n_slow {
            for &(stride_h, stride_w) in &spec.slow_strides {
                for &(fast_h, fast_w) in &spec.fast_targets {
                    let row = match spec.mode {
                        SweepMode::Slowfast => {
                            let cfg = PathwayConfig {
                                n_frames,
                                n_slow,
                                slow_stride_h: stride_h,
                                slow_stride_w: stride_w,
                                fast_out_h: fast_h,
                                fast_out_w: fast_w,
                            };
                            let count = token_count(&cfg, grid_h, grid_w)?;
                            SweepRow {
                                mode: spec.mode,
                                n_frames,
                                n_slow: Some(n_slow),
                                out_h: fast_h,
                                out_w: fast_w,
                                visual_tokens: count,
                                fits: report(count, context_limit, reserved_text_tokens).fits,
                            }
                        }
                        SweepMode::SlowOnly => {
                            if n_slow > n_frames {
                                return Err(Error::InvalidSpec(format!(
                                    "n_slow ({n_slow}) exceeds n_frames ({n_frames})"
                                )));
                            }
                            let count =
                                slow_token_count(n_slow, stride_h, stride_w, grid_h, grid_w)?;
                            SweepRow {
                                mode: spec.mode,
                                n_frames,
                                n_slow: Some(n_slow),
                                out_h: grid_h / stride_h,
                                out_w: grid_w / stride_w,
                                visual_tokens: count,
                                fits: report(count, context_limit, reserved_text_tokens).fits,
                            }
                        }
                        SweepMode::FastOnly => {
                            let count = fast_token_count(n_frames, fast_h, fast_w, grid_h, grid_w)?;
                            SweepRow {
                                mode: spec.mode,
                                n_frames,
                                n_slow: None,
                                out_h: fast_h,
                                out_w: fast_w,
                                visual_tokens: count,
                                fits: report(count, context_limit, reserved_text_tokens).fits,
                            }
                        }
                    };
                    rows.push(row);
                }
            }
        }
    }
    Ok(rows)
}

/// CSV header for [`write_sweep_csv`].
pub const SWEEP_CSV_HEADER: &str = "mode,n_frames,n_slow,out_h,out_w,visual_tokens,fits";

/// Emit sweep rows as CSV. Fields never contain commas; the n_slow column
/// is empty on fast-only rows.
pub fn write_sweep_csv<W: Write>(rows: &[SweepRow], sink: &mut W) -> Result<()> {
    writeln!(sink, "{SWEEP_CSV_HEADER}")?;
    for row in rows {
        let n_slow = row.n_slow.map(|v| v.to_string()).unwrap_or_default();
        writeln!(
            sink,
            "{},{},{},{},{},{},{}",
            row.mode.as_str(),
            row.n_frames,
            n_slow,
            row.out_h,
            row.out_w,
            row.visual_tokens,
            row.fits
        )?;
    }
    Ok(())
}
