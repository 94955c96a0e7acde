//! Spatial block average pooling over feature grids, plus token flattening.
//!
//! Two entry points cover the two ways a pooling is specified: a stride
//! (non-overlapping blocks that must divide the input) and a target output
//! shape (floor/ceil partition boundaries, valid for any target up to the
//! input size). Block sums accumulate in f64 and land back in f32.

use crate::error::{Error, Result};
use crate::grid::{FeatureGrid, TokenSequence};

/// Mean-pool each frame with non-overlapping `stride_h x stride_w` blocks.
///
/// Output dims are `(n, height / stride_h, width / stride_w, channels)`;
/// the strides must divide the spatial dims exactly.
pub fn avg_pool_stride(
    grid: &FeatureGrid,
    stride_h: usize,
    stride_w: usize,
) -> Result<FeatureGrid> {
    if stride_h == 0 {
        return Err(Error::ZeroCount { what: "stride_h" });
    }
    if stride_w == 0 {
        return Err(Error::ZeroCount { what: "stride_w" });
    }
    if !grid.height().is_multiple_of(stride_h) {
        return Err(Error::NonDivisibleStride {
            axis: "height",
            extent: grid.height(),
            stride: stride_h,
            remainder: grid.height() % stride_h,
        });
    }
    if !grid.width().is_multiple_of(stride_w) {
        return Err(Error::NonDivisibleStride {
            axis: "width",
            extent: grid.width(),
            stride: stride_w,
            remainder: grid.width() % stride_w,
        });
    }
    let out_h = grid.height() / stride_h;
    let out_w = grid.width() / stride_w;
    pool_blocks(
        grid,
        out_h,
        out_w,
        |i| (i * stride_h, (i + 1) * stride_h),
        |j| (j * stride_w, (j + 1) * stride_w),
    )
}

/// Mean-pool each frame down to an `out_h x out_w` grid.
///
/// Output cell `(i, j)` averages input rows `[floor(i*H/out_h),
/// ceil((i+1)*H/out_h))` and the analogous column range. On divisible
/// shapes this coincides with [`avg_pool_stride`].
pub fn adaptive_avg_pool(grid: &FeatureGrid, out_h: usize, out_w: usize) -> Result<FeatureGrid> {
    if out_h == 0 || out_h > grid.height() {
        return Err(Error::TargetExceedsInput {
            axis: "height",
            target: out_h,
            extent: grid.height(),
        });
    }
    if out_w == 0 || out_w > grid.width() {
        return Err(Error::TargetExceedsInput {
            axis: "width",
            target: out_w,
            extent: grid.width(),
        });
    }
    let h = grid.height();
    let w = grid.width();
    pool_blocks(
        grid,
        out_h,
        out_w,
        |i| (i * h / out_h, ((i + 1) * h).div_ceil(out_h)),
        |j| (j * w / out_w, ((j + 1) * w).div_ceil(out_w)),
    )
}

/// Flatten a grid into its canonical token order: frame, then row, then
/// column; each token is the cell's channel vector.
pub fn flatten(grid: &FeatureGrid) -> TokenSequence {
    TokenSequence::from_flat(grid.channels(), grid.data().to_vec())
}

fn pool_blocks<FH, FW>(
    grid: &FeatureGrid,
    out_h: usize,
    out_w: usize,
    row_range: FH,
    col_range: FW,
) -> Result<FeatureGrid>
where
    FH: Fn(usize) -> (usize, usize),
    FW: Fn(usize) -> (usize, usize),
{
    let channels = grid.channels();
    let mut data = Vec::with_capacity(grid.n_frames() * out_h * out_w * channels);
    let mut sums = vec![0f64; channels];
    for frame in 0..grid.n_frames() {
        for i in 0..out_h {
            let (r0, r1) = row_range(i);
            for j in 0..out_w {
                let (c0, c1) = col_range(j);
                sums.fill(0.0);
                for y in r0..r1 {
                    for x in c0..c1 {
                        let cell = grid.cell(frame, y, x);
                        for (s, &v) in sums.iter_mut().zip(cell) {
                            *s += v as f64;
                        }
                    }
                }
                let count = ((r1 - r0) * (c1 - c0)) as f64;
                data.extend(sums.iter().map(|s| (s / count) as f32));
            }
        }
    }
    FeatureGrid::new(grid.n_frames(), out_h, out_w, channels, data)
}
