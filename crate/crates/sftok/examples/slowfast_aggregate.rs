//! The full two-pathway aggregation on a synthetic clip: sample, encode,
//! pool both streams, concatenate.
//!
//! Usage: `cargo run --example slowfast_aggregate`

use image::{Rgb, RgbImage};
use sftok::{
    aggregate, encode_frames, fast_pathway, slow_pathway, token_count, EncoderSpec, PathwayConfig,
    VideoFrames,
};

/// 120 frames of a block drifting right, one patch per 10 frames.
fn synthetic_clip() -> Vec<RgbImage> {
    (0..120u32)
        .map(|i| {
            RgbImage::from_fn(336, 336, |x, y| {
                let block_x = (i / 10 * 14) % 336;
                if x >= block_x && x < block_x + 56 && (140..196).contains(&y) {
                    Rgb([255, 255, 255])
                } else {
                    Rgb([16, 16, 16])
                }
            })
        })
        .collect()
}

fn main() -> sftok::Result<()> {
    let frames = VideoFrames::sample(&synthetic_clip(), 50)?;
    println!(
        "sampled {} of {} frames: {:?}...",
        frames.len(),
        frames.source_frame_count(),
        &frames.sampled_indices()[..6]
    );

    let features = encode_frames(&frames, &EncoderSpec::default())?;
    println!(
        "features: {}x{}x{}x{}",
        features.n_frames(),
        features.height(),
        features.width(),
        features.channels()
    );

    let cfg = PathwayConfig::default();
    let slow = slow_pathway(&features, &cfg)?;
    let fast = fast_pathway(&features, &cfg)?;
    println!(
        "slow pathway: {}x{}x{} = {} tokens",
        slow.n_frames(),
        slow.height(),
        slow.width(),
        slow.token_count()
    );
    println!(
        "fast pathway: {}x{}x{} = {} tokens",
        fast.n_frames(),
        fast.height(),
        fast.width(),
        fast.token_count()
    );

    let out = aggregate(&features, &cfg)?;
    println!(
        "aggregated: {} tokens, slow [{}, {}), fast [{}, {})",
        out.total, out.slow_span.start, out.slow_span.end, out.fast_span.start, out.fast_span.end
    );

    // The count is pure arithmetic; no tensor data needed.
    assert_eq!(out.total, token_count(&cfg, 24, 24)?);
    println!("closed-form count agrees: {}", out.total);
    Ok(())
}
