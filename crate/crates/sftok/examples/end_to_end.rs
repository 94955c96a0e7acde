//! The whole pipeline in one pass: synthetic video -> key frames ->
//! feature grids -> slow/fast aggregation -> budget check -> prompt text.
//! Run twice to show the output is bit-reproducible.
//!
//! Usage: `cargo run --example end_to_end`

use image::{Rgb, RgbImage};
use sftok::{
    aggregate, build_prompt, checksum, encode_frames, plan, EncoderSpec, PathwayConfig,
    PromptBundle, VideoFrames,
};

fn synthetic_video(n: u32) -> Vec<RgbImage> {
    (0..n)
        .map(|i| {
            RgbImage::from_fn(336, 336, |x, y| {
                Rgb([
                    ((x + 5 * i) % 256) as u8,
                    ((y + 3 * i) % 256) as u8,
                    ((x / 14 * 9 + y / 14 * 4 + i) % 256) as u8,
                ])
            })
        })
        .collect()
}

fn run() -> sftok::Result<(usize, String)> {
    let frames = VideoFrames::sample(&synthetic_video(100), 50)?;
    let features = encode_frames(&frames, &EncoderSpec::default())?;
    let out = aggregate(&features, &PathwayConfig::default())?;
    let digest = checksum(&out.tokens.clone().into_grid()?);
    Ok((out.total, digest))
}

fn main() -> sftok::Result<()> {
    let cfg = PathwayConfig::default();

    let (total, digest) = run()?;
    println!("visual tokens : {total}");
    println!("token digest  : {digest}");

    let (_, second) = run()?;
    println!("second run    : {second}");
    println!("deterministic : {}", digest == second);

    let report = plan(&cfg, 24, 24, 8192, 512)?;
    println!(
        "budget        : {} visual + {} reserved vs {} -> margin {}, fits={}",
        report.visual_tokens,
        report.reserved_text_tokens,
        report.context_limit,
        report.margin,
        report.fits
    );

    let bundle = PromptBundle::new(
        sftok::TaskKind::OpenEnded,
        "What pattern moves across the frame?",
    );
    println!("--- assembled input ---");
    println!("{}", build_prompt(&bundle)?.render(total));
    Ok(())
}
