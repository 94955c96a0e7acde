//! Key-frame index selection with the midpoint rule.
//!
//! Usage: `cargo run --example uniform_sampling`

use sftok::uniform_indices;

fn main() -> sftok::Result<()> {
    // 50 source frames, 10 keys: indices land at bucket midpoints.
    println!("50 frames, keep 10 -> {:?}", uniform_indices(50, 10)?);

    // Keeping as many as exist is the identity.
    println!("10 frames, keep 10 -> {:?}", uniform_indices(10, 10)?);

    // A single key lands in the middle of the video.
    println!("50 frames, keep 1  -> {:?}", uniform_indices(50, 1)?);

    // Short videos repeat indices instead of padding with blanks.
    println!("4 frames,  keep 10 -> {:?}", uniform_indices(4, 10)?);

    // The selection is a pure function of the two counts, so the same
    // sampling drives both raw frames and feature-grid subsampling.
    for (total, k) in [(100, 50), (30, 50), (1, 8)] {
        let idx = uniform_indices(total, k)?;
        println!(
            "{total:>3} frames, keep {k:>2} -> first={}, last={}, unique={}",
            idx[0],
            idx[idx.len() - 1],
            idx.windows(2).filter(|w| w[0] != w[1]).count() + 1,
        );
    }
    Ok(())
}
