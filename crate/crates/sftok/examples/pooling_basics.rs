//! Stride pooling vs adaptive pooling on a small grid.
//!
//! Usage: `cargo run --example pooling_basics`

use sftok::{adaptive_avg_pool, avg_pool_stride, flatten, FeatureGrid};

fn print_frame(label: &str, grid: &FeatureGrid) {
    println!("{label} ({}x{}):", grid.height(), grid.width());
    for y in 0..grid.height() {
        let row: Vec<String> = (0..grid.width())
            .map(|x| format!("{:5.1}", grid.cell(0, y, x)[0]))
            .collect();
        println!("  [{}]", row.join(" "));
    }
}

fn main() -> sftok::Result<()> {
    // One 4x4 frame holding 1..16, single channel.
    let grid = FeatureGrid::new(1, 4, 4, 1, (1..=16).map(|v| v as f32).collect())?;
    print_frame("input", &grid);

    // Non-overlapping 2x2 block means.
    let pooled = avg_pool_stride(&grid, 2, 2)?;
    print_frame("stride 2x2", &pooled);

    // Adaptive pooling reaches targets that do not divide the input;
    // blocks overlap where the floor/ceil boundaries demand it.
    let grid5 = FeatureGrid::new(1, 1, 5, 1, vec![1.0, 2.0, 3.0, 4.0, 5.0])?;
    let adapted = adaptive_avg_pool(&grid5, 1, 2)?;
    print_frame("adaptive 1x5 -> 1x2", &adapted);

    // On divisible shapes the two entry points agree exactly.
    let a = adaptive_avg_pool(&grid, 2, 2)?;
    let s = avg_pool_stride(&grid, 2, 2)?;
    println!("adaptive(2x2) == stride(2x2): {}", a == s);

    // Flattening orders tokens frame-major, then row, then column.
    let tokens = flatten(&pooled);
    println!(
        "flattened {} tokens x {} channels: {:?}",
        tokens.len(),
        tokens.channels(),
        tokens.as_flat()
    );
    Ok(())
}
