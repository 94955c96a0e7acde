//! Writing, reading, and checksumming VFGF feature files.
//!
//! Usage: `cargo run --example vfgf_roundtrip`

use sftok::{checksum, read_vfgf_file, write_vfgf_file, FeatureGrid};

fn main() -> sftok::Result<()> {
    let grid = FeatureGrid::from_fn(4, 6, 6, 3, |f, y, x, c| {
        (f as f32) * 0.1 + (y as f32) * 0.01 + (x as f32) * 0.001 + (c as f32) * 0.0001
    })?;

    let dir = std::env::temp_dir();
    let path = dir.join("sftok_example.vfgf");
    let bytes = write_vfgf_file(&grid, &path)?;
    println!(
        "wrote {}x{}x{}x{} grid: {} bytes at {}",
        grid.n_frames(),
        grid.height(),
        grid.width(),
        grid.channels(),
        bytes,
        path.display()
    );

    // Little-endian header: magic, version, then the four dims.
    let raw = std::fs::read(&path)?;
    println!("magic   : {}", String::from_utf8_lossy(&raw[..8]));
    println!(
        "version : {}",
        u32::from_le_bytes(raw[8..12].try_into().unwrap())
    );
    for (i, name) in ["n_frames", "height", "width", "channels"]
        .iter()
        .enumerate()
    {
        let off = 12 + 4 * i;
        let v = u32::from_le_bytes(raw[off..off + 4].try_into().unwrap());
        println!("{name:8}: {v}");
    }

    let back = read_vfgf_file(&path)?;
    println!("round trip exact: {}", back == grid);

    // The digest hashes the canonical bytes, so it doubles as a
    // determinism witness for any pipeline stage that emits a grid.
    println!("checksum: {}", checksum(&grid));
    println!("restored: {}", checksum(&back));

    std::fs::remove_file(&path)?;
    Ok(())
}
