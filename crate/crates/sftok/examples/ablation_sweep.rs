//! Token-arithmetic sweeps over pathway configurations: the slow-shape
//! grid, the fast-shape grid, the fast frame-count line, and the
//! like-for-like comparison between a fast-only setup and the two-pathway
//! default family.
//!
//! Usage: `cargo run --example ablation_sweep`

use sftok::{sweep, write_sweep_csv, SweepMode, SweepSpec};

fn show(title: &str, spec: &SweepSpec) -> sftok::Result<()> {
    println!("# {title}");
    let rows = sweep(spec, 24, 24, 8192, 512)?;
    let mut buf = Vec::new();
    write_sweep_csv(&rows, &mut buf)?;
    print!("{}", String::from_utf8(buf).unwrap());
    println!();
    Ok(())
}

fn main() -> sftok::Result<()> {
    // Slow-pathway shapes, fast stream removed: how many tokens each
    // (n_slow, stride) cell costs on its own.
    show(
        "slow-only shape grid",
        &SweepSpec {
            mode: SweepMode::SlowOnly,
            n_slow: vec![10, 5],
            slow_strides: vec![(1, 1), (2, 1), (2, 2)],
            ..SweepSpec::default()
        },
    )?;

    // Fast-pathway target shapes at 50 frames, slow stream removed.
    show(
        "fast-only target grid",
        &SweepSpec {
            mode: SweepMode::FastOnly,
            fast_targets: vec![(8, 8), (4, 8), (6, 6), (3, 8), (4, 4), (2, 4), (1, 1)],
            ..SweepSpec::default()
        },
    )?;

    // Compensating for a removed slow stream by adding fast frames.
    show(
        "fast-only frame-count line",
        &SweepSpec {
            mode: SweepMode::FastOnly,
            n_frames: vec![50, 100, 125, 150, 175, 200, 225],
            ..SweepSpec::default()
        },
    )?;

    // A 200-frame fast-only stream costs 3200 tokens; the two-pathway
    // config with 8 slow frames lands nearby at 3104.
    show(
        "comparable-budget pair",
        &SweepSpec {
            mode: SweepMode::FastOnly,
            n_frames: vec![200],
            ..SweepSpec::default()
        },
    )?;
    show(
        "",
        &SweepSpec {
            mode: SweepMode::Slowfast,
            n_slow: vec![8],
            ..SweepSpec::default()
        },
    )?;
    Ok(())
}
