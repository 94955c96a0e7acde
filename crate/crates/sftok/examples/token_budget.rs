//! Context-window accounting for pathway configurations.
//!
//! Usage: `cargo run --example token_budget`

use sftok::budget::{DEFAULT_CONTEXT_LIMIT, DEFAULT_RESERVED_TEXT, NATIVE_CONTEXT_LIMIT};
use sftok::{plan, PathwayConfig};

fn main() -> sftok::Result<()> {
    let cfg = PathwayConfig::default();

    // The default configuration fits the RoPE-scaled 8192-token context.
    let r = plan(&cfg, 24, 24, DEFAULT_CONTEXT_LIMIT, DEFAULT_RESERVED_TEXT)?;
    println!(
        "limit {:>5}: {}",
        r.context_limit,
        serde_json::to_string(&r).unwrap()
    );

    // The same tokens overflow a native 4096-token window; over-budget is
    // a report, not an error.
    let r = plan(&cfg, 24, 24, NATIVE_CONTEXT_LIMIT, DEFAULT_RESERVED_TEXT)?;
    println!(
        "limit {:>5}: {}",
        r.context_limit,
        serde_json::to_string(&r).unwrap()
    );

    // Reserving more text headroom shrinks the margin one-for-one.
    println!("\nreserved text sweep at limit {DEFAULT_CONTEXT_LIMIT}:");
    for reserved in [0usize, 512, 2048, 4096, 4512, 8192] {
        let r = plan(&cfg, 24, 24, DEFAULT_CONTEXT_LIMIT, reserved)?;
        println!(
            "  reserved {reserved:>5} -> margin {:>6}, fits={}",
            r.margin, r.fits
        );
    }

    // Larger slow streams eat the margin quickly.
    println!("\nn_slow sweep at limit {DEFAULT_CONTEXT_LIMIT}:");
    for n_slow in [4usize, 8, 10, 16, 24] {
        let cfg = PathwayConfig { n_slow, ..cfg };
        let r = plan(&cfg, 24, 24, DEFAULT_CONTEXT_LIMIT, DEFAULT_RESERVED_TEXT)?;
        println!(
            "  n_slow {n_slow:>2} -> visual {:>5}, margin {:>6}, fits={}",
            r.visual_tokens, r.margin, r.fits
        );
    }
    Ok(())
}
