//! Batch CLI over the sftok library: encode frames to VFGF features,
//! aggregate them into token sequences, plan token budgets, run ablation
//! sweeps, and render prompts.
//!
//! `SFTOK_SEED` is reserved but unused: the pipeline has no randomness.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use sftok::budget::{DEFAULT_CONTEXT_LIMIT, DEFAULT_RESERVED_TEXT};
use sftok::{
    aggregate, build_prompt, checksum, encode_frames, load_features, plan, sweep, write_sweep_csv,
    write_vfgf_file, EncoderSpec, PathwayConfig, PromptBundle, Result, SweepSpec, TokenSpan,
    VideoFrames,
};

#[derive(Parser)]
#[command(name = "sftok", version, about = "Slow/fast video-token aggregation")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sample key frames from a video and write VFGF features.
    Encode(EncodeArgs),
    /// Aggregate features into a slow+fast token sequence.
    Aggregate(AggregateArgs),
    /// Print a budget report for a pathway configuration.
    Plan(PlanArgs),
    /// Expand a sweep spec into a CSV of token counts.
    Sweep(SweepArgs),
    /// Render the assembled prompt for a bundle config.
    Prompt(PromptArgs),
}

#[derive(Args)]
struct EncodeArgs {
    /// Directory of numbered PNG/JPEG frames.
    #[arg(long)]
    video: PathBuf,
    /// Key frames to sample.
    #[arg(long, default_value_t = 50)]
    n_frames: usize,
    /// Encoder spec JSON file (defaults to the toy 24x24x3 encoder).
    #[arg(long)]
    config: Option<PathBuf>,
    /// Output VFGF path.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct PathwayFlags {
    /// Pathway config JSON file; explicit flags below override its fields.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    n_frames: Option<usize>,
    #[arg(long)]
    n_slow: Option<usize>,
    /// Slow pooling stride, e.g. 2x1.
    #[arg(long, value_parser = parse_pair)]
    slow_stride: Option<(usize, usize)>,
    /// Fast target grid, e.g. 4x4.
    #[arg(long, value_parser = parse_pair)]
    fast_out: Option<(usize, usize)>,
}

impl PathwayFlags {
    fn resolve(&self) -> Result<PathwayConfig> {
        let mut cfg = match &self.config {
            Some(path) => PathwayConfig::from_json(&fs::read_to_string(path)?)?,
            None => PathwayConfig::default(),
        };
        if let Some(n) = self.n_frames {
            cfg.n_frames = n;
        }
        if let Some(n) = self.n_slow {
            cfg.n_slow = n;
        }
        if let Some((h, w)) = self.slow_stride {
            cfg.slow_stride_h = h;
            cfg.slow_stride_w = w;
        }
        if let Some((h, w)) = self.fast_out {
            cfg.fast_out_h = h;
            cfg.fast_out_w = w;
        }
        cfg.validate()?;
        Ok(cfg)
    }
}

#[derive(Args)]
struct AggregateArgs {
    /// VFGF feature file (mutually exclusive with --video).
    #[arg(long, conflicts_with = "video")]
    features: Option<PathBuf>,
    /// Frame directory; frames are toy-encoded at 24x24x3 first.
    #[arg(long, required_unless_present = "features")]
    video: Option<PathBuf>,
    #[command(flatten)]
    pathway: PathwayFlags,
    /// Output VFGF path for the token sequence; a `.json` sidecar with the
    /// spans lands next to it.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct PlanArgs {
    #[command(flatten)]
    pathway: PathwayFlags,
    /// Per-frame token grid the encoder produces, e.g. 24x24.
    #[arg(long, value_parser = parse_pair, default_value = "24x24")]
    grid: (usize, usize),
    #[arg(long, default_value_t = DEFAULT_CONTEXT_LIMIT)]
    context_limit: usize,
    #[arg(long, default_value_t = DEFAULT_RESERVED_TEXT)]
    reserved_text: usize,
}

#[derive(Args)]
struct SweepArgs {
    /// Sweep spec JSON file.
    #[arg(long)]
    config: PathBuf,
    #[arg(long, value_parser = parse_pair, default_value = "24x24")]
    grid: (usize, usize),
    #[arg(long, default_value_t = DEFAULT_CONTEXT_LIMIT)]
    context_limit: usize,
    #[arg(long, default_value_t = DEFAULT_RESERVED_TEXT)]
    reserved_text: usize,
    /// CSV output path; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct PromptArgs {
    /// Prompt bundle JSON file.
    #[arg(long)]
    config: PathBuf,
    /// Token count shown in the visual placeholder line.
    #[arg(long, default_value_t = 3680)]
    visual_tokens: usize,
    /// Output path; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn parse_pair(s: &str) -> std::result::Result<(usize, usize), String> {
    let (h, w) = s
        .split_once(['x', 'X'])
        .ok_or_else(|| format!("expected HxW, got {s:?}"))?;
    let parse = |v: &str| {
        v.trim()
            .parse::<usize>()
            .map_err(|_| format!("expected HxW with numeric parts, got {s:?}"))
    };
    Ok((parse(h)?, parse(w)?))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let run = match cli.command {
        Command::Encode(args) => cmd_encode(args),
        Command::Aggregate(args) => cmd_aggregate(args),
        Command::Plan(args) => cmd_plan(args),
        Command::Sweep(args) => cmd_sweep(args),
        Command::Prompt(args) => cmd_prompt(args),
    };
    match run {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(2)
        }
    }
}

fn cmd_encode(args: EncodeArgs) -> Result<()> {
    let spec = match &args.config {
        Some(path) => EncoderSpec::from_json(&fs::read_to_string(path)?)?,
        None => EncoderSpec::default(),
    };
    let frames = VideoFrames::from_dir(&args.video, args.n_frames)?;
    let grid = encode_frames(&frames, &spec)?;
    write_vfgf_file(&grid, &args.out)?;
    println!("{}", checksum(&grid));
    Ok(())
}

#[derive(Serialize)]
struct SpanSidecar {
    total: usize,
    slow_span: TokenSpan,
    fast_span: TokenSpan,
}

fn cmd_aggregate(args: AggregateArgs) -> Result<()> {
    let cfg = args.pathway.resolve()?;
    let features = match (&args.features, &args.video) {
        (Some(path), _) => load_features(path, cfg.n_frames)?,
        (None, Some(video)) => {
            let frames = VideoFrames::from_dir(video, cfg.n_frames)?;
            encode_frames(&frames, &EncoderSpec::default())?
        }
        (None, None) => unreachable!("clap enforces one input"),
    };
    let out = aggregate(&features, &cfg)?;

    let sidecar = SpanSidecar {
        total: out.total,
        slow_span: out.slow_span,
        fast_span: out.fast_span,
    };
    let grid = out.tokens.into_grid()?;
    write_vfgf_file(&grid, &args.out)?;
    fs::write(
        sidecar_path(&args.out),
        serde_json::to_string_pretty(&sidecar).expect("sidecar serializes"),
    )?;
    println!("{}", sidecar.total);
    Ok(())
}

fn sidecar_path(out: &Path) -> PathBuf {
    let mut name = out.file_name().unwrap_or_default().to_os_string();
    name.push(".json");
    out.with_file_name(name)
}

fn cmd_plan(args: PlanArgs) -> Result<()> {
    let cfg = args.pathway.resolve()?;
    let report = plan(
        &cfg,
        args.grid.0,
        args.grid.1,
        args.context_limit,
        args.reserved_text,
    )?;
    println!(
        "{}",
        serde_json::to_string(&report).expect("report serializes")
    );
    Ok(())
}

fn cmd_sweep(args: SweepArgs) -> Result<()> {
    let spec = SweepSpec::from_json(&fs::read_to_string(&args.config)?)?;
    let rows = sweep(
        &spec,
        args.grid.0,
        args.grid.1,
        args.context_limit,
        args.reserved_text,
    )?;
    match &args.out {
        Some(path) => {
            let mut buf = Vec::new();
            write_sweep_csv(&rows, &mut buf)?;
            fs::write(path, buf)?;
        }
        None => write_sweep_csv(&rows, &mut std::io::stdout().lock())?,
    }
    Ok(())
}

fn cmd_prompt(args: PromptArgs) -> Result<()> {
    let bundle = PromptBundle::from_json(&fs::read_to_string(&args.config)?)?;
    let text = build_prompt(&bundle)?.render(args.visual_tokens);
    match &args.out {
        Some(path) => fs::write(path, text)?,
        None => println!("{text}"),
    }
    Ok(())
}
