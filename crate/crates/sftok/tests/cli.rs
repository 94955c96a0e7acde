//! End-to-end tests of the `sftok` binary: every subcommand, the error
//! exit contract, and byte-identical reruns.

use std::path::Path;
use std::process::{Command, Output};

use image::{Rgb, RgbImage};
use sftok::read_vfgf_file;

fn sftok(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sftok"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn write_frames(dir: &Path, count: u32) {
    for i in 0..count {
        let img = RgbImage::from_fn(64, 64, |x, y| {
            Rgb([
                ((x * 4 + i) % 256) as u8,
                ((y * 4 + 2 * i) % 256) as u8,
                ((x + y + 3 * i) % 256) as u8,
            ])
        });
        img.save(dir.join(format!("{i:04}.png"))).unwrap();
    }
}

#[test]
fn encode_writes_features_and_prints_checksum() {
    let dir = tempfile::tempdir().unwrap();
    write_frames(dir.path(), 20);
    let out_path = dir.path().join("feats.vfgf");

    let run = sftok(&[
        "encode",
        "--video",
        dir.path().to_str().unwrap(),
        "--out",
        out_path.to_str().unwrap(),
    ]);
    assert!(run.status.success(), "stderr: {}", stderr(&run));

    let digest = stdout(&run);
    assert_eq!(digest.trim().len(), 64);

    let grid = read_vfgf_file(&out_path).unwrap();
    assert_eq!(
        (
            grid.n_frames(),
            grid.height(),
            grid.width(),
            grid.channels()
        ),
        (50, 24, 24, 3)
    );
}

#[test]
fn encode_honors_n_frames_flag() {
    let dir = tempfile::tempdir().unwrap();
    write_frames(dir.path(), 20);
    let out_path = dir.path().join("feats.vfgf");

    let run = sftok(&[
        "encode",
        "--video",
        dir.path().to_str().unwrap(),
        "--n-frames",
        "8",
        "--out",
        out_path.to_str().unwrap(),
    ]);
    assert!(run.status.success());
    assert_eq!(read_vfgf_file(&out_path).unwrap().n_frames(), 8);
}

#[test]
fn encode_missing_path_exits_2_with_empty_video() {
    let run = sftok(&[
        "encode",
        "--video",
        "/no/such/frames",
        "--out",
        "/tmp/x.vfgf",
    ]);
    assert_eq!(run.status.code(), Some(2));
    assert!(stderr(&run).contains("EmptyVideo"));
}

#[test]
fn aggregate_defaults_print_3680_and_write_sidecar() {
    let dir = tempfile::tempdir().unwrap();
    write_frames(dir.path(), 60);
    let feats = dir.path().join("feats.vfgf");
    let tokens = dir.path().join("tokens.vfgf");

    let run = sftok(&[
        "encode",
        "--video",
        dir.path().to_str().unwrap(),
        "--out",
        feats.to_str().unwrap(),
    ]);
    assert!(run.status.success());

    let run = sftok(&[
        "aggregate",
        "--features",
        feats.to_str().unwrap(),
        "--out",
        tokens.to_str().unwrap(),
    ]);
    assert!(run.status.success(), "stderr: {}", stderr(&run));
    assert_eq!(stdout(&run).trim(), "3680");

    let grid = read_vfgf_file(&tokens).unwrap();
    assert_eq!(
        (
            grid.n_frames(),
            grid.height(),
            grid.width(),
            grid.channels()
        ),
        (1, 1, 3680, 3)
    );

    let sidecar: serde_json::Value = serde_json::from_str(
        &std::fs::read_to_string(dir.path().join("tokens.vfgf.json")).unwrap(),
    )
    .unwrap();
    assert_eq!(sidecar["total"], 3680);
    assert_eq!(sidecar["slow_span"]["end"], 2880);
    assert_eq!(sidecar["fast_span"]["start"], 2880);
    assert_eq!(sidecar["fast_span"]["end"], 3680);
}

#[test]
fn aggregate_flag_overrides_match_the_comparison_pair() {
    let dir = tempfile::tempdir().unwrap();
    write_frames(dir.path(), 60);
    let tokens = dir.path().join("tokens.vfgf");

    let run = sftok(&[
        "aggregate",
        "--video",
        dir.path().to_str().unwrap(),
        "--n-slow",
        "8",
        "--slow-stride",
        "2x1",
        "--fast-out",
        "4x4",
        "--out",
        tokens.to_str().unwrap(),
    ]);
    assert!(run.status.success(), "stderr: {}", stderr(&run));
    assert_eq!(stdout(&run).trim(), "3104");
}

#[test]
fn aggregate_rejects_non_divisible_stride() {
    let dir = tempfile::tempdir().unwrap();
    write_frames(dir.path(), 10);

    let run = sftok(&[
        "aggregate",
        "--video",
        dir.path().to_str().unwrap(),
        "--slow-stride",
        "5x1",
        "--out",
        dir.path().join("t.vfgf").to_str().unwrap(),
    ]);
    assert_eq!(run.status.code(), Some(2));
    assert!(stderr(&run).contains("NonDivisibleStride"));
}

#[test]
fn plan_prints_one_json_object() {
    let run = sftok(&["plan"]);
    assert!(run.status.success());
    let report: serde_json::Value = serde_json::from_str(stdout(&run).trim()).unwrap();
    assert_eq!(report["visual_tokens"], 3680);
    assert_eq!(report["margin"], 4000);
    assert_eq!(report["fits"], true);

    let run = sftok(&["plan", "--context-limit", "4096"]);
    let report: serde_json::Value = serde_json::from_str(stdout(&run).trim()).unwrap();
    assert_eq!(report["margin"], -96);
    assert_eq!(report["fits"], false);
}

#[test]
fn sweep_writes_deterministic_csv() {
    let dir = tempfile::tempdir().unwrap();
    let spec = dir.path().join("sweep.json");
    std::fs::write(
        &spec,
        r#"{"mode": "fast_only", "n_frames": [50, 200], "fast_targets": [[4, 4]]}"#,
    )
    .unwrap();
    let csv = dir.path().join("out.csv");

    let run = sftok(&[
        "sweep",
        "--config",
        spec.to_str().unwrap(),
        "--out",
        csv.to_str().unwrap(),
    ]);
    assert!(run.status.success(), "stderr: {}", stderr(&run));
    assert_eq!(
        std::fs::read_to_string(&csv).unwrap(),
        "mode,n_frames,n_slow,out_h,out_w,visual_tokens,fits\n\
         fast_only,50,,4,4,800,true\n\
         fast_only,200,,4,4,3200,true\n"
    );

    let run = sftok(&["sweep", "--config", spec.to_str().unwrap()]);
    assert!(stdout(&run).contains("fast_only,200,,4,4,3200,true"));
}

#[test]
fn prompt_renders_bundle_config() {
    let dir = tempfile::tempdir().unwrap();
    let bundle = dir.path().join("bundle.json");
    std::fs::write(
        &bundle,
        r#"{"task_kind": "multiple_choice", "question": "What happens?", "options": ["rain", "snow"]}"#,
    )
    .unwrap();

    let run = sftok(&["prompt", "--config", bundle.to_str().unwrap()]);
    assert!(run.status.success());
    let text = stdout(&run);
    assert!(text.contains("Select the best option to answer the question."));
    assert!(text.contains("<VISUAL_TOKENS n=3680>"));
    assert!(text.contains("(A) rain"));
    assert!(text.contains("(B) snow"));
    assert!(text.contains("Best Option:("));

    let missing = dir.path().join("missing_options.json");
    std::fs::write(
        &missing,
        r#"{"task_kind": "multiple_choice", "question": "What happens?"}"#,
    )
    .unwrap();
    let run = sftok(&["prompt", "--config", missing.to_str().unwrap()]);
    assert_eq!(run.status.code(), Some(2));
    assert!(stderr(&run).contains("MissingOptions"));
}

#[test]
fn reruns_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    write_frames(dir.path(), 30);
    let video = dir.path().to_str().unwrap().to_string();

    let a_path = dir.path().join("a.vfgf");
    let b_path = dir.path().join("b.vfgf");
    let a = sftok(&[
        "encode",
        "--video",
        &video,
        "--out",
        a_path.to_str().unwrap(),
    ]);
    let b = sftok(&[
        "encode",
        "--video",
        &video,
        "--out",
        b_path.to_str().unwrap(),
    ]);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(
        std::fs::read(&a_path).unwrap(),
        std::fs::read(&b_path).unwrap()
    );
}
