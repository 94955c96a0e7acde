//! Visual-encoder contract: something that turns sampled frames into a
//! per-frame feature grid.
//!
//! Two implementations ship. The toy patch-mean encoder partitions each
//! 336x336 frame into equal pixel patches and emits per-patch RGB means in
//! [0, 1]; it is deterministic and weight-free, which keeps the whole
//! pipeline bit-reproducible. Real projector features enter through
//! VFGF files via [`load_features`].

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::FeatureGrid;
use crate::sampler::{VideoFrames, FRAME_SIZE};
use crate::vfgf::read_vfgf_file;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EncoderKind {
    ToyPatchMean,
    FileBacked,
}

/// Encoder selection plus output grid geometry.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct EncoderSpec {
    pub kind: EncoderKind,
    pub grid_h: usize,
    pub grid_w: usize,
    pub channels: usize,
    /// VFGF file holding externally computed features (file_backed only).
    pub source_path: Option<PathBuf>,
}

impl Default for EncoderSpec {
    fn default() -> Self {
        Self {
            kind: EncoderKind::ToyPatchMean,
            grid_h: 24,
            grid_w: 24,
            channels: 3,
            source_path: None,
        }
    }
}

impl EncoderSpec {
    pub fn validate(&self) -> Result<()> {
        if self.channels == 0 {
            return Err(Error::InvalidConfig("channels must be >= 1".into()));
        }
        if self.grid_h == 0 || self.grid_w == 0 {
            return Err(Error::InvalidConfig("grid dims must be >= 1".into()));
        }
        if self.kind == EncoderKind::ToyPatchMean {
            if !(FRAME_SIZE as usize).is_multiple_of(self.grid_h) {
                return Err(Error::NonDivisiblePatch {
                    extent: FRAME_SIZE,
                    cells: self.grid_h,
                });
            }
            if !(FRAME_SIZE as usize).is_multiple_of(self.grid_w) {
                return Err(Error::NonDivisiblePatch {
                    extent: FRAME_SIZE,
                    cells: self.grid_w,
                });
            }
        }
        Ok(())
    }

    pub fn from_json(json: &str) -> Result<Self> {
        let spec: Self = serde_json::from_str(json)?;
        spec.validate()?;
        Ok(spec)
    }
}

/// Encode sampled frames into an `(n, grid_h, grid_w, channels)` grid.
pub fn encode_frames(frames: &VideoFrames, spec: &EncoderSpec) -> Result<FeatureGrid> {
    spec.validate()?;
    match spec.kind {
        EncoderKind::ToyPatchMean => encode_patch_means(frames, spec),
        EncoderKind::FileBacked => {
            let path = spec.source_path.as_ref().ok_or(Error::MissingSourcePath)?;
            load_features(path, frames.len())
        }
    }
}

/// Load a VFGF feature file and require an exact frame count.
pub fn load_features<P: AsRef<Path>>(path: P, expected_n: usize) -> Result<FeatureGrid> {
    let grid = read_vfgf_file(path)?;
    if grid.n_frames() != expected_n {
        return Err(Error::FrameCountMismatch {
            expected: expected_n,
            actual: grid.n_frames(),
        });
    }
    Ok(grid)
}

fn encode_patch_means(frames: &VideoFrames, spec: &EncoderSpec) -> Result<FeatureGrid> {
    let side = FRAME_SIZE as usize;
    let patch_h = side / spec.grid_h;
    let patch_w = side / spec.grid_w;
    let patch_px = (patch_h * patch_w) as f64;

    let mut data = Vec::with_capacity(frames.len() * spec.grid_h * spec.grid_w * spec.channels);
    for (index, frame) in frames.frames().iter().enumerate() {
        if frame.dimensions() != (FRAME_SIZE, FRAME_SIZE) {
            return Err(Error::BadFrameSize {
                index,
                width: frame.width(),
                height: frame.height(),
                expected: FRAME_SIZE,
            });
        }
        for gy in 0..spec.grid_h {
            for gx in 0..spec.grid_w {
                let mut sums = [0u64; 3];
                for py in gy * patch_h..(gy + 1) * patch_h {
                    for px in gx * patch_w..(gx + 1) * patch_w {
                        let pixel = frame.get_pixel(px as u32, py as u32);
                        for (s, &v) in sums.iter_mut().zip(pixel.0.iter()) {
                            *s += v as u64;
                        }
                    }
                }
                let means = sums.map(|s| (s as f64 / (patch_px * 255.0)) as f32);
                for c in 0..spec.channels {
                    data.push(means[c % 3]);
                }
            }
        }
    }
    FeatureGrid::new(frames.len(), spec.grid_h, spec.grid_w, spec.channels, data)
}
