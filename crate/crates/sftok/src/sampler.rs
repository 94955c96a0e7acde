//! Uniform key-frame selection and temporal subsampling.
//!
//! All index math runs through [`uniform_indices`], the midpoint rule
//! `floor((2i+1) * total / (2k))`. It centers coverage over the source
//! (`k = 1` picks the middle frame) and repeats indices when a video is
//! shorter than the requested count.

use std::cmp::Ordering;
use std::path::{Path, PathBuf};

use image::imageops::FilterType;
use image::RgbImage;

use crate::error::{Error, Result};
use crate::grid::FeatureGrid;

/// Side length every sampled key frame is resized to.
pub const FRAME_SIZE: u32 = 336;

/// Midpoint indices: index i (0-based) = floor((2i+1) * total / (2k)).
///
/// Non-decreasing, each in `[0, total)`; repeats appear when `k > total`.
pub fn uniform_indices(total: usize, k: usize) -> Result<Vec<usize>> {
    if total == 0 {
        return Err(Error::ZeroCount { what: "total" });
    }
    if k == 0 {
        return Err(Error::ZeroCount { what: "k" });
    }
    let total = total as u128;
    let k = k as u128;
    Ok((0..k)
        .map(|i| ((2 * i + 1) * total / (2 * k)) as usize)
        .collect())
}

/// Key frames sampled from a source video, resized to 336x336.
#[derive(Debug, Clone)]
pub struct VideoFrames {
    frames: Vec<RgbImage>,
    source_frame_count: usize,
    sampled_indices: Vec<usize>,
}

impl VideoFrames {
    /// Sample `n` key frames from an in-memory frame sequence.
    pub fn sample(source: &[RgbImage], n: usize) -> Result<Self> {
        if source.is_empty() {
            return Err(Error::EmptyVideo {
                path: PathBuf::from("<in-memory>"),
            });
        }
        let indices = uniform_indices(source.len(), n)?;
        let frames = indices
            .iter()
            .map(|&i| resize_to_frame(&source[i]))
            .collect();
        Ok(Self {
            frames,
            source_frame_count: source.len(),
            sampled_indices: indices,
        })
    }

    /// Sample `n` key frames from a directory of numbered PNG/JPEG files.
    ///
    /// Files sort in natural order (`frame_2` before `frame_10`); only the
    /// selected frames are decoded.
    pub fn from_dir<P: AsRef<Path>>(dir: P, n: usize) -> Result<Self> {
        let dir = dir.as_ref();
        let mut files = list_frame_files(dir)?;
        if files.is_empty() {
            return Err(Error::EmptyVideo {
                path: dir.to_path_buf(),
            });
        }
        files.sort_by(|a, b| natural_cmp(&a.1, &b.1));

        let indices = uniform_indices(files.len(), n)?;
        let mut frames: Vec<RgbImage> = Vec::with_capacity(n);
        let mut prev: Option<usize> = None;
        for &idx in &indices {
            // Indices are non-decreasing, so duplicates are adjacent.
            if prev == Some(idx) {
                let last = frames.last().expect("duplicate follows a decode").clone();
                frames.push(last);
                continue;
            }
            frames.push(decode_frame(&files[idx].0)?);
            prev = Some(idx);
        }
        Ok(Self {
            frames,
            source_frame_count: files.len(),
            sampled_indices: indices,
        })
    }

    /// Wrap pre-sampled frames without resizing; all must share dimensions.
    pub fn from_raw(frames: Vec<RgbImage>) -> Result<Self> {
        if frames.is_empty() {
            return Err(Error::EmptyVideo {
                path: PathBuf::from("<in-memory>"),
            });
        }
        let (w, h) = frames[0].dimensions();
        for (i, f) in frames.iter().enumerate() {
            if f.dimensions() != (w, h) {
                return Err(Error::BadFrameSize {
                    index: i,
                    width: f.width(),
                    height: f.height(),
                    expected: w,
                });
            }
        }
        let count = frames.len();
        Ok(Self {
            frames,
            source_frame_count: count,
            sampled_indices: (0..count).collect(),
        })
    }

    pub fn frames(&self) -> &[RgbImage] {
        &self.frames
    }

    pub fn len(&self) -> usize {
        self.frames.len()
    }

    pub fn is_empty(&self) -> bool {
        self.frames.is_empty()
    }

    pub fn source_frame_count(&self) -> usize {
        self.source_frame_count
    }

    pub fn sampled_indices(&self) -> &[usize] {
        &self.sampled_indices
    }
}

/// Keep `k` frames of a grid at midpoint indices; spatial dims unchanged.
pub fn temporal_subsample(grid: &FeatureGrid, k: usize) -> Result<FeatureGrid> {
    let indices = uniform_indices(grid.n_frames(), k)?;
    let frame_len = grid.height() * grid.width() * grid.channels();
    let mut data = Vec::with_capacity(k * frame_len);
    for &f in &indices {
        let start = f * frame_len;
        data.extend_from_slice(&grid.data()[start..start + frame_len]);
    }
    FeatureGrid::new(k, grid.height(), grid.width(), grid.channels(), data)
}

fn resize_to_frame(img: &RgbImage) -> RgbImage {
    if img.dimensions() == (FRAME_SIZE, FRAME_SIZE) {
        return img.clone();
    }
    image::imageops::resize(img, FRAME_SIZE, FRAME_SIZE, FilterType::Triangle)
}

fn list_frame_files(dir: &Path) -> Result<Vec<(PathBuf, String)>> {
    let entries = std::fs::read_dir(dir).map_err(|_| Error::EmptyVideo {
        path: dir.to_path_buf(),
    })?;
    let mut files = Vec::new();
    for entry in entries {
        let path = entry?.path();
        if !path.is_file() {
            continue;
        }
        let ext = path
            .extension()
            .and_then(|e| e.to_str())
            .map(|e| e.to_ascii_lowercase());
        if matches!(ext.as_deref(), Some("png") | Some("jpg") | Some("jpeg")) {
            let name = path
                .file_name()
                .and_then(|n| n.to_str())
                .unwrap_or_default()
                .to_string();
            files.push((path, name));
        }
    }
    Ok(files)
}

fn decode_frame(path: &Path) -> Result<RgbImage> {
    let img = image::open(path).map_err(|e| Error::DecodeFailure {
        path: path.to_path_buf(),
        reason: e.to_string(),
    })?;
    Ok(resize_to_frame(&img.to_rgb8()))
}

/// Compare file names treating digit runs as numbers, so `f2 < f10`.
fn natural_cmp(a: &str, b: &str) -> Ordering {
    let mut ab = a.as_bytes();
    let mut bb = b.as_bytes();
    loop {
        match (ab.first(), bb.first()) {
            (None, None) => return a.cmp(b),
            (None, Some(_)) => return Ordering::Less,
            (Some(_), None) => return Ordering::Greater,
            (Some(&ca), Some(&cb)) => {
                if ca.is_ascii_digit() && cb.is_ascii_digit() {
                    let (na, rest_a) = split_digits(ab);
                    let (nb, rest_b) = split_digits(bb);
                    match cmp_digits(na, nb) {
                        Ordering::Equal => {
                            ab = rest_a;
                            bb = rest_b;
                        }
                        other => return other,
                    }
                } else {
                    match ca.cmp(&cb) {
                        Ordering::Equal => {
                            ab = &ab[1..];
                            bb = &bb[1..];
                        }
                        other => return other,
                    }
                }
            }
        }
    }
}

fn split_digits(s: &[u8]) -> (&[u8], &[u8]) {
    let end = s
        .iter()
        .position(|c| !c.is_ascii_digit())
        .unwrap_or(s.len());
    s.split_at(end)
}

/// Compare digit runs by value without overflowing: strip leading zeros,
/// then longer run wins, then lexicographic.
fn cmp_digits(a: &[u8], b: &[u8]) -> Ordering {
    let a = strip_zeros(a);
    let b = strip_zeros(b);
    a.len().cmp(&b.len()).then_with(|| a.cmp(b))
}

fn strip_zeros(s: &[u8]) -> &[u8] {
    let start = s.iter().position(|&c| c != b'0').unwrap_or(s.len());
    &s[start..]
}
