//! Dense per-frame feature tensors and the flat token sequences cut from them.
//!
//! A [`FeatureGrid`] holds `n_frames * height * width * channels` f32 values in
//! one canonical layout: frame-major, then row, then column, then channel.
//! Every token the pipeline ever counts is one channel vector at a grid cell.

use crate::error::{Error, Result};

/// Dense 4-D feature tensor: frames x height x width x channels.
///
/// Immutable after construction; construction validates shape and rejects
/// non-finite values so pooling downstream can never average a NaN in.
#[derive(Debug, Clone, PartialEq)]
pub struct FeatureGrid {
    n_frames: usize,
    height: usize,
    width: usize,
    channels: usize,
    data: Vec<f32>,
}

impl FeatureGrid {
    /// Validate and wrap raw data in canonical layout.
    pub fn new(
        n_frames: usize,
        height: usize,
        width: usize,
        channels: usize,
        data: Vec<f32>,
    ) -> Result<Self> {
        if n_frames == 0 || height == 0 || width == 0 || channels == 0 {
            return Err(Error::ZeroDimension);
        }
        let expected = n_frames
            .checked_mul(height)
            .and_then(|p| p.checked_mul(width))
            .and_then(|p| p.checked_mul(channels))
            .ok_or(Error::ZeroDimension)?;
        if data.len() != expected {
            return Err(Error::DimensionMismatch {
                n_frames,
                height,
                width,
                channels,
                expected,
                actual: data.len(),
            });
        }
        if let Some((index, &value)) = data.iter().enumerate().find(|(_, v)| !v.is_finite()) {
            return Err(Error::NonFiniteValue { index, value });
        }
        Ok(Self {
            n_frames,
            height,
            width,
            channels,
            data,
        })
    }

    /// Build a grid by evaluating `f(frame, row, col, channel)` at every cell.
    pub fn from_fn<F>(
        n_frames: usize,
        height: usize,
        width: usize,
        channels: usize,
        mut f: F,
    ) -> Result<Self>
    where
        F: FnMut(usize, usize, usize, usize) -> f32,
    {
        let mut data = Vec::with_capacity(n_frames * height * width * channels);
        for fr in 0..n_frames {
            for y in 0..height {
                for x in 0..width {
                    for c in 0..channels {
                        data.push(f(fr, y, x, c));
                    }
                }
            }
        }
        Self::new(n_frames, height, width, channels, data)
    }

    pub fn n_frames(&self) -> usize {
        self.n_frames
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn channels(&self) -> usize {
        self.channels
    }

    /// Flat data in canonical layout.
    pub fn data(&self) -> &[f32] {
        &self.data
    }

    /// Flat index of `(frame, row, col, channel=0)`.
    #[inline]
    pub fn offset(&self, frame: usize, row: usize, col: usize) -> usize {
        ((frame * self.height + row) * self.width + col) * self.channels
    }

    /// Channel vector at one grid cell.
    pub fn cell(&self, frame: usize, row: usize, col: usize) -> &[f32] {
        let off = self.offset(frame, row, col);
        &self.data[off..off + self.channels]
    }

    /// Tokens per frame times frames: the count the context window pays for.
    pub fn token_count(&self) -> usize {
        self.n_frames * self.height * self.width
    }
}

/// Ordered list of channel vectors, stored flat.
#[derive(Debug, Clone, PartialEq)]
pub struct TokenSequence {
    channels: usize,
    data: Vec<f32>,
}

impl TokenSequence {
    pub(crate) fn from_flat(channels: usize, data: Vec<f32>) -> Self {
        debug_assert!(channels > 0 && data.len().is_multiple_of(channels));
        Self { channels, data }
    }

    /// Number of tokens.
    pub fn len(&self) -> usize {
        self.data.len() / self.channels
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn channels(&self) -> usize {
        self.channels
    }

    /// The `i`-th token's channel vector.
    pub fn token(&self, i: usize) -> &[f32] {
        &self.data[i * self.channels..(i + 1) * self.channels]
    }

    pub fn iter(&self) -> impl Iterator<Item = &[f32]> {
        self.data.chunks_exact(self.channels)
    }

    /// All values, token-major.
    pub fn as_flat(&self) -> &[f32] {
        &self.data
    }

    /// Append another sequence with the same channel width.
    pub(crate) fn extend(&mut self, other: &TokenSequence) {
        debug_assert_eq!(self.channels, other.channels);
        self.data.extend_from_slice(&other.data);
    }

    /// View the sequence as a degenerate grid of shape (1, 1, len, channels).
    pub fn into_grid(self) -> Result<FeatureGrid> {
        let len = self.len();
        FeatureGrid::new(1, 1, len, self.channels, self.data)
    }
}
