//! VFGF binary feature-grid files.
//!
//! Format (little-endian, no padding, no trailer):
//! - magic: `VFGF0001` (8 ASCII bytes)
//! - version: u32 = 1
//! - n_frames, height, width, channels: u32 each
//! - payload: n_frames * height * width * channels f32 values in canonical
//!   layout (frame-major, then row, then column, then channel)
//!
//! Writing is a pure function of the grid contents, so equal grids produce
//! byte-identical files on every platform. [`checksum`] hashes exactly those
//! bytes.

use std::fs::File;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::Path;

use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::grid::FeatureGrid;

pub const MAGIC: [u8; 8] = *b"VFGF0001";
pub const VERSION: u32 = 1;

/// Header size in bytes: magic + version + four dims.
pub const HEADER_LEN: usize = 8 + 4 + 4 * 4;

/// Write a grid to `sink` in VFGF encoding. Returns the byte count written.
pub fn write_vfgf<W: Write>(grid: &FeatureGrid, sink: &mut W) -> Result<usize> {
    let dims = [
        ("n_frames", grid.n_frames()),
        ("height", grid.height()),
        ("width", grid.width()),
        ("channels", grid.channels()),
    ];
    sink.write_all(&MAGIC)?;
    sink.write_all(&VERSION.to_le_bytes())?;
    for (name, value) in dims {
        let v = u32::try_from(value).map_err(|_| Error::DimensionTooLarge { dim: name, value })?;
        sink.write_all(&v.to_le_bytes())?;
    }
    for v in grid.data() {
        sink.write_all(&v.to_le_bytes())?;
    }
    Ok(HEADER_LEN + grid.data().len() * 4)
}

/// Read a grid from a VFGF byte stream.
pub fn read_vfgf<R: Read>(source: &mut R) -> Result<FeatureGrid> {
    let mut magic = [0u8; 8];
    read_fully(source, &mut magic, 0, 8)?;
    if magic != MAGIC {
        return Err(Error::BadMagic { found: magic });
    }

    let mut word = [0u8; 4];
    read_fully(source, &mut word, 8, 4)?;
    let version = u32::from_le_bytes(word);
    if version != VERSION {
        return Err(Error::UnsupportedVersion { found: version });
    }

    let mut dims = [0usize; 4];
    for (i, dim) in dims.iter_mut().enumerate() {
        read_fully(source, &mut word, 12 + 4 * i, 4)?;
        *dim = u32::from_le_bytes(word) as usize;
    }
    let [n_frames, height, width, channels] = dims;

    let count = (n_frames as u64) * (height as u64) * (width as u64) * (channels as u64);
    let expected_bytes = count * 4;
    let mut payload = Vec::with_capacity(count as usize);
    let mut buf = [0u8; 4];
    for i in 0..count {
        source
            .read_exact(&mut buf)
            .map_err(|_| Error::TruncatedPayload {
                expected: expected_bytes,
                actual: i * 4,
            })?;
        payload.push(f32::from_le_bytes(buf));
    }

    FeatureGrid::new(n_frames, height, width, channels, payload)
}

/// read_exact, but short header reads report where the stream ended.
fn read_fully<R: Read>(source: &mut R, buf: &mut [u8], offset: usize, len: usize) -> Result<()> {
    source.read_exact(buf).map_err(|_| Error::TruncatedPayload {
        expected: (offset + len) as u64,
        actual: offset as u64,
    })
}

/// SHA-256 of the canonical VFGF bytes, as a lowercase hex string.
pub fn checksum(grid: &FeatureGrid) -> String {
    let mut hasher = Sha256Sink::default();
    // Writing into a hasher cannot fail.
    write_vfgf(grid, &mut hasher).expect("hashing is infallible");
    hex::encode(hasher.0.finalize())
}

#[derive(Default)]
struct Sha256Sink(Sha256);

impl Write for Sha256Sink {
    fn write(&mut self, buf: &[u8]) -> std::io::Result<usize> {
        self.0.update(buf);
        Ok(buf.len())
    }

    fn flush(&mut self) -> std::io::Result<()> {
        Ok(())
    }
}

/// Write a grid to a file path.
pub fn write_vfgf_file<P: AsRef<Path>>(grid: &FeatureGrid, path: P) -> Result<usize> {
    let mut writer = BufWriter::new(File::create(path)?);
    let n = write_vfgf(grid, &mut writer)?;
    writer.flush()?;
    Ok(n)
}

/// Read a grid from a file path.
pub fn read_vfgf_file<P: AsRef<Path>>(path: P) -> Result<FeatureGrid> {
    let mut reader = BufReader::new(File::open(path)?);
    read_vfgf(&mut reader)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample_grid() -> FeatureGrid {
        FeatureGrid::from_fn(2, 3, 4, 2, |f, y, x, c| {
            (f as f32) * 0.5 + (y as f32) * 0.25 + (x as f32) * 0.125 + (c as f32) * 0.0625
        })
        .unwrap()
    }

    #[test]
    fn minimal_grid_is_32_bytes() {
        let g = FeatureGrid::new(1, 1, 1, 1, vec![0.0]).unwrap();
        let mut buf = Vec::new();
        let n = write_vfgf(&g, &mut buf).unwrap();
        assert_eq!(n, 32);
        assert_eq!(buf.len(), 32);
    }

    #[test]
    fn round_trip_is_exact() {
        let g = sample_grid();
        let mut buf = Vec::new();
        write_vfgf(&g, &mut buf).unwrap();
        let back = read_vfgf(&mut buf.as_slice()).unwrap();
        assert_eq!(back, g);
    }

    #[test]
    fn writes_are_deterministic() {
        let g = sample_grid();
        let mut a = Vec::new();
        let mut b = Vec::new();
        write_vfgf(&g, &mut a).unwrap();
        write_vfgf(&g, &mut b).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn header_layout_is_pinned() {
        let g = FeatureGrid::new(2, 3, 4, 5, vec![1.0; 120]).unwrap();
        let mut buf = Vec::new();
        write_vfgf(&g, &mut buf).unwrap();
        assert_eq!(&buf[0..8], b"VFGF0001");
        assert_eq!(&buf[8..12], &1u32.to_le_bytes());
        assert_eq!(&buf[12..16], &2u32.to_le_bytes());
        assert_eq!(&buf[16..20], &3u32.to_le_bytes());
        assert_eq!(&buf[20..24], &4u32.to_le_bytes());
        assert_eq!(&buf[24..28], &5u32.to_le_bytes());
        assert_eq!(&buf[28..32], &1.0f32.to_le_bytes());
    }

    #[test]
    fn rejects_bad_magic() {
        let bytes = b"NOTVFGF1rest of the stream".to_vec();
        assert!(matches!(
            read_vfgf(&mut bytes.as_slice()),
            Err(Error::BadMagic { .. })
        ));
    }

    #[test]
    fn rejects_unsupported_version() {
        let mut buf = Vec::new();
        write_vfgf(&sample_grid(), &mut buf).unwrap();
        buf[8..12].copy_from_slice(&7u32.to_le_bytes());
        assert!(matches!(
            read_vfgf(&mut buf.as_slice()),
            Err(Error::UnsupportedVersion { found: 7 })
        ));
    }

    #[test]
    fn rejects_short_payload() {
        let mut buf = Vec::new();
        write_vfgf(&sample_grid(), &mut buf).unwrap();
        buf.truncate(buf.len() - 5);
        assert!(matches!(
            read_vfgf(&mut buf.as_slice()),
            Err(Error::TruncatedPayload { .. })
        ));
    }

    #[test]
    fn checksum_stable_across_round_trip() {
        let g = sample_grid();
        let mut buf = Vec::new();
        write_vfgf(&g, &mut buf).unwrap();
        let back = read_vfgf(&mut buf.as_slice()).unwrap();
        assert_eq!(checksum(&g), checksum(&back));
        assert_eq!(checksum(&g), checksum(&g));
    }

    #[test]
    fn checksum_differs_when_one_value_changes() {
        let g = sample_grid();
        let mut data = g.data().to_vec();
        data[0] += 1.0;
        let h = FeatureGrid::new(2, 3, 4, 2, data).unwrap();
        assert_ne!(checksum(&g), checksum(&h));
    }

    #[test]
    fn file_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("grid.vfgf");
        let g = sample_grid();
        let n = write_vfgf_file(&g, &path).unwrap();
        assert_eq!(n as u64, std::fs::metadata(&path).unwrap().len());
        assert_eq!(read_vfgf_file(&path).unwrap(), g);
    }
}
