use std::io::{Read, Write};

use flate2::read::GzDecoder;
use flate2::{Compression, GzBuilder};

use super::Compressor;
use crate::error::{Error, Result};

/// gzip via `flate2` (miniz_oxide backend). The header carries no file name
/// and a zero mtime, so output depends only on input and level.
#[derive(Debug, Clone, Copy)]
pub struct Gzip {
    level: u32,
    id: &'static str,
}

impl Gzip {
    /// Maximum compression (level 9), the pinned backend.
    pub fn best() -> Self {
        Gzip {
            level: 9,
            id: "gzip9",
        }
    }

    pub fn level(&self) -> u32 {
        self.level
    }
}

impl Default for Gzip {
    fn default() -> Self {
        Gzip::best()
    }
}

impl Compressor for Gzip {
    fn id(&self) -> &str {
        self.id
    }

    fn describe(&self) -> String {
        format!("gzip level {} (flate2 1.x, miniz_oxide)", self.level)
    }

    fn compress(&self, data: &[u8]) -> Result<Vec<u8>> {
        let mut enc = GzBuilder::new().mtime(0).write(
            Vec::with_capacity(data.len() / 2 + 32),
            Compression::new(self.level),
        );
        enc.write_all(data).map_err(Error::CompressionBackend)?;
        enc.finish().map_err(Error::CompressionBackend)
    }

    fn decompress(&self, data: &[u8]) -> Result<Vec<u8>> {
        let mut out = Vec::new();
        GzDecoder::new(data)
            .read_to_end(&mut out)
            .map_err(Error::CompressionBackend)?;
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let g = Gzip::best();
        let data = b"abracadabra abracadabra".to_vec();
        assert_eq!(g.decompress(&g.compress(&data).unwrap()).unwrap(), data);
        assert_eq!(
            g.decompress(&g.compress(&[]).unwrap()).unwrap(),
            Vec::<u8>::new()
        );
    }

    #[test]
    fn deterministic() {
        let g = Gzip::best();
        assert_eq!(
            g.compress(b"same input").unwrap(),
            g.compress(b"same input").unwrap()
        );
    }

    #[test]
    fn garbage_fails_to_decompress() {
        assert!(matches!(
            Gzip::best().decompress(b"not gzip"),
            Err(Error::CompressionBackend(_))
        ));
    }
}
