//! Binary portable graymap (`P5`, maxval 255) reading and writing.

use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::image::Image;

fn malformed(msg: impl Into<String>) -> Error {
    Error::Pgm(msg.into())
}

struct Header<'a> {
    data: &'a [u8],
    pos: usize,
}

impl Header<'_> {
    /// Skips whitespace and `#` comments running to end of line.
    fn skip_separators(&mut self) {
        while let Some(&b) = self.data.get(self.pos) {
            if b.is_ascii_whitespace() {
                self.pos += 1;
            } else if b == b'#' {
                while self
                    .data
                    .get(self.pos)
                    .is_some_and(|&b| b != b'\n' && b != b'\r')
                {
                    self.pos += 1;
                }
            } else {
                break;
            }
        }
    }

    fn number(&mut self, what: &str) -> Result<usize> {
        self.skip_separators();
        let start = self.pos;
        while self.data.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(malformed(format!("expected {what} in header")));
        }
        std::str::from_utf8(&self.data[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| malformed(format!("{what} out of range")))
    }
}

pub fn decode_pgm(data: &[u8]) -> Result<Image> {
    match data.get(..2) {
        Some(b"P5") => {}
        Some([b'P', d]) if d.is_ascii_digit() => {
            return Err(malformed(format!("unsupported variant P{}", *d as char)))
        }
        _ => return Err(malformed("missing P5 magic")),
    }
    let mut header = Header { data, pos: 2 };
    if !header
        .data
        .get(2)
        .is_some_and(|&b| b.is_ascii_whitespace() || b == b'#')
    {
        return Err(malformed("missing separator after magic"));
    }
    let cols = header.number("width")?;
    let rows = header.number("height")?;
    let maxval = header.number("maxval")?;
    if maxval != 255 {
        return Err(malformed(format!("maxval {maxval} unsupported, only 255")));
    }
    match data.get(header.pos) {
        Some(b) if b.is_ascii_whitespace() => {}
        _ => return Err(malformed("expected single whitespace before raster")),
    }
    let payload = &data[header.pos + 1..];
    let needed = rows
        .checked_mul(cols)
        .ok_or_else(|| malformed("dimensions overflow"))?;
    if payload.len() < needed {
        return Err(malformed(format!(
            "short read: raster has {} of {needed} bytes",
            payload.len()
        )));
    }
    Image::new(rows, cols, payload[..needed].to_vec())
}

/// Canonical encoding: `P5\n<cols> <rows>\n255\n` followed by the raster.
pub fn encode_pgm(img: &Image) -> Vec<u8> {
    let mut out = format!("P5\n{} {}\n255\n", img.cols(), img.rows()).into_bytes();
    out.extend_from_slice(img.pixels());
    out
}

pub fn read_pgm(path: impl AsRef<Path>) -> Result<Image> {
    decode_pgm(&fs::read(path)?)
}

pub fn write_pgm(img: &Image, path: impl AsRef<Path>) -> Result<()> {
    fs::write(path, encode_pgm(img))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decodes_minimal_file() {
        let img = decode_pgm(b"P5\n2 2\n255\n\x01\x02\x03\x04").unwrap();
        assert_eq!(img.dims(), (2, 2));
        assert_eq!(img.pixels(), &[1, 2, 3, 4]);
    }

    #[test]
    fn width_comes_before_height() {
        let img = decode_pgm(b"P5 3 1 255 abc").unwrap();
        assert_eq!(img.dims(), (1, 3));
    }

    #[test]
    fn header_comments() {
        let img = decode_pgm(b"P5\n# made by hand\n1 # width\n2\n255\n\x07\x08").unwrap();
        assert_eq!(img.pixels(), &[7, 8]);
        assert_eq!(img.dims(), (2, 1));
    }

    #[test]
    fn raster_may_start_with_whitespace_bytes() {
        let img = decode_pgm(b"P5\n2 1\n255\n\n ").unwrap();
        assert_eq!(img.pixels(), b"\n ");
    }

    #[test]
    fn rejects_bad_inputs() {
        let cases: &[&[u8]] = &[
            b"P2\n2 2\n255\n1 2 3 4",
            b"P6\n1 1\n255\nabc",
            b"\x89PNG",
            b"P5\n2 2\n255\n\x01\x02\x03",
            b"P5\n2 2\n65535\n\x01\x02\x03\x04",
            b"P5\n2 2\n15\n\x01\x02\x03\x04",
            b"P5\n2\n",
            b"P5\n0 2\n255\n",
            b"P52 2 255 abcd",
            b"P5\n2 2\n255",
        ];
        for case in cases {
            assert!(
                decode_pgm(case).is_err(),
                "{:?}",
                String::from_utf8_lossy(case)
            );
        }
        let msg = decode_pgm(b"P2\n1 1\n255\n0").unwrap_err().to_string();
        assert!(msg.contains("unsupported variant"), "{msg}");
        let msg = decode_pgm(b"P5\n2 2\n255\n\x01\x02\x03")
            .unwrap_err()
            .to_string();
        assert!(msg.contains("short read"), "{msg}");
    }

    #[test]
    fn canonical_header_length() {
        let bytes = encode_pgm(&Image::new(1, 1, vec![7]).unwrap());
        assert_eq!(bytes, b"P5\n1 1\n255\n\x07");
        assert_eq!(bytes.len(), 11 + 1);
    }

    #[test]
    fn missing_file_is_io_error() {
        assert!(matches!(
            read_pgm("/nonexistent/dir/x.pgm"),
            Err(Error::Io(_))
        ));
    }
}
