use crate::error::{Error, Result};

/// Rectangular 8-bit grayscale image stored row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Image {
    rows: usize,
    cols: usize,
    pixels: Vec<u8>,
}

impl Image {
    pub fn new(rows: usize, cols: usize, pixels: Vec<u8>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::EmptyImage { rows, cols });
        }
        if rows.checked_mul(cols) != Some(pixels.len()) {
            return Err(Error::PixelCount {
                rows,
                cols,
                actual: pixels.len(),
            });
        }
        Ok(Self { rows, cols, pixels })
    }

    pub fn filled(rows: usize, cols: usize, value: u8) -> Result<Self> {
        Self::new(rows, cols, vec![value; rows * cols])
    }

    /// Builds an image by evaluating `f(row, col)` at every cell.
    pub fn from_fn(
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> u8,
    ) -> Result<Self> {
        let mut pixels = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                pixels.push(f(r, c));
            }
        }
        Self::new(rows, cols, pixels)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn len(&self) -> usize {
        self.pixels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pixels.is_empty()
    }

    pub fn pixels(&self) -> &[u8] {
        &self.pixels
    }

    pub fn into_pixels(self) -> Vec<u8> {
        self.pixels
    }

    pub fn get(&self, row: usize, col: usize) -> u8 {
        self.pixels[row * self.cols + col]
    }

    pub(crate) fn ensure_same_dims(&self, other: &Image) -> Result<()> {
        if self.dims() != other.dims() {
            return Err(Error::DimensionMismatch {
                left_rows: self.rows,
                left_cols: self.cols,
                right_rows: other.rows,
                right_cols: other.cols,
            });
        }
        Ok(())
    }

    /// Pixel-wise combination of two equally sized images.
    pub(crate) fn zip_with(&self, other: &Image, f: impl Fn(u8, u8) -> u8) -> Result<Image> {
        self.ensure_same_dims(other)?;
        let pixels = self
            .pixels
            .iter()
            .zip(&other.pixels)
            .map(|(&a, &b)| f(a, b))
            .collect();
        Ok(Image {
            rows: self.rows,
            cols: self.cols,
            pixels,
        })
    }
}
