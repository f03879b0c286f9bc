//! The four SCAN base patterns, their eight transformations, and the
//! gather/scatter permutations they induce on images.
//!
//! Base geometry (transform 0), cells are `(row, col)` from the top-left:
//!
//! * `C` continuous raster: row snake, row 0 left to right, row 1 right to left, ...
//! * `D` continuous diagonal: zigzag over anti-diagonals from `(0, 0)`, the
//!   order used for JPEG coefficients, generalized to rectangles.
//! * `O` continuous orthogonal: column snake, column 0 top to bottom, ...
//! * `S` spiral: clockwise inward from `(0, 0)`.
//!
//! Transform 2 mirrors transform 0 left-right, 4 rotates it by 180 degrees and
//! 6 mirrors it top-bottom. Every odd transform visits the cells of the
//! preceding even transform in reverse.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::image::Image;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Pattern {
    /// Continuous raster.
    C,
    /// Continuous diagonal.
    D,
    /// Continuous orthogonal.
    O,
    /// Spiral.
    S,
}

impl Pattern {
    pub const ALL: [Pattern; 4] = [Pattern::C, Pattern::D, Pattern::O, Pattern::S];

    pub fn letter(self) -> char {
        match self {
            Pattern::C => 'C',
            Pattern::D => 'D',
            Pattern::O => 'O',
            Pattern::S => 'S',
        }
    }

    pub fn from_letter(ch: char) -> Option<Self> {
        match ch {
            'C' => Some(Pattern::C),
            'D' => Some(Pattern::D),
            'O' => Some(Pattern::O),
            'S' => Some(Pattern::S),
            _ => None,
        }
    }
}

/// A base pattern together with one of its eight transformations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ScanSpec {
    pattern: Pattern,
    transform: u8,
}

impl ScanSpec {
    pub const TRANSFORMS: std::ops::Range<u8> = 0..8;

    pub fn new(pattern: Pattern, transform: u8) -> Result<Self> {
        if transform > 7 {
            return Err(Error::InvalidScanSpec(format!(
                "{}{}",
                pattern.letter(),
                transform
            )));
        }
        Ok(Self { pattern, transform })
    }

    pub fn pattern(self) -> Pattern {
        self.pattern
    }

    pub fn transform(self) -> u8 {
        self.transform
    }

    /// All 32 specs, pattern-major.
    pub fn all() -> impl Iterator<Item = ScanSpec> {
        Pattern::ALL.into_iter().flat_map(|pattern| {
            Self::TRANSFORMS.map(move |transform| ScanSpec { pattern, transform })
        })
    }
}

impl fmt::Display for ScanSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.pattern.letter(), self.transform)
    }
}

impl FromStr for ScanSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidScanSpec(s.to_string());
        let mut chars = s.chars();
        let pattern = chars
            .next()
            .and_then(Pattern::from_letter)
            .ok_or_else(bad)?;
        let digit = chars.next().and_then(|c| c.to_digit(10)).ok_or_else(bad)?;
        if chars.next().is_some() || digit > 7 {
            return Err(bad());
        }
        Ok(ScanSpec {
            pattern,
            transform: digit as u8,
        })
    }
}

pub type Cell = (usize, usize);

/// An explicit visit order over every cell of a `rows x cols` grid.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ScanPath {
    rows: usize,
    cols: usize,
    order: Vec<Cell>,
}

impl ScanPath {
    /// Wraps an explicit order, checking that it visits every cell exactly once.
    pub fn from_order(rows: usize, cols: usize, order: Vec<Cell>) -> Result<Self> {
        let fail = |reason: String| Error::NotPermutation { rows, cols, reason };
        if rows == 0 || cols == 0 {
            return Err(fail("empty grid".into()));
        }
        if order.len() != rows * cols {
            return Err(fail(format!("{} cells listed", order.len())));
        }
        let mut seen = vec![false; rows * cols];
        for &(r, c) in &order {
            if r >= rows || c >= cols {
                return Err(fail(format!("cell ({r}, {c}) out of bounds")));
            }
            let idx = r * cols + c;
            if std::mem::replace(&mut seen[idx], true) {
                return Err(fail(format!("cell ({r}, {c}) visited twice")));
            }
        }
        Ok(Self { rows, cols, order })
    }

    /// Plain raster order.
    pub fn identity(rows: usize, cols: usize) -> Self {
        let order = (0..rows)
            .flat_map(|r| (0..cols).map(move |c| (r, c)))
            .collect();
        Self { rows, cols, order }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn order(&self) -> &[Cell] {
        &self.order
    }

    pub fn reversed(&self) -> Self {
        let mut order = self.order.clone();
        order.reverse();
        Self { order, ..*self }
    }

    pub fn invert(&self) -> ScanInverse {
        let mut position = vec![0; self.order.len()];
        for (k, &(r, c)) in self.order.iter().enumerate() {
            position[r * self.cols + c] = k;
        }
        ScanInverse {
            rows: self.rows,
            cols: self.cols,
            position,
        }
    }

    /// Raster index of each visited cell, in visit order.
    fn raster_indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.order.iter().map(move |&(r, c)| r * self.cols + c)
    }

    fn check_dims(&self, img: &Image) -> Result<()> {
        if img.dims() != (self.rows, self.cols) {
            return Err(Error::DimensionMismatch {
                left_rows: img.rows(),
                left_cols: img.cols(),
                right_rows: self.rows,
                right_cols: self.cols,
            });
        }
        Ok(())
    }
}

/// Inverse of a [`ScanPath`]: for each cell (raster indexed), the step at
/// which the path visits it.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ScanInverse {
    rows: usize,
    cols: usize,
    position: Vec<usize>,
}

impl ScanInverse {
    pub fn position_of(&self, cell: Cell) -> usize {
        self.position[cell.0 * self.cols + cell.1]
    }

    pub fn positions(&self) -> &[usize] {
        &self.position
    }

    pub fn invert(&self) -> ScanPath {
        let mut order = vec![(0, 0); self.position.len()];
        for (idx, &k) in self.position.iter().enumerate() {
            order[k] = (idx / self.cols, idx % self.cols);
        }
        ScanPath {
            rows: self.rows,
            cols: self.cols,
            order,
        }
    }
}

pub fn generate_path(spec: ScanSpec, rows: usize, cols: usize) -> ScanPath {
    assert!(rows >= 1 && cols >= 1, "scan grid must be at least 1x1");
    let base = match spec.pattern {
        Pattern::C => row_snake(rows, cols),
        Pattern::D => zigzag(rows, cols),
        Pattern::O => column_snake(rows, cols),
        Pattern::S => spiral(rows, cols),
    };
    let even = spec.transform & !1;
    let mut order: Vec<Cell> = base
        .into_iter()
        .map(|(r, c)| match even {
            0 => (r, c),
            2 => (r, cols - 1 - c),
            4 => (rows - 1 - r, cols - 1 - c),
            _ => (rows - 1 - r, c),
        })
        .collect();
    if spec.transform & 1 == 1 {
        order.reverse();
    }
    ScanPath { rows, cols, order }
}

pub fn invert_path(path: &ScanPath) -> ScanInverse {
    path.invert()
}

/// Gather: output raster position `k` takes the input pixel at `path.order[k]`.
pub fn apply_path(img: &Image, path: &ScanPath) -> Result<Image> {
    path.check_dims(img)?;
    let src = img.pixels();
    let pixels = path.raster_indices().map(|i| src[i]).collect();
    Image::new(img.rows(), img.cols(), pixels)
}

/// Scatter: inverse of [`apply_path`].
pub fn unapply_path(img: &Image, path: &ScanPath) -> Result<Image> {
    path.check_dims(img)?;
    let src = img.pixels();
    let mut pixels = vec![0u8; src.len()];
    for (k, i) in path.raster_indices().enumerate() {
        pixels[i] = src[k];
    }
    Image::new(img.rows(), img.cols(), pixels)
}

fn row_snake(rows: usize, cols: usize) -> Vec<Cell> {
    let mut out = Vec::with_capacity(rows * cols);
    for r in 0..rows {
        if r % 2 == 0 {
            out.extend((0..cols).map(|c| (r, c)));
        } else {
            out.extend((0..cols).rev().map(|c| (r, c)));
        }
    }
    out
}

fn column_snake(rows: usize, cols: usize) -> Vec<Cell> {
    let mut out = Vec::with_capacity(rows * cols);
    for c in 0..cols {
        if c % 2 == 0 {
            out.extend((0..rows).map(|r| (r, c)));
        } else {
            out.extend((0..rows).rev().map(|r| (r, c)));
        }
    }
    out
}

fn zigzag(rows: usize, cols: usize) -> Vec<Cell> {
    let mut out = Vec::with_capacity(rows * cols);
    for s in 0..rows + cols - 1 {
        let lo = s.saturating_sub(cols - 1);
        let hi = s.min(rows - 1);
        // even diagonals climb toward the top-right, odd ones descend
        if s % 2 == 0 {
            out.extend((lo..=hi).rev().map(|r| (r, s - r)));
        } else {
            out.extend((lo..=hi).map(|r| (r, s - r)));
        }
    }
    out
}

fn spiral(rows: usize, cols: usize) -> Vec<Cell> {
    let mut out = Vec::with_capacity(rows * cols);
    let (mut top, mut left) = (0usize, 0usize);
    let (mut bottom, mut right) = (rows - 1, cols - 1);
    loop {
        out.extend((left..=right).map(|c| (top, c)));
        if top == bottom {
            break;
        }
        out.extend((top + 1..=bottom).map(|r| (r, right)));
        if left == right {
            break;
        }
        out.extend((left..right).rev().map(|c| (bottom, c)));
        if top + 1 == bottom {
            break;
        }
        out.extend((top + 1..bottom).rev().map(|r| (r, left)));
        if left + 1 == right {
            break;
        }
        top += 1;
        bottom -= 1;
        left += 1;
        right -= 1;
        if top > bottom || left > right {
            break;
        }
    }
    out
}
