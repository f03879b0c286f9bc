//! Distortion measures for plaintext/ciphertext comparison.
//!
//! Everything floating-point is generic over [`num_traits::Float`]; the crate
//! root exposes `f64` aliases.

use std::fmt;

use num_traits::Float;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::image::Image;

pub type Histogram = [u64; 256];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Horizontal,
    Vertical,
    Diagonal,
}

impl Direction {
    pub const ALL: [Direction; 3] = [
        Direction::Horizontal,
        Direction::Vertical,
        Direction::Diagonal,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Direction::Horizontal => "horizontal",
            Direction::Vertical => "vertical",
            Direction::Diagonal => "diagonal",
        }
    }

    /// Offset from a pixel to its neighbour.
    fn step(self) -> (usize, usize) {
        match self {
            Direction::Horizontal => (0, 1),
            Direction::Vertical => (1, 0),
            Direction::Diagonal => (1, 1),
        }
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

pub fn histogram(img: &Image) -> Histogram {
    let mut counts = [0u64; 256];
    for &p in img.pixels() {
        counts[p as usize] += 1;
    }
    counts
}

fn cast<F: Float>(v: impl num_traits::ToPrimitive) -> F {
    F::from(v).expect("value representable in float type")
}

/// Shannon entropy in bits per pixel.
pub fn entropy<F: Float>(img: &Image) -> F {
    let total: F = cast(img.len());
    let h = histogram(img)
        .iter()
        .filter(|&&n| n > 0)
        .fold(F::zero(), |acc, &n| {
            let p = cast::<F>(n) / total;
            acc - p * p.log2()
        });
    // a single-valued image sums to -0.0
    h.max(F::zero())
}

/// Pearson correlation of all adjacent pixel pairs in `direction`.
///
/// `Ok(None)` means undefined: one of the two marginals has zero variance.
pub fn adjacent_correlation<F: Float>(img: &Image, direction: Direction) -> Result<Option<F>> {
    let (dr, dc) = direction.step();
    let (rows, cols) = img.dims();
    if rows <= dr || cols <= dc {
        return Err(Error::TooSmallForCorrelation {
            direction: direction.name(),
        });
    }
    let pairs = || {
        (0..rows - dr).flat_map(move |r| {
            (0..cols - dc)
                .map(move |c| (cast::<F>(img.get(r, c)), cast::<F>(img.get(r + dr, c + dc))))
        })
    };
    let n: F = cast((rows - dr) * (cols - dc));
    let (sx, sy) = pairs().fold((F::zero(), F::zero()), |(a, b), (x, y)| (a + x, b + y));
    let (mx, my) = (sx / n, sy / n);
    let (mut sxy, mut sxx, mut syy) = (F::zero(), F::zero(), F::zero());
    for (x, y) in pairs() {
        let (dx, dy) = (x - mx, y - my);
        sxy = sxy + dx * dy;
        sxx = sxx + dx * dx;
        syy = syy + dy * dy;
    }
    if sxx == F::zero() || syy == F::zero() {
        return Ok(None);
    }
    let r = sxy / (sxx.sqrt() * syy.sqrt());
    Ok(Some(r.max(-F::one()).min(F::one())))
}

/// Number of pixels change rate and unified average changed intensity, both
/// as percentages.
pub fn npcr_uaci<F: Float>(a: &Image, b: &Image) -> Result<(F, F)> {
    a.ensure_same_dims(b)?;
    let n: F = cast(a.len());
    let (changed, abs_sum) = a
        .pixels()
        .iter()
        .zip(b.pixels())
        .fold((0u64, 0u64), |(cnt, sum), (&p, &q)| {
            (cnt + u64::from(p != q), sum + u64::from(p.abs_diff(q)))
        });
    let hundred: F = cast(100);
    let npcr = hundred * cast::<F>(changed) / n;
    let uaci = hundred * cast::<F>(abs_sum) / (n * cast::<F>(255));
    Ok((npcr, uaci))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Correlations<F> {
    pub horizontal: Option<F>,
    pub vertical: Option<F>,
    pub diagonal: Option<F>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report<F> {
    pub rows: usize,
    pub cols: usize,
    #[serde(serialize_with = "serialize_histogram")]
    pub histogram: Histogram,
    pub entropy: F,
    pub correlations: Correlations<F>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub npcr: Option<F>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub uaci: Option<F>,
}

fn serialize_histogram<S: serde::Serializer>(
    h: &Histogram,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(h.iter())
}

pub fn report<F: Float>(img: &Image, reference: Option<&Image>) -> Result<Report<F>> {
    let (npcr, uaci) = match reference {
        Some(r) => {
            let (n, u) = npcr_uaci(img, r)?;
            (Some(n), Some(u))
        }
        None => (None, None),
    };
    Ok(Report {
        rows: img.rows(),
        cols: img.cols(),
        histogram: histogram(img),
        entropy: entropy(img),
        correlations: Correlations {
            horizontal: adjacent_correlation(img, Direction::Horizontal)?,
            vertical: adjacent_correlation(img, Direction::Vertical)?,
            diagonal: adjacent_correlation(img, Direction::Diagonal)?,
        },
        npcr,
        uaci,
    })
}

impl<F: Float + fmt::Display> Report<F> {
    /// `key=value` lines, one metric per line.
    pub fn to_text(&self) -> String {
        let opt = |v: Option<F>| v.map_or_else(|| "undefined".to_string(), |x| x.to_string());
        let mut out = String::new();
        out.push_str(&format!("rows={}\ncols={}\n", self.rows, self.cols));
        out.push_str(&format!("entropy={}\n", self.entropy));
        out.push_str(&format!(
            "correlation.horizontal={}\n",
            opt(self.correlations.horizontal)
        ));
        out.push_str(&format!(
            "correlation.vertical={}\n",
            opt(self.correlations.vertical)
        ));
        out.push_str(&format!(
            "correlation.diagonal={}\n",
            opt(self.correlations.diagonal)
        ));
        if let Some(npcr) = self.npcr {
            out.push_str(&format!("npcr={npcr}\n"));
        }
        if let Some(uaci) = self.uaci {
            out.push_str(&format!("uaci={uaci}\n"));
        }
        let hist: Vec<String> = self.histogram.iter().map(u64::to_string).collect();
        out.push_str(&format!("histogram={}\n", hist.join(",")));
        out
    }
}

impl<F: Serialize> Report<F> {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}
