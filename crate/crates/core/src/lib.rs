//! Grayscale image encryption by SCAN-order pixel permutation and keyword
//! carrier images, composed through a small pipeline language.
//!
//! ```
//! use scancrypt::{decrypt, encrypt, fixtures, parse_pipeline};
//!
//! let img = fixtures::gradient(32, 32);
//! let key = parse_pipeline(r#"scan(D0, add(scan(D0, img), scan(D0, key("UniversityOfMysore"))))"#)?;
//! let hidden = encrypt(&img, &key)?;
//! assert_ne!(hidden, img);
//! assert_eq!(decrypt(&hidden, &key)?, img);
//! # Ok::<(), scancrypt::Error>(())
//! ```

pub mod carrier;
pub mod cipher;
pub mod cli;
mod error;
pub mod fixtures;
pub mod grid_scan;
mod image;
pub mod keylang;
pub mod metrics;
pub mod pgm;

pub use carrier::{
    build_carrier, code_table, codeword, keyword_bytes, CodeEntry, CodeTable, Keyword,
};
pub use cipher::{add_mod256, decrypt, encrypt, preset_pipeline, sub_mod256, PresetVariant};
pub use error::{Error, ParseError, Result};
pub use grid_scan::{
    apply_path, generate_path, invert_path, unapply_path, Pattern, ScanInverse, ScanPath, ScanSpec,
};
pub use image::Image;
pub use keylang::{
    format_pipeline, parse_pipeline, validate_decryptable, Diagnostic, PipelineExpr,
};
pub use metrics::Direction;
pub use pgm::{read_pgm, write_pgm};

/// Metrics report with `f64` fields.
pub type MetricsReport = metrics::Report<f64>;
/// Metrics report with `f32` fields.
pub type MetricsReport32 = metrics::Report<f32>;
pub type Correlations = metrics::Correlations<f64>;

pub fn entropy(img: &Image) -> f64 {
    metrics::entropy(img)
}

pub fn adjacent_correlation(img: &Image, direction: Direction) -> Result<Option<f64>> {
    metrics::adjacent_correlation(img, direction)
}

pub fn npcr_uaci(img: &Image, other: &Image) -> Result<(f64, f64)> {
    metrics::npcr_uaci(img, other)
}

pub fn report(img: &Image, reference: Option<&Image>) -> Result<MetricsReport> {
    metrics::report(img, reference)
}
