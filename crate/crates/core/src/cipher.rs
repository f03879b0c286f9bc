//! Evaluating pipelines forward (encrypt) and undoing them (decrypt).

use std::fmt;
use std::str::FromStr;

use crate::carrier::{build_carrier, Keyword};
use crate::error::{Error, Result};
use crate::grid_scan::{apply_path, generate_path, unapply_path, ScanSpec};
use crate::image::Image;
use crate::keylang::{validate_decryptable, PipelineExpr};

pub fn add_mod256(a: &Image, b: &Image) -> Result<Image> {
    a.zip_with(b, u8::wrapping_add)
}

pub fn sub_mod256(a: &Image, b: &Image) -> Result<Image> {
    a.zip_with(b, u8::wrapping_sub)
}

pub fn encrypt(img: &Image, expr: &PipelineExpr) -> Result<Image> {
    validate_decryptable(expr).map_err(Error::NotDecryptable)?;
    evaluate(expr, img, img.rows(), img.cols())
}

pub fn decrypt(img: &Image, expr: &PipelineExpr) -> Result<Image> {
    validate_decryptable(expr).map_err(Error::NotDecryptable)?;
    let (rows, cols) = img.dims();
    let mut current = img.clone();
    let mut node = expr;
    // peel the plaintext-bearing spine from the outside in
    loop {
        match node {
            PipelineExpr::Img => return Ok(current),
            PipelineExpr::Scan(spec, child) => {
                current = unapply_path(&current, &generate_path(*spec, rows, cols))?;
                node = child;
            }
            PipelineExpr::Add(l, r) => {
                let (spine, keyed) = if l.contains_img() { (l, r) } else { (r, l) };
                let keystream = evaluate(keyed, &current, rows, cols)?;
                current = sub_mod256(&current, &keystream)?;
                node = spine;
            }
            PipelineExpr::Key(_) => {
                unreachable!("validated pipelines keep key leaves off the spine")
            }
        }
    }
}

/// Forward evaluation with scans and carriers sized `rows x cols`.
fn evaluate(expr: &PipelineExpr, img: &Image, rows: usize, cols: usize) -> Result<Image> {
    match expr {
        PipelineExpr::Img => Ok(img.clone()),
        PipelineExpr::Key(kw) => build_carrier(kw, rows, cols),
        PipelineExpr::Scan(spec, child) => {
            let inner = evaluate(child, img, rows, cols)?;
            apply_path(&inner, &generate_path(*spec, rows, cols))
        }
        PipelineExpr::Add(l, r) => add_mod256(
            &evaluate(l, img, rows, cols)?,
            &evaluate(r, img, rows, cols)?,
        ),
    }
}

/// The five pipeline layouts of the reference experiment, rows (a) to (e).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PresetVariant {
    A,
    B,
    C,
    D,
    E,
}

impl PresetVariant {
    pub const ALL: [PresetVariant; 5] = [
        PresetVariant::A,
        PresetVariant::B,
        PresetVariant::C,
        PresetVariant::D,
        PresetVariant::E,
    ];

    pub fn tag(self) -> char {
        match self {
            PresetVariant::A => 'a',
            PresetVariant::B => 'b',
            PresetVariant::C => 'c',
            PresetVariant::D => 'd',
            PresetVariant::E => 'e',
        }
    }
}

impl fmt::Display for PresetVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.tag())
    }
}

impl FromStr for PresetVariant {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "a" | "A" => Ok(PresetVariant::A),
            "b" | "B" => Ok(PresetVariant::B),
            "c" | "C" => Ok(PresetVariant::C),
            "d" | "D" => Ok(PresetVariant::D),
            "e" | "E" => Ok(PresetVariant::E),
            _ => Err(format!(
                "unknown preset {s:?}, expected one of a, b, c, d, e"
            )),
        }
    }
}

/// Scan spec bound to the experiment's unqualified "dscan".
pub fn default_scan() -> ScanSpec {
    "D0".parse().expect("valid literal")
}

pub fn preset_pipeline(variant: PresetVariant, spec: ScanSpec, kw: &Keyword) -> PipelineExpr {
    use PipelineExpr::Img;
    let key = || PipelineExpr::key(kw.clone());
    match variant {
        PresetVariant::A => PipelineExpr::scan(spec, Img),
        PresetVariant::B => PipelineExpr::add(Img, key()),
        PresetVariant::C => PipelineExpr::add(PipelineExpr::scan(spec, Img), key()),
        PresetVariant::D => PipelineExpr::add(Img, PipelineExpr::scan(spec, key())),
        PresetVariant::E => PipelineExpr::scan(
            spec,
            PipelineExpr::add(
                PipelineExpr::scan(spec, Img),
                PipelineExpr::scan(spec, key()),
            ),
        ),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::keylang::parse_pipeline;

    fn img(rows: usize, cols: usize, px: &[u8]) -> Image {
        Image::new(rows, cols, px.to_vec()).unwrap()
    }

    #[test]
    fn modular_arithmetic() {
        let a = img(1, 3, &[200, 0, 255]);
        let b = img(1, 3, &[170, 0, 1]);
        let sum = add_mod256(&a, &b).unwrap();
        assert_eq!(sum.pixels(), &[114, 0, 0]);
        assert_eq!(sub_mod256(&sum, &b).unwrap(), a);
        assert_eq!(
            sub_mod256(&img(1, 1, &[0]), &img(1, 1, &[1]))
                .unwrap()
                .pixels(),
            &[255]
        );
        let zero = Image::filled(1, 3, 0).unwrap();
        assert_eq!(sub_mod256(&a, &zero).unwrap(), a);
        assert!(matches!(
            add_mod256(&a, &Image::filled(3, 1, 0).unwrap()),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(sub_mod256(&a, &Image::filled(1, 2, 0).unwrap()).is_err());
    }

    #[test]
    fn identity_pipeline() {
        let x = img(2, 2, &[1, 2, 3, 4]);
        assert_eq!(encrypt(&x, &PipelineExpr::Img).unwrap(), x);
        assert_eq!(decrypt(&x, &PipelineExpr::Img).unwrap(), x);
    }

    #[test]
    fn constant_carrier_shifts_by_51() {
        let x = Image::from_fn(4, 5, |r, c| (r * 60 + c * 7) as u8).unwrap();
        let e = parse_pipeline(r#"add(img, key("A"))"#).unwrap();
        let y = encrypt(&x, &e).unwrap();
        for (&p, &q) in x.pixels().iter().zip(y.pixels()) {
            assert_eq!(q, p.wrapping_add(51));
        }
        assert_eq!(decrypt(&y, &e).unwrap(), x);
    }

    #[test]
    fn scan_pipeline_matches_gather() {
        let x = img(2, 2, &[10, 20, 30, 40]);
        let y = encrypt(&x, &parse_pipeline("scan(C0, img)").unwrap()).unwrap();
        assert_eq!(y.pixels(), &[10, 20, 40, 30]);
    }

    #[test]
    fn rejects_undecryptable_pipelines() {
        let x = img(1, 1, &[0]);
        for text in ["add(img, img)", r#"key("A")"#, r#"add(key("A"), key("B"))"#] {
            let e = parse_pipeline(text).unwrap();
            assert!(
                matches!(encrypt(&x, &e), Err(Error::NotDecryptable(_))),
                "{text}"
            );
            assert!(
                matches!(decrypt(&x, &e), Err(Error::NotDecryptable(_))),
                "{text}"
            );
        }
    }

    #[test]
    fn key_on_the_left_of_add() {
        let x = Image::from_fn(3, 7, |r, c| (r * 31 + c * 3) as u8).unwrap();
        let e = parse_pipeline(r#"scan(O3, add(scan(S2, key("Hybrid")), scan(D5, img)))"#).unwrap();
        assert_eq!(decrypt(&encrypt(&x, &e).unwrap(), &e).unwrap(), x);
    }

    #[test]
    fn preset_shapes() {
        let kw = Keyword::new("UniversityOfMysore").unwrap();
        let d0 = default_scan();
        let text = |v| preset_pipeline(v, d0, &kw).to_string();
        assert_eq!(text(PresetVariant::A), "scan(D0, img)");
        assert_eq!(
            text(PresetVariant::B),
            r#"add(img, key("UniversityOfMysore"))"#
        );
        assert_eq!(
            text(PresetVariant::C),
            r#"add(scan(D0, img), key("UniversityOfMysore"))"#
        );
        assert_eq!(
            text(PresetVariant::D),
            r#"add(img, scan(D0, key("UniversityOfMysore")))"#
        );
        assert_eq!(
            text(PresetVariant::E),
            r#"scan(D0, add(scan(D0, img), scan(D0, key("UniversityOfMysore"))))"#
        );
        for v in PresetVariant::ALL {
            assert_eq!(validate_decryptable(&preset_pipeline(v, d0, &kw)), Ok(()));
            assert_eq!(v.to_string().parse::<PresetVariant>(), Ok(v));
        }
    }
}
