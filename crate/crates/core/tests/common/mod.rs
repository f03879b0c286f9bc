#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use scancrypt::{Image, Keyword, Pattern, PipelineExpr, ScanSpec};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_image(rng: &mut impl Rng, rows: usize, cols: usize) -> Image {
    let mut px = vec![0u8; rows * cols];
    rng.fill(px.as_mut_slice());
    Image::new(rows, cols, px).unwrap()
}

pub fn random_spec(rng: &mut impl Rng) -> ScanSpec {
    ScanSpec::new(*Pattern::ALL.choose(rng).unwrap(), rng.gen_range(0..8)).unwrap()
}

pub fn random_keyword(rng: &mut impl Rng) -> Keyword {
    const ALPHABET: &[u8] = b"ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789";
    let len = rng.gen_range(1..12);
    let text: String = (0..len)
        .map(|_| *ALPHABET.choose(rng).unwrap() as char)
        .collect();
    Keyword::new(text).unwrap()
}

/// Any well-formed tree of depth at most `depth`; not necessarily decryptable.
pub fn random_tree(rng: &mut impl Rng, depth: usize) -> PipelineExpr {
    let leaf_only = depth <= 1;
    match if leaf_only {
        rng.gen_range(0..2)
    } else {
        rng.gen_range(0..4)
    } {
        0 => PipelineExpr::Img,
        1 => PipelineExpr::key(random_keyword(rng)),
        2 => PipelineExpr::scan(random_spec(rng), random_tree(rng, depth - 1)),
        _ => PipelineExpr::add(random_tree(rng, depth - 1), random_tree(rng, depth - 1)),
    }
}

/// A tree of depth at most `depth` that passes `validate_decryptable`.
pub fn random_decryptable(rng: &mut impl Rng, depth: usize) -> PipelineExpr {
    if depth <= 1 {
        return PipelineExpr::Img;
    }
    match rng.gen_range(0..3) {
        0 => PipelineExpr::Img,
        1 => PipelineExpr::scan(random_spec(rng), random_decryptable(rng, depth - 1)),
        _ => {
            let spine = random_decryptable(rng, depth - 1);
            let keyed = random_keyed(rng, depth - 1);
            if rng.gen() {
                PipelineExpr::add(spine, keyed)
            } else {
                PipelineExpr::add(keyed, spine)
            }
        }
    }
}

/// Key-only subtree made of scans over a single carrier.
fn random_keyed(rng: &mut impl Rng, depth: usize) -> PipelineExpr {
    if depth <= 1 || rng.gen_bool(0.5) {
        PipelineExpr::key(random_keyword(rng))
    } else {
        PipelineExpr::scan(random_spec(rng), random_keyed(rng, depth - 1))
    }
}

/// Applies one edit to canonical pipeline text that is guaranteed to make it
/// ungrammatical.
pub fn mutate_invalid(rng: &mut impl Rng, text: &str) -> String {
    let bytes = text.as_bytes();
    loop {
        match rng.gen_range(0..6) {
            0 => {
                let cut = rng.gen_range(0..bytes.len());
                return text[..cut].to_string();
            }
            1 => {
                const JUNK: &[char] = &[
                    '$', '#', '@', '!', '{', '}', '[', ']', ';', '=', '.', '-', '+', '*',
                ];
                let at = rng.gen_range(0..=bytes.len());
                let mut s = text.to_string();
                s.insert(at, *JUNK.choose(rng).unwrap());
                return s;
            }
            2 => {
                let targets: Vec<usize> = (0..bytes.len())
                    .filter(|&i| matches!(bytes[i], b'(' | b')' | b',' | b'"'))
                    .collect();
                if let Some(&i) = targets.choose(rng) {
                    let mut s = text.to_string();
                    s.remove(i);
                    return s;
                }
            }
            3 => {
                // scan specs sit right after "scan("
                let specs: Vec<usize> = text.match_indices("scan(").map(|(i, _)| i + 5).collect();
                if let Some(&i) = specs.choose(rng) {
                    let mut s = text.to_string();
                    if rng.gen() {
                        s.replace_range(i + 1..i + 2, if rng.gen() { "8" } else { "9" });
                    } else {
                        s.replace_range(i..i + 1, ["X", "c", "Q", "A"].choose(rng).unwrap());
                    }
                    return s;
                }
            }
            4 => {
                let names: Vec<(usize, &str)> = ["img", "add", "scan", "key"]
                    .iter()
                    .flat_map(|n| {
                        text.match_indices(n)
                            .filter(|(i, _)| !inside_quotes(text, *i))
                    })
                    .collect();
                if let Some(&(i, name)) = names.choose(rng) {
                    let mut s = text.to_string();
                    s.replace_range(i..i + name.len(), &name.to_uppercase());
                    return s;
                }
            }
            _ => return format!("{text})"),
        }
    }
}

fn inside_quotes(text: &str, at: usize) -> bool {
    text[..at].matches('"').count() % 2 == 1
}
