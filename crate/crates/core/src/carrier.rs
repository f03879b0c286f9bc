//! The 4-out-of-8 code and keyword carrier images.
//!
//! Every codeword has two set bits in each nibble, which yields exactly
//! 6 x 6 = 36 codewords: one for each letter (case-folded) and digit.

use std::fmt;

use crate::error::{Error, Result};
use crate::image::Image;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CodeEntry {
    /// Upper and lower case letter, or the same digit twice.
    pub characters: (char, char),
    pub codeword: u8,
}

impl CodeEntry {
    const fn letter(upper: char, codeword: u8) -> Self {
        Self {
            characters: (upper, upper.to_ascii_lowercase()),
            codeword,
        }
    }

    const fn digit(d: char, codeword: u8) -> Self {
        Self {
            characters: (d, d),
            codeword,
        }
    }
}

pub type CodeTable = [CodeEntry; 36];

static TABLE: CodeTable = [
    CodeEntry::letter('A', 0x33),
    CodeEntry::letter('B', 0x35),
    CodeEntry::letter('C', 0x36),
    CodeEntry::letter('D', 0x39),
    CodeEntry::letter('E', 0x3A),
    CodeEntry::letter('F', 0x3C),
    CodeEntry::letter('G', 0x53),
    CodeEntry::letter('H', 0x55),
    CodeEntry::letter('I', 0x56),
    CodeEntry::letter('J', 0x59),
    CodeEntry::letter('K', 0x5A),
    CodeEntry::letter('L', 0x5C),
    CodeEntry::letter('M', 0x63),
    CodeEntry::letter('N', 0x65),
    CodeEntry::letter('O', 0x66),
    CodeEntry::letter('P', 0x69),
    CodeEntry::letter('Q', 0x6A),
    CodeEntry::letter('R', 0x6C),
    CodeEntry::letter('S', 0x93),
    CodeEntry::letter('T', 0x95),
    CodeEntry::letter('U', 0x96),
    CodeEntry::letter('V', 0x99),
    CodeEntry::letter('W', 0x9A),
    CodeEntry::letter('X', 0x9C),
    CodeEntry::letter('Y', 0xA3),
    CodeEntry::letter('Z', 0xA5),
    CodeEntry::digit('0', 0xA6),
    CodeEntry::digit('1', 0xA9),
    CodeEntry::digit('2', 0xAA),
    CodeEntry::digit('3', 0xAC),
    CodeEntry::digit('4', 0xC3),
    CodeEntry::digit('5', 0xC5),
    CodeEntry::digit('6', 0xC6),
    CodeEntry::digit('7', 0xC9),
    CodeEntry::digit('8', 0xCA),
    CodeEntry::digit('9', 0xCC),
];

/// The 36 entries, A-Z then 0-9.
pub fn code_table() -> &'static CodeTable {
    &TABLE
}

pub fn codeword(ch: char) -> Result<u8> {
    lookup(ch).ok_or(Error::InvalidKeywordChar { ch, index: None })
}

fn lookup(ch: char) -> Option<u8> {
    let idx = match ch {
        'A'..='Z' => ch as usize - 'A' as usize,
        'a'..='z' => ch as usize - 'a' as usize,
        '0'..='9' => 26 + (ch as usize - '0' as usize),
        _ => return None,
    };
    Some(TABLE[idx].codeword)
}

/// Non-empty ASCII-alphanumeric key text.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Keyword(String);

impl Keyword {
    pub fn new(text: impl Into<String>) -> Result<Self> {
        let text = text.into();
        if text.is_empty() {
            return Err(Error::EmptyKeyword);
        }
        if let Some((index, ch)) = text
            .chars()
            .enumerate()
            .find(|(_, c)| !c.is_ascii_alphanumeric())
        {
            return Err(Error::InvalidKeywordChar {
                ch,
                index: Some(index),
            });
        }
        Ok(Self(text))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Keyword {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::str::FromStr for Keyword {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Keyword::new(s)
    }
}

pub fn keyword_bytes(kw: &Keyword) -> Vec<u8> {
    kw.0.chars()
        .map(|c| lookup(c).expect("keyword validated on construction"))
        .collect()
}

/// Tiles the keyword's codewords row-major over a `rows x cols` image,
/// repeating and truncating as needed.
pub fn build_carrier(kw: &Keyword, rows: usize, cols: usize) -> Result<Image> {
    let bytes = keyword_bytes(kw);
    let pixels = bytes.iter().copied().cycle().take(rows * cols).collect();
    Image::new(rows, cols, pixels)
}
