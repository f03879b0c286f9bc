//! Pipeline expressions: the textual key describing how an image is encrypted.
//!
//! ```text
//! term := "scan" "(" SPEC "," term ")"
//!       | "add" "(" term "," term ")"
//!       | "img"
//!       | "key" "(" '"' KEYWORD '"' ")"
//! SPEC := ("C" | "D" | "O" | "S") ("0" ..= "7")
//! ```
//!
//! Whitespace is allowed between tokens. Nesting is limited to
//! [`MAX_DEPTH`] levels.

use std::fmt;

use crate::carrier::Keyword;
use crate::error::{Error, ParseError, Result};
use crate::grid_scan::ScanSpec;

pub const MAX_DEPTH: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum PipelineExpr {
    /// The plaintext image.
    Img,
    /// Carrier image built from a keyword.
    Key(Keyword),
    Scan(ScanSpec, Box<PipelineExpr>),
    Add(Box<PipelineExpr>, Box<PipelineExpr>),
}

impl PipelineExpr {
    pub fn key(kw: Keyword) -> Self {
        PipelineExpr::Key(kw)
    }

    pub fn scan(spec: ScanSpec, child: PipelineExpr) -> Self {
        PipelineExpr::Scan(spec, Box::new(child))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn add(left: PipelineExpr, right: PipelineExpr) -> Self {
        PipelineExpr::Add(Box::new(left), Box::new(right))
    }

    /// Number of `Img` leaves in this subtree.
    pub fn img_count(&self) -> usize {
        match self {
            PipelineExpr::Img => 1,
            PipelineExpr::Key(_) => 0,
            PipelineExpr::Scan(_, child) => child.img_count(),
            PipelineExpr::Add(l, r) => l.img_count() + r.img_count(),
        }
    }

    pub fn contains_img(&self) -> bool {
        self.img_count() > 0
    }

    pub fn depth(&self) -> usize {
        match self {
            PipelineExpr::Img | PipelineExpr::Key(_) => 1,
            PipelineExpr::Scan(_, child) => 1 + child.depth(),
            PipelineExpr::Add(l, r) => 1 + l.depth().max(r.depth()),
        }
    }
}

impl fmt::Display for PipelineExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PipelineExpr::Img => f.write_str("img"),
            PipelineExpr::Key(kw) => write!(f, "key(\"{kw}\")"),
            PipelineExpr::Scan(spec, child) => write!(f, "scan({spec}, {child})"),
            PipelineExpr::Add(l, r) => write!(f, "add({l}, {r})"),
        }
    }
}

impl std::str::FromStr for PipelineExpr {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_pipeline(s)
    }
}

pub fn format_pipeline(expr: &PipelineExpr) -> String {
    expr.to_string()
}

pub fn parse_pipeline(text: &str) -> Result<PipelineExpr> {
    let mut parser = Parser {
        src: text.as_bytes(),
        pos: 0,
    };
    let expr = parser.term(1)?;
    parser.skip_ws();
    if parser.pos < parser.src.len() {
        return Err(parser.error("unexpected trailing input").into());
    }
    Ok(expr)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn error(&self, message: impl Into<String>) -> ParseError {
        self.error_at(self.pos, message)
    }

    fn error_at(&self, position: usize, message: impl Into<String>) -> ParseError {
        ParseError {
            position,
            message: message.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.src.get(self.pos).is_some_and(u8::is_ascii_whitespace) {
            self.pos += 1;
        }
    }

    fn expect(&mut self, byte: u8) -> Result<(), ParseError> {
        self.skip_ws();
        if self.src.get(self.pos) == Some(&byte) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(format!("expected '{}'{}", byte as char, self.found())))
        }
    }

    fn found(&self) -> String {
        match self.src[self.pos..].iter().next() {
            None => ", found end of input".to_string(),
            Some(_) => {
                let rest = String::from_utf8_lossy(&self.src[self.pos..]);
                let ch = rest.chars().next().unwrap_or('?');
                format!(", found {ch:?}")
            }
        }
    }

    /// Reads a run of ASCII alphanumerics.
    fn word(&mut self) -> (usize, &'a str) {
        let start = self.pos;
        while self
            .src
            .get(self.pos)
            .is_some_and(u8::is_ascii_alphanumeric)
        {
            self.pos += 1;
        }
        // only ASCII bytes were consumed
        let src: &'a [u8] = self.src;
        (start, std::str::from_utf8(&src[start..self.pos]).unwrap())
    }

    fn term(&mut self, depth: usize) -> Result<PipelineExpr, ParseError> {
        if depth > MAX_DEPTH {
            return Err(self.error(format!("expression nested deeper than {MAX_DEPTH}")));
        }
        self.skip_ws();
        let (start, word) = self.word();
        match word {
            "img" => Ok(PipelineExpr::Img),
            "scan" => {
                self.expect(b'(')?;
                self.skip_ws();
                let (spec_at, spec_text) = self.word();
                if spec_text.is_empty() {
                    return Err(
                        self.error(format!("expected scan spec such as D0{}", self.found()))
                    );
                }
                let spec = spec_text
                    .parse::<ScanSpec>()
                    .map_err(|e| self.error_at(spec_at, e.to_string()))?;
                self.expect(b',')?;
                let child = self.term(depth + 1)?;
                self.expect(b')')?;
                Ok(PipelineExpr::scan(spec, child))
            }
            "add" => {
                self.expect(b'(')?;
                let left = self.term(depth + 1)?;
                self.expect(b',')?;
                let right = self.term(depth + 1)?;
                self.expect(b')')?;
                Ok(PipelineExpr::add(left, right))
            }
            "key" => {
                self.expect(b'(')?;
                self.expect(b'"')?;
                let text_at = self.pos;
                let close = self.src[self.pos..]
                    .iter()
                    .position(|&b| b == b'"')
                    .ok_or_else(|| self.error("unterminated keyword string"))?;
                let raw = String::from_utf8_lossy(&self.src[text_at..text_at + close]).into_owned();
                let kw = Keyword::new(raw.as_str()).map_err(|e| {
                    let offset = match e {
                        Error::InvalidKeywordChar { index: Some(i), .. } => {
                            raw.char_indices().nth(i).map_or(0, |(b, _)| b)
                        }
                        _ => 0,
                    };
                    self.error_at(text_at + offset, e.to_string())
                })?;
                self.pos = text_at + close + 1;
                self.expect(b')')?;
                Ok(PipelineExpr::key(kw))
            }
            "" => Err(self.error(format!(
                "expected 'scan', 'add', 'img' or 'key'{}",
                self.found()
            ))),
            other => Err(self.error_at(
                start,
                format!("unknown term {other:?}, expected 'scan', 'add', 'img' or 'key'"),
            )),
        }
    }
}

/// Location of a node: the child indices taken from the root.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct NodePath(pub Vec<usize>);

impl fmt::Display for NodePath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("root")?;
        for i in &self.0 {
            write!(f, ".{i}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DiagnosticKind {
    /// No `img` leaf: the output ignores the plaintext.
    NoPlaintext,
    /// More than one `img` leaf.
    MultiplePlaintext(usize),
    /// Both operands of an `add` depend on the plaintext.
    AddBothPlaintext,
    /// Neither operand of an `add` depends on the plaintext.
    AddNoPlaintext,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagnostic {
    pub node: NodePath,
    pub kind: DiagnosticKind,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            DiagnosticKind::NoPlaintext => {
                write!(
                    f,
                    "{}: no img leaf; pipeline ignores the plaintext",
                    self.node
                )
            }
            DiagnosticKind::MultiplePlaintext(n) => {
                write!(f, "{}: {n} img leaves; exactly one is required", self.node)
            }
            DiagnosticKind::AddBothPlaintext => write!(
                f,
                "add at {}: both operands contain the plaintext; not invertible",
                self.node
            ),
            DiagnosticKind::AddNoPlaintext => write!(
                f,
                "add at {}: neither operand contains the plaintext",
                self.node
            ),
        }
    }
}

/// Checks that `expr` can be undone: exactly one `img` leaf, and every `add`
/// has exactly one operand containing it.
pub fn validate_decryptable(expr: &PipelineExpr) -> Result<(), Vec<Diagnostic>> {
    let mut diags = Vec::new();
    match expr.img_count() {
        0 => diags.push(Diagnostic {
            node: NodePath::default(),
            kind: DiagnosticKind::NoPlaintext,
        }),
        1 => {}
        n => diags.push(Diagnostic {
            node: NodePath::default(),
            kind: DiagnosticKind::MultiplePlaintext(n),
        }),
    }
    check_adds(expr, &mut Vec::new(), &mut diags);
    if diags.is_empty() {
        Ok(())
    } else {
        Err(diags)
    }
}

fn check_adds(expr: &PipelineExpr, path: &mut Vec<usize>, diags: &mut Vec<Diagnostic>) {
    match expr {
        PipelineExpr::Img | PipelineExpr::Key(_) => {}
        PipelineExpr::Scan(_, child) => {
            path.push(0);
            check_adds(child, path, diags);
            path.pop();
        }
        PipelineExpr::Add(l, r) => {
            let kind = match (l.contains_img(), r.contains_img()) {
                (true, true) => Some(DiagnosticKind::AddBothPlaintext),
                (false, false) => Some(DiagnosticKind::AddNoPlaintext),
                _ => None,
            };
            if let Some(kind) = kind {
                diags.push(Diagnostic {
                    node: NodePath(path.clone()),
                    kind,
                });
            }
            for (i, child) in [l, r].into_iter().enumerate() {
                path.push(i);
                check_adds(child, path, diags);
                path.pop();
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid_scan::Pattern;

    fn spec(p: Pattern, t: u8) -> ScanSpec {
        ScanSpec::new(p, t).unwrap()
    }

    #[test]
    fn parses_leaves_and_nodes() {
        assert_eq!(parse_pipeline("img").unwrap(), PipelineExpr::Img);
        assert_eq!(
            parse_pipeline("scan(D3, img)").unwrap(),
            PipelineExpr::scan(spec(Pattern::D, 3), PipelineExpr::Img)
        );
        let kw = Keyword::new("UniversityOfMysore").unwrap();
        assert_eq!(
            parse_pipeline(r#"add(scan(D0, img), scan(D0, key("UniversityOfMysore")))"#).unwrap(),
            PipelineExpr::add(
                PipelineExpr::scan(spec(Pattern::D, 0), PipelineExpr::Img),
                PipelineExpr::scan(spec(Pattern::D, 0), PipelineExpr::key(kw)),
            )
        );
    }

    #[test]
    fn whitespace_between_tokens() {
        let a = parse_pipeline(" add ( scan ( C1 ,img ) ,\n\tkey ( \"Ab1\" ) ) ").unwrap();
        let b = parse_pipeline(r#"add(scan(C1, img), key("Ab1"))"#).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn rejects_bad_specs_and_keywords() {
        for bad in [
            "scan(X9, img)",
            "scan(D8, img)",
            "scan(d0, img)",
            "scan(D, img)",
            "scan(, img)",
        ] {
            let err = parse_pipeline(bad).unwrap_err();
            assert!(matches!(err, Error::Parse(_)), "{bad}: {err}");
        }
        let err = parse_pipeline(r#"key("ab$c")"#).unwrap_err();
        match err {
            Error::Parse(p) => {
                assert_eq!(p.position, 7);
                assert!(p.message.contains("'$'"), "{}", p.message);
            }
            other => panic!("{other}"),
        }
        assert!(parse_pipeline(r#"key("")"#).is_err());
        assert!(parse_pipeline(r#"key("abc)"#).is_err());
    }

    #[test]
    fn keywords_and_letters_are_case_sensitive() {
        assert!(parse_pipeline("IMG").is_err());
        assert!(parse_pipeline("Scan(D0, img)").is_err());
        assert!(parse_pipeline("img img").is_err());
        assert!(parse_pipeline("").is_err());
    }

    #[test]
    fn depth_limit() {
        let mut text = "img".to_string();
        for _ in 0..MAX_DEPTH - 1 {
            text = format!("scan(C0, {text})");
        }
        assert_eq!(parse_pipeline(&text).unwrap().depth(), MAX_DEPTH);
        let deeper = format!("scan(C0, {text})");
        let err = parse_pipeline(&deeper).unwrap_err();
        assert!(err.to_string().contains("deeper"), "{err}");
    }

    #[test]
    fn formats_canonically() {
        assert_eq!(format_pipeline(&PipelineExpr::Img), "img");
        assert_eq!(
            format_pipeline(&PipelineExpr::scan(spec(Pattern::S, 5), PipelineExpr::Img)),
            "scan(S5, img)"
        );
        let e = parse_pipeline("add( img ,key(\"xY\"))").unwrap();
        assert_eq!(format_pipeline(&e), "add(img, key(\"xY\"))");
    }

    #[test]
    fn decryptability() {
        assert_eq!(validate_decryptable(&PipelineExpr::Img), Ok(()));

        let diags = validate_decryptable(&parse_pipeline("add(img, img)").unwrap()).unwrap_err();
        assert!(diags.contains(&Diagnostic {
            node: NodePath::default(),
            kind: DiagnosticKind::AddBothPlaintext
        }));
        assert!(diags
            .iter()
            .any(|d| d.kind == DiagnosticKind::MultiplePlaintext(2)));

        let diags = validate_decryptable(&parse_pipeline(r#"add(key("A"), key("B"))"#).unwrap())
            .unwrap_err();
        assert!(diags.iter().any(|d| d.kind == DiagnosticKind::NoPlaintext));
        assert!(diags[0].to_string().contains("ignores the plaintext"));

        let nested =
            parse_pipeline(r#"scan(D0, add(key("A"), add(img, scan(S1, key("B")))))"#).unwrap();
        assert_eq!(validate_decryptable(&nested), Ok(()));

        let inner = parse_pipeline(r#"add(img, add(key("A"), key("B")))"#).unwrap();
        let diags = validate_decryptable(&inner).unwrap_err();
        assert_eq!(diags.len(), 1);
        assert_eq!(diags[0].node.to_string(), "root.1");
        assert_eq!(diags[0].kind, DiagnosticKind::AddNoPlaintext);
    }
}
