//! The `.kra` text format.
//!
//! ```text
//! # Standard Model leptons, one generation
//! factor c1 C 1
//! factor h2 H 1
//! kodim 6
//! families 3
//! vertex lL h2 c1 +
//! vertex eR c1~ c1 -
//! edge e lL -> eR label f_down
//! edge m a -> b matrix [[1, 1/2*i]]
//! jmap lL <-> lLc
//! ```
//!
//! Names are resolved after the whole file is read, so declarations may come in
//! any order.

use std::collections::HashMap;
use std::fmt::{self, Write as _};

use serde::Serialize;

use crate::algebra::{AlgebraFactor, FieldKind, FiniteAlgebra};
use crate::diagram::{DiagramVertex, EdgePair, KrajewskiDiagram, OperatorSpec, RepLabel, Sign};
use crate::exact::{ComplexRational, Matrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SourceSpan {
    pub line: usize,
    pub column: usize,
    pub length: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ParseError {
    pub span: SourceSpan,
    pub message: String,
    pub expected: Vec<String>,
}

impl ParseError {
    fn at(span: SourceSpan, message: impl Into<String>) -> Self {
        Self { span, message: message.into(), expected: Vec::new() }
    }

    fn expecting(span: SourceSpan, message: impl Into<String>, expected: &[&str]) -> Self {
        Self { span, message: message.into(), expected: expected.iter().map(|s| s.to_string()).collect() }
    }

    /// `file:line:col: message` followed by the offending line with a caret marker.
    pub fn render(&self, source: &str, origin: &str) -> String {
        let mut out = format!("{origin}:{}:{}: error: {}", self.span.line, self.span.column, self.message);
        if !self.expected.is_empty() {
            let _ = write!(out, " (expected {})", self.expected.join(", "));
        }
        if let Some(text) = source.lines().nth(self.span.line - 1) {
            let pad: String = " ".repeat(self.span.column - 1);
            let marks = "^".repeat(self.span.length.max(1));
            let _ = write!(out, "\n  | {text}\n  | {pad}{marks}");
        }
        out
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.span.line, self.span.column, self.message)?;
        if !self.expected.is_empty() {
            write!(f, " (expected {})", self.expected.join(", "))?;
        }
        Ok(())
    }
}

impl std::error::Error for ParseError {}

#[derive(Clone, Debug)]
struct Token<'a> {
    text: &'a str,
    span: SourceSpan,
}

/// Whitespace-separated tokens of one line, comments removed. Columns count chars.
fn tokenize(line_no: usize, line: &str) -> Vec<Token<'_>> {
    let code = line.split('#').next().unwrap_or("");
    let mut out = Vec::new();
    let mut start: Option<(usize, usize)> = None; // (byte, char column)
    let mut col = 0;
    for (byte, ch) in code.char_indices() {
        col += 1;
        if ch.is_whitespace() {
            if let Some((b, c)) = start.take() {
                let text = &code[b..byte];
                out.push(Token { text, span: SourceSpan { line: line_no, column: c, length: text.chars().count() } });
            }
        } else if start.is_none() {
            start = Some((byte, col));
        }
    }
    if let Some((b, c)) = start {
        let text = &code[b..];
        out.push(Token { text, span: SourceSpan { line: line_no, column: c, length: text.chars().count() } });
    }
    out
}

fn is_ident(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_alphanumeric() || c == '_')
        && chars.all(|c| c.is_alphanumeric() || matches!(c, '_' | '.' | '\'' | '-'))
}

fn ident<'a>(tok: Option<&Token<'a>>, after: &Token<'_>, what: &str) -> Result<Token<'a>, ParseError> {
    match tok {
        Some(t) if is_ident(t.text) => Ok(t.clone()),
        Some(t) => Err(ParseError::expecting(t.span, format!("`{}` is not a valid {what}", t.text), &[what])),
        None => Err(ParseError::expecting(end_of(after), format!("missing {what}"), &[what])),
    }
}

fn end_of(tok: &Token<'_>) -> SourceSpan {
    SourceSpan { line: tok.span.line, column: tok.span.column + tok.span.length, length: 0 }
}

fn keyword(tok: Option<&Token<'_>>, after: &Token<'_>, word: &str) -> Result<(), ParseError> {
    match tok {
        Some(t) if t.text == word => Ok(()),
        Some(t) => Err(ParseError::expecting(t.span, format!("expected `{word}`, found `{}`", t.text), &[word])),
        None => Err(ParseError::expecting(end_of(after), format!("expected `{word}`"), &[word])),
    }
}

fn integer(tok: Option<&Token<'_>>, after: &Token<'_>, what: &str) -> Result<(u32, SourceSpan), ParseError> {
    match tok {
        Some(t) => t
            .text
            .parse::<u32>()
            .map(|n| (n, t.span))
            .map_err(|_| ParseError::expecting(t.span, format!("`{}` is not a valid {what}", t.text), &[what])),
        None => Err(ParseError::expecting(end_of(after), format!("missing {what}"), &[what])),
    }
}

fn no_trailing(rest: &[Token<'_>]) -> Result<(), ParseError> {
    match rest.first() {
        Some(t) => Err(ParseError::expecting(t.span, format!("unexpected `{}`", t.text), &["end of line"])),
        None => Ok(()),
    }
}

struct RepRef {
    name: String,
    conjugate: bool,
    span: SourceSpan,
}

fn rep(tok: Option<&Token<'_>>, after: &Token<'_>) -> Result<RepRef, ParseError> {
    let t = tok.ok_or_else(|| ParseError::expecting(end_of(after), "missing representation", &["factor name"]))?;
    let (name, conjugate) = match t.text.strip_suffix('~') {
        Some(base) => (base, true),
        None => (t.text, false),
    };
    if !is_ident(name) {
        return Err(ParseError::expecting(t.span, format!("`{}` is not a representation", t.text), &["factor name", "factor name~"]));
    }
    Ok(RepRef { name: name.to_string(), conjugate, span: t.span })
}

struct VertexDecl {
    id: String,
    span: SourceSpan,
    col: RepRef,
    row: RepRef,
    sign: Option<Sign>,
}

struct EdgeDecl {
    id: String,
    source: (String, SourceSpan),
    target: (String, SourceSpan),
    operator: OperatorSpec,
}

/// Parses a bracketed row-major matrix literal; `offset` is the column of `text`'s first char.
fn matrix(text: &str, line: usize, offset: usize) -> Result<Matrix, ParseError> {
    let whole = SourceSpan { line, column: offset, length: text.chars().count() };
    let malformed = |msg: &str| ParseError::expecting(whole, format!("malformed matrix: {msg}"), &["[[a, b], [c, d]]"]);
    let inner = text
        .trim()
        .strip_prefix('[')
        .and_then(|s| s.strip_suffix(']'))
        .ok_or_else(|| malformed("missing outer brackets"))?
        .trim();
    let mut rows = Vec::new();
    let mut rest = inner;
    loop {
        let open = rest.strip_prefix('[').ok_or_else(|| malformed("expected `[` to start a row"))?;
        let close = open.find(']').ok_or_else(|| malformed("unterminated row"))?;
        let mut row = Vec::new();
        for entry in open[..close].split(',') {
            let compact: String = entry.chars().filter(|c| !c.is_whitespace()).collect();
            let value: ComplexRational =
                compact.parse().map_err(|_| malformed(&format!("`{}` is not a complex rational", entry.trim())))?;
            row.push(value);
        }
        rows.push(row);
        rest = open[close + 1..].trim_start();
        if rest.is_empty() {
            break;
        }
        rest = rest.strip_prefix(',').ok_or_else(|| malformed("expected `,` between rows"))?.trim_start();
    }
    Matrix::from_rows(rows).ok_or_else(|| malformed("rows have different lengths"))
}

pub fn parse(text: &str) -> Result<KrajewskiDiagram, ParseError> {
    let mut factors: Vec<(AlgebraFactor, SourceSpan)> = Vec::new();
    let mut kodim: Option<(u8, SourceSpan)> = None;
    let mut families: Option<(u32, SourceSpan)> = None;
    let mut vertices: Vec<VertexDecl> = Vec::new();
    let mut edges: Vec<EdgeDecl> = Vec::new();
    let mut jmap: Vec<((String, SourceSpan), (String, SourceSpan))> = Vec::new();
    let mut ids: HashMap<String, SourceSpan> = HashMap::new();

    let mut claim = |id: &Token<'_>, what: &str| -> Result<(), ParseError> {
        if let Some(prev) = ids.get(id.text) {
            return Err(ParseError::at(
                id.span,
                format!("duplicate {what} id `{}` (first declared on line {})", id.text, prev.line),
            ));
        }
        ids.insert(id.text.to_string(), id.span);
        Ok(())
    };

    for (i, line) in text.lines().enumerate() {
        let line_no = i + 1;
        let toks = tokenize(line_no, line);
        let Some(head) = toks.first() else { continue };
        let arg = |k: usize| toks.get(k);
        match head.text {
            "factor" => {
                let name = ident(arg(1), head, "factor name")?;
                let kind_tok = arg(2).ok_or_else(|| {
                    ParseError::expecting(end_of(&name), "missing field", &["R", "C", "H"])
                })?;
                let kind = FieldKind::from_symbol(kind_tok.text).ok_or_else(|| {
                    ParseError::expecting(kind_tok.span, format!("unknown field `{}`", kind_tok.text), &["R", "C", "H"])
                })?;
                let (size, size_span) = integer(arg(3), kind_tok, "matrix size")?;
                if size == 0 {
                    return Err(ParseError::at(size_span, "matrix size must be at least 1"));
                }
                no_trailing(&toks[4..])?;
                if let Some((_, prev)) = factors.iter().find(|(f, _)| f.name == name.text) {
                    return Err(ParseError::at(
                        name.span,
                        format!("duplicate factor `{}` (first declared on line {})", name.text, prev.line),
                    ));
                }
                factors.push((AlgebraFactor::new(name.text, kind, size), name.span));
            }
            "kodim" => {
                let (n, span) = integer(arg(1), head, "KO-dimension 0..7")?;
                if n > 7 {
                    return Err(ParseError::expecting(span, format!("KO-dimension {n} out of range"), &["0..7"]));
                }
                if kodim.is_some() {
                    return Err(ParseError::at(head.span, "kodim declared twice"));
                }
                no_trailing(&toks[2..])?;
                kodim = Some((n as u8, span));
            }
            "families" => {
                let (n, span) = integer(arg(1), head, "number of families")?;
                if n == 0 {
                    return Err(ParseError::at(span, "families must be positive"));
                }
                if families.is_some() {
                    return Err(ParseError::at(head.span, "families declared twice"));
                }
                no_trailing(&toks[2..])?;
                families = Some((n, span));
            }
            "vertex" => {
                let id = ident(arg(1), head, "vertex id")?;
                let col = rep(arg(2), &id)?;
                let row = rep(arg(3), toks.get(2).unwrap_or(&id))?;
                let sign = match arg(4) {
                    None => None,
                    Some(t) if t.text == "+" => Some(Sign::Plus),
                    Some(t) if t.text == "-" => Some(Sign::Minus),
                    Some(t) => {
                        return Err(ParseError::expecting(t.span, format!("`{}` is not a sign", t.text), &["+", "-"]))
                    }
                };
                no_trailing(toks.get(5..).unwrap_or(&[]))?;
                claim(&id, "vertex")?;
                vertices.push(VertexDecl { id: id.text.to_string(), span: id.span, col, row, sign });
            }
            "edge" => {
                let id = ident(arg(1), head, "edge id")?;
                let source = ident(arg(2), &id, "source vertex")?;
                keyword(arg(3), &source, "->")?;
                let target = ident(arg(4), &toks[3], "target vertex")?;
                let operator = match arg(5) {
                    None => OperatorSpec::Symbolic(id.text.to_string()),
                    Some(t) if t.text == "label" => {
                        let label = ident(arg(6), t, "label")?;
                        no_trailing(&toks[7..])?;
                        OperatorSpec::Symbolic(label.text.to_string())
                    }
                    Some(t) if t.text == "matrix" => {
                        let Some(first) = arg(6) else {
                            return Err(ParseError::expecting(end_of(t), "missing matrix literal", &["[[a, b], [c, d]]"]));
                        };
                        let code = line.split('#').next().unwrap_or("");
                        let byte = code.char_indices().nth(first.span.column - 1).map_or(code.len(), |(b, _)| b);
                        OperatorSpec::Numeric(matrix(code[byte..].trim_end(), line_no, first.span.column)?)
                    }
                    Some(t) => {
                        return Err(ParseError::expecting(
                            t.span,
                            format!("unexpected `{}` after edge", t.text),
                            &["label", "matrix", "end of line"],
                        ))
                    }
                };
                claim(&id, "edge")?;
                edges.push(EdgeDecl {
                    id: id.text.to_string(),
                    source: (source.text.to_string(), source.span),
                    target: (target.text.to_string(), target.span),
                    operator,
                });
            }
            "jmap" => {
                let a = ident(arg(1), head, "vertex id")?;
                keyword(arg(2), &a, "<->")?;
                let b = ident(arg(3), &toks[2], "vertex id")?;
                no_trailing(&toks[4..])?;
                jmap.push(((a.text.to_string(), a.span), (b.text.to_string(), b.span)));
            }
            other => {
                return Err(ParseError::expecting(
                    head.span,
                    format!("unknown directive `{other}`"),
                    &["factor", "kodim", "families", "vertex", "edge", "jmap"],
                ))
            }
        }
    }

    let top = SourceSpan { line: 1, column: 1, length: 0 };
    if factors.is_empty() {
        return Err(ParseError::expecting(top, "missing algebra declaration", &["factor"]));
    }
    let (kodim, _) = kodim.ok_or_else(|| ParseError::expecting(top, "missing kodim declaration", &["kodim"]))?;
    let families = families.map_or(1, |(n, _)| n);

    let names: HashMap<&str, usize> = factors.iter().enumerate().map(|(i, (f, _))| (f.name.as_str(), i)).collect();
    let resolve = |r: &RepRef| -> Result<RepLabel, ParseError> {
        names
            .get(r.name.as_str())
            .map(|&factor| RepLabel { factor, conjugate: r.conjugate })
            .ok_or_else(|| ParseError::at(r.span, format!("unknown factor `{}`", r.name)))
    };
    let mut out_vertices = Vec::new();
    for v in &vertices {
        out_vertices.push(DiagramVertex { id: v.id.clone(), col: resolve(&v.col)?, row: resolve(&v.row)?, sign: v.sign });
    }
    let vertex_ids: HashMap<&str, SourceSpan> = vertices.iter().map(|v| (v.id.as_str(), v.span)).collect();
    let known = |(name, span): &(String, SourceSpan)| -> Result<String, ParseError> {
        if vertex_ids.contains_key(name.as_str()) {
            Ok(name.clone())
        } else {
            Err(ParseError::at(*span, format!("unknown vertex `{name}`")))
        }
    };
    let mut out_edges = Vec::new();
    for e in edges {
        out_edges.push(EdgePair { id: e.id, source: known(&e.source)?, target: known(&e.target)?, operator: e.operator });
    }
    let mut out_jmap = Vec::new();
    for (a, b) in &jmap {
        out_jmap.push((known(a)?, known(b)?));
    }

    let algebra = FiniteAlgebra::new(factors.into_iter().map(|(f, _)| f).collect())
        .map_err(|e| ParseError::at(top, e.to_string()))?;
    Ok(KrajewskiDiagram { algebra, kodim, vertices: out_vertices, edges: out_edges, jmap: out_jmap, families })
}

/// Canonical text: factors in declaration order, then vertices, edges and
/// `jmap` pairs sorted by id.
pub fn serialize(d: &KrajewskiDiagram) -> String {
    let d = d.canonicalized();
    let mut out = String::new();
    for f in d.algebra.factors() {
        let _ = writeln!(out, "factor {} {} {}", f.name, f.kind.symbol(), f.size);
    }
    let _ = writeln!(out, "kodim {}", d.kodim);
    let _ = writeln!(out, "families {}", d.families);
    let mut vertices = d.vertices.clone();
    vertices.sort_by(|a, b| a.id.cmp(&b.id));
    if !vertices.is_empty() {
        out.push('\n');
    }
    for v in &vertices {
        let _ = write!(out, "vertex {} {} {}", v.id, d.label_name(v.col), d.label_name(v.row));
        if let Some(s) = v.sign {
            let _ = write!(out, " {}", s.symbol());
        }
        out.push('\n');
    }
    let mut edges = d.edges.clone();
    edges.sort_by(|a, b| a.id.cmp(&b.id));
    if !edges.is_empty() {
        out.push('\n');
    }
    for e in &edges {
        let _ = write!(out, "edge {} {} -> {}", e.id, e.source, e.target);
        match &e.operator {
            OperatorSpec::Symbolic(label) => {
                let _ = writeln!(out, " label {label}");
            }
            OperatorSpec::Numeric(m) => {
                let _ = writeln!(out, " matrix {m}");
            }
        }
    }
    if !d.jmap.is_empty() {
        out.push('\n');
    }
    for (a, b) in &d.jmap {
        let _ = writeln!(out, "jmap {a} <-> {b}");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtins::{builtin, Builtin};

    #[test]
    fn empty_input() {
        let e = parse("").unwrap_err();
        assert_eq!(e.message, "missing algebra declaration");
        assert_eq!(e.span, SourceSpan { line: 1, column: 1, length: 0 });
        let e = parse("# only a comment\n\n").unwrap_err();
        assert_eq!(e.message, "missing algebra declaration");
    }

    #[test]
    fn undeclared_vertex_is_named() {
        let src = "factor c1 C 1\nkodim 1\nvertex vA c1 c1\nedge e1 vA -> vZ\n";
        let e = parse(src).unwrap_err();
        assert!(e.message.contains("vZ"), "{e}");
        assert_eq!(e.span, SourceSpan { line: 4, column: 15, length: 2 });
    }

    #[test]
    fn forward_references_resolve() {
        let src = "vertex v c3 c3 +\nkodim 0\nfactor c3 C 3\n";
        let d = parse(src).unwrap();
        assert_eq!(d.vertices[0].col, RepLabel::new(0));
    }

    #[test]
    fn errors_point_at_the_problem() {
        let cases = [
            ("factor c1 Q 1\n", 1, 11, "unknown field"),
            ("factor c1 C 1\nkodim 9\n", 2, 7, "out of range"),
            ("factor c1 C 1\nkodim 0\nvertex a c1 c2 +\n", 3, 13, "unknown factor `c2`"),
            ("factor c1 C 1\nkodim 0\nvertex a c1 c1 +\nvertex a c1 c1 -\n", 4, 8, "duplicate vertex id"),
            ("factor c1 C 1\nkodim 0\nvertx a c1 c1\n", 3, 1, "unknown directive"),
            ("factor c1 C 1\nkodim 0\nvertex a c1 c1 *\n", 3, 16, "not a sign"),
            ("factor c1 C 1\nkodim 0\nvertex a c1 c1\nedge e a -> a matrix [[1, 2], [3]]\n", 4, 22, "malformed matrix"),
            ("factor c1 C 1\nkodim 0\nvertex a c1 c1\nedge e a => a\n", 4, 10, "expected `->`"),
            ("factor c1 C 1\n", 1, 1, "missing kodim"),
        ];
        for (src, line, column, needle) in cases {
            let e = parse(src).unwrap_err();
            assert!(e.message.contains(needle), "{src:?}: {e}");
            assert_eq!((e.span.line, e.span.column), (line, column), "{src:?}: {e}");
        }
    }

    #[test]
    fn matrices_parse_exactly() {
        let src = "factor h H 1\nfactor c C 1\nkodim 1\nvertex a c h\nvertex b h h\nedge e a -> b matrix [[1/2+i], [ -3 ]] # note\n";
        let d = parse(src).unwrap();
        let OperatorSpec::Numeric(m) = &d.edges[0].operator else { panic!() };
        assert_eq!((m.rows, m.cols), (2, 1));
        assert_eq!(m.get(0, 0).to_string(), "1/2+i");
        assert_eq!(m.get(1, 0).to_string(), "-3");
    }

    #[test]
    fn builtins_round_trip() {
        for b in [Builtin::StandardModel, Builtin::Chain, Builtin::YangMills(2)] {
            let d = builtin(&b);
            let text = serialize(&d);
            let back = parse(&text).unwrap();
            assert!(back.structurally_eq(&d), "{b}");
            assert_eq!(serialize(&back), text);
        }
    }

    #[test]
    fn render_marks_the_span() {
        let src = "factor c1 C 1\nkodim 0\nvertx a\n";
        let e = parse(src).unwrap_err();
        let shown = e.render(src, "x.kra");
        assert!(shown.starts_with("x.kra:3:1: error: unknown directive `vertx`"));
        assert!(shown.ends_with("  | vertx a\n  | ^^^^^"));
    }
}
